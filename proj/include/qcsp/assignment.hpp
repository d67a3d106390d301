#pragma once

#include <string>
#include <vector>

#include "qcsp/fourier.hpp"
#include "qcsp/instance.hpp"
#include "qcsp/operators.hpp"

namespace qcsp {

// Commutation classes order the assignments this library evaluates:
//   classical      d = 1, deterministic PVMs
//   weak-quantum   quantum plus commutation between right vertices sharing a
//                  left neighbor (Label-Cover only)
//   quantum        per-constraint simultaneous measurability
//   noncommutative no commutation required (2-CSPs only)
enum class CommutationClass { Classical, WeakQuantum, Quantum, Noncommutative };

std::string to_string(CommutationClass cls);
CommutationClass commutation_class_from_string(const std::string& name);

// Vertex-indexed measurements over one shared space. The same type carries
// PVM and POVM assignments; `kind` records which invariants the vertices are
// expected to satisfy.
struct MeasurementAssignment {
    int dim = 1;
    CommutationClass cls = CommutationClass::Quantum;
    MeasurementKind kind = MeasurementKind::Pvm;
    std::vector<Measurement> vertices;
};

struct ObservableAssignment {
    int dim = 1;
    std::vector<CMatrix> vertices;
    bool folded = false;  // α(u,−x) = −α(u,x) when vertices carry hypercube points
};

struct AssignmentVerdict {
    bool ok = true;
    double worst_commutation_defect = 0.0;
    std::vector<std::string> failures;
};

// Structural validation for the declared class. A dimension mismatch between
// vertices is a hard error; commutation failures ride in the verdict.
AssignmentVerdict validate_assignment(const GeneralCspInstance& inst,
                                      const MeasurementAssignment& asg);
AssignmentVerdict validate_assignment(const LabelCoverInstance& inst,
                                      const MeasurementAssignment& asg);
AssignmentVerdict validate_observable_assignment(const LinInstance& inst,
                                                 const ObservableAssignment& asg,
                                                 CommutationClass cls);

// Σ_e p_e Σ_a f_e(a) tr(Π^{a_1}···Π^{a_k}). Commuting classes must produce
// real traces; an imaginary residue beyond tolerance throws. Noncommutative
// assignments are admitted only for k ≤ 2, where traces stay real.
double eval_csp_value(const GeneralCspInstance& inst,
                      const MeasurementAssignment& asg);

// E_{u,v}[Σ_a tr(Π_u^a Π_v^{π_{u,v}(a)})]
double eval_labelcover_value(const LabelCoverInstance& inst,
                             const MeasurementAssignment& asg);

// 1/2 + 1/2 Σ_e p_e r_e tr(α_{i_1}···α_{i_k})
double eval_lin_observable_value(const LinInstance& inst,
                                 const ObservableAssignment& asg);

// Operator long code of an m-outcome PVM: x ↦ Σ_a x_a Π^a. The entries are
// Hermitian unitaries, the function is odd, and all values commute.
OperatorFunction long_code_encode(const Measurement& pvm, int m);

// d = 1 embedding of a classical labeling as deterministic PVMs.
MeasurementAssignment classical_assignment(const std::vector<int>& labels, int m);

}  // namespace qcsp
