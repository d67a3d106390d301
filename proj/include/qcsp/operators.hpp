#pragma once

#include <span>
#include <string>
#include <vector>

#include "qcsp/linalg.hpp"

namespace qcsp {

// A measurement is the outcome-indexed list of its operators; all elements
// share one dimension. PVMs additionally have idempotent elements, and a POVM
// is self-commuting when its own elements pairwise commute.
using Measurement = std::vector<CMatrix>;

enum class MeasurementKind { Pvm, Povm, SelfCommutingPovm };

int measurement_dim(const Measurement& p);

struct CommuteResult {
    bool commuting = false;
    double defect = 0.0;  // ‖AB − BA‖_F
};

// Defect compared against tol·max(1, ‖A‖_F‖B‖_F).
CommuteResult commute(const CMatrix& a, const CMatrix& b,
                      double eps = tol::commute);

struct MeasurementVerdict {
    bool ok = true;
    double worst_defect = 0.0;
    std::vector<std::string> failures;
};

MeasurementVerdict check_measurement(const Measurement& ops, MeasurementKind kind);

struct SimDiagResult {
    CMatrix basis;                    // unitary; conjugating by it diagonalizes
    std::vector<RVector> diagonals;   // one per input operator, in basis order
    double off_diagonal_residual = 0.0;
};

// Joint diagonalization of a pairwise-commuting Hermitian family: a random
// real combination is eigendecomposed once, then degenerate eigenvalue
// clusters are re-diagonalized blockwise until every operator is diagonal.
// Throws naming the offending pair if some pair fails the commutation check.
SimDiagResult simultaneous_diagonalize(std::span<const CMatrix> family,
                                       double commute_tol = tol::commute,
                                       std::uint64_t seed = 0);

struct CliffordFamily {
    int rank = 0;
    int dimension = 0;  // 2^⌈r/2⌉
    std::vector<CMatrix> generators;
};

// Length-⌈r/2⌉ tensor words over the Hermitian unitary pair basis in
// Jordan–Wigner order: γ²=I, γ_iγ_j+γ_jγ_i=0, tr(γ_iγ_j)=δ_ij.
CliffordFamily clifford_generators(int r);

// Observable ↔ binary PVM bijection: {(I+X)/2, (I−X)/2}, outcome 0 ↔ +1.
Measurement binary_pvm_from_observable(const CMatrix& x);
CMatrix observable_from_binary_pvm(const Measurement& pvm);

}  // namespace qcsp
