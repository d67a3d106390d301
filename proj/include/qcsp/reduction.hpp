#pragma once

#include <cstdint>
#include <vector>

#include "qcsp/assignment.hpp"
#include "qcsp/instance.hpp"

namespace qcsp {

enum class Side { Left, Right };

struct PsiVertex {
    Side side = Side::Left;
    int vertex = 0;
    std::uint32_t mask = 0;  // hypercube point
};

// (x∘π)_i = x_{π(i)} as a mask operation.
std::uint32_t apply_perm_mask(std::uint32_t x, const std::vector<int>& pi);

// ULC → 2-Lin gadget. ψ lives on (U ∪ V) × {±1}^m with all parities +1;
// constraint types:
//   E1  ((u,x),(u,xμ))                weight Pr(u,x,μ)/4
//   E2  ((v,x),(v,xμ))                weight Pr(v,x,μ)/4
//   E3  ((u,x),(v,(x∘π_{v,u})μ))      weight Pr(u,v,x,μ)/2
// with Pr(u,v,x,μ) = p_{u,v} ε^|μ| (1−ε)^(m−|μ|) / 2^m.
struct TwoLinReduction {
    LabelCoverInstance source;
    double eps = 0.0;
    int m = 0;
    LinInstance psi;
    std::vector<PsiVertex> keys;  // ψ index → (side, vertex, point)
    std::size_t e1_count = 0, e2_count = 0, e3_count = 0;

    int psi_index(Side side, int vertex, std::uint32_t mask) const;
};

TwoLinReduction reduce_ulc_to_2lin(const LabelCoverInstance& phi, double eps,
                                   int max_m = budget::reduction_max_m);

// Folding onto representatives ξ_m = {x : x_0 = +1} (mask bit 0 clear):
// κ(x) = ±1 by membership, θ(x) = κ(x)·x, and ψ' carries parity κ(x)κ(xμ) per
// edge. Assignments to ψ' correspond one-to-one with folded assignments to ψ
// at identical value.
struct FoldedReduction {
    LinInstance psi_folded;
    int m = 0;
    int left_count = 0, right_count = 0;

    static int kappa(std::uint32_t mask) { return (mask & 1u) ? -1 : +1; }
    static std::uint32_t theta(std::uint32_t mask, int m) {
        std::uint32_t all = (1u << m) - 1u;
        return (mask & 1u) ? (mask ^ all) : mask;
    }
    // representatives are the even masks, packed by dropping bit 0
    static int rep_index(std::uint32_t rep_mask) {
        return static_cast<int>(rep_mask >> 1);
    }
    static std::uint32_t rep_mask(int rep_index) {
        return static_cast<std::uint32_t>(rep_index) << 1;
    }
    int folded_index(Side side, int vertex, std::uint32_t representative) const;
};

FoldedReduction fold_2lin(const TwoLinReduction& red);

// α(u,x) = κ(x) α'(u,θ(x)); the round trip is the identity and the values of
// (ψ,α) and (ψ',α') agree exactly.
ObservableAssignment fold_assignment(const TwoLinReduction& red,
                                     const ObservableAssignment& on_folded);
ObservableAssignment unfold_assignment(const TwoLinReduction& red,
                                       const ObservableAssignment& folded_on_psi);

// Long-code lift of a quantum PVM assignment: α_u(x) = Σ_a x_a Π_u^a. The
// output is folded, passes quantum validation on ψ, and satisfies
//   ω(ψ,α) = 1/2 + (1/4)(1−2ε)(1 + ω(φ,Π)).
ObservableAssignment lift_completeness_2lin(const TwoLinReduction& red,
                                            const MeasurementAssignment& pvm);

double two_lin_completeness_value(double eps, double ulc_value);

// ULC → MaxCut gadget on V × {±1}^m; edge ((v,x∘π_{v,u}),(v',(x∘π_{v',u})μ))
// carries weight p_{u,v} p_{u,v'} / (2^m p_u) ((1−ρ)/2)^|μ| ((1+ρ)/2)^(m−|μ|).
struct MaxCutReduction {
    LabelCoverInstance source;
    double rho = 0.0;
    int m = 0;
    LinInstance psi;  // k=2, all parities −1
    std::vector<PsiVertex> keys;

    int psi_index(int vertex, std::uint32_t mask) const;
};

MaxCutReduction reduce_ulc_to_maxcut(const LabelCoverInstance& phi, double rho,
                                     int max_m = budget::reduction_max_m);

// α_v(x) = Σ_a x_a Π_v^a for a weak-quantum Π; quantum on ψ and
//   ω(ψ,α) = 1/2 − (ρ/2)·E_{u,v,v'}[Σ_c tr(Π_v^{π_{u,v}(c)} Π_{v'}^{π_{u,v'}(c)})].
ObservableAssignment lift_completeness_maxcut(const MaxCutReduction& red,
                                              const MeasurementAssignment& pvm);

// The E_{u,v,v'} expectation above, for checking the identity.
double maxcut_cross_term(const LabelCoverInstance& phi,
                         const MeasurementAssignment& pvm);

// Closed-form value of an assignment on ψ straight from the reduction's
// distribution; agrees with the instance-side evaluator to 1e−10.
double closed_form_psi_value(const TwoLinReduction& red,
                             const ObservableAssignment& alpha);
double closed_form_psi_value(const MaxCutReduction& red,
                             const ObservableAssignment& alpha);

}  // namespace qcsp
