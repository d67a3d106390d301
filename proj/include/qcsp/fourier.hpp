#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "qcsp/operators.hpp"

namespace qcsp {

// Points and subsets of {±1}^m share one bitmask index space: for a point x,
// bit a set ⇔ x_a = −1; for a subset S, bit a set ⇔ a ∈ S. |S| = popcount.

inline constexpr int kNoDegreeCap = 1 << 30;

// χ_S(x) = Π_{a∈S} x_a = (−1)^popcount(S∧x)
inline int chi(std::uint32_t subset, std::uint32_t point) {
    return (std::popcount(subset & point) % 2 == 0) ? +1 : -1;
}

// Table of 2^m Hermitian operators on the hypercube; dim=1 is the scalar case.
struct OperatorFunction {
    int m = 0;
    int dim = 1;
    std::vector<CMatrix> table;  // indexed by point mask

    const CMatrix& at(std::uint32_t x) const { return table[x]; }
};

struct FourierTable {
    int m = 0;
    int dim = 1;
    std::vector<CMatrix> table;  // indexed by subset mask

    const CMatrix& at(std::uint32_t s) const { return table[s]; }
};

bool is_odd(const OperatorFunction& f, double eps = tol::folded);

// α̂(S) = E_x[χ_S(x) α(x)]; inverse α(x) = Σ_S χ_S(x) α̂(S). The scalar case
// runs through the fast Walsh–Hadamard kernel, operator tables by plain
// summation parallelized over subset masks.
FourierTable fourier_transform(const OperatorFunction& f);
OperatorFunction inverse_fourier(const FourierTable& t);

namespace reference {
// Serial direct double loop, kept as the oracle for the kernels above.
FourierTable fourier_transform_direct(const OperatorFunction& f);
}  // namespace reference

// Scalar fast path: coefficients of g from its 2^m value table.
std::vector<double> scalar_fourier(const std::vector<double>& values);
std::vector<double> scalar_inverse_fourier(const std::vector<double>& coeffs);

// Σ_{S∋a, |S|≤cap} ĝ(S)² from scalar coefficients.
double influence(const std::vector<double>& coeffs, int m, int a,
                 int degree_cap = kNoDegreeCap);
// Operator form: normalized trace of the PSD sum, for reporting.
double influence(const FourierTable& t, int a, int degree_cap = kNoDegreeCap);

// S_ρ(g) = E_{x,μ}[g(x)g(xμ)] with μ_a = −1 w.p. (1−ρ)/2; exact enumeration
// over all 4^m pairs, never sampled. ρ ∈ (−1, 0].
double noise_stability(const std::vector<double>& values, double rho);

// Per-Hamming-weight noise factors p^|μ| (1−p)^(m−|μ|) over mask space.
std::vector<double> noise_weights(int m, double minus_probability);

struct ObsPovmResult {
    Measurement povm;       // P^a = Σ_{S∋a} α̂(S)²/|S|
    CMatrix remainder;      // Q = I − Σ_a P^a, PSD; zero when α is odd
    double remainder_norm;  // ‖Q‖_F
};

ObsPovmResult povm_from_observable_function(const OperatorFunction& alpha);

// ‖Σ_S ŝ(S)² − I‖_F; vanishes for observable-valued sources.
double parseval_defect(const FourierTable& t);

}  // namespace qcsp
