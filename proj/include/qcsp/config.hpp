#pragma once

#include <cstdint>

// Central numerical budgets. The constructions in this library are exact in
// rational arithmetic; floating point forces explicit tolerances, and they
// all live here so a single header documents every slack the code allows.

namespace qcsp::tol {

inline constexpr double hermitian = 1e-10;         // ‖A − A*‖_F
inline constexpr double observable = 1e-8;         // ‖X*X − I‖_F
inline constexpr double povm_psd = 1e-10;          // min eigenvalue ≥ −povm_psd
inline constexpr double povm_sum = 1e-8;           // ‖ΣP^a − I‖_F
inline constexpr double pvm_idempotent = 1e-8;     // ‖P² − P‖_F
inline constexpr double commute = 1e-8;            // relative commutator defect
inline constexpr double simdiag_offdiag = 1e-8;    // ×d, post-conjugation residue
inline constexpr double simdiag_cluster = 1e-7;    // eigenvalue cluster threshold
inline constexpr double clifford = 1e-12;          // generator relations
inline constexpr double weight_sum = 1e-12;        // |Σ weights − 1|
inline constexpr double parseval = 1e-9;           // ‖Σ ŝ(S)² − I‖_F
inline constexpr double fourier_roundtrip = 1e-11;
inline constexpr double povm_remainder = 1e-9;     // ‖Q‖_F for odd inputs
inline constexpr double trace_imag = 1e-10;        // imaginary residue of traces
inline constexpr double folded = 1e-10;            // ‖α(−x) + α(x)‖_F
inline constexpr double value_identity = 1e-9;     // completeness identities
inline constexpr double closed_form = 1e-10;       // two-route ψ-value agreement
inline constexpr double fold_value = 1e-12;        // folding lemma value equality
inline constexpr double round_monotone = 1e-10;    // per-step projectivization slack
inline constexpr double commutant_preserve = 1e-7;
inline constexpr double block_weight_sum = 1e-9;   // Σ_a α_{a,i} = 1 per block
inline constexpr double decompose_reconstruct = 1e-8;
inline constexpr double unit_vector = 1e-9;        // Gram factor rows
inline constexpr double sdp_converge = 1e-9;       // max row movement
inline constexpr double tsirelson_gram = 1e-10;    // tr(X_iX_j) vs w_i·w_j
inline constexpr double tsirelson_value = 1e-9;
inline constexpr double alpha_gw = 1e-10;          // 1-D minimization tolerance
inline constexpr double value_range = 1e-9;        // evaluator output slack around [0,1]

}  // namespace qcsp::tol

namespace qcsp::budget {

inline constexpr std::uint64_t brute_force = 10'000'000;  // max m^n
inline constexpr int reduction_max_m = 6;                 // hypercube side of the lifts
inline constexpr int clifford_max_dim = 4096;             // 2^⌈r/2⌉ cap

}  // namespace qcsp::budget
