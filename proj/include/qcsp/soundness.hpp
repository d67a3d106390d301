#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qcsp/reduction.hpp"

namespace qcsp {

// The soundness extraction pipelines: good-object filters, diagonal scalar
// extraction, Fourier-inequality diagnostics, and the Fourier-weight POVM
// construction, chained into a report that is compared against the stated
// bound. Filters feed the report; the extraction itself runs unconditionally
// so failed preconditions still produce diagnostics.

struct SoundnessParams {
    double eps = 0.1;
    double t = 0.75;     // ∈ (1/2, 1)
    double c_t = 1.0;    // stand-in for Bourgain's non-explicit constant
    double delta2 = 0.01;
    int k_mis = 10;
    std::uint64_t seed = 0;

    double b_t() const { return c_t * (1.0 - std::exp(-2.0)); }
};

struct GoodSet {
    std::vector<int> items;        // all candidate indices
    std::vector<double> lhs;       // per-item left-hand side
    std::vector<bool> good;
    double threshold = 0.0;
    bool lower_is_good = false;    // MaxCut filters are ≤-type
    double good_mass = 0.0;        // weight (or fraction) of the good items
};

// Edge (u,v) is good when
//   E_{x,μ}[tr(α_u(x)α_u(xμ) + 2 α_u(x)α_v((x∘π_{v,u})μ))] ≥ 3 − b_t ε^t / 2.
GoodSet filter_good_edges_2lin(const TwoLinReduction& red,
                               const ObservableAssignment& alpha,
                               const SoundnessParams& params);

// Left vertex u is good when E_{x,μ}[tr(β_u(x)β_u(xμ))] ≤ 1 − (2/π)arccos ρ − ε.
GoodSet filter_good_vertices_maxcut(const MaxCutReduction& red,
                                    const ObservableAssignment& alpha,
                                    const SoundnessParams& params);

// β_u(x) = E_{v|u}[α_v(x∘π_{v,u})]: Hermitian, operator norm ≤ 1, and
// Σ β̂(S)² ≼ I.
OperatorFunction compute_beta(const MaxCutReduction& red,
                              const ObservableAssignment& alpha, int left_vertex);

// Scalar functions read off the joint eigenbasis of a commuting scope.
struct EdgeDiagonals {
    CMatrix basis;
    std::vector<std::vector<double>> u_functions;  // [j][x], range ⊆ {±1}
    std::vector<std::vector<double>> v_functions;
    double reconstruction_defect = 0.0;
    double range_defect = 0.0;
};

EdgeDiagonals diagonal_scalar_functions(const TwoLinReduction& red,
                                        const ObservableAssignment& alpha,
                                        int edge_index, std::uint64_t seed = 0);

struct NeighborhoodDiagonals {
    CMatrix basis;
    std::vector<int> edge_indices;  // source edges incident to the left vertex
    std::vector<std::vector<std::vector<double>>> v_functions;  // [e][j][x]
    std::vector<std::vector<double>> beta_functions;            // [j][x] ⊆ [−1,1]
    double reconstruction_defect = 0.0;
    double range_defect = 0.0;
};

NeighborhoodDiagonals diagonal_scalar_functions(const MaxCutReduction& red,
                                                const ObservableAssignment& alpha,
                                                int left_vertex,
                                                std::uint64_t seed = 0);

// Index j good for 2-Lin when the scalar analogue of the good-edge expectation
// is ≥ 3 − b_t ε^t.
GoodSet filter_good_indices_2lin(const EdgeDiagonals& diagonals,
                                 const std::vector<int>& pi,
                                 const SoundnessParams& params);

// Index j good for MaxCut when S_ρ(β_{u,j}) ≤ 1 − (2/π)arccos ρ − ε/2.
GoodSet filter_good_indices_maxcut(const NeighborhoodDiagonals& diagonals,
                                   double rho, const SoundnessParams& params);

struct FourierDiagnostics {
    double first_premise = 0.0;   // Σ β̂(S)²(1−2ε)^|S|
    double second_premise = 0.0;  // Σ β̂(S)γ̂(σS)(1−2ε)^|S|
    double mass_outside_s1 = 0.0;
    double bourgain_premise_threshold = 0.0;  // (b_t/(1−e^{−2})) ε^t = c_t ε^t
    double mass_outside_s2 = 0.0;             // Bourgain conclusion vs 1/100
    double mixed_sum_s1s2 = 0.0;
    bool conclusion_quarter = false;          // |mixed_sum_s1s2| > 1/4
    double final_quantity = 0.0;  // Σ_{∅≠S∈S₁∩S₂} β̂(S)²γ̂(σS)²/|S|
    double final_threshold = 0.0;             // ε 4^{−2ε^{−2}} / 400
    bool final_ok = false;
};

// σ must be a bijection on [m]; S₁ = {|S| < 1/ε}, S₂ = {|β̂(S)| > 4^{−ε^{−2}}/10}.
FourierDiagnostics fourier_inequality_report(const std::vector<double>& beta_values,
                                             const std::vector<double>& gamma_values,
                                             const std::vector<int>& sigma,
                                             double eps, double t, double c_t);

// Fourier-weight POVMs P^a = Σ_{S∋a} α̂(S)²/|S|. The 2-Lin extraction requires
// a folded α (no remainder); the MaxCut extraction folds each remainder into
// outcome m and uses β_u on the left side.
MeasurementAssignment extract_povm_2lin(const TwoLinReduction& red,
                                        const ObservableAssignment& alpha);
MeasurementAssignment extract_povm_maxcut(const MaxCutReduction& red,
                                          const ObservableAssignment& alpha);

struct InfluenceCertificate {
    int label = -1;
    double influence = 0.0;
    bool passes = false;  // influence > δ₂
};

struct SoundnessReport {
    std::string kind;  // "2lin" | "maxcut"
    SoundnessParams params;
    double rho = 0.0;  // MaxCut reductions only

    double psi_value = 0.0;
    double precondition_threshold = 0.0;
    bool precondition_ok = false;

    GoodSet good_objects;  // 2-Lin: source edges; MaxCut: left vertices
    int chosen_object = -1;
    GoodSet good_indices;  // diagonal indices of the chosen object
    int chosen_index = -1;

    FourierDiagnostics fourier;  // 2-Lin, for the chosen (β, γ, σ)
    std::vector<InfluenceCertificate> influence_certificates;  // MaxCut, chosen j
    GoodSet good_neighbors;  // MaxCut: N_u filtered by influence > δ₂/2

    MeasurementAssignment extracted;      // POVM assignment on φ
    MeasurementAssignment projectivized;  // PVM assignment on φ
    std::vector<double> projectivize_value_trace;
    double extracted_value = 0.0;
    double pvm_value = 0.0;

    double paper_bound = 0.0;
    bool exceeds_bound = false;
};

// ω(φ,P) ≥ (ε/1600)·4^{−2ε^{−2}}
double paper_bound_2lin(double eps);
// ω(φ,P) ≥ ε²δ₂³/(32k²)
double paper_bound_maxcut(double eps, double delta2, int k);

SoundnessReport run_soundness_pipeline(const TwoLinReduction& red,
                                       const ObservableAssignment& alpha,
                                       const SoundnessParams& params);
SoundnessReport run_soundness_pipeline(const MaxCutReduction& red,
                                       const ObservableAssignment& alpha,
                                       const SoundnessParams& params);

}  // namespace qcsp
