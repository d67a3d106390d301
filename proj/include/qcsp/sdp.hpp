#pragma once

#include <optional>
#include <vector>

#include "qcsp/assignment.hpp"
#include "qcsp/instance.hpp"

namespace qcsp {

// The MaxCut value interval: SDP relaxation by unit-sphere coordinate ascent
// at full rank, Goemans-Williamson hyperplane rounding, the α_gw constant,
// and the Clifford-word observables realizing ω_nc = ω_sdp.

struct GramFactor {
    int rank = 0;
    RMatrix vectors;  // n×rank, unit rows
};

struct SdpOptions {
    double tol = tol::sdp_converge;  // max row movement at convergence
    int restarts = 5;
    int max_sweeps = 50'000;
    std::uint64_t seed = 0;
};

struct SdpResult {
    GramFactor factor;
    double value = 0.0;  // Σ p_e (1 − w_i·w_j)/2
    std::vector<double> restart_values;
    int sweeps = 0;
};

struct SdpNotConverged : std::runtime_error {
    SdpResult incumbent;
    SdpNotConverged(const std::string& what, SdpResult best)
        : std::runtime_error(what), incumbent(std::move(best)) {}
};

// Row update w_i ← normalize(−Σ_j p_ij w_j) at rank r = n; best of the seeded
// restarts is returned with all per-restart values.
SdpResult solve_maxcut_sdp(const LinInstance& maxcut, const SdpOptions& opts = {});

double sdp_objective(const LinInstance& maxcut, const GramFactor& factor);

// (2/π)·min_{0≤θ≤π} θ/(1−cos θ) ≈ 0.878, minimized to 1e−10.
double alpha_gw();

struct GwResult {
    std::vector<int> best_labels;  // ±1
    double best_value = 0.0;       // exact re-evaluation of the best cut
    double empirical_mean = 0.0;
};

// Random-hyperplane signs; sampling is blocked with per-block substreams so
// the result is independent of the parallel schedule.
GwResult gw_round(const LinInstance& maxcut, const GramFactor& factor,
                  int samples, std::uint64_t seed);

double cut_value(const LinInstance& maxcut, const std::vector<int>& labels);

// X_i = Σ_k w_ik γ_k over anticommuting Clifford generators after trimming to
// the numerical rank: tr(X_iX_j) = w_i·w_j and the MaxCut evaluation of the
// assignment equals the SDP objective.
ObservableAssignment tsirelson_assignment(const GramFactor& factor);

struct IntervalOptions {
    std::uint64_t brute_force_budget = budget::brute_force;
    bool force_gw_floor = false;  // skip brute force even when affordable
    SdpOptions sdp;
    int gw_samples = 10'000;
    std::uint64_t seed = 0;
};

struct IntervalReport {
    double omega_c = 0.0;  // exact brute force, or a GW lower bound
    bool omega_c_exact = true;
    double gw_floor = 0.0;  // α_gw · ω_sdp
    std::optional<double> quantum_lb;
    double omega_sdp = 0.0;
    double alpha = 0.0;  // α_gw
    bool ordering_ok = true;
};

// α_gw·ω_sdp ≤ ω_c ≤ ω_q ≤ ω_nc = ω_sdp, checked with 1e−6 slack; the quantum
// point appears only when an assignment is supplied.
IntervalReport interval_report(const LinInstance& maxcut,
                               const ObservableAssignment* quantum,
                               const IntervalOptions& opts = {});

}  // namespace qcsp
