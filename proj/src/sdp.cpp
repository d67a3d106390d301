#include "qcsp/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcsp/operators.hpp"
#include "qcsp/rng.hpp"

namespace qcsp {

namespace {

void require_maxcut(const LinInstance& inst) {
    if (!is_maxcut(inst)) {
        throw std::invalid_argument("expected a MaxCut instance (k=2, parities −1)");
    }
}

// Symmetric coupling weights p_ij summed over parallel edges in both
// orientations; self-loops never move a row and are skipped.
RMatrix coupling(const LinInstance& inst) {
    RMatrix p = RMatrix::Zero(inst.variable_count, inst.variable_count);
    for (const LinConstraint& c : inst.constraints) {
        if (c.vars[0] == c.vars[1]) continue;
        p(c.vars[0], c.vars[1]) += c.weight;
        p(c.vars[1], c.vars[0]) += c.weight;
    }
    return p;
}

}  // namespace

double sdp_objective(const LinInstance& maxcut, const GramFactor& factor) {
    require_maxcut(maxcut);
    double value = 0.0;
    for (const LinConstraint& c : maxcut.constraints) {
        double dot = factor.vectors.row(c.vars[0]).dot(factor.vectors.row(c.vars[1]));
        value += c.weight * (1.0 - dot) / 2.0;
    }
    return value;
}

SdpResult solve_maxcut_sdp(const LinInstance& maxcut, const SdpOptions& opts) {
    require_maxcut(maxcut);
    const int n = maxcut.variable_count;
    if (n < 2) {
        throw std::invalid_argument("solve_maxcut_sdp: need at least 2 vertices");
    }
    const RMatrix p = coupling(maxcut);

    std::vector<SdpResult> runs(opts.restarts);
    std::vector<bool> converged(opts.restarts, false);

#pragma omp parallel for schedule(dynamic)
    for (int restart = 0; restart < opts.restarts; ++restart) {
        auto rng = substream(opts.seed, "sdp-restart", restart);
        RMatrix w(n, n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) w(i, k) = gaussian(rng);
            w.row(i).normalize();
        }
        int sweep = 0;
        for (; sweep < opts.max_sweeps; ++sweep) {
            double movement = 0.0;
            for (int i = 0; i < n; ++i) {
                RVector g = RVector::Zero(n);
                for (int j = 0; j < n; ++j) {
                    if (p(i, j) != 0.0) g -= p(i, j) * w.row(j).transpose();
                }
                double norm = g.norm();
                if (norm < 1e-300) continue;  // isolated vertex keeps its row
                g /= norm;
                movement = std::max(movement, (g - w.row(i).transpose()).norm());
                w.row(i) = g.transpose();
            }
            if (movement <= opts.tol) break;
        }
        converged[restart] = sweep < opts.max_sweeps;
        SdpResult& r = runs[restart];
        r.factor.rank = n;
        r.factor.vectors = std::move(w);
        r.value = sdp_objective(maxcut, r.factor);
        r.sweeps = sweep;
    }

    int best_restart = 0;
    bool all_converged = true;
    std::vector<double> restart_values;
    for (int restart = 0; restart < opts.restarts; ++restart) {
        restart_values.push_back(runs[restart].value);
        all_converged = all_converged && converged[restart];
        if (runs[restart].value > runs[best_restart].value) {
            best_restart = restart;
        }
    }
    SdpResult best = std::move(runs[best_restart]);
    best.restart_values = std::move(restart_values);
    if (!all_converged) {
        throw SdpNotConverged("solve_maxcut_sdp: iteration cap reached", best);
    }
    return best;
}

double alpha_gw() {
    // Golden-section minimization of θ/(1−cos θ) on (0, π].
    auto objective = [](double theta) { return theta / (1.0 - std::cos(theta)); };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-6, hi = 3.141592653589793;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > tol::alpha_gw) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    double theta = (lo + hi) / 2.0;
    return 2.0 / 3.141592653589793 * objective(theta);
}

double cut_value(const LinInstance& maxcut, const std::vector<int>& labels) {
    require_maxcut(maxcut);
    double value = 0.0;
    for (const LinConstraint& c : maxcut.constraints) {
        value += c.weight *
                 (1.0 - static_cast<double>(labels[c.vars[0]] * labels[c.vars[1]])) /
                 2.0;
    }
    return value;
}

GwResult gw_round(const LinInstance& maxcut, const GramFactor& factor,
                  int samples, std::uint64_t seed) {
    require_maxcut(maxcut);
    const int n = maxcut.variable_count;
    const int r = factor.rank;

    struct BlockResult {
        double sum = 0.0;
        double best_value = -1.0;
        std::vector<int> best_labels;
        int best_sample = 0;
    };
    const int block_size = 1024;
    const int blocks = (samples + block_size - 1) / block_size;
    std::vector<BlockResult> results(blocks);

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < blocks; ++b) {
        auto rng = substream(seed, "gw-block", b);
        BlockResult local;
        std::vector<int> labels(n);
        RVector g(r);
        const int begin = b * block_size;
        const int end = std::min(begin + block_size, samples);
        for (int s = begin; s < end; ++s) {
            for (int k = 0; k < r; ++k) g(k) = gaussian(rng);
            for (int i = 0; i < n; ++i) {
                labels[i] = factor.vectors.row(i).dot(g) >= 0.0 ? +1 : -1;
            }
            double v = cut_value(maxcut, labels);
            local.sum += v;
            if (v > local.best_value) {
                local.best_value = v;
                local.best_labels = labels;
                local.best_sample = s;
            }
        }
        results[b] = std::move(local);
    }

    GwResult out;
    out.best_value = -1.0;
    double total = 0.0;
    int best_sample = samples;
    for (const BlockResult& b : results) {
        total += b.sum;
        if (b.best_value > out.best_value ||
            (b.best_value == out.best_value && b.best_sample < best_sample)) {
            out.best_value = b.best_value;
            out.best_labels = b.best_labels;
            best_sample = b.best_sample;
        }
    }
    out.empirical_mean = total / static_cast<double>(samples);
    out.best_value = cut_value(maxcut, out.best_labels);
    return out;
}

ObservableAssignment tsirelson_assignment(const GramFactor& factor) {
    const int n = static_cast<int>(factor.vectors.rows());
    // Trim to the numerical rank before paying the 2^⌈r/2⌉ dimension.
    Eigen::JacobiSVD<RMatrix> svd(factor.vectors,
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > 1e-8) ++rank;
    }
    rank = std::max(rank, 1);
    RMatrix trimmed = svd.matrixU().leftCols(rank) *
                      svd.singularValues().head(rank).asDiagonal();

    CliffordFamily gammas = clifford_generators(rank);
    ObservableAssignment asg;
    asg.dim = gammas.dimension;
    asg.vertices.reserve(n);
    for (int i = 0; i < n; ++i) {
        CMatrix x = CMatrix::Zero(asg.dim, asg.dim);
        for (int k = 0; k < rank; ++k) {
            x += trimmed(i, k) * gammas.generators[k];
        }
        asg.vertices.push_back(std::move(x));
    }
    return asg;
}

IntervalReport interval_report(const LinInstance& maxcut,
                               const ObservableAssignment* quantum,
                               const IntervalOptions& opts) {
    require_maxcut(maxcut);
    IntervalReport report;
    report.alpha = alpha_gw();

    SdpOptions sdp_opts = opts.sdp;
    sdp_opts.seed = mix_seed(opts.seed, "interval-sdp");
    SdpResult sdp = solve_maxcut_sdp(maxcut, sdp_opts);
    report.omega_sdp = sdp.value;
    report.gw_floor = report.alpha * sdp.value;

    double space = std::pow(2.0, maxcut.variable_count);
    if (!opts.force_gw_floor && space <= static_cast<double>(opts.brute_force_budget)) {
        report.omega_c =
            brute_force_classical_value(lin_to_general(maxcut),
                                        opts.brute_force_budget)
                .value;
        report.omega_c_exact = true;
    } else {
        GwResult gw = gw_round(maxcut, sdp.factor, opts.gw_samples,
                               mix_seed(opts.seed, "interval-gw"));
        report.omega_c = gw.best_value;
        report.omega_c_exact = false;
    }

    if (quantum != nullptr) {
        report.quantum_lb = eval_lin_observable_value(maxcut, *quantum);
    }

    const double slack = 1e-6;
    report.ordering_ok = report.gw_floor <= report.omega_c + slack &&
                         report.omega_c <= report.omega_sdp + slack;
    if (report.quantum_lb) {
        report.ordering_ok =
            report.ordering_ok && *report.quantum_lb <= report.omega_sdp + slack;
    }
    return report;
}

}  // namespace qcsp
