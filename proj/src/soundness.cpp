#include "qcsp/soundness.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <stdexcept>

#include "qcsp/projectivize.hpp"
#include "qcsp/rng.hpp"

namespace qcsp {

namespace {

Complex trace_product(const CMatrix& a, const CMatrix& b) {
    return (a.transpose().cwiseProduct(b)).sum() / static_cast<double>(a.rows());
}

std::vector<double> left_marginals(const LabelCoverInstance& phi) {
    std::vector<double> pu(phi.left_count, 0.0);
    for (const LabelCoverEdge& e : phi.edges) pu[e.u] += e.weight;
    return pu;
}

std::uint32_t sigma_mask(std::uint32_t s, const std::vector<int>& sigma) {
    std::uint32_t out = 0;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
        if ((s >> a) & 1u) out |= 1u << sigma[a];
    }
    return out;
}

void require_folded(const TwoLinReduction& red, const ObservableAssignment& alpha) {
    const std::uint32_t all = (1u << red.m) - 1u;
    for (int idx = 0; idx < red.psi.variable_count; ++idx) {
        const PsiVertex& key = red.keys[idx];
        const int mirror = red.psi_index(key.side, key.vertex, key.mask ^ all);
        if ((alpha.vertices[idx] + alpha.vertices[mirror]).norm() > tol::folded) {
            throw std::invalid_argument(
                "2-Lin extraction requires a folded assignment");
        }
    }
}

OperatorFunction psi_slice(const TwoLinReduction& red,
                           const ObservableAssignment& alpha, Side side,
                           int vertex) {
    OperatorFunction f;
    f.m = red.m;
    f.dim = alpha.dim;
    f.table.resize(std::size_t{1} << red.m);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
        f.table[x] = alpha.vertices[red.psi_index(side, vertex, x)];
    }
    return f;
}

OperatorFunction psi_slice(const MaxCutReduction& red,
                           const ObservableAssignment& alpha, int vertex) {
    OperatorFunction f;
    f.m = red.m;
    f.dim = alpha.dim;
    f.table.resize(std::size_t{1} << red.m);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
        f.table[x] = alpha.vertices[red.psi_index(vertex, x)];
    }
    return f;
}

Measurement fourier_weight_povm(const FourierTable& t, int m) {
    Measurement povm(m, CMatrix::Zero(t.dim, t.dim));
    for (std::uint32_t s = 1; s < t.table.size(); ++s) {
        const CMatrix sq = t.table[s] * t.table[s] / std::popcount(s);
        for (int a = 0; a < m; ++a) {
            if ((s >> a) & 1u) povm[a] += sq;
        }
    }
    return povm;
}

// Σ_a Σ_{S∋a} Σ_{T∋σ(a)} β̂(S)²γ̂(T)²/(|S||T|), the scalar form of the
// extracted edge value, used for the minimizing tie-breaks.
double scalar_pair_value(const std::vector<double>& beta_hat,
                         const std::vector<double>& gamma_hat,
                         const std::vector<int>& sigma) {
    double total = 0.0;
    for (std::uint32_t s = 1; s < beta_hat.size(); ++s) {
        const double bs = beta_hat[s] * beta_hat[s] / std::popcount(s);
        for (std::uint32_t tmask = 1; tmask < gamma_hat.size(); ++tmask) {
            int count = 0;
            for (std::size_t a = 0; a < sigma.size(); ++a) {
                if (((s >> a) & 1u) && ((tmask >> sigma[a]) & 1u)) ++count;
            }
            if (count == 0) continue;
            total += count * bs * gamma_hat[tmask] * gamma_hat[tmask] /
                     std::popcount(tmask);
        }
    }
    return total;
}

}  // namespace

GoodSet filter_good_edges_2lin(const TwoLinReduction& red,
                               const ObservableAssignment& alpha,
                               const SoundnessParams& params) {
    const int m = red.m;
    const std::uint32_t points = 1u << m;
    const double inv_points = 1.0 / static_cast<double>(points);
    const std::vector<double> noise = noise_weights(m, params.eps);

    GoodSet set;
    set.threshold = 3.0 - 0.5 * params.b_t() * std::pow(params.eps, params.t);
    set.lower_is_good = false;
    set.lhs.resize(red.source.edges.size());

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(red.source.edges.size());
         ++e) {
        const LabelCoverEdge& edge = red.source.edges[e];
        const std::vector<int> pi_vu = invert_permutation(edge.pi);
        double acc = 0.0;
        for (std::uint32_t x = 0; x < points; ++x) {
            const CMatrix& au_x =
                alpha.vertices[red.psi_index(Side::Left, edge.u, x)];
            const std::uint32_t xv = apply_perm_mask(x, pi_vu);
            for (std::uint32_t mu = 0; mu < points; ++mu) {
                const CMatrix& au_xmu =
                    alpha.vertices[red.psi_index(Side::Left, edge.u, x ^ mu)];
                const CMatrix& av_cross =
                    alpha.vertices[red.psi_index(Side::Right, edge.v, xv ^ mu)];
                acc += inv_points * noise[mu] *
                       (trace_product(au_x, au_xmu).real() +
                        2.0 * trace_product(au_x, av_cross).real());
            }
        }
        set.lhs[e] = acc;
    }

    for (std::size_t e = 0; e < red.source.edges.size(); ++e) {
        set.items.push_back(static_cast<int>(e));
        bool good = set.lhs[e] >= set.threshold;
        set.good.push_back(good);
        if (good) set.good_mass += red.source.edges[e].weight;
    }
    return set;
}

OperatorFunction compute_beta(const MaxCutReduction& red,
                              const ObservableAssignment& alpha, int left_vertex) {
    const std::vector<double> pu = left_marginals(red.source);
    if (left_vertex < 0 || left_vertex >= red.source.left_count ||
        pu[left_vertex] <= 0.0) {
        throw std::invalid_argument("compute_beta: invalid left vertex");
    }
    OperatorFunction beta;
    beta.m = red.m;
    beta.dim = alpha.dim;
    beta.table.assign(std::size_t{1} << red.m, CMatrix::Zero(alpha.dim, alpha.dim));
    for (const LabelCoverEdge& e : red.source.edges) {
        if (e.u != left_vertex) continue;
        const double conditional = e.weight / pu[left_vertex];
        const std::vector<int> pi_vu = invert_permutation(e.pi);
        for (std::uint32_t x = 0; x < beta.table.size(); ++x) {
            beta.table[x] += conditional *
                             alpha.vertices[red.psi_index(e.v, apply_perm_mask(x, pi_vu))];
        }
    }
    return beta;
}

GoodSet filter_good_vertices_maxcut(const MaxCutReduction& red,
                                    const ObservableAssignment& alpha,
                                    const SoundnessParams& params) {
    const int m = red.m;
    const std::uint32_t points = 1u << m;
    const double inv_points = 1.0 / static_cast<double>(points);
    const std::vector<double> noise = noise_weights(m, (1.0 - red.rho) / 2.0);
    const std::vector<double> pu = left_marginals(red.source);

    GoodSet set;
    set.threshold = 1.0 - (2.0 / std::numbers::pi) * std::acos(red.rho) - params.eps;
    set.lower_is_good = true;
    set.lhs.resize(red.source.left_count);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t u = 0; u < red.source.left_count; ++u) {
        OperatorFunction beta = compute_beta(red, alpha, static_cast<int>(u));
        double acc = 0.0;
        for (std::uint32_t x = 0; x < points; ++x) {
            for (std::uint32_t mu = 0; mu < points; ++mu) {
                acc += inv_points * noise[mu] *
                       trace_product(beta.table[x], beta.table[x ^ mu]).real();
            }
        }
        set.lhs[u] = acc;
    }

    for (int u = 0; u < red.source.left_count; ++u) {
        set.items.push_back(u);
        bool good = set.lhs[u] <= set.threshold;
        set.good.push_back(good);
        if (good) set.good_mass += pu[u];
    }
    return set;
}

EdgeDiagonals diagonal_scalar_functions(const TwoLinReduction& red,
                                        const ObservableAssignment& alpha,
                                        int edge_index, std::uint64_t seed) {
    const LabelCoverEdge& edge = red.source.edges.at(edge_index);
    const std::uint32_t points = 1u << red.m;

    std::vector<CMatrix> family;
    family.reserve(2 * points);
    for (std::uint32_t x = 0; x < points; ++x) {
        family.push_back(alpha.vertices[red.psi_index(Side::Left, edge.u, x)]);
    }
    for (std::uint32_t x = 0; x < points; ++x) {
        family.push_back(alpha.vertices[red.psi_index(Side::Right, edge.v, x)]);
    }
    SimDiagResult diag = simultaneous_diagonalize(family, tol::commute, seed);

    EdgeDiagonals out;
    out.basis = diag.basis;
    out.reconstruction_defect = diag.off_diagonal_residual;
    const int d = alpha.dim;
    out.u_functions.assign(d, std::vector<double>(points));
    out.v_functions.assign(d, std::vector<double>(points));
    for (std::uint32_t x = 0; x < points; ++x) {
        for (int j = 0; j < d; ++j) {
            out.u_functions[j][x] = diag.diagonals[x](j);
            out.v_functions[j][x] = diag.diagonals[points + x](j);
            out.range_defect =
                std::max({out.range_defect,
                          std::abs(std::abs(out.u_functions[j][x]) - 1.0),
                          std::abs(std::abs(out.v_functions[j][x]) - 1.0)});
        }
    }
    return out;
}

NeighborhoodDiagonals diagonal_scalar_functions(const MaxCutReduction& red,
                                                const ObservableAssignment& alpha,
                                                int left_vertex,
                                                std::uint64_t seed) {
    const std::uint32_t points = 1u << red.m;
    NeighborhoodDiagonals out;
    for (std::size_t e = 0; e < red.source.edges.size(); ++e) {
        if (red.source.edges[e].u == left_vertex) {
            out.edge_indices.push_back(static_cast<int>(e));
        }
    }
    if (out.edge_indices.empty()) {
        throw std::invalid_argument("diagonal_scalar_functions: isolated left vertex");
    }

    std::vector<CMatrix> family;
    family.reserve(out.edge_indices.size() * points);
    for (int e : out.edge_indices) {
        const int v = red.source.edges[e].v;
        for (std::uint32_t x = 0; x < points; ++x) {
            family.push_back(alpha.vertices[red.psi_index(v, x)]);
        }
    }
    SimDiagResult diag = simultaneous_diagonalize(family, tol::commute, seed);

    out.basis = diag.basis;
    out.reconstruction_defect = diag.off_diagonal_residual;
    const int d = alpha.dim;
    out.v_functions.assign(out.edge_indices.size(),
                           std::vector<std::vector<double>>(
                               d, std::vector<double>(points)));
    for (std::size_t e = 0; e < out.edge_indices.size(); ++e) {
        for (std::uint32_t x = 0; x < points; ++x) {
            for (int j = 0; j < d; ++j) {
                out.v_functions[e][j][x] = diag.diagonals[e * points + x](j);
                out.range_defect = std::max(
                    out.range_defect,
                    std::abs(std::abs(out.v_functions[e][j][x]) - 1.0));
            }
        }
    }

    const std::vector<double> pu = left_marginals(red.source);
    out.beta_functions.assign(d, std::vector<double>(points, 0.0));
    for (std::size_t e = 0; e < out.edge_indices.size(); ++e) {
        const LabelCoverEdge& edge = red.source.edges[out.edge_indices[e]];
        const double conditional = edge.weight / pu[left_vertex];
        const std::vector<int> pi_vu = invert_permutation(edge.pi);
        for (std::uint32_t x = 0; x < points; ++x) {
            const std::uint32_t xv = apply_perm_mask(x, pi_vu);
            for (int j = 0; j < d; ++j) {
                out.beta_functions[j][x] += conditional * out.v_functions[e][j][xv];
            }
        }
    }
    return out;
}

GoodSet filter_good_indices_2lin(const EdgeDiagonals& diagonals,
                                 const std::vector<int>& pi,
                                 const SoundnessParams& params) {
    const std::size_t points = diagonals.u_functions.empty()
                                   ? 0
                                   : diagonals.u_functions.front().size();
    const int m = static_cast<int>(pi.size());
    const double inv_points = 1.0 / static_cast<double>(points);
    const std::vector<double> noise = noise_weights(m, params.eps);
    const std::vector<int> pi_vu = invert_permutation(pi);

    GoodSet set;
    set.threshold = 3.0 - params.b_t() * std::pow(params.eps, params.t);
    set.lower_is_good = false;
    const int d = static_cast<int>(diagonals.u_functions.size());
    for (int j = 0; j < d; ++j) {
        const std::vector<double>& beta = diagonals.u_functions[j];
        const std::vector<double>& gamma = diagonals.v_functions[j];
        double acc = 0.0;
        for (std::uint32_t x = 0; x < points; ++x) {
            const std::uint32_t xv = apply_perm_mask(x, pi_vu);
            for (std::uint32_t mu = 0; mu < points; ++mu) {
                acc += inv_points * noise[mu] *
                       (beta[x] * beta[x ^ mu] + 2.0 * beta[x] * gamma[xv ^ mu]);
            }
        }
        set.items.push_back(j);
        set.lhs.push_back(acc);
        set.good.push_back(acc >= set.threshold);
    }
    for (bool g : set.good) {
        if (g) set.good_mass += 1.0 / static_cast<double>(d);
    }
    return set;
}

GoodSet filter_good_indices_maxcut(const NeighborhoodDiagonals& diagonals,
                                   double rho, const SoundnessParams& params) {
    GoodSet set;
    set.threshold =
        1.0 - (2.0 / std::numbers::pi) * std::acos(rho) - params.eps / 2.0;
    set.lower_is_good = true;
    const int d = static_cast<int>(diagonals.beta_functions.size());
    for (int j = 0; j < d; ++j) {
        double stability = noise_stability(diagonals.beta_functions[j], rho);
        set.items.push_back(j);
        set.lhs.push_back(stability);
        set.good.push_back(stability <= set.threshold);
    }
    for (bool g : set.good) {
        if (g) set.good_mass += 1.0 / static_cast<double>(d);
    }
    return set;
}

FourierDiagnostics fourier_inequality_report(const std::vector<double>& beta_values,
                                             const std::vector<double>& gamma_values,
                                             const std::vector<int>& sigma,
                                             double eps, double t, double c_t) {
    if (beta_values.size() != gamma_values.size()) {
        throw std::invalid_argument("fourier_inequality_report: size mismatch");
    }
    {
        std::vector<int> image = sigma;
        std::sort(image.begin(), image.end());
        for (std::size_t i = 0; i < image.size(); ++i) {
            if (image[i] != static_cast<int>(i)) {
                throw std::invalid_argument(
                    "fourier_inequality_report: sigma is not a bijection");
            }
        }
    }
    const std::vector<double> beta_hat = scalar_fourier(beta_values);
    const std::vector<double> gamma_hat = scalar_fourier(gamma_values);
    const double decay = 1.0 - 2.0 * eps;
    const double s1_cut = 1.0 / eps;                               // |S| < 1/ε
    const double s2_cut = 0.1 * std::pow(4.0, -1.0 / (eps * eps));  // |β̂| > cut

    FourierDiagnostics diag;
    diag.bourgain_premise_threshold = c_t * std::pow(eps, t);
    diag.final_threshold =
        eps * std::pow(4.0, -2.0 / (eps * eps)) / 400.0;

    for (std::uint32_t s = 0; s < beta_hat.size(); ++s) {
        const int size = std::popcount(s);
        const double b2 = beta_hat[s] * beta_hat[s];
        const double decay_pow = std::pow(decay, size);
        const double mixed = beta_hat[s] * gamma_hat[sigma_mask(s, sigma)];
        const bool in_s1 = size < s1_cut;
        const bool in_s2 = std::abs(beta_hat[s]) > s2_cut;

        diag.first_premise += b2 * decay_pow;
        diag.second_premise += mixed * decay_pow;
        if (!in_s1) diag.mass_outside_s1 += b2;
        if (!in_s2) diag.mass_outside_s2 += b2;
        if (in_s1 && in_s2) {
            diag.mixed_sum_s1s2 += mixed * decay_pow;
            if (s != 0) {
                diag.final_quantity += b2 * gamma_hat[sigma_mask(s, sigma)] *
                                       gamma_hat[sigma_mask(s, sigma)] / size;
            }
        }
    }
    diag.conclusion_quarter = std::abs(diag.mixed_sum_s1s2) > 0.25;
    diag.final_ok = diag.final_quantity > diag.final_threshold;
    return diag;
}

MeasurementAssignment extract_povm_2lin(const TwoLinReduction& red,
                                        const ObservableAssignment& alpha) {
    require_folded(red, alpha);
    MeasurementAssignment out;
    out.dim = alpha.dim;
    out.cls = CommutationClass::Quantum;
    out.kind = MeasurementKind::Povm;
    const int n = red.source.left_count + red.source.right_count;
    out.vertices.resize(n);
    for (int w = 0; w < n; ++w) {
        Side side = (w < red.source.left_count) ? Side::Left : Side::Right;
        int vertex = (side == Side::Left) ? w : w - red.source.left_count;
        FourierTable t = fourier_transform(psi_slice(red, alpha, side, vertex));
        out.vertices[w] = fourier_weight_povm(t, red.m);
    }
    return out;
}

MeasurementAssignment extract_povm_maxcut(const MaxCutReduction& red,
                                          const ObservableAssignment& alpha) {
    MeasurementAssignment out;
    out.dim = alpha.dim;
    out.cls = CommutationClass::WeakQuantum;
    out.kind = MeasurementKind::Povm;
    const int n = red.source.left_count + red.source.right_count;
    out.vertices.resize(n);
    const CMatrix id = CMatrix::Identity(alpha.dim, alpha.dim);

    auto with_remainder = [&](Measurement povm) {
        CMatrix q = id;
        for (const CMatrix& p : povm) q -= p;
        povm.back() += q;  // remainder folded into outcome m
        return povm;
    };

    for (int u = 0; u < red.source.left_count; ++u) {
        FourierTable t = fourier_transform(compute_beta(red, alpha, u));
        out.vertices[u] = with_remainder(fourier_weight_povm(t, red.m));
    }
    for (int v = 0; v < red.source.right_count; ++v) {
        FourierTable t = fourier_transform(psi_slice(red, alpha, v));
        out.vertices[red.source.left_count + v] =
            with_remainder(fourier_weight_povm(t, red.m));
    }
    return out;
}

double paper_bound_2lin(double eps) {
    return eps / 1600.0 * std::pow(4.0, -2.0 / (eps * eps));
}

double paper_bound_maxcut(double eps, double delta2, int k) {
    return eps * eps * delta2 * delta2 * delta2 /
           (32.0 * static_cast<double>(k) * static_cast<double>(k));
}

namespace {

// Smallest index among minimizers.
int argmin_over_good(const GoodSet& set, const std::vector<double>& objective) {
    int chosen = -1;
    for (std::size_t i = 0; i < set.items.size(); ++i) {
        if (!set.good[i]) continue;
        if (chosen < 0 || objective[i] < objective[chosen]) {
            chosen = static_cast<int>(i);
        }
    }
    return chosen < 0 ? -1 : set.items[chosen];
}

}  // namespace

SoundnessReport run_soundness_pipeline(const TwoLinReduction& red,
                                       const ObservableAssignment& alpha,
                                       const SoundnessParams& params) {
    SoundnessReport report;
    report.kind = "2lin";
    report.params = params;

    report.psi_value = closed_form_psi_value(red, alpha);
    report.precondition_threshold =
        1.0 - params.b_t() * std::pow(params.eps, params.t) / 32.0;
    report.precondition_ok = report.psi_value >= report.precondition_threshold;

    report.good_objects = filter_good_edges_2lin(red, alpha, params);
    report.extracted = extract_povm_2lin(red, alpha);
    report.extracted_value = eval_labelcover_value(red.source, report.extracted);

    std::vector<double> edge_objective(red.source.edges.size(), 0.0);
    for (std::size_t e = 0; e < red.source.edges.size(); ++e) {
        const LabelCoverEdge& edge = red.source.edges[e];
        const Measurement& pu = report.extracted.vertices[edge.u];
        const Measurement& pv =
            report.extracted.vertices[red.source.left_count + edge.v];
        double inner = 0.0;
        for (int a = 0; a < red.m; ++a) {
            inner += real_trace(pu[a] * pv[edge.pi[a]]);
        }
        edge_objective[e] = inner;
    }
    report.chosen_object = argmin_over_good(report.good_objects, edge_objective);

    if (report.chosen_object >= 0) {
        const LabelCoverEdge& edge = red.source.edges[report.chosen_object];
        EdgeDiagonals diagonals = diagonal_scalar_functions(
            red, alpha, report.chosen_object, mix_seed(params.seed, "edge-diag"));
        report.good_indices = filter_good_indices_2lin(diagonals, edge.pi, params);

        std::vector<double> index_objective(diagonals.u_functions.size(), 0.0);
        for (std::size_t j = 0; j < diagonals.u_functions.size(); ++j) {
            index_objective[j] =
                scalar_pair_value(scalar_fourier(diagonals.u_functions[j]),
                                  scalar_fourier(diagonals.v_functions[j]),
                                  edge.pi);
        }
        report.chosen_index = argmin_over_good(report.good_indices, index_objective);
        if (report.chosen_index >= 0) {
            report.fourier = fourier_inequality_report(
                diagonals.u_functions[report.chosen_index],
                diagonals.v_functions[report.chosen_index], edge.pi, params.eps,
                params.t, params.c_t);
        }
    }

    ProjectivizeResult rounded = projectivize_assignment(
        red.source, report.extracted, mix_seed(params.seed, "projectivize"));
    report.projectivized = rounded.assignment;
    report.projectivize_value_trace = rounded.value_trace;
    report.pvm_value = eval_labelcover_value(red.source, report.projectivized);

    report.paper_bound = paper_bound_2lin(params.eps);
    report.exceeds_bound = report.pvm_value >= report.paper_bound;
    return report;
}

SoundnessReport run_soundness_pipeline(const MaxCutReduction& red,
                                       const ObservableAssignment& alpha,
                                       const SoundnessParams& params) {
    SoundnessReport report;
    report.kind = "maxcut";
    report.params = params;
    report.rho = red.rho;

    report.psi_value = closed_form_psi_value(red, alpha);
    report.precondition_threshold =
        std::acos(red.rho) / std::numbers::pi + params.eps;
    report.precondition_ok = report.psi_value >= report.precondition_threshold;

    report.good_objects = filter_good_vertices_maxcut(red, alpha, params);
    report.extracted = extract_povm_maxcut(red, alpha);
    report.extracted_value = eval_labelcover_value(red.source, report.extracted);

    const std::vector<double> pu = left_marginals(red.source);
    std::vector<double> vertex_objective(red.source.left_count, 0.0);
    for (const LabelCoverEdge& edge : red.source.edges) {
        const Measurement& left = report.extracted.vertices[edge.u];
        const Measurement& right =
            report.extracted.vertices[red.source.left_count + edge.v];
        double inner = 0.0;
        for (int a = 0; a < red.m; ++a) {
            inner += real_trace(left[a] * right[edge.pi[a]]);
        }
        vertex_objective[edge.u] += edge.weight / pu[edge.u] * inner;
    }
    report.chosen_object = argmin_over_good(report.good_objects, vertex_objective);

    if (report.chosen_object >= 0) {
        const int u = report.chosen_object;
        NeighborhoodDiagonals diagonals = diagonal_scalar_functions(
            red, alpha, u, mix_seed(params.seed, "neighborhood-diag"));
        report.good_indices = filter_good_indices_maxcut(diagonals, red.rho, params);

        const int d = static_cast<int>(diagonals.beta_functions.size());
        std::vector<double> index_objective(d, 0.0);
        std::vector<std::vector<double>> beta_hat(d);
        for (int j = 0; j < d; ++j) {
            beta_hat[j] = scalar_fourier(diagonals.beta_functions[j]);
            for (std::size_t e = 0; e < diagonals.edge_indices.size(); ++e) {
                const LabelCoverEdge& edge =
                    red.source.edges[diagonals.edge_indices[e]];
                index_objective[j] +=
                    edge.weight / pu[u] *
                    scalar_pair_value(beta_hat[j],
                                      scalar_fourier(diagonals.v_functions[e][j]),
                                      edge.pi);
            }
        }
        report.chosen_index = argmin_over_good(report.good_indices, index_objective);

        if (report.chosen_index >= 0) {
            const int j = report.chosen_index;
            int best_label = 0;
            for (int c = 0; c < red.m; ++c) {
                InfluenceCertificate cert;
                cert.label = c;
                cert.influence = influence(beta_hat[j], red.m, c, params.k_mis);
                cert.passes = cert.influence > params.delta2;
                report.influence_certificates.push_back(cert);
                if (cert.influence >
                    report.influence_certificates[best_label].influence) {
                    best_label = c;
                }
            }
            // Good neighbors with respect to the most influential label.
            report.good_neighbors.threshold = params.delta2 / 2.0;
            report.good_neighbors.lower_is_good = false;
            for (std::size_t e = 0; e < diagonals.edge_indices.size(); ++e) {
                const LabelCoverEdge& edge =
                    red.source.edges[diagonals.edge_indices[e]];
                double inf = influence(scalar_fourier(diagonals.v_functions[e][j]),
                                       red.m, edge.pi[best_label], params.k_mis);
                report.good_neighbors.items.push_back(diagonals.edge_indices[e]);
                report.good_neighbors.lhs.push_back(inf);
                bool good = inf > report.good_neighbors.threshold;
                report.good_neighbors.good.push_back(good);
                if (good) report.good_neighbors.good_mass += edge.weight / pu[u];
            }
        }
    }

    ProjectivizeResult rounded = projectivize_assignment(
        red.source, report.extracted, mix_seed(params.seed, "projectivize"));
    report.projectivized = rounded.assignment;
    report.projectivize_value_trace = rounded.value_trace;
    report.pvm_value = eval_labelcover_value(red.source, report.projectivized);

    report.paper_bound = paper_bound_maxcut(params.eps, params.delta2, params.k_mis);
    report.exceeds_bound = report.pvm_value >= report.paper_bound;
    return report;
}

}  // namespace qcsp
