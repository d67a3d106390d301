#include "qcsp/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "qcsp/fourier.hpp"

namespace qcsp {

namespace {

// Normalized trace of a product without forming it.
Complex trace_product(const CMatrix& a, const CMatrix& b) {
    return (a.transpose().cwiseProduct(b)).sum() / static_cast<double>(a.rows());
}

void require_unique_valid(const LabelCoverInstance& phi) {
    if (!phi.unique) {
        throw std::invalid_argument("reduction requires a Unique-Label-Cover instance");
    }
    Validation v = validate_instance(phi);
    if (!v.ok) {
        throw std::invalid_argument("reduction input invalid: " + v.violations.front());
    }
}

void require_budget(int m, int max_m) {
    if (m > max_m) {
        throw BudgetExceeded("reduction budget exceeded: alphabet " +
                                 std::to_string(m) + " > max " +
                                 std::to_string(max_m),
                             static_cast<double>(m));
    }
}

std::vector<double> left_marginals(const LabelCoverInstance& phi) {
    std::vector<double> pu(phi.left_count, 0.0);
    for (const LabelCoverEdge& e : phi.edges) pu[e.u] += e.weight;
    return pu;
}

std::vector<double> right_marginals(const LabelCoverInstance& phi) {
    std::vector<double> pv(phi.right_count, 0.0);
    for (const LabelCoverEdge& e : phi.edges) pv[e.v] += e.weight;
    return pv;
}

}  // namespace

std::uint32_t apply_perm_mask(std::uint32_t x, const std::vector<int>& pi) {
    std::uint32_t y = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        y |= ((x >> pi[i]) & 1u) << i;
    }
    return y;
}

int TwoLinReduction::psi_index(Side side, int vertex, std::uint32_t mask) const {
    int base = (side == Side::Left) ? vertex : source.left_count + vertex;
    return (base << m) | static_cast<int>(mask);
}

TwoLinReduction reduce_ulc_to_2lin(const LabelCoverInstance& phi, double eps,
                                   int max_m) {
    require_unique_valid(phi);
    if (eps <= 0.0 || eps >= 0.5) {
        throw std::invalid_argument("reduce_ulc_to_2lin: eps must lie in (0, 1/2)");
    }
    require_budget(phi.alphabet, max_m);

    TwoLinReduction red;
    red.source = phi;
    red.eps = eps;
    red.m = phi.alphabet;
    const int m = red.m;
    const std::uint32_t points = 1u << m;
    const double inv_points = 1.0 / static_cast<double>(points);
    const std::vector<double> noise = noise_weights(m, eps);

    red.psi.arity = 2;
    red.psi.variable_count = (phi.left_count + phi.right_count) << m;
    red.keys.resize(red.psi.variable_count);
    for (int u = 0; u < phi.left_count; ++u) {
        for (std::uint32_t x = 0; x < points; ++x) {
            red.keys[red.psi_index(Side::Left, u, x)] = {Side::Left, u, x};
        }
    }
    for (int v = 0; v < phi.right_count; ++v) {
        for (std::uint32_t x = 0; x < points; ++x) {
            red.keys[red.psi_index(Side::Right, v, x)] = {Side::Right, v, x};
        }
    }

    const std::vector<double> pu = left_marginals(phi);
    const std::vector<double> pv = right_marginals(phi);
    red.psi.constraints.reserve(
        static_cast<std::size_t>(phi.left_count + phi.right_count + phi.edges.size())
        << (2 * m));

    for (int u = 0; u < phi.left_count; ++u) {
        for (std::uint32_t x = 0; x < points; ++x) {
            for (std::uint32_t mu = 0; mu < points; ++mu) {
                double w = 0.25 * pu[u] * inv_points * noise[mu];
                red.psi.constraints.push_back(
                    {{red.psi_index(Side::Left, u, x),
                      red.psi_index(Side::Left, u, x ^ mu)},
                     +1,
                     w});
            }
        }
    }
    red.e1_count = red.psi.constraints.size();

    for (int v = 0; v < phi.right_count; ++v) {
        for (std::uint32_t x = 0; x < points; ++x) {
            for (std::uint32_t mu = 0; mu < points; ++mu) {
                double w = 0.25 * pv[v] * inv_points * noise[mu];
                red.psi.constraints.push_back(
                    {{red.psi_index(Side::Right, v, x),
                      red.psi_index(Side::Right, v, x ^ mu)},
                     +1,
                     w});
            }
        }
    }
    red.e2_count = red.psi.constraints.size() - red.e1_count;

    for (const LabelCoverEdge& e : phi.edges) {
        const std::vector<int> pi_vu = invert_permutation(e.pi);
        for (std::uint32_t x = 0; x < points; ++x) {
            const std::uint32_t xv = apply_perm_mask(x, pi_vu);
            for (std::uint32_t mu = 0; mu < points; ++mu) {
                double w = 0.5 * e.weight * inv_points * noise[mu];
                red.psi.constraints.push_back(
                    {{red.psi_index(Side::Left, e.u, x),
                      red.psi_index(Side::Right, e.v, xv ^ mu)},
                     +1,
                     w});
            }
        }
    }
    red.e3_count = red.psi.constraints.size() - red.e1_count - red.e2_count;
    return red;
}

int FoldedReduction::folded_index(Side side, int vertex,
                                  std::uint32_t representative) const {
    int base = (side == Side::Left) ? vertex : left_count + vertex;
    return base * (1 << (m - 1)) + rep_index(representative);
}

FoldedReduction fold_2lin(const TwoLinReduction& red) {
    FoldedReduction fold;
    fold.m = red.m;
    fold.left_count = red.source.left_count;
    fold.right_count = red.source.right_count;
    fold.psi_folded.arity = 2;
    fold.psi_folded.variable_count =
        (fold.left_count + fold.right_count) << (fold.m - 1);
    fold.psi_folded.constraints.reserve(red.psi.constraints.size());

    const int m = fold.m;
    for (const LinConstraint& c : red.psi.constraints) {
        const PsiVertex& key1 = red.keys[c.vars[0]];
        const PsiVertex& key2 = red.keys[c.vars[1]];
        int parity = FoldedReduction::kappa(key1.mask) *
                     FoldedReduction::kappa(key2.mask);
        fold.psi_folded.constraints.push_back(
            {{fold.folded_index(key1.side, key1.vertex,
                                FoldedReduction::theta(key1.mask, m)),
              fold.folded_index(key2.side, key2.vertex,
                                FoldedReduction::theta(key2.mask, m))},
             parity,
             c.weight});
    }
    return fold;
}

ObservableAssignment fold_assignment(const TwoLinReduction& red,
                                     const ObservableAssignment& on_folded) {
    FoldedReduction fold = {};
    fold.m = red.m;
    fold.left_count = red.source.left_count;
    fold.right_count = red.source.right_count;
    const int folded_vertices =
        (fold.left_count + fold.right_count) << (fold.m - 1);
    if (static_cast<int>(on_folded.vertices.size()) != folded_vertices) {
        throw std::invalid_argument("fold_assignment: shape mismatch with psi'");
    }
    ObservableAssignment alpha;
    alpha.dim = on_folded.dim;
    alpha.folded = true;
    alpha.vertices.resize(red.psi.variable_count);
    for (int idx = 0; idx < red.psi.variable_count; ++idx) {
        const PsiVertex& key = red.keys[idx];
        const std::uint32_t rep = FoldedReduction::theta(key.mask, red.m);
        const double sign = FoldedReduction::kappa(key.mask);
        alpha.vertices[idx] =
            sign * on_folded.vertices[fold.folded_index(key.side, key.vertex, rep)];
    }
    return alpha;
}

ObservableAssignment unfold_assignment(const TwoLinReduction& red,
                                       const ObservableAssignment& folded_on_psi) {
    if (static_cast<int>(folded_on_psi.vertices.size()) != red.psi.variable_count) {
        throw std::invalid_argument("unfold_assignment: shape mismatch with psi");
    }
    const std::uint32_t all = (1u << red.m) - 1u;
    for (int idx = 0; idx < red.psi.variable_count; ++idx) {
        const PsiVertex& key = red.keys[idx];
        const int mirror =
            red.psi_index(key.side, key.vertex, key.mask ^ all);
        if ((folded_on_psi.vertices[idx] + folded_on_psi.vertices[mirror]).norm() >
            tol::folded) {
            throw std::invalid_argument("unfold_assignment: assignment is not folded");
        }
    }
    FoldedReduction fold = {};
    fold.m = red.m;
    fold.left_count = red.source.left_count;
    fold.right_count = red.source.right_count;
    ObservableAssignment out;
    out.dim = folded_on_psi.dim;
    out.folded = false;
    out.vertices.resize((fold.left_count + fold.right_count) << (red.m - 1));
    for (int idx = 0; idx < red.psi.variable_count; ++idx) {
        const PsiVertex& key = red.keys[idx];
        if (key.mask & 1u) continue;  // representatives only
        out.vertices[fold.folded_index(key.side, key.vertex, key.mask)] =
            folded_on_psi.vertices[idx];
    }
    return out;
}

ObservableAssignment lift_completeness_2lin(const TwoLinReduction& red,
                                            const MeasurementAssignment& pvm) {
    AssignmentVerdict verdict = validate_assignment(red.source, pvm);
    if (!verdict.ok) {
        throw std::invalid_argument("lift_completeness_2lin: assignment fails " +
                                    to_string(pvm.cls) + " validation: " +
                                    verdict.failures.front());
    }
    ObservableAssignment alpha;
    alpha.dim = pvm.dim;
    alpha.folded = true;
    alpha.vertices.resize(red.psi.variable_count);
    const int n = red.source.left_count + red.source.right_count;
    for (int w = 0; w < n; ++w) {
        OperatorFunction code = long_code_encode(pvm.vertices[w], red.m);
        Side side = (w < red.source.left_count) ? Side::Left : Side::Right;
        int vertex = (side == Side::Left) ? w : w - red.source.left_count;
        for (std::uint32_t x = 0; x < code.table.size(); ++x) {
            alpha.vertices[red.psi_index(side, vertex, x)] = code.table[x];
        }
    }
    return alpha;
}

double two_lin_completeness_value(double eps, double ulc_value) {
    return 0.5 + 0.25 * (1.0 - 2.0 * eps) * (1.0 + ulc_value);
}

int MaxCutReduction::psi_index(int vertex, std::uint32_t mask) const {
    return (vertex << m) | static_cast<int>(mask);
}

MaxCutReduction reduce_ulc_to_maxcut(const LabelCoverInstance& phi, double rho,
                                     int max_m) {
    require_unique_valid(phi);
    if (rho <= -1.0 || rho >= 0.0) {
        throw std::invalid_argument("reduce_ulc_to_maxcut: rho must lie in (-1, 0)");
    }
    require_budget(phi.alphabet, max_m);

    const std::vector<double> pu = left_marginals(phi);
    for (int u = 0; u < phi.left_count; ++u) {
        if (pu[u] <= 0.0) {
            throw std::invalid_argument(
                "reduce_ulc_to_maxcut: left vertex " + std::to_string(u) +
                " has zero marginal weight");
        }
    }

    MaxCutReduction red;
    red.source = phi;
    red.rho = rho;
    red.m = phi.alphabet;
    const int m = red.m;
    const std::uint32_t points = 1u << m;
    const double inv_points = 1.0 / static_cast<double>(points);
    const std::vector<double> noise = noise_weights(m, (1.0 - rho) / 2.0);

    red.psi.arity = 2;
    red.psi.variable_count = phi.right_count << m;
    red.keys.resize(red.psi.variable_count);
    for (int v = 0; v < phi.right_count; ++v) {
        for (std::uint32_t x = 0; x < points; ++x) {
            red.keys[red.psi_index(v, x)] = {Side::Right, v, x};
        }
    }

    // Neighborhood lists keep edge multiplicity: a repeated (u,v) edge counts
    // as two draws from the conditional distribution.
    std::vector<std::vector<const LabelCoverEdge*>> neighborhood(phi.left_count);
    for (const LabelCoverEdge& e : phi.edges) neighborhood[e.u].push_back(&e);

    for (int u = 0; u < phi.left_count; ++u) {
        for (const LabelCoverEdge* ev : neighborhood[u]) {
            const std::vector<int> pi_vu = invert_permutation(ev->pi);
            for (const LabelCoverEdge* ew : neighborhood[u]) {
                const std::vector<int> pi_wu = invert_permutation(ew->pi);
                const double pair_weight =
                    ev->weight * ew->weight / pu[u] * inv_points;
                for (std::uint32_t x = 0; x < points; ++x) {
                    const std::uint32_t xv = apply_perm_mask(x, pi_vu);
                    const std::uint32_t xw = apply_perm_mask(x, pi_wu);
                    for (std::uint32_t mu = 0; mu < points; ++mu) {
                        red.psi.constraints.push_back(
                            {{red.psi_index(ev->v, xv),
                              red.psi_index(ew->v, xw ^ mu)},
                             -1,
                             pair_weight * noise[mu]});
                    }
                }
            }
        }
    }
    return red;
}

ObservableAssignment lift_completeness_maxcut(const MaxCutReduction& red,
                                              const MeasurementAssignment& pvm) {
    MeasurementAssignment weak = pvm;
    weak.cls = CommutationClass::WeakQuantum;
    AssignmentVerdict verdict = validate_assignment(red.source, weak);
    if (!verdict.ok) {
        throw std::invalid_argument(
            "lift_completeness_maxcut: assignment fails weak-quantum validation: " +
            verdict.failures.front());
    }
    ObservableAssignment alpha;
    alpha.dim = pvm.dim;
    alpha.folded = true;  // the long code is odd
    alpha.vertices.resize(red.psi.variable_count);
    for (int v = 0; v < red.source.right_count; ++v) {
        OperatorFunction code =
            long_code_encode(pvm.vertices[red.source.left_count + v], red.m);
        for (std::uint32_t x = 0; x < code.table.size(); ++x) {
            alpha.vertices[red.psi_index(v, x)] = code.table[x];
        }
    }
    return alpha;
}

double maxcut_cross_term(const LabelCoverInstance& phi,
                         const MeasurementAssignment& pvm) {
    const std::vector<double> pu = left_marginals(phi);
    std::vector<std::vector<const LabelCoverEdge*>> neighborhood(phi.left_count);
    for (const LabelCoverEdge& e : phi.edges) neighborhood[e.u].push_back(&e);

    double total = 0.0;
    for (int u = 0; u < phi.left_count; ++u) {
        if (pu[u] <= 0.0) continue;
        for (const LabelCoverEdge* ev : neighborhood[u]) {
            const Measurement& piv = pvm.vertices[phi.left_count + ev->v];
            for (const LabelCoverEdge* ew : neighborhood[u]) {
                const Measurement& piw = pvm.vertices[phi.left_count + ew->v];
                double pair = 0.0;
                for (int c = 0; c < phi.alphabet; ++c) {
                    pair += real_trace(piv[ev->pi[c]] * piw[ew->pi[c]]);
                }
                total += ev->weight * ew->weight / pu[u] * pair;
            }
        }
    }
    return total;
}

double closed_form_psi_value(const TwoLinReduction& red,
                             const ObservableAssignment& alpha) {
    if (static_cast<int>(alpha.vertices.size()) != red.psi.variable_count) {
        throw std::invalid_argument("closed_form_psi_value: shape mismatch");
    }
    const int m = red.m;
    const std::uint32_t points = 1u << m;
    const double inv_points = 1.0 / static_cast<double>(points);
    const std::vector<double> noise = noise_weights(m, red.eps);

    std::vector<double> per_edge(red.source.edges.size(), 0.0);
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
                const CMatrix& av_x =
                    alpha.vertices[red.psi_index(Side::Right, edge.v, x)];
                const CMatrix& av_xmu =
                    alpha.vertices[red.psi_index(Side::Right, edge.v, x ^ mu)];
                const CMatrix& av_cross =
                    alpha.vertices[red.psi_index(Side::Right, edge.v, xv ^ mu)];
                double term = trace_product(au_x, au_xmu).real() +
                              trace_product(av_x, av_xmu).real() +
                              2.0 * trace_product(au_x, av_cross).real();
                acc += inv_points * noise[mu] * term;
            }
        }
        per_edge[e] = edge.weight * acc;
    }
    double expectation = 0.0;
    for (double v : per_edge) expectation += v;
    return 0.5 + expectation / 8.0;
}

double closed_form_psi_value(const MaxCutReduction& red,
                             const ObservableAssignment& alpha) {
    if (static_cast<int>(alpha.vertices.size()) != red.psi.variable_count) {
        throw std::invalid_argument("closed_form_psi_value: shape mismatch");
    }
    const int m = red.m;
    const std::uint32_t points = 1u << m;
    const double inv_points = 1.0 / static_cast<double>(points);
    const std::vector<double> noise = noise_weights(m, (1.0 - red.rho) / 2.0);
    const std::vector<double> pu = left_marginals(red.source);

    std::vector<std::vector<const LabelCoverEdge*>> neighborhood(
        red.source.left_count);
    for (const LabelCoverEdge& e : red.source.edges) neighborhood[e.u].push_back(&e);

    std::vector<double> per_u(red.source.left_count, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t u = 0; u < red.source.left_count; ++u) {
        double acc = 0.0;
        for (const LabelCoverEdge* ev : neighborhood[u]) {
            const std::vector<int> pi_vu = invert_permutation(ev->pi);
            for (const LabelCoverEdge* ew : neighborhood[u]) {
                const std::vector<int> pi_wu = invert_permutation(ew->pi);
                const double pair_weight = ev->weight * ew->weight / pu[u];
                double pair = 0.0;
                for (std::uint32_t x = 0; x < points; ++x) {
                    const CMatrix& av =
                        alpha.vertices[red.psi_index(ev->v, apply_perm_mask(x, pi_vu))];
                    const std::uint32_t xw = apply_perm_mask(x, pi_wu);
                    for (std::uint32_t mu = 0; mu < points; ++mu) {
                        const CMatrix& aw =
                            alpha.vertices[red.psi_index(ew->v, xw ^ mu)];
                        pair += inv_points * noise[mu] *
                                trace_product(av, aw).real();
                    }
                }
                acc += pair_weight * pair;
            }
        }
        per_u[u] = acc;
    }
    double expectation = 0.0;
    for (double v : per_u) expectation += v;
    return 0.5 - 0.5 * expectation;
}

}  // namespace qcsp
