#include "qcsp/instance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qcsp/linalg.hpp"
#include "qcsp/rng.hpp"

namespace qcsp {

namespace {

void check_weight_sum(const std::vector<double>& weights,
                      std::vector<std::string>& violations) {
    double total = compensated_sum(weights);
    if (std::abs(total - 1.0) > tol::weight_sum) {
        violations.push_back("weights sum to " + std::to_string(total) +
                             ", deviation exceeds 1e-12");
    }
    for (double w : weights) {
        if (w < 0.0) {
            violations.push_back("negative weight " + std::to_string(w));
            break;
        }
    }
}

}  // namespace

bool is_maxcut(const LinInstance& lin) {
    if (lin.arity != 2) return false;
    return std::all_of(lin.constraints.begin(), lin.constraints.end(),
                       [](const LinConstraint& c) { return c.parity == -1; });
}

LinInstance make_maxcut(int variable_count,
                        const std::vector<std::pair<int, int>>& edges,
                        const std::vector<double>& weights) {
    if (edges.size() != weights.size()) {
        throw std::invalid_argument("make_maxcut: edge/weight count mismatch");
    }
    LinInstance lin;
    lin.arity = 2;
    lin.variable_count = variable_count;
    lin.constraints.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        lin.constraints.push_back(
            {{edges[i].first, edges[i].second}, -1, weights[i]});
    }
    return lin;
}

LinInstance make_maxcut_uniform(int variable_count,
                                const std::vector<std::pair<int, int>>& edges) {
    std::vector<double> w(edges.size(), 1.0 / static_cast<double>(edges.size()));
    return make_maxcut(variable_count, edges, w);
}

Validation validate_instance(const GeneralCspInstance& inst) {
    Validation v;
    if (inst.arity <= 0) v.violations.push_back("arity must be positive");
    if (inst.alphabet <= 0) v.violations.push_back("alphabet must be positive");
    if (inst.variable_count <= 0)
        v.violations.push_back("variable count must be positive");
    std::vector<double> weights;
    weights.reserve(inst.constraints.size());
    for (std::size_t e = 0; e < inst.constraints.size(); ++e) {
        const Constraint& c = inst.constraints[e];
        weights.push_back(c.weight);
        if (static_cast<int>(c.vars.size()) != inst.arity) {
            v.violations.push_back("constraint " + std::to_string(e) +
                                   ": tuple size != arity");
        }
        for (int idx : c.vars) {
            if (idx < 0 || idx >= inst.variable_count) {
                v.violations.push_back("constraint " + std::to_string(e) +
                                       ": variable index " + std::to_string(idx) +
                                       " out of range");
            }
        }
        for (const auto& tuple : c.accept) {
            if (static_cast<int>(tuple.size()) != inst.arity) {
                v.violations.push_back("constraint " + std::to_string(e) +
                                       ": accepted tuple size != arity");
                break;
            }
            for (int a : tuple) {
                if (a < 0 || a >= inst.alphabet) {
                    v.violations.push_back("constraint " + std::to_string(e) +
                                           ": label out of range");
                    break;
                }
            }
        }
    }
    check_weight_sum(weights, v.violations);
    v.ok = v.violations.empty();
    return v;
}

Validation validate_instance(const LabelCoverInstance& inst) {
    Validation v;
    if (inst.left_count <= 0 || inst.right_count <= 0) {
        v.violations.push_back("vertex counts must be positive");
    }
    if (inst.alphabet <= 0) v.violations.push_back("alphabet must be positive");
    std::vector<double> weights;
    weights.reserve(inst.edges.size());
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        const LabelCoverEdge& edge = inst.edges[e];
        weights.push_back(edge.weight);
        if (edge.u < 0 || edge.u >= inst.left_count) {
            v.violations.push_back("edge " + std::to_string(e) +
                                   ": left index out of range");
        }
        if (edge.v < 0 || edge.v >= inst.right_count) {
            v.violations.push_back("edge " + std::to_string(e) +
                                   ": right index out of range");
        }
        if (static_cast<int>(edge.pi.size()) != inst.alphabet) {
            v.violations.push_back("edge " + std::to_string(e) +
                                   ": projection size != alphabet");
            continue;
        }
        bool in_range = true;
        for (int b : edge.pi) {
            if (b < 0 || b >= inst.alphabet) {
                v.violations.push_back("edge " + std::to_string(e) +
                                       ": projection image out of range");
                in_range = false;
                break;
            }
        }
        if (in_range && inst.unique) {
            std::vector<int> image = edge.pi;
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
                v.violations.push_back("edge " + std::to_string(e) +
                                       ": projection is not bijective");
            }
        }
    }
    check_weight_sum(weights, v.violations);
    v.ok = v.violations.empty();
    return v;
}

Validation validate_instance(const LinInstance& inst) {
    Validation v;
    if (inst.arity <= 0) v.violations.push_back("arity must be positive");
    if (inst.variable_count <= 0)
        v.violations.push_back("variable count must be positive");
    std::vector<double> weights;
    weights.reserve(inst.constraints.size());
    for (std::size_t e = 0; e < inst.constraints.size(); ++e) {
        const LinConstraint& c = inst.constraints[e];
        weights.push_back(c.weight);
        if (static_cast<int>(c.vars.size()) != inst.arity) {
            v.violations.push_back("constraint " + std::to_string(e) +
                                   ": tuple size != arity");
        }
        for (int idx : c.vars) {
            if (idx < 0 || idx >= inst.variable_count) {
                v.violations.push_back("constraint " + std::to_string(e) +
                                       ": variable index out of range");
            }
        }
        if (c.parity != 1 && c.parity != -1) {
            v.violations.push_back("constraint " + std::to_string(e) +
                                   ": parity must be +1 or -1");
        }
    }
    check_weight_sum(weights, v.violations);
    v.ok = v.violations.empty();
    return v;
}

GeneralCspInstance labelcover_to_general(const LabelCoverInstance& lc) {
    GeneralCspInstance out;
    out.arity = 2;
    out.alphabet = lc.alphabet;
    out.variable_count = lc.left_count + lc.right_count;
    out.constraints.reserve(lc.edges.size());
    for (const LabelCoverEdge& e : lc.edges) {
        Constraint c;
        c.vars = {e.u, lc.left_count + e.v};
        c.weight = e.weight;
        c.accept.reserve(lc.alphabet);
        for (int a = 0; a < lc.alphabet; ++a) {
            c.accept.push_back({a, e.pi[a]});
        }
        out.constraints.push_back(std::move(c));
    }
    return out;
}

GeneralCspInstance lin_to_general(const LinInstance& lin) {
    GeneralCspInstance out;
    out.arity = lin.arity;
    out.alphabet = 2;
    out.variable_count = lin.variable_count;
    out.constraints.reserve(lin.constraints.size());
    const int k = lin.arity;
    for (const LinConstraint& c : lin.constraints) {
        Constraint general;
        general.vars = c.vars;
        general.weight = c.weight;
        // label 0 ↔ +1, label 1 ↔ −1: product of signs = (−1)^(number of 1s)
        for (std::uint32_t code = 0; code < (1u << k); ++code) {
            int sign = (std::popcount(code) % 2 == 0) ? +1 : -1;
            if (sign != c.parity) continue;
            std::vector<int> tuple(k);
            for (int i = 0; i < k; ++i) {
                tuple[i] = (code >> (k - 1 - i)) & 1u;
            }
            general.accept.push_back(std::move(tuple));
        }
        out.constraints.push_back(std::move(general));
    }
    return out;
}

std::uint32_t encode_labels(const std::vector<int>& labels, int m) {
    std::uint32_t code = 0;
    for (int a : labels) code = code * static_cast<std::uint32_t>(m) +
                                static_cast<std::uint32_t>(a);
    return code;
}

std::vector<int> invert_permutation(const std::vector<int>& pi) {
    std::vector<int> inv(pi.size());
    for (std::size_t a = 0; a < pi.size(); ++a) {
        inv[static_cast<std::size_t>(pi[a])] = static_cast<int>(a);
    }
    return inv;
}

namespace {

// Per-constraint lookup tables over encoded label tuples.
struct CompiledInstance {
    int m = 0;
    int n = 0;
    std::vector<std::vector<int>> vars;
    std::vector<std::vector<char>> accept_lut;
    std::vector<double> weights;
};

CompiledInstance compile(const GeneralCspInstance& inst) {
    CompiledInstance out;
    out.m = inst.alphabet;
    out.n = inst.variable_count;
    std::uint64_t table = 1;
    for (int i = 0; i < inst.arity; ++i) table *= inst.alphabet;
    for (const Constraint& c : inst.constraints) {
        out.vars.push_back(c.vars);
        out.weights.push_back(c.weight);
        std::vector<char> lut(table, 0);
        for (const auto& tuple : c.accept) {
            lut[encode_labels(tuple, inst.alphabet)] = 1;
        }
        out.accept_lut.push_back(std::move(lut));
    }
    return out;
}

double labeling_value(const CompiledInstance& ci, const std::vector<int>& labels) {
    double value = 0.0;
    for (std::size_t e = 0; e < ci.vars.size(); ++e) {
        std::uint32_t code = 0;
        for (int idx : ci.vars[e]) {
            code = code * static_cast<std::uint32_t>(ci.m) +
                   static_cast<std::uint32_t>(labels[idx]);
        }
        if (ci.accept_lut[e][code]) value += ci.weights[e];
    }
    return value;
}

// Decode labeling index with variable 0 most significant, so increasing index
// is lexicographic order on label sequences.
void decode_labeling(std::uint64_t index, int m, std::vector<int>& labels) {
    for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i) {
        labels[i] = static_cast<int>(index % m);
        index /= m;
    }
}

}  // namespace

BruteForceResult brute_force_classical_value(const GeneralCspInstance& inst,
                                             std::uint64_t labeling_budget) {
    double space = std::pow(static_cast<double>(inst.alphabet),
                            static_cast<double>(inst.variable_count));
    if (space > static_cast<double>(labeling_budget)) {
        throw BudgetExceeded("brute force requires m^n = " +
                                 std::to_string(space) + " labelings",
                             space);
    }
    const std::uint64_t total = static_cast<std::uint64_t>(space + 0.5);
    const CompiledInstance ci = compile(inst);

    struct BlockBest {
        double value = -1.0;
        std::uint64_t index = 0;
    };
    const std::uint64_t block_size = 4096;
    const std::uint64_t blocks = (total + block_size - 1) / block_size;
    std::vector<BlockBest> best(blocks);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
        std::vector<int> labels(inst.variable_count, 0);
        BlockBest local;
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * block_size;
        const std::uint64_t end = std::min(begin + block_size, total);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            decode_labeling(idx, inst.alphabet, labels);
            double v = labeling_value(ci, labels);
            if (v > local.value) {
                local.value = v;
                local.index = idx;
            }
        }
        best[b] = local;
    }

    // Deterministic merge in block order: strictly larger value wins, ties go
    // to the smaller labeling index (lexicographically smaller labeling).
    BlockBest winner;
    for (const BlockBest& b : best) {
        if (b.value > winner.value ||
            (b.value == winner.value && b.index < winner.index)) {
            winner = b;
        }
    }
    BruteForceResult out;
    out.value = winner.value;
    out.labeling.assign(inst.variable_count, 0);
    decode_labeling(winner.index, inst.alphabet, out.labeling);
    return out;
}

namespace reference {

BruteForceResult brute_force_value(const GeneralCspInstance& inst) {
    std::vector<int> labels(inst.variable_count, 0);
    BruteForceResult best;
    best.value = -1.0;
    for (;;) {
        double v = 0.0;
        for (const Constraint& c : inst.constraints) {
            std::vector<int> tuple;
            tuple.reserve(c.vars.size());
            for (int idx : c.vars) tuple.push_back(labels[idx]);
            if (std::find(c.accept.begin(), c.accept.end(), tuple) !=
                c.accept.end()) {
                v += c.weight;
            }
        }
        if (v > best.value) {
            best.value = v;
            best.labeling = labels;
        }
        // advance odometer, least significant digit last
        int pos = inst.variable_count - 1;
        while (pos >= 0) {
            if (++labels[pos] < inst.alphabet) break;
            labels[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return best;
}

}  // namespace reference

LabelCoverInstance generate_random_ulc(int left_count, int right_count, int m,
                                       double edge_density, std::uint64_t seed) {
    if (left_count <= 0 || right_count <= 0 || m <= 0) {
        throw std::invalid_argument("generate_random_ulc: counts must be positive");
    }
    if (edge_density <= 0.0 || edge_density > 1.0) {
        throw std::invalid_argument("generate_random_ulc: density must be in (0,1]");
    }
    auto rng = substream(seed, "gen-ulc");
    LabelCoverInstance inst;
    inst.left_count = left_count;
    inst.right_count = right_count;
    inst.alphabet = m;
    inst.unique = true;
    // The Bernoulli pass can come up empty at small densities; redraw from the
    // continuing stream a bounded number of times before giving up.
    for (int attempt = 0; attempt < 64 && inst.edges.empty(); ++attempt) {
        for (int u = 0; u < left_count; ++u) {
            for (int v = 0; v < right_count; ++v) {
                if (edge_density < 1.0 && uniform01(rng) >= edge_density) continue;
                LabelCoverEdge e;
                e.u = u;
                e.v = v;
                e.pi.resize(m);
                std::iota(e.pi.begin(), e.pi.end(), 0);
                for (int i = m - 1; i > 0; --i) {
                    int j = static_cast<int>(uniform_below(rng, i + 1));
                    std::swap(e.pi[i], e.pi[j]);
                }
                inst.edges.push_back(std::move(e));
            }
        }
    }
    if (inst.edges.empty()) {
        throw std::runtime_error("generate_random_ulc: sampled edge set is empty");
    }
    for (LabelCoverEdge& e : inst.edges) {
        e.weight = 1.0 / static_cast<double>(inst.edges.size());
    }
    return inst;
}

}  // namespace qcsp
