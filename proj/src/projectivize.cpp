#include "qcsp/projectivize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcsp/rng.hpp"

namespace qcsp {

MinimalProjectionBasis minimal_projections(const Measurement& p,
                                           std::uint64_t seed) {
    MeasurementVerdict verdict =
        check_measurement(p, MeasurementKind::SelfCommutingPovm);
    if (!verdict.ok) {
        throw std::invalid_argument(
            "minimal_projections: input is not a self-commuting POVM (" +
            verdict.failures.front() + ")");
    }
    const int d = measurement_dim(p);
    const int m = static_cast<int>(p.size());

    SimDiagResult diag = simultaneous_diagonalize(
        std::span<const CMatrix>(p.data(), p.size()), tol::commute, seed);

    MinimalProjectionBasis out;
    out.basis = diag.basis;
    // Cluster columns by their joint eigenvalue tuples.
    for (int col = 0; col < d; ++col) {
        int found = -1;
        for (std::size_t b = 0; b < out.blocks.size() && found < 0; ++b) {
            const int rep = out.blocks[b].front();
            bool same = true;
            for (int a = 0; a < m; ++a) {
                if (std::abs(diag.diagonals[a](col) - diag.diagonals[a](rep)) >
                    tol::simdiag_cluster) {
                    same = false;
                    break;
                }
            }
            if (same) found = static_cast<int>(b);
        }
        if (found < 0) {
            out.blocks.push_back({col});
        } else {
            out.blocks[found].push_back(col);
        }
    }

    const int blocks = static_cast<int>(out.blocks.size());
    out.weights.assign(m, std::vector<double>(blocks, 0.0));
    for (int b = 0; b < blocks; ++b) {
        double column_sum = 0.0;
        for (int a = 0; a < m; ++a) {
            double mean = 0.0;
            for (int col : out.blocks[b]) mean += diag.diagonals[a](col);
            mean /= static_cast<double>(out.blocks[b].size());
            out.weights[a][b] = std::clamp(mean, 0.0, 1.0);
            column_sum += out.weights[a][b];
        }
        if (std::abs(column_sum - 1.0) > tol::block_weight_sum) {
            throw std::runtime_error(
                "minimal_projections: block weights sum to " +
                std::to_string(column_sum));
        }
    }
    return out;
}

CMatrix block_projection(const MinimalProjectionBasis& basis, int block) {
    const auto d = basis.basis.rows();
    CMatrix proj = CMatrix::Zero(d, d);
    for (int col : basis.blocks[block]) {
        proj += basis.basis.col(col) * basis.basis.col(col).adjoint();
    }
    return proj;
}

PvmDecomposition decompose_to_pvms(const MinimalProjectionBasis& basis) {
    const int m = static_cast<int>(basis.weights.size());
    const int blocks = static_cast<int>(basis.blocks.size());
    const auto d = basis.basis.rows();

    std::vector<CMatrix> delta(blocks);
    for (int b = 0; b < blocks; ++b) delta[b] = block_projection(basis, b);

    std::vector<std::vector<double>> remaining = basis.weights;
    double remaining_mass = 1.0;

    PvmDecomposition out;
    while (remaining_mass > 1e-12) {
        // Per block, the heaviest remaining outcome; the smallest of those
        // weights is peeled off as one deterministic PVM.
        std::vector<int> choice(blocks, 0);
        double lambda = remaining_mass;
        for (int b = 0; b < blocks; ++b) {
            int best = 0;
            for (int a = 1; a < m; ++a) {
                if (remaining[a][b] > remaining[best][b]) best = a;
            }
            choice[b] = best;
            lambda = std::min(lambda, remaining[best][b]);
        }
        if (lambda <= 0.0) break;
        Measurement pvm(m, CMatrix::Zero(d, d));
        for (int b = 0; b < blocks; ++b) {
            pvm[choice[b]] += delta[b];
            remaining[choice[b]][b] -= lambda;
        }
        out.pvms.push_back(std::move(pvm));
        out.weights.push_back(lambda);
        remaining_mass -= lambda;
    }
    return out;
}

namespace {

bool is_projective(const Measurement& p) {
    for (const CMatrix& op : p) {
        if ((op * op - op).norm() > tol::pvm_idempotent) return false;
    }
    return true;
}

// Linear coefficients of the objective in the block weights of vertex i:
// score[b][a] = ∂ω/∂w_{a,b}, from the constraints touching i with the rest of
// the working assignment fixed.
std::vector<std::vector<double>> block_scores(
    const GeneralCspInstance& inst, const std::vector<Measurement>& working,
    int vertex, const MinimalProjectionBasis& basis) {
    const int m = inst.alphabet;
    const int blocks = static_cast<int>(basis.blocks.size());
    std::vector<std::vector<double>> score(blocks, std::vector<double>(m, 0.0));
    const auto d = basis.basis.rows();

    for (const Constraint& c : inst.constraints) {
        int pos = -1;
        for (std::size_t i = 0; i < c.vars.size(); ++i) {
            if (c.vars[i] == vertex) {
                if (pos >= 0) {
                    throw std::invalid_argument(
                        "projectivize_assignment: constraint repeats a variable; "
                        "the objective is not linear per vertex");
                }
                pos = static_cast<int>(i);
            }
        }
        if (pos < 0) continue;

        for (const auto& tuple : c.accept) {
            // tr(L Δ_b R) = tr(Δ_b R L); conjugate RL once, then read block
            // diagonal sums.
            CMatrix left = CMatrix::Identity(d, d);
            for (int i = 0; i < pos; ++i) {
                left = left * working[c.vars[i]][tuple[i]];
            }
            CMatrix right = CMatrix::Identity(d, d);
            for (std::size_t i = pos + 1; i < c.vars.size(); ++i) {
                right = right * working[c.vars[i]][tuple[i]];
            }
            const CMatrix conj = basis.basis.adjoint() * (right * left) * basis.basis;
            for (int b = 0; b < blocks; ++b) {
                double contribution = 0.0;
                for (int col : basis.blocks[b]) {
                    contribution += conj(col, col).real();
                }
                score[b][tuple[pos]] +=
                    c.weight * contribution / static_cast<double>(d);
            }
        }
    }
    return score;
}

MeasurementAssignment run_rounding(const GeneralCspInstance& inst,
                                   const MeasurementAssignment& povm,
                                   std::uint64_t seed,
                                   std::vector<double>& value_trace) {
    MeasurementAssignment result = povm;
    result.kind = MeasurementKind::Pvm;
    const auto d = povm.dim;

    value_trace.clear();
    value_trace.push_back(eval_csp_value(inst, result));

    for (int vertex = 0; vertex < inst.variable_count; ++vertex) {
        if (is_projective(result.vertices[vertex])) {
            value_trace.push_back(value_trace.back());
            continue;
        }
        MinimalProjectionBasis basis = minimal_projections(
            result.vertices[vertex], mix_seed(seed, "projectivize", vertex));
        const auto score = block_scores(inst, result.vertices, vertex, basis);

        Measurement rounded(inst.alphabet, CMatrix::Zero(d, d));
        for (std::size_t b = 0; b < basis.blocks.size(); ++b) {
            int best = 0;
            for (int a = 1; a < inst.alphabet; ++a) {
                if (score[b][a] > score[b][best]) best = a;
            }
            rounded[best] += block_projection(basis, static_cast<int>(b));
        }
        result.vertices[vertex] = std::move(rounded);
        value_trace.push_back(eval_csp_value(inst, result));
    }
    return result;
}

}  // namespace

ProjectivizeResult projectivize_assignment(const GeneralCspInstance& inst,
                                           const MeasurementAssignment& povm,
                                           std::uint64_t seed) {
    if (static_cast<int>(povm.vertices.size()) != inst.variable_count) {
        throw std::invalid_argument("projectivize_assignment: shape mismatch");
    }
    ProjectivizeResult out;
    out.assignment = run_rounding(inst, povm, seed, out.value_trace);
    return out;
}

ProjectivizeResult projectivize_assignment(const LabelCoverInstance& inst,
                                           const MeasurementAssignment& povm,
                                           std::uint64_t seed) {
    return projectivize_assignment(labelcover_to_general(inst), povm, seed);
}

}  // namespace qcsp
