#include "qcsp/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

#include "qcsp/rng.hpp"

namespace qcsp {

int measurement_dim(const Measurement& p) {
    if (p.empty()) throw std::invalid_argument("measurement has no outcomes");
    const auto d = p.front().rows();
    for (const CMatrix& op : p) {
        if (op.rows() != d || op.cols() != d) {
            throw std::invalid_argument("measurement operators disagree on dimension");
        }
    }
    return static_cast<int>(d);
}

CommuteResult commute(const CMatrix& a, const CMatrix& b, double eps) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("commute: dimension mismatch");
    }
    CommuteResult r;
    r.defect = (a * b - b * a).norm();
    double scale = std::max(1.0, a.norm() * b.norm());
    r.commuting = r.defect <= eps * scale;
    return r;
}

MeasurementVerdict check_measurement(const Measurement& ops, MeasurementKind kind) {
    MeasurementVerdict verdict;
    auto record = [&verdict](double defect, double bound, const std::string& what) {
        verdict.worst_defect = std::max(verdict.worst_defect, defect);
        if (defect > bound) {
            verdict.failures.push_back(what + " defect " + std::to_string(defect));
        }
    };

    const int d = measurement_dim(ops);
    for (std::size_t a = 0; a < ops.size(); ++a) {
        const std::string tag = "outcome " + std::to_string(a);
        record(hermiticity_defect(ops[a]), tol::hermitian, tag + ": hermiticity");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(
            (ops[a] + ops[a].adjoint()) / 2.0, Eigen::EigenvaluesOnly);
        double min_eig = es.eigenvalues().minCoeff();
        record(std::max(0.0, -min_eig), tol::povm_psd, tag + ": positivity");
        if (kind == MeasurementKind::Pvm) {
            record((ops[a] * ops[a] - ops[a]).norm(), tol::pvm_idempotent,
                   tag + ": idempotence");
        }
    }

    CMatrix sum = CMatrix::Zero(d, d);
    for (const CMatrix& op : ops) sum += op;
    record((sum - CMatrix::Identity(d, d)).norm(), tol::povm_sum,
           "completeness (sum != identity)");

    if (kind == MeasurementKind::SelfCommutingPovm || kind == MeasurementKind::Pvm) {
        // PVM elements commute automatically in exact arithmetic; check anyway
        // so the verdict carries the numeric defect.
        for (std::size_t a = 0; a < ops.size(); ++a) {
            for (std::size_t b = a + 1; b < ops.size(); ++b) {
                CommuteResult c = commute(ops[a], ops[b]);
                record(c.defect, tol::commute * std::max(1.0, ops[a].norm() * ops[b].norm()),
                       "self-commutation (" + std::to_string(a) + "," +
                           std::to_string(b) + ")");
            }
        }
    }

    verdict.ok = verdict.failures.empty();
    return verdict;
}

namespace {

// Recursive cluster refinement. `basis` columns [begin, begin+size) span the
// current invariant subspace; `compressed` holds the family restricted to it.
void diagonalize_block(CMatrix& basis, Eigen::Index begin, Eigen::Index size,
                       std::vector<CMatrix> compressed, std::mt19937_64& rng,
                       int depth) {
    if (size <= 1 || depth > 64) return;

    double offdiag = 0.0;
    for (const CMatrix& op : compressed) {
        offdiag = std::max(offdiag, (op - CMatrix(op.diagonal().asDiagonal())).norm());
    }
    if (offdiag < 1e-14) return;

    CMatrix mix = CMatrix::Zero(size, size);
    for (const CMatrix& op : compressed) {
        mix += gaussian(rng) * op;
    }
    mix = (mix + mix.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(mix);
    const CMatrix& q = es.eigenvectors();

    basis.middleCols(begin, size) = basis.middleCols(begin, size) * q;
    for (CMatrix& op : compressed) op = q.adjoint() * op * q;

    const RVector evals = es.eigenvalues();
    double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
    Eigen::Index cluster_begin = 0;
    for (Eigen::Index i = 1; i <= size; ++i) {
        bool boundary = (i == size) ||
                        (evals(i) - evals(i - 1) > tol::simdiag_cluster * scale);
        if (!boundary) continue;
        Eigen::Index cluster_size = i - cluster_begin;
        if (cluster_size > 1) {
            std::vector<CMatrix> sub;
            sub.reserve(compressed.size());
            for (const CMatrix& op : compressed) {
                sub.push_back(op.block(cluster_begin, cluster_begin, cluster_size,
                                       cluster_size));
            }
            diagonalize_block(basis, begin + cluster_begin, cluster_size,
                              std::move(sub), rng, depth + 1);
        }
        cluster_begin = i;
    }
}

}  // namespace

SimDiagResult simultaneous_diagonalize(std::span<const CMatrix> family,
                                       double commute_tol, std::uint64_t seed) {
    if (family.empty()) {
        throw std::invalid_argument("simultaneous_diagonalize: empty family");
    }
    const auto d = family.front().rows();
    for (const CMatrix& op : family) {
        if (op.rows() != d || op.cols() != d) {
            throw std::invalid_argument("simultaneous_diagonalize: dimension mismatch");
        }
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            CommuteResult c = commute(family[i], family[j], commute_tol);
            if (!c.commuting) {
                throw std::invalid_argument(
                    "simultaneous_diagonalize: operators " + std::to_string(i) +
                    " and " + std::to_string(j) + " do not commute (defect " +
                    std::to_string(c.defect) + ")");
            }
        }
    }

    auto rng = substream(seed, "simdiag");
    SimDiagResult out;
    out.basis = CMatrix::Identity(d, d);
    std::vector<CMatrix> ops(family.begin(), family.end());
    diagonalize_block(out.basis, 0, d, ops, rng, 0);

    out.diagonals.reserve(family.size());
    for (const CMatrix& op : family) {
        CMatrix conj = out.basis.adjoint() * op * out.basis;
        out.off_diagonal_residual =
            std::max(out.off_diagonal_residual,
                     (conj - CMatrix(conj.diagonal().asDiagonal())).norm());
        out.diagonals.push_back(conj.diagonal().real());
    }
    return out;
}

CliffordFamily clifford_generators(int r) {
    if (r < 1) throw std::invalid_argument("clifford_generators: r must be >= 1");
    const int qubits = (r + 1) / 2;
    const int dim = 1 << qubits;
    if (dim > budget::clifford_max_dim) {
        throw std::invalid_argument("clifford_generators: dimension 2^ceil(r/2) = " +
                                    std::to_string(dim) + " exceeds budget");
    }
    CMatrix px(2, 2), py(2, 2), pz(2, 2), id2 = CMatrix::Identity(2, 2);
    px << 0, 1, 1, 0;
    py << 0, Complex(0, -1), Complex(0, 1), 0;
    pz << 1, 0, 0, -1;

    CliffordFamily fam;
    fam.rank = r;
    fam.dimension = dim;
    fam.generators.reserve(r);
    for (int g = 0; g < r; ++g) {
        const int site = g / 2;
        const CMatrix& head = (g % 2 == 0) ? px : py;
        CMatrix word = CMatrix::Identity(1, 1);
        for (int q = 0; q < qubits; ++q) {
            if (q < site) {
                word = kron(word, pz);
            } else if (q == site) {
                word = kron(word, head);
            } else {
                word = kron(word, id2);
            }
        }
        fam.generators.push_back(std::move(word));
    }
    return fam;
}

Measurement binary_pvm_from_observable(const CMatrix& x) {
    if (!is_observable(x)) {
        throw std::invalid_argument("binary_pvm_from_observable: not an observable");
    }
    const CMatrix id = CMatrix::Identity(x.rows(), x.cols());
    return {(id + x) / 2.0, (id - x) / 2.0};
}

CMatrix observable_from_binary_pvm(const Measurement& pvm) {
    if (pvm.size() != 2) {
        throw std::invalid_argument("observable_from_binary_pvm: need 2 outcomes");
    }
    return pvm[0] - pvm[1];
}

}  // namespace qcsp
