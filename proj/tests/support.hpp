#pragma once

#include <random>
#include <vector>

#include "qcsp/assignment.hpp"
#include "qcsp/instance.hpp"
#include "qcsp/linalg.hpp"
#include "qcsp/operators.hpp"
#include "qcsp/rng.hpp"

// Seeded generators shared by the unit and acceptance suites. Everything here
// draws through qcsp::substream so test data is reproducible.

namespace support {

using namespace qcsp;

inline CMatrix random_gaussian_matrix(int d, std::mt19937_64& rng) {
    CMatrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = Complex(gaussian(rng), gaussian(rng));
        }
    }
    return g;
}

inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
    Eigen::HouseholderQR<CMatrix> qr(random_gaussian_matrix(d, rng));
    CMatrix q = qr.householderQ();
    // Fix the phase so the distribution does not depend on the QR convention.
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        Complex diag = r(i, i);
        if (std::abs(diag) > 1e-12) q.col(i) *= diag / std::abs(diag);
    }
    return q;
}

inline CMatrix random_hermitian(int d, std::mt19937_64& rng) {
    CMatrix g = random_gaussian_matrix(d, rng);
    return (g + g.adjoint()) / 2.0;
}

// V diag(±1) V* with at least one −1 possible; signs drawn per column.
inline CMatrix random_observable(int d, std::mt19937_64& rng) {
    CMatrix v = random_unitary(d, rng);
    CMatrix diag = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        diag(i, i) = (rng() & 1u) ? -1.0 : 1.0;
    }
    return v * diag * v.adjoint();
}

// Random basis assignment of d eigenvectors to m outcomes (some outcomes may
// be the zero projection when m > d).
inline Measurement random_pvm(int d, int m, std::mt19937_64& rng) {
    CMatrix v = random_unitary(d, rng);
    Measurement p(m, CMatrix::Zero(d, d));
    for (int col = 0; col < d; ++col) {
        int outcome = static_cast<int>(uniform_below(rng, m));
        p[outcome] += v.col(col) * v.col(col).adjoint();
    }
    return p;
}

inline Measurement diagonal_pvm(int d, int m, std::mt19937_64& rng) {
    Measurement p(m, CMatrix::Zero(d, d));
    for (int col = 0; col < d; ++col) {
        int outcome = static_cast<int>(uniform_below(rng, m));
        p[outcome](col, col) = 1.0;
    }
    return p;
}

// Self-commuting POVM in a random shared eigenbasis: per basis column a random
// probability vector over outcomes.
inline Measurement random_self_commuting_povm(int d, int m, std::mt19937_64& rng) {
    CMatrix v = random_unitary(d, rng);
    std::vector<std::vector<double>> w(m, std::vector<double>(d, 0.0));
    for (int col = 0; col < d; ++col) {
        double total = 0.0;
        for (int a = 0; a < m; ++a) {
            w[a][col] = -std::log(uniform01(rng) + 1e-300);
            total += w[a][col];
        }
        for (int a = 0; a < m; ++a) w[a][col] /= total;
    }
    Measurement p(m, CMatrix::Zero(d, d));
    for (int a = 0; a < m; ++a) {
        CMatrix diag = CMatrix::Zero(d, d);
        for (int col = 0; col < d; ++col) diag(col, col) = w[a][col];
        p[a] = v * diag * v.adjoint();
    }
    return p;
}

// Quantum ULC assignment via a tensor split: left PVMs act on the first
// factor, right PVMs on the second, so every edge pair commutes while
// same-side pairs generally do not.
inline MeasurementAssignment random_quantum_ulc_assignment(
    const LabelCoverInstance& phi, int left_dim, int right_dim,
    std::uint64_t seed) {
    auto rng = substream(seed, "quantum-ulc-assignment");
    MeasurementAssignment asg;
    asg.dim = left_dim * right_dim;
    asg.cls = CommutationClass::Quantum;
    const CMatrix idl = CMatrix::Identity(left_dim, left_dim);
    const CMatrix idr = CMatrix::Identity(right_dim, right_dim);
    for (int u = 0; u < phi.left_count; ++u) {
        Measurement local = random_pvm(left_dim, phi.alphabet, rng);
        Measurement lifted;
        for (const CMatrix& op : local) lifted.push_back(kron(op, idr));
        asg.vertices.push_back(std::move(lifted));
    }
    for (int v = 0; v < phi.right_count; ++v) {
        Measurement local = random_pvm(right_dim, phi.alphabet, rng);
        Measurement lifted;
        for (const CMatrix& op : local) lifted.push_back(kron(idl, op));
        asg.vertices.push_back(std::move(lifted));
    }
    return asg;
}

// Weak-quantum variant: the right side shares one eigenbasis on its factor.
inline MeasurementAssignment random_weak_quantum_ulc_assignment(
    const LabelCoverInstance& phi, int left_dim, int right_dim,
    std::uint64_t seed) {
    auto rng = substream(seed, "weak-quantum-ulc-assignment");
    MeasurementAssignment asg;
    asg.dim = left_dim * right_dim;
    asg.cls = CommutationClass::WeakQuantum;
    const CMatrix idl = CMatrix::Identity(left_dim, left_dim);
    const CMatrix idr = CMatrix::Identity(right_dim, right_dim);
    for (int u = 0; u < phi.left_count; ++u) {
        Measurement local = random_pvm(left_dim, phi.alphabet, rng);
        Measurement lifted;
        for (const CMatrix& op : local) lifted.push_back(kron(op, idr));
        asg.vertices.push_back(std::move(lifted));
    }
    const CMatrix shared_basis = random_unitary(right_dim, rng);
    for (int v = 0; v < phi.right_count; ++v) {
        Measurement diag = diagonal_pvm(right_dim, phi.alphabet, rng);
        Measurement lifted;
        for (const CMatrix& op : diag) {
            lifted.push_back(kron(idl, shared_basis * op * shared_basis.adjoint()));
        }
        asg.vertices.push_back(std::move(lifted));
    }
    return asg;
}

// Complete bipartite ULC whose bijections are conditioned on a planted
// labeling, so the instance has classical value exactly 1.
inline LabelCoverInstance planted_ulc(int left, int right, int m,
                                      std::uint64_t seed) {
    auto rng = substream(seed, "planted-ulc");
    std::vector<int> left_label(left), right_label(right);
    for (int& l : left_label) l = static_cast<int>(uniform_below(rng, m));
    for (int& l : right_label) l = static_cast<int>(uniform_below(rng, m));
    LabelCoverInstance phi;
    phi.left_count = left;
    phi.right_count = right;
    phi.alphabet = m;
    phi.unique = true;
    for (int u = 0; u < left; ++u) {
        for (int v = 0; v < right; ++v) {
            std::vector<int> pi(m);
            for (int i = 0; i < m; ++i) pi[i] = i;
            for (int i = m - 1; i > 0; --i) {
                int j = static_cast<int>(uniform_below(rng, i + 1));
                std::swap(pi[i], pi[j]);
            }
            // swap two images so the planted labels agree on this edge
            for (int i = 0; i < m; ++i) {
                if (pi[i] == right_label[v]) {
                    std::swap(pi[i], pi[left_label[u]]);
                    break;
                }
            }
            phi.edges.push_back(
                {u, v, std::move(pi), 1.0 / static_cast<double>(left * right)});
        }
    }
    return phi;
}

inline std::vector<int> planted_labeling(const LabelCoverInstance& phi,
                                         std::uint64_t seed) {
    auto rng = substream(seed, "planted-ulc");
    std::vector<int> labels(phi.left_count + phi.right_count);
    for (int u = 0; u < phi.left_count; ++u) {
        labels[u] = static_cast<int>(uniform_below(rng, phi.alphabet));
    }
    for (int v = 0; v < phi.right_count; ++v) {
        labels[phi.left_count + v] =
            static_cast<int>(uniform_below(rng, phi.alphabet));
    }
    return labels;
}

inline LinInstance random_maxcut(int n, double density, std::uint64_t seed) {
    auto rng = substream(seed, "random-maxcut");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (uniform01(rng) < density) edges.push_back({i, j});
        }
    }
    if (edges.empty()) edges.push_back({0, n > 1 ? 1 : 0});
    std::vector<double> weights(edges.size());
    double total = 0.0;
    for (double& w : weights) {
        w = uniform01(rng) + 0.1;
        total += w;
    }
    for (double& w : weights) w /= total;
    return make_maxcut(n, edges, weights);
}

// Odd observable-valued function: independent observables on representatives,
// mirrored with a sign flip. With `commuting`, all values share one eigenbasis.
inline OperatorFunction random_odd_observable_function(int m, int d,
                                                       std::mt19937_64& rng,
                                                       bool commuting) {
    OperatorFunction f;
    f.m = m;
    f.dim = d;
    f.table.resize(std::size_t{1} << m);
    const std::uint32_t all = (1u << m) - 1u;
    CMatrix shared = random_unitary(d, rng);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
        if (x & 1u) continue;  // representatives have bit 0 clear
        CMatrix obs;
        if (commuting) {
            CMatrix diag = CMatrix::Zero(d, d);
            for (int i = 0; i < d; ++i) diag(i, i) = (rng() & 1u) ? -1.0 : 1.0;
            obs = shared * diag * shared.adjoint();
        } else {
            obs = random_observable(d, rng);
        }
        f.table[x] = obs;
        f.table[x ^ all] = -obs;
    }
    return f;
}

inline std::vector<double> random_pm1_function(int m, std::mt19937_64& rng) {
    std::vector<double> values(std::size_t{1} << m);
    for (double& v : values) v = (rng() & 1u) ? -1.0 : 1.0;
    return values;
}

inline std::vector<int> random_permutation(int m, std::mt19937_64& rng) {
    std::vector<int> pi(m);
    for (int i = 0; i < m; ++i) pi[i] = i;
    for (int i = m - 1; i > 0; --i) {
        int j = static_cast<int>(uniform_below(rng, i + 1));
        std::swap(pi[i], pi[j]);
    }
    return pi;
}

}  // namespace support
