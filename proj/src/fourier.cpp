#include "qcsp/fourier.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qcsp {

namespace {

std::uint32_t full_mask(int m) { return (m >= 32) ? ~0u : ((1u << m) - 1u); }

void check_table(int m, std::size_t size) {
    if (m < 0 || m > 24 || size != (std::size_t{1} << m)) {
        throw std::invalid_argument("hypercube table size does not match m");
    }
}

}  // namespace

bool is_odd(const OperatorFunction& f, double eps) {
    check_table(f.m, f.table.size());
    const std::uint32_t all = full_mask(f.m);
    for (std::uint32_t x = 0; x < f.table.size(); ++x) {
        if ((f.table[x] + f.table[x ^ all]).norm() > eps) return false;
    }
    return true;
}

std::vector<double> scalar_fourier(const std::vector<double>& values) {
    std::vector<double> a = values;
    const std::size_t n = a.size();
    if ((n & (n - 1)) != 0 || n == 0) {
        throw std::invalid_argument("scalar_fourier: table size must be a power of 2");
    }
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                double x = a[j];
                double y = a[j + len];
                a[j] = x + y;
                a[j + len] = x - y;
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(n);
    for (double& v : a) v *= inv;
    return a;
}

std::vector<double> scalar_inverse_fourier(const std::vector<double>& coeffs) {
    std::vector<double> a = scalar_fourier(coeffs);
    const double n = static_cast<double>(a.size());
    for (double& v : a) v *= n;
    return a;
}

FourierTable fourier_transform(const OperatorFunction& f) {
    check_table(f.m, f.table.size());
    FourierTable t;
    t.m = f.m;
    t.dim = f.dim;
    const std::size_t size = f.table.size();
    t.table.resize(size);

    if (f.dim == 1) {
        std::vector<double> values(size);
        for (std::size_t x = 0; x < size; ++x) values[x] = f.table[x](0, 0).real();
        std::vector<double> coeffs = scalar_fourier(values);
        for (std::size_t s = 0; s < size; ++s) {
            t.table[s] = CMatrix::Constant(1, 1, coeffs[s]);
        }
        return t;
    }

    const double inv = 1.0 / static_cast<double>(size);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(size); ++s) {
        CMatrix acc = CMatrix::Zero(f.dim, f.dim);
        for (std::uint32_t x = 0; x < size; ++x) {
            acc += static_cast<double>(chi(static_cast<std::uint32_t>(s), x)) *
                   f.table[x];
        }
        t.table[s] = acc * inv;
    }
    return t;
}

OperatorFunction inverse_fourier(const FourierTable& t) {
    check_table(t.m, t.table.size());
    OperatorFunction f;
    f.m = t.m;
    f.dim = t.dim;
    const std::size_t size = t.table.size();
    f.table.resize(size);
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(size); ++x) {
        CMatrix acc = CMatrix::Zero(t.dim, t.dim);
        for (std::uint32_t s = 0; s < size; ++s) {
            acc += static_cast<double>(chi(s, static_cast<std::uint32_t>(x))) *
                   t.table[s];
        }
        f.table[x] = acc;
    }
    return f;
}

namespace reference {

FourierTable fourier_transform_direct(const OperatorFunction& f) {
    check_table(f.m, f.table.size());
    FourierTable t;
    t.m = f.m;
    t.dim = f.dim;
    const std::size_t size = f.table.size();
    const double inv = 1.0 / static_cast<double>(size);
    t.table.resize(size);
    for (std::uint32_t s = 0; s < size; ++s) {
        CMatrix acc = CMatrix::Zero(f.dim, f.dim);
        for (std::uint32_t x = 0; x < size; ++x) {
            acc += static_cast<double>(chi(s, x)) * f.table[x];
        }
        t.table[s] = acc * inv;
    }
    return t;
}

}  // namespace reference

double influence(const std::vector<double>& coeffs, int m, int a, int degree_cap) {
    if (a < 0 || a >= m) throw std::invalid_argument("influence: index out of range");
    double total = 0.0;
    for (std::uint32_t s = 0; s < coeffs.size(); ++s) {
        if (((s >> a) & 1u) == 0u) continue;
        if (std::popcount(s) > degree_cap) continue;
        total += coeffs[s] * coeffs[s];
    }
    return total;
}

double influence(const FourierTable& t, int a, int degree_cap) {
    if (a < 0 || a >= t.m) throw std::invalid_argument("influence: index out of range");
    CMatrix acc = CMatrix::Zero(t.dim, t.dim);
    for (std::uint32_t s = 0; s < t.table.size(); ++s) {
        if (((s >> a) & 1u) == 0u) continue;
        if (std::popcount(s) > degree_cap) continue;
        acc += t.table[s] * t.table[s];
    }
    return real_trace(acc);
}

std::vector<double> noise_weights(int m, double minus_probability) {
    const std::size_t size = std::size_t{1} << m;
    std::vector<double> w(size);
    for (std::uint32_t mu = 0; mu < size; ++mu) {
        int k = std::popcount(mu);
        w[mu] = std::pow(minus_probability, k) *
                std::pow(1.0 - minus_probability, m - k);
    }
    return w;
}

double noise_stability(const std::vector<double>& values, double rho) {
    if (rho <= -1.0 || rho > 0.0) {
        throw std::invalid_argument("noise_stability: rho must lie in (-1, 0]");
    }
    const std::size_t size = values.size();
    if ((size & (size - 1)) != 0 || size == 0) {
        throw std::invalid_argument("noise_stability: table size must be a power of 2");
    }
    const int m = std::countr_zero(size);
    const std::vector<double> mu_weight = noise_weights(m, (1.0 - rho) / 2.0);
    const double inv = 1.0 / static_cast<double>(size);
    double total = 0.0;
    for (std::uint32_t x = 0; x < size; ++x) {
        for (std::uint32_t mu = 0; mu < size; ++mu) {
            total += inv * mu_weight[mu] * values[x] * values[x ^ mu];
        }
    }
    return total;
}

ObsPovmResult povm_from_observable_function(const OperatorFunction& alpha) {
    check_table(alpha.m, alpha.table.size());
    for (std::uint32_t x = 0; x < alpha.table.size(); ++x) {
        if (!is_observable(alpha.table[x])) {
            throw std::invalid_argument("povm_from_observable_function: entry " +
                                        std::to_string(x) + " is not an observable");
        }
    }
    FourierTable t = fourier_transform(alpha);
    ObsPovmResult out;
    out.povm.assign(alpha.m, CMatrix::Zero(alpha.dim, alpha.dim));
    for (std::uint32_t s = 1; s < t.table.size(); ++s) {
        const CMatrix sq = t.table[s] * t.table[s] / std::popcount(s);
        for (int a = 0; a < alpha.m; ++a) {
            if ((s >> a) & 1u) out.povm[a] += sq;
        }
    }
    out.remainder = CMatrix::Identity(alpha.dim, alpha.dim);
    for (const CMatrix& p : out.povm) out.remainder -= p;
    out.remainder_norm = out.remainder.norm();
    return out;
}

double parseval_defect(const FourierTable& t) {
    CMatrix acc = CMatrix::Zero(t.dim, t.dim);
    for (const CMatrix& c : t.table) acc += c * c;
    return (acc - CMatrix::Identity(t.dim, t.dim)).norm();
}

}  // namespace qcsp
