#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>

#include "qcsp/config.hpp"

namespace qcsp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline double frobenius(const CMatrix& a) { return a.norm(); }

inline double hermiticity_defect(const CMatrix& a) {
    return (a - a.adjoint()).norm();
}

// Dimension-normalized trace: (Σ diagonal entries)/d.
inline Complex normalized_trace(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("normalized_trace: operator is not square");
    }
    return a.trace() / static_cast<double>(a.rows());
}

// Real part of a normalized trace whose imaginary residue must vanish.
inline double real_trace(const CMatrix& a, double imag_tol = tol::trace_imag) {
    Complex t = normalized_trace(a);
    if (std::abs(t.imag()) > imag_tol) {
        throw std::runtime_error("real_trace: imaginary residue " +
                                 std::to_string(std::abs(t.imag())) +
                                 " exceeds tolerance");
    }
    return t.real();
}

inline double observable_defect(const CMatrix& x) {
    const CMatrix id = CMatrix::Identity(x.rows(), x.cols());
    return std::max(hermiticity_defect(x), (x.adjoint() * x - id).norm());
}

inline bool is_observable(const CMatrix& x, double eps = tol::observable) {
    return x.rows() == x.cols() && observable_defect(x) <= eps;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Neumaier compensated summation; the reduction weight tables hold ~1e5 terms
// and the validators check Σw = 1 to 1e−12, tighter than naive accumulation.
struct Accumulator {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    double total() const { return sum + compensation; }
};

inline double compensated_sum(std::span<const double> values) {
    Accumulator acc;
    for (double v : values) acc.add(v);
    return acc.total();
}

}  // namespace qcsp
