#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "qre/core/errors.hpp"

namespace qre {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline void require_same_dim(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch(a.rows(), b.rows());
}

inline double max_abs_entry(const Matrix& m) {
    double out = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) out = std::max(out, std::abs(m(i, j)));
    return out;
}

inline bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

// (M + M*)/2 with an exactly real diagonal.
inline Matrix hermitian_part(const Matrix& m) {
    Matrix out = 0.5 * (m + m.adjoint());
    for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, i) = Complex(out(i, i).real(), 0.0);
    return out;
}

inline double trace_real(const Matrix& m) { return m.trace().real(); }

// Re Tr[A* B]
inline double hs_inner(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b);
    return (a.conjugate().cwiseProduct(b)).sum().real();
}

// Re Tr[A B] without forming the product.
inline double trace_product(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b);
    return (a.transpose().cwiseProduct(b)).sum().real();
}

// ||[A,B]||_HS / (||A||_HS ||B||_HS)
inline double commutator_norm(const Matrix& a, const Matrix& b) {
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return (a * b - b * a).norm() / (na * nb);
}

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace qre
