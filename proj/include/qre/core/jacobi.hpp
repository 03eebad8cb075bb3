#pragma once

#include <numeric>
#include <vector>

#include "qre/core/matrix.hpp"

namespace qre {

struct SpectralDecomposition {
    RealVector eigenvalues;  // ascending
    Matrix frame;            // eigenvectors in columns

    Eigen::Index dim() const { return eigenvalues.size(); }
    double min() const { return eigenvalues(0); }
    double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

inline constexpr double kJacobiTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index q = 1; q < a.cols(); ++q)
        for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

// One rotation zeroing a(p,q). The phase e^{i phi} of a(p,q) is absorbed into
// column q first so the remaining 2x2 problem is real symmetric.
inline void jacobi_rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Complex conjPhase = std::conj(phase);

    // A <- A J with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p,q)
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * conjPhase * akq;
        a(k, q) = s * akp + c * conjPhase * akq;
        const Complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * conjPhase * vkq;
        v(k, q) = s * vkp + c * conjPhase * vkq;
    }
    // A <- J* A
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * phase * aqk;
        a(q, k) = s * apk + c * phase * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = Complex(a(p, p).real(), 0.0);
    a(q, q) = Complex(a(q, q).real(), 0.0);
}

}  // namespace detail

/// Cyclic Jacobi for a complex Hermitian matrix. The input is assumed Hermitian;
/// only its Hermitian part is used. Converged sweeps are followed by one polish sweep.
inline SpectralDecomposition jacobi_eigen(const Matrix& input) {
    if (input.rows() != input.cols()) throw DimensionMismatch(input.rows(), input.cols());
    const Eigen::Index n = input.rows();
    Matrix a = hermitian_part(input);
    Matrix v = Matrix::Identity(n, n);
    const double threshold = kJacobiTolerance * a.norm();

    bool polished = false;
    int sweeps = 0;
    while (true) {
        const double off = detail::off_diagonal_norm(a);
        if (off <= threshold) {
            if (polished || off == 0.0) break;
            polished = true;
        } else if (sweeps >= kJacobiMaxSweeps) {
            throw NonConvergence("Jacobi eigensolver", sweeps, off / std::max(a.norm(), 1e-300));
        }
        ++sweeps;
        for (Eigen::Index p = 0; p + 1 < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.frame.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = a(order[k], order[k]).real();
        out.frame.col(k) = v.col(order[k]);
    }
    return out;
}

/// frame * diag(values) * frame*
inline Matrix reconstruct(const Matrix& frame, const RealVector& values) {
    return hermitian_part(frame * values.cast<Complex>().asDiagonal() * frame.adjoint());
}

inline Matrix reconstruct(const SpectralDecomposition& s) { return reconstruct(s.frame, s.eigenvalues); }

}  // namespace qre
