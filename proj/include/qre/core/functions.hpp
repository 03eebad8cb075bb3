#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>
#include <string>

#include "qre/core/types.hpp"

namespace qre {

enum class FunctionKind { Log, Exp, Power, XLogX };

inline constexpr double kDividedDifferenceSplit = 1e-7;

/// Scalar function applied at eigenvalue level.
struct ScalarFunction {
    FunctionKind kind = FunctionKind::Log;
    double exponent = 1.0;

    static ScalarFunction log() { return {FunctionKind::Log, 1.0}; }
    static ScalarFunction exp() { return {FunctionKind::Exp, 1.0}; }
    static ScalarFunction power(double p) { return {FunctionKind::Power, p}; }
    static ScalarFunction xlogx() { return {FunctionKind::XLogX, 1.0}; }

    bool needs_positive() const { return kind != FunctionKind::Exp; }

    std::string name() const {
        switch (kind) {
            case FunctionKind::Log: return "log";
            case FunctionKind::Exp: return "exp";
            case FunctionKind::Power: return "power(" + std::to_string(exponent) + ")";
            case FunctionKind::XLogX: return "xlogx";
        }
        return "?";
    }

    double value(double x) const {
        switch (kind) {
            case FunctionKind::Log: return std::log(x);
            case FunctionKind::Exp: return std::exp(x);
            case FunctionKind::Power: return std::pow(x, exponent);
            case FunctionKind::XLogX: return x * std::log(x);
        }
        return 0.0;
    }

    double derivative(double x) const {
        switch (kind) {
            case FunctionKind::Log: return 1.0 / x;
            case FunctionKind::Exp: return std::exp(x);
            case FunctionKind::Power: return exponent * std::pow(x, exponent - 1.0);
            case FunctionKind::XLogX: return std::log(x) + 1.0;
        }
        return 0.0;
    }

    /// First divided difference (f(a) - f(b))/(a - b), midpoint derivative when a ~ b.
    double divided_difference(double a, double b) const {
        const double d = a - b;
        if (std::abs(d) <= kDividedDifferenceSplit * std::max(std::abs(a), std::abs(b)))
            return derivative(0.5 * (a + b));
        switch (kind) {
            case FunctionKind::Log: return std::log1p(d / b) / d;
            case FunctionKind::Exp: return std::exp(b) * std::expm1(d) / d;
            case FunctionKind::Power: return std::pow(b, exponent) * std::expm1(exponent * std::log1p(d / b)) / d;
            case FunctionKind::XLogX: return std::log(b) + a * std::log1p(d / b) / d;
        }
        return 0.0;
    }
};

/// (log a - log b)/(a - b)
inline double log_divided_difference(double a, double b) { return ScalarFunction::log().divided_difference(a, b); }

/// frame * diag(f(eigenvalues)) * frame*
template <class F>
Matrix spectral_apply(const SpectralDecomposition& s, F&& f) {
    RealVector values(s.dim());
    for (Eigen::Index i = 0; i < s.dim(); ++i) values(i) = f(s.eigenvalues(i));
    return reconstruct(s.frame, values);
}

/// In the eigenbasis of s, multiplies the entries of X entrywise by k(a_i, a_j).
template <class K>
Matrix kernel_apply(const SpectralDecomposition& s, const Matrix& x, K&& k) {
    require_same_dim(s.frame, x);
    Matrix t = s.frame.adjoint() * x * s.frame;
    const Eigen::Index n = s.dim();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) t(i, j) *= k(s.eigenvalues(i), s.eigenvalues(j));
    return hermitian_part(s.frame * t * s.frame.adjoint());
}

namespace detail {

inline void require_domain(const SpectralDecomposition& s, const ScalarFunction& f) {
    if (f.needs_positive() && !(s.min() > 0.0))
        throw DomainError(f.name() + " requires a positive spectrum (min eigenvalue " + std::to_string(s.min()) + ")");
}

// Spectral data of f(A), re-sorted ascending, without a second eigensolve.
inline SpectralDecomposition mapped_spectrum(const SpectralDecomposition& s, const RealVector& values) {
    const Eigen::Index n = s.dim();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return values(i) < values(j); });
    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.frame.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = values(order[k]);
        out.frame.col(k) = s.frame.col(order[k]);
    }
    return out;
}

}  // namespace detail

/// f(A) via the spectral decomposition of A.
inline HermitianMatrix apply_function(const HermitianMatrix& a, const ScalarFunction& f) {
    detail::require_domain(a.spectral(), f);
    RealVector values(a.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) values(i) = f.value(a.eigenvalues()(i));
    return make_hermitian(reconstruct(a.frame(), values), detail::mapped_spectrum(a.spectral(), values));
}

/// f(A) for a function that maps the spectrum into (0, inf).
inline PositiveMatrix apply_positive(const HermitianMatrix& a, const ScalarFunction& f) {
    detail::require_domain(a.spectral(), f);
    RealVector values(a.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) values(i) = f.value(a.eigenvalues()(i));
    return make_positive(reconstruct(a.frame(), values), detail::mapped_spectrum(a.spectral(), values));
}

inline HermitianMatrix logm(const PositiveMatrix& a) { return apply_function(a, ScalarFunction::log()); }
inline PositiveMatrix expm(const HermitianMatrix& h) { return apply_positive(h, ScalarFunction::exp()); }
inline PositiveMatrix powm(const PositiveMatrix& a, double p) { return apply_positive(a, ScalarFunction::power(p)); }
inline PositiveMatrix sqrtm(const PositiveMatrix& a) { return powm(a, 0.5); }
inline PositiveMatrix inverse(const PositiveMatrix& a) { return powm(a, -1.0); }

/// Daleckii-Krein map: in the eigenbasis of A, entries of X times the divided difference of f.
inline Matrix divided_difference_raw(const SpectralDecomposition& a, const Matrix& x, const ScalarFunction& f) {
    detail::require_domain(a, f);
    return kernel_apply(a, x, [&](double u, double v) { return f.divided_difference(u, v); });
}

inline HermitianMatrix divided_difference_apply(const HermitianMatrix& a, const HermitianMatrix& x,
                                                const ScalarFunction& f) {
    require_same_dim(a.matrix(), x.matrix());
    return HermitianMatrix(divided_difference_raw(a.spectral(), x.matrix(), f));
}

/// A X A*
inline HermitianMatrix sandwich(const Matrix& a, const HermitianMatrix& x) {
    if (a.rows() != a.cols()) throw DimensionMismatch(a.rows(), a.cols());
    require_same_dim(a, x.matrix());
    return HermitianMatrix(hermitian_part(a * x.matrix() * a.adjoint()));
}

struct SchattenNorms {
    double traceNorm = 0.0;
    double hsNorm = 0.0;
    double opNorm = 0.0;
};

inline SchattenNorms schatten(const RealVector& eigenvalues) {
    SchattenNorms out;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double a = std::abs(eigenvalues(i));
        out.traceNorm += a;
        out.hsNorm += a * a;
        out.opNorm = std::max(out.opNorm, a);
    }
    out.hsNorm = std::sqrt(out.hsNorm);
    return out;
}

inline SchattenNorms schatten(const HermitianMatrix& m) { return schatten(m.eigenvalues()); }

/// (sum |lambda_i|^p)^{1/p}
inline double schatten_p(const HermitianMatrix& m, double p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.dim(); ++i) s += std::pow(std::abs(m.eigenvalues()(i)), p);
    return std::pow(s, 1.0 / p);
}

inline double lambda_max(const HermitianMatrix& m) { return m.spectral().max(); }
inline double lambda_min(const HermitianMatrix& m) { return m.spectral().min(); }

/// Operator norm of a Hermitian matrix given as raw storage.
inline double op_norm(const Matrix& h) {
    const SpectralDecomposition s = jacobi_eigen(h);
    return std::max(std::abs(s.min()), std::abs(s.max()));
}

inline constexpr double kUnitaryTolerance = 1e-10;

inline double unitary_defect(const Matrix& frame) {
    return max_abs_entry(frame.adjoint() * frame - Matrix::Identity(frame.rows(), frame.cols()));
}

/// frame * diag(<u_j, X u_j>) * frame*
inline HermitianMatrix pinch(const HermitianMatrix& x, const Matrix& frame) {
    if (frame.rows() != frame.cols()) throw DimensionMismatch(frame.rows(), frame.cols());
    require_same_dim(frame, x.matrix());
    const double defect = unitary_defect(frame);
    if (defect > kUnitaryTolerance) throw NotUnitary(defect);
    RealVector d(x.dim());
    for (Eigen::Index j = 0; j < x.dim(); ++j)
        d(j) = (frame.col(j).adjoint() * x.matrix() * frame.col(j))(0, 0).real();
    return HermitianMatrix(reconstruct(frame, d));
}

}  // namespace qre
