#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "qre/core/functions.hpp"

namespace qre {

/// t -> X #_t Y for all real t, with X^{1/2} and the spectrum of X^{-1/2} Y X^{-1/2} cached.
class GeodesicPath {
public:
    GeodesicPath(const PositiveMatrix& x, const PositiveMatrix& y)
        : x_(x), y_(y), xHalf_(powm(x, 0.5).matrix()) {
        require_same_dim(x.matrix(), y.matrix());
        const Matrix xInvHalf = powm(x, -0.5).matrix();
        inner_ = jacobi_eigen(hermitian_part(xInvHalf * y.matrix() * xInvHalf));
        if (!(inner_.min() > 0.0)) throw DomainError("X^{-1/2} Y X^{-1/2} lost positivity");
        basis_ = xHalf_ * inner_.frame;
    }

    const PositiveMatrix& start() const { return x_; }
    const PositiveMatrix& end() const { return y_; }
    const SpectralDecomposition& inner_spectrum() const { return inner_; }

    /// X^{1/2} (X^{-1/2} Y X^{-1/2})^t X^{1/2}
    PositiveMatrix evaluate(double t) const {
        RealVector w(inner_.dim());
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::pow(inner_.eigenvalues(i), t);
        return PositiveMatrix(hermitian_part(basis_ * w.cast<Complex>().asDiagonal() * basis_.adjoint()));
    }

    /// ||log(X^{-1/2} Y X^{-1/2})||_2
    double length() const {
        double s = 0.0;
        for (Eigen::Index i = 0; i < inner_.dim(); ++i) s += std::pow(std::log(inner_.eigenvalues(i)), 2);
        return std::sqrt(s);
    }

private:
    PositiveMatrix x_;
    PositiveMatrix y_;
    Matrix xHalf_;
    SpectralDecomposition inner_;
    Matrix basis_;
};

inline PositiveMatrix weighted_geometric_mean(const PositiveMatrix& x, const PositiveMatrix& y, double t) {
    return GeodesicPath(x, y).evaluate(t);
}

/// A:B = 2 (A^{-1} + B^{-1})^{-1}
inline PositiveMatrix harmonic_mean(const PositiveMatrix& a, const PositiveMatrix& b) {
    require_same_dim(a.matrix(), b.matrix());
    const PositiveMatrix sum(hermitian_part(inverse(a).matrix() + inverse(b).matrix()));
    return PositiveMatrix(hermitian_part(2.0 * inverse(sum).matrix()));
}

inline double geodesic_distance(const PositiveMatrix& x, const PositiveMatrix& y) {
    return GeodesicPath(x, y).length();
}

/// Q^{1/2} Y Q^{1/2}
inline PositiveMatrix midpoint_inverse(const PositiveMatrix& q, const PositiveMatrix& y) {
    require_same_dim(q.matrix(), y.matrix());
    const Matrix qHalf = powm(q, 0.5).matrix();
    return PositiveMatrix(hermitian_part(qHalf * y.matrix() * qHalf));
}

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct QuadInterval {
    double a, b;
    int half;  // 0: lambda in (0,1], 1: lambda in [1,inf)
    Matrix value;
    double error;
    bool operator<(const QuadInterval& o) const { return error < o.error; }
};

template <class F>
QuadInterval gauss_kronrod(F&& f, double a, double b, int half) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const Matrix fc = f(c);
    Matrix kron = kKronrodWeights[7] * fc;
    Matrix gauss = kGaussWeights[3] * fc;
    for (int k = 0; k < 7; ++k) {
        const Matrix f1 = f(c - h * kKronrodNodes[k]);
        const Matrix f2 = f(c + h * kKronrodNodes[k]);
        kron += kKronrodWeights[k] * (f1 + f2);
        if (k % 2 == 1) gauss += kGaussWeights[k / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    return {a, b, half, kron, max_abs_entry(kron - gauss)};
}

}  // namespace detail

inline constexpr int kQuadratureMaxIntervals = 5000;

/// X #_t Y = sin(pi t)/(2 pi) int_0^inf X:(lambda Y) lambda^{-t-1} dlambda for t in (0,1).
/// Split at lambda = 1; lambda = v^{1/(1-t)} on (0,1] and 1/lambda = w^{1/t} on [1,inf) absorb
/// the endpoint singularities, leaving bounded integrands on (0,1) refined by adaptive
/// Gauss-Kronrod on the interval with the largest error estimate.
/// Uses LU inverses only; independent of the spectral definition.
inline PositiveMatrix geometric_mean_quadrature(const PositiveMatrix& x, const PositiveMatrix& y, double t,
                                                double relTol = 1e-10) {
    require_same_dim(x.matrix(), y.matrix());
    if (!(t > 0.0 && t < 1.0)) throw DomainError("quadrature representation needs t in (0,1)");
    const Eigen::Index n = x.dim();
    const Matrix xInv = x.matrix().partialPivLu().inverse();
    const Matrix yInv = y.matrix().partialPivLu().inverse();

    // 2 lambda^{-t} (lambda X^{-1} + Y^{-1})^{-1} dlambda = 2/(1-t) (lambda X^{-1} + Y^{-1})^{-1} dv
    auto lower = [&](double v) -> Matrix {
        const double lambda = std::pow(v, 1.0 / (1.0 - t));
        return (2.0 / (1.0 - t)) * Matrix(lambda * xInv + yInv).partialPivLu().inverse();
    };
    // 2 lambda^{-t-1} (X^{-1} + Y^{-1}/lambda)^{-1} dlambda = 2/t (X^{-1} + mu Y^{-1})^{-1} dw
    auto upper = [&](double w) -> Matrix {
        const double mu = std::pow(w, 1.0 / t);
        return (2.0 / t) * Matrix(xInv + mu * yInv).partialPivLu().inverse();
    };
    auto rule = [&](double a, double b, int half) {
        return half == 0 ? detail::gauss_kronrod(lower, a, b, 0) : detail::gauss_kronrod(upper, a, b, 1);
    };

    std::priority_queue<detail::QuadInterval> queue;
    queue.push(rule(0.0, 1.0, 0));
    queue.push(rule(0.0, 1.0, 1));
    Matrix total = Matrix::Zero(n, n);
    double error = 0.0;
    auto refresh = [&] {
        total.setZero();
        error = 0.0;
        auto copy = queue;
        while (!copy.empty()) {
            total += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
    };
    refresh();
    int intervals = 2;
    while (error > relTol * max_abs_entry(total)) {
        if (intervals >= kQuadratureMaxIntervals)
            throw QuadratureFailure("geometric mean quadrature: error estimate " + std::to_string(error) +
                                    " after " + std::to_string(intervals) + " intervals");
        const detail::QuadInterval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const detail::QuadInterval left = rule(worst.a, mid, worst.half);
        const detail::QuadInterval right = rule(mid, worst.b, worst.half);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
        if (intervals % 64 == 0) refresh();
    }
    const double prefactor = std::sin(std::numbers::pi * t) / (2.0 * std::numbers::pi);
    return PositiveMatrix(hermitian_part(prefactor * total));
}

}  // namespace qre
