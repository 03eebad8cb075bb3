#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>

#include "qre/core/matrix.hpp"

namespace qre {

using Vector = Eigen::VectorXd;

/// Isometric coordinates of a Hermitian matrix: diagonal, then sqrt(2) Re and sqrt(2) Im
/// of the strict upper triangle, so that <A,B>_HS = a.b.
inline Vector hermitian_to_vector(const Matrix& h) {
    const Eigen::Index n = h.rows();
    Vector v(n * n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) v(k++) = h(i, i).real();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            v(k++) = std::numbers::sqrt2 * h(i, j).real();
            v(k++) = std::numbers::sqrt2 * h(i, j).imag();
        }
    return v;
}

inline Matrix vector_to_hermitian(const Vector& v, Eigen::Index n) {
    Matrix h(n, n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i) h(i, i) = v(k++);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double re = v(k++) / std::numbers::sqrt2;
            const double im = v(k++) / std::numbers::sqrt2;
            h(i, j) = Complex(re, im);
            h(j, i) = Complex(re, -im);
        }
    return h;
}

struct BfgsOptions {
    int maxIterations = 2000;
    double gradTol = 1e-12;
    double armijo = 1e-4;
    int maxBacktracks = 60;
};

struct BfgsResult {
    Vector x;
    double value = 0.0;
    Vector grad;
    int iterations = 0;
    bool converged = false;
};

/// Quasi-Newton minimization with Armijo backtracking.
/// f(x, grad) returns the value and writes the gradient.
template <class F>
BfgsResult bfgs_minimize(F&& f, Vector x, const BfgsOptions& opt = {}) {
    const Eigen::Index m = x.size();
    BfgsResult out;
    Vector g(m);
    double fx = f(x, g);
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(m, m);
    bool scaled = false;
    Vector gNew(m);

    int it = 0;
    for (; it < opt.maxIterations; ++it) {
        if (g.norm() <= opt.gradTol) {
            out.converged = true;
            break;
        }
        Vector d = -(hinv * g);
        double slope = g.dot(d);
        if (!(slope < 0.0)) {
            hinv.setIdentity();
            d = -g;
            slope = -g.squaredNorm();
        }
        double alpha = scaled ? 1.0 : std::min(1.0, 1.0 / g.norm());

        bool accepted = false, flat = false;
        double fNew = 0.0;
        Vector xNew(m);
        for (int b = 0; b < opt.maxBacktracks; ++b) {
            xNew = x + alpha * d;
            fNew = f(xNew, gNew);
            if (std::isfinite(fNew) && fNew <= fx + opt.armijo * alpha * slope) {
                accepted = true;
                break;
            }
            // f flat to roundoff: fall back to decrease of the gradient norm
            const double noise = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(fx));
            if (std::isfinite(fNew) && std::abs(fNew - fx) <= noise && gNew.norm() < 0.5 * g.norm()) {
                accepted = flat = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted || (!flat && !(fNew < fx))) break;

        const Vector s = xNew - x;
        const Vector y = gNew - g;
        const double sy = s.dot(y);
        if (sy > 1e-14 * s.norm() * y.norm()) {
            if (!scaled) {
                hinv *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const Vector hy = hinv * y;
            hinv += (rho * rho * y.dot(hy) + rho) * s * s.transpose() - rho * (hy * s.transpose() + s * hy.transpose());
        }
        x = xNew;
        g = gNew;
        fx = fNew;
    }
    out.x = std::move(x);
    out.value = fx;
    out.grad = std::move(g);
    out.iterations = it;
    if (!out.converged) out.converged = out.grad.norm() <= opt.gradTol;
    return out;
}

/// Newton direction from a central-difference Hessian of the gradient;
/// directions with |curvature| below the cutoff are left alone (pseudo-inverse).
template <class G>
Vector newton_direction(G&& grad, const Vector& x, const Vector& g, double h = 1e-6) {
    const Eigen::Index m = x.size();
    Eigen::MatrixXd hess(m, m);
    Vector xp = x, xm = x;
    for (Eigen::Index k = 0; k < m; ++k) {
        xp(k) = x(k) + h;
        xm(k) = x(k) - h;
        hess.col(k) = (grad(xp) - grad(xm)) / (2.0 * h);
        xp(k) = x(k);
        xm(k) = x(k);
    }
    hess = 0.5 * (hess + hess.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    const Vector& lam = es.eigenvalues();
    const double cutoff = 1e-10 * lam.cwiseAbs().maxCoeff();
    Vector coeff = es.eigenvectors().transpose() * g;
    for (Eigen::Index k = 0; k < m; ++k) coeff(k) = std::abs(lam(k)) > cutoff ? coeff(k) / lam(k) : 0.0;
    return -(es.eigenvectors() * coeff);
}

/// Newton steps accepted while the merit function decreases.
template <class G, class R>
Vector newton_polish(G&& grad, R&& merit, Vector x, int maxSteps, double target, int* steps = nullptr) {
    double r = merit(x);
    int taken = 0;
    for (int k = 0; k < maxSteps && r > target; ++k) {
        const Vector g = grad(x);
        const Vector d = newton_direction(grad, x, g);
        bool improved = false;
        for (double a : {1.0, 0.5, 0.25}) {
            const Vector xNew = x + a * d;
            const double rNew = merit(xNew);
            if (std::isfinite(rNew) && rNew < r) {
                x = xNew;
                r = rNew;
                improved = true;
                break;
            }
        }
        if (!improved) break;
        ++taken;
    }
    if (steps) *steps = taken;
    return x;
}

}  // namespace qre
