#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qre/entropy.hpp"

namespace qre {

/// Tr e^{H + log Y} - Tr Y
inline double psi_umegaki(const HermitianMatrix& h, const PositiveMatrix& y) {
    require_same_dim(h.matrix(), y.matrix());
    return expm(HermitianMatrix(h.matrix() + logm(y).matrix())).trace() - y.trace();
}

/// 1 - Tr Y + log Tr e^{H + log Y}
inline double phi_umegaki(const HermitianMatrix& h, const PositiveMatrix& y) {
    require_same_dim(h.matrix(), y.matrix());
    const HermitianMatrix a(h.matrix() + logm(y).matrix());
    const double top = a.spectral().max();
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.dim(); ++i) s += std::exp(a.eigenvalues()(i) - top);
    return 1.0 - y.trace() + top + std::log(s);
}

struct SaddleValue {
    double value = 0.0;
    double primalUpper = 0.0;
    double dualLower = 0.0;
    double gap = 0.0;
    Matrix q;  // minimizing Q with Tr[QY] = 1
    Matrix x;  // best dual density

    double slack() const { return std::max(1e-5 * (1.0 + std::abs(value)), gap); }
};

class SaddleNonConvergence : public NonConvergence {
public:
    SaddleNonConvergence(const std::string& what, int iterations, SaddleValue bounds)
        : NonConvergence(what, iterations, bounds.gap), bounds_(std::move(bounds)) {}
    const SaddleValue& bounds() const { return bounds_; }

private:
    SaddleValue bounds_;
};

inline constexpr double kSaddleGapTolerance = 1e-5;
inline constexpr std::array<double, 11> kSmoothingSchedule = {
    32.0, 128.0, 512.0, 2048.0, 8192.0, 32768.0, 131072.0, 524288.0, 2097152.0, 8388608.0, 33554432.0};

namespace detail {

// log Tr[e^L Y] and Dexp(L)[Y]/Tr[e^L Y] from the spectral data of L.
struct ExpWeight {
    double logTrace = 0.0;
    Matrix envelope;
};

inline ExpWeight exp_weight(const SpectralDecomposition& l, const Matrix& y, bool withEnvelope) {
    ExpWeight out;
    const Matrix yt = l.frame.adjoint() * y * l.frame;
    const double shift = l.max();
    double w = 0.0;
    for (Eigen::Index i = 0; i < l.dim(); ++i) w += std::exp(l.eigenvalues(i) - shift) * yt(i, i).real();
    out.logTrace = shift + std::log(w);
    if (withEnvelope) {
        const ScalarFunction e = ScalarFunction::exp();
        Matrix t = yt;
        for (Eigen::Index j = 0; j < l.dim(); ++j)
            for (Eigen::Index i = 0; i < l.dim(); ++i)
                t(i, j) *= e.divided_difference(l.eigenvalues(i) - shift, l.eigenvalues(j) - shift) / w;
        out.envelope = hermitian_part(l.frame * t * l.frame.adjoint());
    }
    return out;
}

// Upper bound on sup{Tr[X log Q] : Tr[QY] <= 1} from a feasible Q' (Tr[Q'Y] = 1):
// concavity gives Tr[X log Q'] + <R, Q - Q'> with R = Dlog(Q')[X] - Y and ||Q||_HS <= 1/lambda_min(Y).
inline double donald_sup_upper(const Matrix& x, const SpectralDecomposition& qs, const PositiveMatrix& y) {
    const Matrix r = divided_difference_raw(qs, x, ScalarFunction::log()) - y.matrix();
    const Matrix logq = spectral_apply(qs, [](double v) { return std::log(v); });
    return trace_product(x, logq) + r.norm() * (1.0 / y.spectral().min() + reconstruct(qs).norm());
}

// Tr[XH] - D_D(X||Y) lower bound for density X, certified through Q'.
inline double dual_value(const Matrix& x, const Matrix& h, const SpectralDecomposition& qs, const PositiveMatrix& y) {
    return trace_product(x, h) - donald_sup_upper(x, qs, y) + 1.0 - y.trace();
}

}  // namespace detail

/// Phi_D(H,Y) = 1 - Tr Y + inf{lambda_max(H - log Q) : Tr[QY] <= 1}, bracketed by a certified
/// primal upper bound (smoothed lambda_max minimized over L = log Q with beta continuation) and
/// dual lower bounds Tr[XH] - D_D(X||Y) at the Gibbs state of the smoothed problem and at
/// X_L = Dexp(L)[Y]/Tr[e^L Y].
inline SaddleValue phi_donald(const HermitianMatrix& h, const PositiveMatrix& y, bool throwOnGap = true) {
    require_same_dim(h.matrix(), y.matrix());
    const Eigen::Index n = h.dim();
    const Matrix& hm = h.matrix();
    const Matrix& ym = y.matrix();
    const double base = 1.0 - y.trace();

    SaddleValue best;
    best.primalUpper = std::numeric_limits<double>::infinity();
    best.dualLower = -std::numeric_limits<double>::infinity();

    auto consider = [&](const Matrix& lm, double beta) {
        const SpectralDecomposition l = jacobi_eigen(lm);
        const detail::ExpWeight w = detail::exp_weight(l, ym, true);
        const SpectralDecomposition d = jacobi_eigen(hm - lm);
        const double upper = base + d.max() + w.logTrace;
        SpectralDecomposition qs = l;
        for (Eigen::Index i = 0; i < n; ++i) qs.eigenvalues(i) = std::exp(l.eigenvalues(i) - w.logTrace);
        if (upper < best.primalUpper) {
            best.primalUpper = upper;
            best.q = reconstruct(qs);
        }
        // Gibbs state of the smoothed lambda_max.
        RealVector p(n);
        for (Eigen::Index i = 0; i < n; ++i) p(i) = std::exp(beta * (d.eigenvalues(i) - d.max()));
        p /= p.sum();
        const Matrix gibbs = reconstruct(d.frame, p);
        std::array<Matrix, 2> candidates = {gibbs, w.envelope};
        for (const Matrix& raw : candidates) {
            // Any positive semidefinite density is a valid dual point; clip rounding-level negatives.
            SpectralDecomposition xs = jacobi_eigen(raw);
            for (Eigen::Index i = 0; i < n; ++i) xs.eigenvalues(i) = std::max(xs.eigenvalues(i), 0.0);
            const double tr = xs.eigenvalues.sum();
            if (!(tr > 0.0)) continue;
            xs.eigenvalues /= tr;
            const Matrix x = reconstruct(xs);
            const double lower = detail::dual_value(x, hm, qs, y);
            if (std::isfinite(lower) && lower > best.dualLower) {
                best.dualLower = lower;
                best.x = x;
            }
        }
    };

    double ltr = 0.0;
    {
        const SpectralDecomposition hs = h.spectral();
        ltr = detail::exp_weight(hs, ym, false).logTrace;
    }
    Vector v = hermitian_to_vector(hm - ltr * identity(n));
    int iterations = 0;
    consider(vector_to_hermitian(v, n), kSmoothingSchedule.front());

    for (double beta : kSmoothingSchedule) {
        auto smoothed = [&](const Vector& u, Vector& grad) {
            const Matrix lm = vector_to_hermitian(u, n);
            const SpectralDecomposition l = jacobi_eigen(lm);
            const SpectralDecomposition d = jacobi_eigen(hm - lm);
            RealVector p(n);
            for (Eigen::Index i = 0; i < n; ++i) p(i) = std::exp(beta * (d.eigenvalues(i) - d.max()));
            const double z = p.sum();
            p /= z;
            const detail::ExpWeight w = detail::exp_weight(l, ym, true);
            grad = hermitian_to_vector(w.envelope - reconstruct(d.frame, p));
            return d.max() + std::log(z) / beta + w.logTrace;
        };
        BfgsOptions opt;
        opt.maxIterations = 3000;
        opt.gradTol = 1e-13;
        const BfgsResult r = bfgs_minimize(smoothed, v, opt);
        iterations += r.iterations;
        v = r.x;
        consider(vector_to_hermitian(v, n), beta);
        const double mid = 0.5 * (best.primalUpper + best.dualLower);
        if (best.primalUpper - best.dualLower <= 0.1 * kSaddleGapTolerance * (1.0 + std::abs(mid))) break;
    }

    if (best.primalUpper - best.dualLower > 0.1 * kSaddleGapTolerance * (1.0 + std::abs(best.dualLower))) {
        // Near-optimal X is close to singular: mix the clipped X_L toward 1/n and re-solve the inner
        // Donald problem from L for a paired Q'.
        const Matrix lm = vector_to_hermitian(v, n);
        SpectralDecomposition xs = jacobi_eigen(detail::exp_weight(jacobi_eigen(lm), ym, true).envelope);
        for (Eigen::Index i = 0; i < n; ++i) xs.eigenvalues(i) = std::max(xs.eigenvalues(i), 0.0);
        xs.eigenvalues /= xs.eigenvalues.sum();
        for (double eps : {1e-10, 1e-8, 1e-6}) {
            const Matrix x = (1.0 - eps) * reconstruct(xs) + (eps / static_cast<double>(n)) * identity(n);
            const detail::DonaldIterate it = detail::donald_optimize(x, ym, lm);
            iterations += it.iterations;
            const double lower = detail::dual_value(x, hm, it.q, y);
            if (std::isfinite(lower) && lower > best.dualLower) {
                best.dualLower = lower;
                best.x = x;
            }
        }
    }

    best.value = 0.5 * (best.primalUpper + best.dualLower);
    best.gap = best.primalUpper - best.dualLower;
    if (throwOnGap && !(best.gap <= kSaddleGapTolerance * (1.0 + std::abs(best.value))))
        throw SaddleNonConvergence("Phi_D saddle", iterations, best);
    return best;
}

/// e^{Phi_D + Tr Y - 1} - Tr Y
inline double psi_from_phi(double phi, const PositiveMatrix& y) { return std::exp(phi + y.trace() - 1.0) - y.trace(); }

inline double psi_donald(const HermitianMatrix& h, const PositiveMatrix& y) {
    return psi_from_phi(phi_donald(h, y).value, y);
}

struct GoldenThompson {
    double lhs = 0.0;  // log Tr e^{H+K}
    double mid = 0.0;  // inf lambda_max(H - log Q) over Tr[Q e^K] <= 1
    double rhs = 0.0;  // log Tr[e^H e^K]
    SaddleValue saddle;
};

inline GoldenThompson golden_thompson_chain(const HermitianMatrix& h, const HermitianMatrix& k) {
    require_same_dim(h.matrix(), k.matrix());
    GoldenThompson out;
    const HermitianMatrix sum(h.matrix() + k.matrix());
    const double top = sum.spectral().max();
    double s = 0.0;
    for (Eigen::Index i = 0; i < sum.dim(); ++i) s += std::exp(sum.eigenvalues()(i) - top);
    out.lhs = top + std::log(s);
    const PositiveMatrix y = expm(k);
    out.saddle = phi_donald(h, y);
    out.mid = out.saddle.value - 1.0 + y.trace();
    out.rhs = detail::exp_weight(h.spectral(), y.matrix(), false).logTrace;
    return out;
}

struct BsMaximizer {
    PositiveMatrix r;
    double residual = 0.0;
    double psiValue = 0.0;
    int iterations = 0;
};

inline constexpr double kBsResidualTolerance = 1e-8;

/// Maximizes Tr[RK] - Tr[Y f(R)], f(x) = x log x, K = Y^{1/2}(H+1)Y^{1/2}, over R = e^M.
inline BsMaximizer solve_bs_maximizer(const HermitianMatrix& h, const PositiveMatrix& y) {
    require_same_dim(h.matrix(), y.matrix());
    const Eigen::Index n = h.dim();
    const Matrix yHalf = sqrtm(y).matrix();
    const Matrix km = hermitian_part(yHalf * (h.matrix() + identity(n)) * yHalf);
    const Matrix& ym = y.matrix();
    const double kNorm = std::max(km.norm(), std::numeric_limits<double>::min());
    const ScalarFunction fx = ScalarFunction::xlogx();

    auto spectrumOf = [](const SpectralDecomposition& m) {
        SpectralDecomposition r = m;
        for (Eigen::Index i = 0; i < r.dim(); ++i) r.eigenvalues(i) = std::exp(m.eigenvalues(i));
        return r;
    };
    auto negObjective = [&](const Vector& u, Vector& grad) {
        const SpectralDecomposition m = jacobi_eigen(vector_to_hermitian(u, n));
        const SpectralDecomposition r = spectrumOf(m);
        const Matrix rm = reconstruct(r);
        const Matrix frm = spectral_apply(r, [](double v) { return v * std::log(v); });
        const Matrix inner = km - divided_difference_raw(r, ym, fx);
        grad = -hermitian_to_vector(divided_difference_raw(m, inner, ScalarFunction::exp()));
        return -(trace_product(rm, km) - trace_product(ym, frm));
    };
    auto gradient = [&](const Vector& u) {
        Vector g(u.size());
        negObjective(u, g);
        return g;
    };
    auto residualAt = [&](const Vector& u) {
        const SpectralDecomposition r = spectrumOf(jacobi_eigen(vector_to_hermitian(u, n)));
        return (divided_difference_raw(r, ym, fx) - km).norm() / kNorm;
    };

    BfgsOptions opt;
    opt.maxIterations = 10000;
    opt.gradTol = 1e-12 * kNorm;
    const BfgsResult res = bfgs_minimize(negObjective, hermitian_to_vector(h.matrix()), opt);
    int polish = 0;
    const Vector u = newton_polish(gradient, residualAt, res.x, 8, 1e-13, &polish);

    const SpectralDecomposition r = spectrumOf(jacobi_eigen(vector_to_hermitian(u, n)));
    const double residual = residualAt(u);
    if (!(residual <= kBsResidualTolerance)) throw NonConvergence("BS maximizer", res.iterations + polish, residual);
    const Matrix rm = reconstruct(r);
    const Matrix frm = spectral_apply(r, [](double v) { return v * std::log(v); });
    const double psi = trace_product(rm, km) - trace_product(ym, frm) - y.trace();
    return {make_positive(rm, r), residual, psi, res.iterations + polish};
}

struct SidePair {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Tr[e^H e^L] - Tr e^{H+L} versus Tr[e^H H e^L] - Tr[e^H e^{L/2} H e^{L/2}]
inline SidePair exp_difference_check(const HermitianMatrix& h, const HermitianMatrix& l) {
    require_same_dim(h.matrix(), l.matrix());
    const Matrix eh = expm(h).matrix();
    const Matrix el = expm(l).matrix();
    const Matrix elHalf = expm(HermitianMatrix(0.5 * l.matrix())).matrix();
    const double ehl = expm(HermitianMatrix(h.matrix() + l.matrix())).trace();
    SidePair out;
    out.lhs = trace_product(eh, el) - ehl;
    out.rhs = trace_product(eh * h.matrix(), el) - trace_product(eh, elHalf * h.matrix() * elHalf);
    return out;
}

/// Tr[(Y #_{1/2} e^H)^2] versus Tr e^{H + log Y}
inline SidePair geo_exp_lower(const HermitianMatrix& h, const PositiveMatrix& y) {
    require_same_dim(h.matrix(), y.matrix());
    const PositiveMatrix g = weighted_geometric_mean(y, expm(h), 0.5);
    return {trace_product(g.matrix(), g.matrix()), psi_umegaki(h, y) + y.trace()};
}

}  // namespace qre
