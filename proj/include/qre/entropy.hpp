#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qre/core/optimize.hpp"
#include "qre/means.hpp"

namespace qre {

enum class EntropyKind { Umegaki, Donald, BS };

inline std::string to_string(EntropyKind k) {
    switch (k) {
        case EntropyKind::Umegaki: return "umegaki";
        case EntropyKind::Donald: return "donald";
        case EntropyKind::BS: return "bs";
    }
    return "?";
}

inline EntropyKind entropy_kind_from_string(const std::string& s) {
    if (s == "umegaki") return EntropyKind::Umegaki;
    if (s == "donald") return EntropyKind::Donald;
    if (s == "bs") return EntropyKind::BS;
    throw ParseError("unknown entropy kind: " + s);
}

struct EntropyValue {
    double value = 0.0;
    EntropyKind kind = EntropyKind::Umegaki;
    bool wellDefined = true;
};

inline double entropy_scale(const PositiveMatrix& x, const PositiveMatrix& w) {
    return std::max({1.0, x.trace(), w.trace()});
}

/// Tr[X(log X - log W)] + Tr W - Tr X
inline EntropyValue umegaki(const PositiveMatrix& x, const PositiveMatrix& w) {
    require_same_dim(x.matrix(), w.matrix());
    const double v = trace_product(x.matrix(), logm(x).matrix() - logm(w).matrix()) + w.trace() - x.trace();
    return {v, EntropyKind::Umegaki, true};
}

inline constexpr double kBsConsistencyTolerance = 1e-7;

/// Tr[W f(W^{-1/2} X W^{-1/2})] + Tr W - Tr X with f(x) = x log x
inline double bs_entropy_alternate(const PositiveMatrix& x, const PositiveMatrix& w) {
    const Matrix wInvHalf = powm(w, -0.5).matrix();
    const HermitianMatrix n(hermitian_part(wInvHalf * x.matrix() * wInvHalf));
    const Matrix fn = spectral_apply(n.spectral(), [](double v) { return v * std::log(v); });
    return trace_product(w.matrix(), fn) + w.trace() - x.trace();
}

/// Tr[X log(X^{1/2} W^{-1} X^{1/2})] + Tr W - Tr X, cross-checked against the alternate form.
inline EntropyValue bs_entropy(const PositiveMatrix& x, const PositiveMatrix& w) {
    require_same_dim(x.matrix(), w.matrix());
    const Matrix xHalf = sqrtm(x).matrix();
    const PositiveMatrix m(hermitian_part(xHalf * inverse(w).matrix() * xHalf));
    const double v = trace_product(x.matrix(), logm(m).matrix()) + w.trace() - x.trace();
    const double alt = bs_entropy_alternate(x, w);
    if (std::abs(v - alt) > kBsConsistencyTolerance * std::max({1.0, std::abs(v), entropy_scale(x, w)}))
        throw ConsistencyError("BS entropy formulas disagree: " + std::to_string(v) + " vs " + std::to_string(alt));
    return {v, EntropyKind::BS, true};
}

struct DonaldSolution {
    PositiveMatrix q;
    double residual = 0.0;
    int iterations = 0;
    double objective = 0.0;
};

inline constexpr int kDonaldMaxIterations = 10000;
inline constexpr double kDonaldResidualTolerance = 1e-8;

namespace detail {

// Q = Tr X e^L / Tr[e^L Y] and the pieces of the reduced objective, with exponentials shifted
// by max(L) so nothing overflows.
struct DonaldState {
    SpectralDecomposition l;
    Matrix yTilde;       // frame* Y frame
    double shift = 0.0;  // max eigenvalue of L
    double weight = 0.0; // sum exp(l_i - shift) yTilde_ii
};

inline DonaldState donald_state(const Matrix& lm, const Matrix& y) {
    DonaldState s;
    s.l = jacobi_eigen(lm);
    s.yTilde = s.l.frame.adjoint() * y * s.l.frame;
    s.shift = s.l.max();
    for (Eigen::Index i = 0; i < s.l.dim(); ++i) s.weight += std::exp(s.l.eigenvalues(i) - s.shift) * s.yTilde(i, i).real();
    return s;
}

// Dexp(L)[Y] / Tr[e^L Y] in the frame of L.
inline Matrix donald_envelope(const DonaldState& s) {
    const Eigen::Index n = s.l.dim();
    const ScalarFunction e = ScalarFunction::exp();
    Matrix t = s.yTilde;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            t(i, j) *= e.divided_difference(s.l.eigenvalues(i) - s.shift, s.l.eigenvalues(j) - s.shift) / s.weight;
    return hermitian_part(s.l.frame * t * s.l.frame.adjoint());
}

inline SpectralDecomposition donald_q_spectrum(const DonaldState& s, double trX) {
    SpectralDecomposition q = s.l;
    const double c = std::log(trX / s.weight) - s.shift;
    for (Eigen::Index i = 0; i < q.dim(); ++i) q.eigenvalues(i) = std::exp(q.eigenvalues(i) + c);
    return q;
}

inline double donald_residual(const SpectralDecomposition& q, const Matrix& x, const Matrix& y) {
    return (divided_difference_raw(q, x, ScalarFunction::log()) - y).norm() / y.norm();
}

}  // namespace detail

namespace detail {

struct DonaldIterate {
    SpectralDecomposition q;
    double residual = 0.0;
    int iterations = 0;
};

// BFGS on L then Newton polish on the residual, from a given L0. Never throws on a large residual.
inline DonaldIterate donald_optimize(const Matrix& xm, const Matrix& ym, const Matrix& l0) {
    const Eigen::Index n = xm.rows();
    const double trX = trace_real(xm);
    auto negObjective = [&](const Vector& v, Vector& grad) {
        const Matrix lm = vector_to_hermitian(v, n);
        const DonaldState s = donald_state(lm, ym);
        if (!(s.weight > 0.0) || !std::isfinite(s.shift)) return std::numeric_limits<double>::infinity();
        grad = hermitian_to_vector(trX * donald_envelope(s) - xm);
        return -(trace_product(xm, lm) - trX * (s.shift + std::log(s.weight / trX)));
    };
    auto gradient = [&](const Vector& v) {
        Vector g(v.size());
        negObjective(v, g);
        return g;
    };
    auto residualAt = [&](const Vector& v) {
        const DonaldState s = donald_state(vector_to_hermitian(v, n), ym);
        return donald_residual(donald_q_spectrum(s, trX), xm, ym);
    };

    BfgsOptions opt;
    opt.maxIterations = kDonaldMaxIterations;
    opt.gradTol = 1e-10 * trX;
    const BfgsResult r = bfgs_minimize(negObjective, hermitian_to_vector(l0), opt);
    int polish = 0;
    const Vector best = newton_polish(gradient, residualAt, r.x, 8, 1e-13, &polish);

    DonaldIterate out;
    out.q = donald_q_spectrum(donald_state(vector_to_hermitian(best, n), ym), trX);
    out.residual = donald_residual(out.q, xm, ym);
    out.iterations = r.iterations + polish;
    return out;
}

}  // namespace detail

/// Maximizes Tr[X log Q] subject to Tr[QY] <= Tr X. The constraint is eliminated by
/// Q = Tr X e^L / Tr[e^L Y]; BFGS on L from log X - log Y, then Newton polish on the residual.
inline DonaldSolution solve_donald_q(const PositiveMatrix& x, const PositiveMatrix& y) {
    require_same_dim(x.matrix(), y.matrix());
    const Eigen::Index n = x.dim();
    const detail::DonaldIterate it =
        detail::donald_optimize(x.matrix(), y.matrix(), logm(x).matrix() - logm(y).matrix());
    if (!(it.residual <= kDonaldResidualTolerance)) throw NonConvergence("Donald solver", it.iterations, it.residual);

    SpectralDecomposition logq = it.q;
    for (Eigen::Index i = 0; i < n; ++i) logq.eigenvalues(i) = std::log(it.q.eigenvalues(i));
    const double objective = trace_product(x.matrix(), reconstruct(logq));
    return {make_positive(reconstruct(it.q), it.q), it.residual, it.iterations, objective};
}

/// sup_Q {Tr[X log Q] : Tr[QY] <= Tr X} + Tr Y - Tr X
inline EntropyValue donald(const PositiveMatrix& x, const PositiveMatrix& y) {
    const DonaldSolution sol = solve_donald_q(x, y);
    return {sol.objective + y.trace() - x.trace(), EntropyKind::Donald, true};
}

/// Classical relative entropy of the diagonal compressions in the given frame.
inline double donald_pinched(const PositiveMatrix& x, const PositiveMatrix& y, const Matrix& frame) {
    const HermitianMatrix px = pinch(x, frame);
    const HermitianMatrix py = pinch(y, frame);
    double v = 0.0;
    for (Eigen::Index j = 0; j < x.dim(); ++j) {
        const double a = (frame.col(j).adjoint() * x.matrix() * frame.col(j))(0, 0).real();
        const double b = (frame.col(j).adjoint() * y.matrix() * frame.col(j))(0, 0).real();
        v += a * (std::log(a) - std::log(b));
    }
    return v + py.trace() - px.trace();
}

inline EntropyValue relative_entropy(EntropyKind kind, const PositiveMatrix& x, const PositiveMatrix& w) {
    switch (kind) {
        case EntropyKind::Umegaki: return umegaki(x, w);
        case EntropyKind::Donald: return donald(x, w);
        case EntropyKind::BS: return bs_entropy(x, w);
    }
    throw DomainError("unknown entropy kind");
}

struct EntropyChain {
    double donald = 0.0;
    double umegaki = 0.0;
    double bs = 0.0;
    double scale = 1.0;

    bool ordered(double donaldSlack = 1e-8, double bsSlack = 1e-8) const {
        return donald <= umegaki + donaldSlack * scale && umegaki <= bs + bsSlack * scale;
    }
};

/// (D_D, D, D_BS)
inline EntropyChain entropy_chain(const PositiveMatrix& x, const PositiveMatrix& w) {
    EntropyChain c;
    c.donald = donald(x, w).value;
    c.umegaki = umegaki(x, w).value;
    c.bs = bs_entropy(x, w).value;
    c.scale = std::max({entropy_scale(x, w), std::abs(c.umegaki), std::abs(c.bs)});
    return c;
}

/// 1/2 Tr X || X/Tr X - W/Tr W ||_1^2
inline double pinsker_bound(const PositiveMatrix& x, const PositiveMatrix& w) {
    require_same_dim(x.matrix(), w.matrix());
    const HermitianMatrix d(x.matrix() / x.trace() - w.matrix() / w.trace());
    const double t = schatten(d).traceNorm;
    return 0.5 * x.trace() * t * t;
}

/// int_0^1 Y^{1-s} Q Y^s ds, the inverse of Dlog(Y).
inline HermitianMatrix exp_mean_map(const PositiveMatrix& y, const HermitianMatrix& q) {
    require_same_dim(y.matrix(), q.matrix());
    return HermitianMatrix(kernel_apply(y.spectral(), q.matrix(),
                                        [](double a, double b) { return 1.0 / log_divided_difference(a, b); }));
}

/// The three equal-suprema objectives evaluated at the images of a Donald maximizer Q.
struct AllSameValues {
    double sandwich = 0.0;   // Z = Y^{1/2} Q Y^{1/2}, Tr[X log(Y^{-1/2} Z Y^{-1/2})]
    double geometric = 0.0;  // Z = Q^{1/2} Y Q^{1/2}, Tr[X log (Y^{-1} #_{1/2} Z)^2]
    double integral = 0.0;   // Z = int_0^1 Y^{1-s} Q Y^s ds, Tr[X log Dlog(Y)[Z]]
    double traceDefect = 0.0;  // max |Tr Z - Tr X| over the three
    double integralMinEigen = 0.0;  // the third Z need not be positive
};

/// Tr[X log Dlog(Y)[Z]] + Tr Y - Tr X for Z in P_n with Tr Z = Tr X.
inline double integral_objective(const PositiveMatrix& x, const PositiveMatrix& y, const HermitianMatrix& z) {
    const PositiveMatrix q(divided_difference_apply(y, z, ScalarFunction::log()));
    return trace_product(x.matrix(), logm(q).matrix()) + y.trace() - x.trace();
}

inline AllSameValues allsame_values(const PositiveMatrix& x, const PositiveMatrix& y, const PositiveMatrix& q) {
    AllSameValues out;
    const double shift = y.trace() - x.trace();
    const Matrix yHalf = sqrtm(y).matrix();
    const Matrix yInvHalf = powm(y, -0.5).matrix();

    const PositiveMatrix za(hermitian_part(yHalf * q.matrix() * yHalf));
    out.sandwich = trace_product(x.matrix(), logm(PositiveMatrix(hermitian_part(yInvHalf * za.matrix() * yInvHalf))).matrix()) + shift;

    const PositiveMatrix zb = midpoint_inverse(q, y);
    const PositiveMatrix root = weighted_geometric_mean(inverse(y), zb, 0.5);
    out.geometric = trace_product(x.matrix(), logm(PositiveMatrix(hermitian_part(root.matrix() * root.matrix()))).matrix()) + shift;

    const HermitianMatrix zc = exp_mean_map(y, q);
    out.integral = integral_objective(x, y, zc);
    out.integralMinEigen = lambda_min(zc);

    out.traceDefect = std::max({std::abs(za.trace() - x.trace()), std::abs(zb.trace() - x.trace()),
                                std::abs(zc.trace() - x.trace())});
    return out;
}

}  // namespace qre
