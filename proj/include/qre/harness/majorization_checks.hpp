#pragma once

#include <numeric>

#include "qre/harness/engine.hpp"
#include "qre/majorization.hpp"
#include "qre/means.hpp"

namespace qre::harness {

namespace majdetail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMarginTolerance = 1e-10;
inline constexpr double kKernelTolerance = 1e-10;
inline constexpr double kKernelQuadratureTolerance = 1e-12;

/// Threshold on the worst majorization defect: negative margins and the trace mismatch.
inline TrialOutcome verdict_outcome(const MajorizationVerdict& v, double commNorm) {
    const double defect = std::max(-v.min_margin(), std::abs(v.traceMismatch));
    return threshold_outcome(defect, kMarginTolerance * v.scale, commNorm);
}

inline HermitianMatrix hermitian_for(RandomStream& rng, const TrialContext& c, const Matrix& frame) {
    return c.commuting ? hermitian_in_frame(frame, rng, c.dim) : random_hermitian(rng, c.dim);
}

/// int_0^inf A^{1/2} (t+A)^{-1} X (t+A)^{-1} A^{1/2} dt by adaptive Gauss-Kronrod in t = e^v over
/// [log lmin - 40, log lmax + 40], using LU solves only. The truncated tails are below e^-40 relative;
/// the target relaxes with cond(A), which sets the roundoff floor of the resolvents.
inline Matrix bosulem_quadrature(const Matrix& aHalf, const Matrix& a, const Matrix& x) {
    const Eigen::Index n = a.rows();
    const RealVector w = Eigen::SelfAdjointEigenSolver<Matrix>(a, Eigen::EigenvaluesOnly).eigenvalues();
    const double vlo = std::log(w.minCoeff()) - 40.0, vhi = std::log(w.maxCoeff()) + 40.0;
    auto integrand = [&](double v) -> Matrix {
        const double t = std::exp(v);
        const Matrix r = Matrix(a + t * Matrix::Identity(n, n)).partialPivLu().inverse();
        return t * (aHalf * r * x * r * aHalf);
    };
    std::vector<qre::detail::QuadInterval> work = {qre::detail::gauss_kronrod(integrand, vlo, vhi, 0)};
    Matrix total = work.front().value;
    double error = work.front().error;
    int intervals = 1;
    const double target = std::max(kKernelQuadratureTolerance, 1e-17 * w.maxCoeff() / w.minCoeff());
    while (error > target * std::max(1.0, max_abs_entry(total))) {
        if (intervals >= kQuadratureMaxIntervals) throw QuadratureFailure("bosulem integral did not converge: " + format_double(error / std::max(1.0, max_abs_entry(total)), 3));
        const auto worst = std::max_element(work.begin(), work.end());
        const qre::detail::QuadInterval cur = *worst;
        work.erase(worst);
        const double mid = 0.5 * (cur.a + cur.b);
        const qre::detail::QuadInterval left = qre::detail::gauss_kronrod(integrand, cur.a, mid, 0);
        const qre::detail::QuadInterval right = qre::detail::gauss_kronrod(integrand, mid, cur.b, 0);
        total += left.value + right.value - cur.value;
        error += left.error + right.error - cur.error;
        work.push_back(left);
        work.push_back(right);
        ++intervals;
    }
    return hermitian_part(total);
}

}  // namespace majdetail

/// Majorization family: positive unital trace-preserving maps, trace functions and HLP.
inline std::vector<CheckDefinition> majorization_checks() {
    using namespace majdetail;
    std::vector<CheckDefinition> out;

    out.push_back({"pinch", "majorization", "pinch(X, F) < X", "hermitian", {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const Matrix f = haar_unitary(rng, c.dim);
                       const HermitianMatrix x = hermitian_for(rng, c, f);
                       const HermitianMatrix px = pinch(x, f);
                       return verdict_outcome(eigen_majorizes(px, x), commutator_norm(x.matrix(), px.matrix()));
                   }});

    out.push_back({"choi", "majorization", "choi(X) < X", "hermitian", {}, {}, 0.0, false, false, 2,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianMatrix x = sample_hermitian(rng, c);
                       return verdict_outcome(eigen_majorizes(choi_map(x), x), 0.0);
                   }});

    out.push_back({"bosulem", "majorization", "bosulem(A, X) < X; the map is unital and trace-preserving", "hermitian",
                   {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveMatrix a = sample_positive(rng, c);
                       const HermitianMatrix x = hermitian_for(rng, c, a.frame());
                       TrialOutcome o = verdict_outcome(eigen_majorizes(bosulem_map(a, x), x),
                                                        commutator_norm(a.matrix(), x.matrix()));
                       const double traceDefect = std::abs(bosulem_map(a, x).trace() - x.trace());
                       const double unitalDefect =
                           op_norm(bosulem_map(a, HermitianMatrix::identity(c.dim)).matrix() - identity(c.dim));
                       o.sideOk = traceDefect <= kMarginTolerance * (1.0 + x.matrix().norm()) &&
                                  unitalDefect <= kMarginTolerance;
                       o.sideNote = "bosulem map not unital or not trace-preserving";
                       return o;
                   }});

    // X = pinch(Y) so X < Y; phi in {exp, x^2, x^4}.
    out.push_back({"maj_trace", "majorization", "X < Y implies Tr phi(X) <= Tr phi(Y) for convex phi", "hermitian",
                   {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const Matrix f = haar_unitary(rng, c.dim);
                       const HermitianMatrix y = hermitian_for(rng, c, f);
                       const HermitianMatrix x = pinch(y, f);
                       auto tr = [](const HermitianMatrix& m, int kind) {
                           const RealVector& w = m.eigenvalues();
                           if (kind == 0) return w.array().exp().sum();
                           return kind == 1 ? w.array().square().sum() : w.array().square().square().sum();
                       };
                       TrialOutcome worst;
                       double worstRel = std::numeric_limits<double>::infinity();
                       for (int kind = 0; kind < 3; ++kind) {
                           const TrialOutcome o =
                               inequality_outcome(tr(x, kind), tr(y, kind), commutator_norm(y.matrix(), x.matrix()));
                           const double rel = (o.rhs - o.lhs) / std::max({1.0, std::abs(o.lhs), std::abs(o.rhs)});
                           if (rel < worstRel) {
                               worstRel = rel;
                               worst = o;
                           }
                       }
                       return worst;
                   }});

    out.push_back({"schatten", "majorization", "||bosulem(A, X)||_p <= ||X||_p", "hermitian", {{"p", 1.0}},
                   {{"p", 1.0, kInf}}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveMatrix a = sample_positive(rng, c);
                       const HermitianMatrix x = hermitian_for(rng, c, a.frame());
                       const double p = c.param("p");
                       return inequality_outcome(schatten_p(bosulem_map(a, x), p), schatten_p(x, p),
                                                 commutator_norm(a.matrix(), x.matrix()));
                   }});

    // P = sum of random weights times random permutations is doubly stochastic.
    out.push_back({"HLP", "majorization", "x = P y with P doubly stochastic implies x < y", "hermitian", {}, {}, 0.0,
                   false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const Eigen::Index n = c.dim;
                       RealVector y(n);
                       for (Eigen::Index i = 0; i < n; ++i) y(i) = rng.normal();
                       Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
                       double total = 0.0;
                       for (int k = 0; k < 4; ++k) {
                           std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
                           std::iota(perm.begin(), perm.end(), Eigen::Index{0});
                           for (Eigen::Index i = n - 1; i > 0; --i)
                               std::swap(perm[static_cast<std::size_t>(i)],
                                         perm[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i)))]);
                           const double w = rng.uniform();
                           total += w;
                           for (Eigen::Index i = 0; i < n; ++i) p(i, perm[static_cast<std::size_t>(i)]) += w;
                       }
                       p /= total;
                       return verdict_outcome(majorizes(p * y, y), 0.0);
                   }});

    // W from the resolvent integral with A = Y^p, against the closed-form kernel.
    out.push_back({"bosulem_kernel", "majorization", "bosulem(Y^p, X) equals the resolvent integral for W",
                   "positive", {{"p", 1.0}}, {{"p", 0.0, kInf, true}}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair s = sample_pair(rng, c);
                       const double p = c.param("p");
                       const PositiveMatrix a = powm(s.y, p);
                       const Matrix w = bosulem_map(a, s.x).matrix();
                       const Matrix oracle = bosulem_quadrature(powm(s.y, p / 2).matrix(), a.matrix(), s.x.matrix());
                       return threshold_outcome(op_norm(hermitian_part(w - oracle)) / op_scale({&w, &oracle}),
                                                kKernelTolerance, commutator_norm(s.x.matrix(), s.y.matrix()));
                   }});

    return out;
}

}  // namespace qre::harness
