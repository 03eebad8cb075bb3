#pragma once

#include "qre/harness/entropy_checks.hpp"
#include "qre/means.hpp"

namespace qre::harness {

namespace cvxdetail {

inline constexpr double kInf = logdetail::kInf;

/// Mixing weight: 1/2 on even trials, uniform on odd ones.
inline double mixing_weight(RandomStream& rng, const TrialContext& c) {
    return c.index % 2 == 0 ? 0.5 : rng.uniform();
}

struct TwoPairs {
    PositiveMatrix x1, y1, x2, y2;
    double lambda = 0.5;

    PositiveMatrix xm() const { return mix(x1, x2); }
    PositiveMatrix ym() const { return mix(y1, y2); }
    PositiveMatrix mix(const PositiveMatrix& a, const PositiveMatrix& b) const {
        return PositiveMatrix(Matrix(lambda * a.matrix() + (1.0 - lambda) * b.matrix()));
    }
    double comm() const {
        return std::max(commutator_norm(x1.matrix(), y1.matrix()), commutator_norm(x2.matrix(), y2.matrix()));
    }
};

/// Two (X, Y) pairs; a commuting context puts all four matrices in one frame.
inline TwoPairs sample_two_pairs(RandomStream& rng, const TrialContext& c, bool density = false) {
    auto draw = [&](const Matrix& frame) {
        PositiveMatrix m = positive_in_frame(frame, log_uniform_spectrum(rng, c.dim, c.kappa));
        return density ? PositiveMatrix(DensityMatrix::normalized(m)) : m;
    };
    const Matrix u = haar_unitary(rng, c.dim);
    auto frame = [&] { return c.commuting ? u : haar_unitary(rng, c.dim); };
    TwoPairs p{draw(u), draw(frame()), draw(frame()), draw(frame())};
    p.lambda = mixing_weight(rng, c);
    return p;
}

/// Operator midpoint test. concave: F(mid) >= l F1 + (1-l) F2, else the reverse.
/// gap = lambda_min of the defect, scale the largest operator norm involved.
inline TrialOutcome operator_defect(const Matrix& fm, const Matrix& f1, const Matrix& f2, double lambda, bool concave,
                                    double commNorm) {
    const Matrix avg = lambda * f1 + (1.0 - lambda) * f2;
    const Matrix defect = concave ? Matrix(fm - avg) : Matrix(avg - fm);
    TrialOutcome o;
    o.lhs = 0.0;
    o.rhs = jacobi_eigen(hermitian_part(defect)).min();
    o.scale = op_scale({&fm, &f1, &f2});
    o.commNorm = commNorm;
    return o;
}

/// Scalar convexity: R(mid) <= l R1 + (1-l) R2.
inline TrialOutcome scalar_convexity(double rm, double r1, double r2, double lambda, double commNorm) {
    return inequality_outcome(rm, lambda * r1 + (1.0 - lambda) * r2, commNorm);
}

/// -X^{1/2} log(X^{1/2} Y^{-1} X^{1/2}) X^{1/2}
inline Matrix fujii_kamei(const PositiveMatrix& x, const PositiveMatrix& y) {
    const Matrix xHalf = sqrtm(x).matrix();
    const PositiveMatrix inner(hermitian_part(xHalf * inverse(y).matrix() * xHalf));
    return hermitian_part(-(xHalf * logm(inner).matrix() * xHalf));
}

inline double draw_t(RandomStream& rng, const TrialContext& c, double lo, double hi) {
    return c.has("t") ? c.param("t") : rng.uniform(lo, hi);
}

/// Uniform on [-1, 0] u [1, 2].
inline double draw_outer_t(RandomStream& rng, const TrialContext& c) {
    if (c.has("t")) return c.param("t");
    const double u = rng.uniform(-1.0, 1.0);
    return u < 0.0 ? u : u + 1.0;
}

}  // namespace cvxdetail

/// Convexity family: operator concavity/convexity of means and joint convexity of the entropies.
inline std::vector<CheckDefinition> convexity_checks() {
    using namespace cvxdetail;
    std::vector<CheckDefinition> out;

    out.push_back({"akthm", "convexity", "(X, Y) -> X #_t Y jointly concave for t in [0,1]", "positive", {},
                   {{"t", 0.0, 1.0, false, false, true}}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c);
                       const double t = draw_t(rng, c, 0.0, 1.0);
                       return operator_defect(weighted_geometric_mean(p.xm(), p.ym(), t).matrix(),
                                              weighted_geometric_mean(p.x1, p.y1, t).matrix(),
                                              weighted_geometric_mean(p.x2, p.y2, t).matrix(), p.lambda, true,
                                              p.comm());
                   }});

    // X' = X + P with P positive; X' #_t Y - X #_t Y >= 0 and likewise in Y.
    out.push_back({"akthm_monotone", "convexity", "X #_t Y monotone increasing in X and Y for t in [0,1]", "positive",
                   {}, {{"t", 0.0, 1.0, false, false, true}}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c);
                       const double t = draw_t(rng, c, 0.0, 1.0);
                       const PositiveMatrix xs(Matrix(p.x1.matrix() + p.x2.matrix()));
                       const PositiveMatrix ys(Matrix(p.y1.matrix() + p.y2.matrix()));
                       const Matrix base = weighted_geometric_mean(p.x1, p.y1, t).matrix();
                       const Matrix upX = weighted_geometric_mean(xs, p.y1, t).matrix();
                       const Matrix upY = weighted_geometric_mean(p.x1, ys, t).matrix();
                       TrialOutcome o;
                       o.rhs = std::min(jacobi_eigen(hermitian_part(upX - base)).min(),
                                        jacobi_eigen(hermitian_part(upY - base)).min());
                       o.scale = op_scale({&base, &upX, &upY});
                       o.commNorm = p.comm();
                       return o;
                   }});

    out.push_back({"jointconvex", "convexity", "(X, Y) -> -X^{1/2} log(X^{1/2} Y^{-1} X^{1/2}) X^{1/2} jointly concave",
                   "positive", {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c);
                       return operator_defect(fujii_kamei(p.xm(), p.ym()), fujii_kamei(p.x1, p.y1),
                                              fujii_kamei(p.x2, p.y2), p.lambda, true, p.comm());
                   }});

    CheckDefinition outer{"jointconvexout", "convexity", "(X, Y) -> X #_t Y jointly convex for t in [-1,0] u [1,2]",
                          "positive", {}, {{"t", -1.0, 2.0, false, false, true}}, 0.0, false, false, 1,
                          [](RandomStream& rng, const TrialContext& c) {
                              const TwoPairs p = sample_two_pairs(rng, c);
                              const double t = draw_outer_t(rng, c);
                              return operator_defect(weighted_geometric_mean(p.xm(), p.ym(), t).matrix(),
                                                     weighted_geometric_mean(p.x1, p.y1, t).matrix(),
                                                     weighted_geometric_mean(p.x2, p.y2, t).matrix(), p.lambda,
                                                     false, p.comm());
                          }};
    outer.validate = [](const ParamMap& params) {
        const auto it = params.find("t");
        if (it != params.end() && it->second > 0.0 && it->second < 1.0)
            throw ParamOutOfDomain("jointconvexout: t = " + format_double(it->second, 6) +
                                   " outside [-1, 0] u [1, 2]");
    };
    out.push_back(outer);

    // Certified bounds: upper at the mixture against lower bounds at the ends.
    out.push_back({"jcne", "convexity", "Y -> Phi_D(H, Y) concave", "hermitian", {}, {}, 0.0, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c, true);
                       const HermitianMatrix h = c.commuting ? hermitian_in_frame(p.x1.frame(), rng, c.dim)
                                                             : random_hermitian(rng, c.dim);
                       const SaddleValue s1 = phi_donald(h, p.y1), s2 = phi_donald(h, p.y2);
                       const SaddleValue sm = phi_donald(h, p.ym());
                       TrialOutcome o = inequality_outcome(p.lambda * s1.dualLower + (1.0 - p.lambda) * s2.dualLower,
                                                           sm.primalUpper, commutator_norm(h.matrix(), p.y1.matrix()));
                       o.slack = 2.0 * std::max({s1.slack(), s2.slack(), sm.slack()});
                       return o;
                   }});

    out.push_back({"expconcavbe", "convexity", "Y -> exp(inf lambda_max(H - log Q), Tr[QY] <= 1) concave",
                   "hermitian", {}, {}, 0.0, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c);
                       const HermitianMatrix h = c.commuting ? hermitian_in_frame(p.x1.frame(), rng, c.dim)
                                                             : random_hermitian(rng, c.dim);
                       const PositiveMatrix ym = p.ym();
                       const SaddleValue s1 = phi_donald(h, p.y1), s2 = phi_donald(h, p.y2), sm = phi_donald(h, ym);
                       auto lifted = [](double phi, const PositiveMatrix& y) { return std::exp(phi + y.trace() - 1.0); };
                       const double lhs = p.lambda * lifted(s1.dualLower, p.y1) + (1.0 - p.lambda) * lifted(s2.dualLower, p.y2);
                       const double rhs = lifted(sm.primalUpper, ym);
                       TrialOutcome o = inequality_outcome(lhs, rhs, commutator_norm(h.matrix(), p.y1.matrix()));
                       o.slack = 2.0 * std::max({s1.slack(), s2.slack(), sm.slack()}) * std::max(lhs, rhs);
                       return o;
                   }});

    out.push_back({"convex_umegaki", "convexity", "(X, Y) -> D(X||Y) jointly convex", "positive", {}, {}, 0.0, false,
                   false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c);
                       return scalar_convexity(umegaki(p.xm(), p.ym()).value, umegaki(p.x1, p.y1).value,
                                               umegaki(p.x2, p.y2).value, p.lambda, p.comm());
                   }});

    out.push_back({"convex_bs", "convexity", "(X, Y) -> D_BS(X||Y) jointly convex", "positive", {}, {}, 0.0, false,
                   false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c);
                       return scalar_convexity(bs_entropy(p.xm(), p.ym()).value, bs_entropy(p.x1, p.y1).value,
                                               bs_entropy(p.x2, p.y2).value, p.lambda, p.comm());
                   }});

    out.push_back({"convex_donald", "convexity", "(X, Y) -> D_D(X||Y) jointly convex", "positive", {}, {}, 1e-8,
                   false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const TwoPairs p = sample_two_pairs(rng, c);
                       return scalar_convexity(donald(p.xm(), p.ym()).value, donald(p.x1, p.y1).value,
                                               donald(p.x2, p.y2).value, p.lambda, p.comm());
                   }});

    // Each H gives a lower bound on D_D through Tr[XH] - Phi_D(H, Y) <= D_D(X||Y).
    out.push_back({"fenchel", "convexity", "D_D(X||Y) = sup_H Tr[XH] - Phi_D(H, Y) for density X", "density", {}, {},
                   1e-8, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c, true);
                       const HermitianMatrix h =
                           c.index % 2 == 0
                               ? HermitianMatrix(Matrix(logm(p.x).matrix() - logm(p.y).matrix()))
                               : (c.commuting ? hermitian_in_frame(p.x.frame(), rng, c.dim) : random_hermitian(rng, c.dim));
                       const SaddleValue s = phi_donald(h, p.y);
                       return inequality_outcome(trace_product(p.x.matrix(), h.matrix()) - s.primalUpper,
                                                 donald(p.x, p.y).value, commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    return out;
}

}  // namespace qre::harness
