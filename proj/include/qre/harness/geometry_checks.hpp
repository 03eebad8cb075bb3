#pragma once

#include "qre/harness/engine.hpp"
#include "qre/harness/precise.hpp"
#include "qre/means.hpp"

namespace qre::harness {

namespace geodetail {

inline constexpr double kIdentityFloor = 1e-8;
inline constexpr double kQuadratureFloor = 1e-7;
inline constexpr double kQuadratureRelTol = 1e-11;

/// ||A - B|| against max(1, ||A||, ||B||).
inline TrialOutcome matrix_identity(const Matrix& a, const Matrix& b, double commNorm) {
    return identity_outcome(op_norm(hermitian_part(a - b)), op_scale({&a, &b}), commNorm);
}

inline TrialOutcome scalar_identity(double a, double b, double commNorm) {
    return identity_outcome(std::abs(a - b), std::max({1.0, std::abs(a), std::abs(b)}), commNorm);
}

inline double draw(RandomStream& rng, const TrialContext& c, const std::string& name, double lo, double hi) {
    return c.has(name) ? c.param(name) : rng.uniform(lo, hi);
}

inline double comm(const PositivePair& p) { return commutator_norm(p.x.matrix(), p.y.matrix()); }

// Composed paths reach exponents up to 5, where double loses ~eps * kappa^3; these run in quad.
inline hp::Mat mean(const hp::Mat& x, const hp::Mat& y, hp::Real t) { return hp::geometric_mean(hp::eig(x), y, t); }

inline hp::Real distance(const hp::Mat& x, const hp::Mat& y) {
    const hp::Mat invHalf = hp::power(hp::eig(x), hp::Real(-0.5));
    const hp::Eig inner = hp::eig(invHalf * y * invHalf);
    hp::require_positive(inner);
    hp::Real s = 0;
    for (hp::Real w : inner.w) s += hp::log(w) * hp::log(w);
    return hp::sqrt(s);
}

inline TrialOutcome quad_identity(const hp::Mat& a, const hp::Mat& b, double commNorm) {
    const Matrix da = hp::to_double(a), db = hp::to_double(b);
    return identity_outcome(op_norm(hp::to_double(hp::hermitian_part(a - b))), op_scale({&da, &db}), commNorm);
}

}  // namespace geodetail

/// Geometry family: identities of weighted geometric means and the geodesic distance.
inline std::vector<CheckDefinition> geometry_checks() {
    using namespace geodetail;
    std::vector<CheckDefinition> out;
    const ParamDomain t0{"t0", -1.0, 2.0, false, false, true};
    const ParamDomain t1{"t1", -1.0, 2.0, false, false, true};
    const ParamDomain tt{"t", -1.0, 2.0, false, false, true};
    const ParamDomain ss{"s", -1.0, 2.0, false, false, true};

    out.push_back({"reparam", "geometry", "X #_{(1-t)t0 + t t1} Y = (X #_t0 Y) #_t (X #_t1 Y)", "positive", {},
                   {t0, t1, tt}, kIdentityFloor, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double a = draw(rng, c, "t0", -1, 2), b = draw(rng, c, "t1", -1, 2),
                                    t = draw(rng, c, "t", -1, 2);
                       const hp::Mat x = hp::from_double(p.x.matrix()), y = hp::from_double(p.y.matrix());
                       const hp::Mat lhs = mean(x, y, (1 - t) * a + t * b);
                       const hp::Mat rhs = mean(mean(x, y, a), mean(x, y, b), t);
                       return quad_identity(lhs, rhs, comm(p));
                   }});

    out.push_back({"rmet62A", "geometry", "X #_{ts} Y = X #_t (X #_s Y)", "positive", {}, {tt, ss}, kIdentityFloor,
                   false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double t = draw(rng, c, "t", -1, 2), s = draw(rng, c, "s", -1, 2);
                       const hp::Mat x = hp::from_double(p.x.matrix()), y = hp::from_double(p.y.matrix());
                       return quad_identity(mean(x, y, t * s), mean(x, mean(x, y, s), t), comm(p));
                   }});

    out.push_back({"rmet62B", "geometry", "X #_{1-t} Y = Y #_t X", "positive", {}, {tt}, kIdentityFloor, false, false,
                   1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double t = draw(rng, c, "t", -1, 2);
                       return matrix_identity(weighted_geometric_mean(p.x, p.y, 1 - t).matrix(),
                                              weighted_geometric_mean(p.y, p.x, t).matrix(), comm(p));
                   }});

    out.push_back({"geom2", "geometry", "X #_{-1} Y = X Y^{-1} X and X #_2 Y = Y X^{-1} Y", "positive", {}, {},
                   kIdentityFloor, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const GeodesicPath path(p.x, p.y);
                       const Matrix &x = p.x.matrix(), &y = p.y.matrix();
                       const TrialOutcome a = matrix_identity(path.evaluate(-1).matrix(), x * inverse(p.y).matrix() * x, comm(p));
                       const TrialOutcome b = matrix_identity(path.evaluate(2).matrix(), y * inverse(p.x).matrix() * y, comm(p));
                       return a.lhs / *a.scale >= b.lhs / *b.scale ? a : b;
                   }});

    // s is drawn from [-1, 2] with |1 - s| >= 1/4.
    CheckDefinition abc{"ABClemma", "geometry", "A = B #_s C implies B = C #_{1/(1-s)} A", "positive", {}, {ss},
                        kIdentityFloor, false, false, 1,
                        [](RandomStream& rng, const TrialContext& c) {
                            const PositivePair p = sample_pair(rng, c);
                            double s = c.has("s") ? c.param("s") : rng.uniform(-1.0, 1.5);
                            if (!c.has("s") && s > 0.75) s += 0.5;
                            const PositiveMatrix a = weighted_geometric_mean(p.x, p.y, s);
                            return matrix_identity(weighted_geometric_mean(p.y, a, 1.0 / (1.0 - s)).matrix(),
                                                   p.x.matrix(), comm(p));
                        }};
    abc.validate = [](const ParamMap& params) {
        const auto it = params.find("s");
        if (it != params.end() && it->second == 1.0) throw ParamOutOfDomain("ABClemma: s must differ from 1");
    };
    out.push_back(abc);

    out.push_back({"additivity", "geometry", "delta(X #_s Y, X #_t Y) = |t - s| delta(X, Y)", "positive", {},
                   {ss, tt}, kIdentityFloor, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double s = draw(rng, c, "s", -1, 2), t = draw(rng, c, "t", -1, 2);
                       const hp::Mat x = hp::from_double(p.x.matrix()), y = hp::from_double(p.y.matrix());
                       return scalar_identity(static_cast<double>(distance(mean(x, y, s), mean(x, y, t))),
                                              static_cast<double>(hp::abs(t - s) * distance(x, y)), comm(p));
                   }});

    out.push_back({"quadrature", "geometry", "spectral X #_t Y agrees with the harmonic-mean integral, t in (0,1)",
                   "positive", {}, {{"t", 0.0, 1.0, true, true, true}}, kQuadratureFloor, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double t = c.has("t") ? c.param("t") : rng.uniform(0.02, 0.98);
                       return matrix_identity(weighted_geometric_mean(p.x, p.y, t).matrix(),
                                              geometric_mean_quadrature(p.x, p.y, t, kQuadratureRelTol).matrix(),
                                              comm(p));
                   }});

    out.push_back({"midpoint_inverse", "geometry", "(Y^{-1} #_{1/2} Z)^2 = Q for Z = Q^{1/2} Y Q^{1/2}", "positive",
                   {}, {}, kIdentityFloor, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const PositiveMatrix z = midpoint_inverse(p.x, p.y);
                       const Matrix root = weighted_geometric_mean(inverse(p.y), z, 0.5).matrix();
                       return matrix_identity(root * root, p.x.matrix(), comm(p));
                   }});

    // Congruence by a random invertible A and inversion both preserve delta.
    out.push_back({"distance_invariance", "geometry", "delta(A X A*, A Y A*) = delta(X^{-1}, Y^{-1}) = delta(X, Y)",
                   "positive", {}, {}, kIdentityFloor, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const Matrix a = gaussian_matrix(rng, c.dim) + 2.0 * identity(c.dim);
                       auto congruent = [&](const PositiveMatrix& m) {
                           return PositiveMatrix(hermitian_part(a * m.matrix() * a.adjoint()));
                       };
                       const double base = geodesic_distance(p.x, p.y);
                       const TrialOutcome u = scalar_identity(geodesic_distance(congruent(p.x), congruent(p.y)), base, comm(p));
                       const TrialOutcome v = scalar_identity(geodesic_distance(inverse(p.x), inverse(p.y)), base, comm(p));
                       return u.lhs >= v.lhs ? u : v;
                   }});

    return out;
}

}  // namespace qre::harness
