#pragma once

#include "qre/harness/engine.hpp"
#include "qre/harness/precise.hpp"

namespace qre::harness {

namespace logdetail {

inline double d(hp::Real v) { return static_cast<double>(v); }

/// Eigen-data of A^p from that of A.
inline hp::Eig powered(const hp::Eig& e, hp::Real p) {
    hp::Eig out = e;
    for (hp::Real& w : out.w) w = hp::pow(w, p);
    return out;
}

struct Quad {
    hp::Mat x, y, z;
    hp::Eig ex, ey, ez;
    hp::Real xLogX = 0, xLogY = 0;
};

inline Quad quad(const PositiveMatrix& x, const PositiveMatrix& y, const PositiveMatrix& z) {
    Quad q;
    q.x = hp::from_double(x.matrix());
    q.y = hp::from_double(y.matrix());
    q.z = hp::from_double(z.matrix());
    q.ex = hp::eig(q.x);
    q.ey = hp::eig(q.y);
    q.ez = hp::eig(q.z);
    hp::require_positive(q.ex);
    hp::require_positive(q.ey);
    hp::require_positive(q.ez);
    q.xLogX = hp::trace_product(q.x, hp::logm(q.ex));
    q.xLogY = hp::trace_product(q.x, hp::logm(q.ey));
    return q;
}

inline Quad quad(const PositiveTriple& t) { return quad(t.x, t.y, t.z); }

/// Tr[X log(Y^{a} Z^{b} Y^{a})]
inline hp::Real sandwich_log(const Quad& q, const hp::Eig& outer, hp::Real a, const hp::Eig& inner, hp::Real b) {
    const hp::Mat o = hp::power(outer, a);
    return hp::trace_log(q.x, hp::hermitian_part(o * hp::power(inner, b) * o));
}

/// Tr[X log(A^r #_t B^r)]
inline hp::Real mean_log(const Quad& q, const hp::Eig& a, const hp::Eig& b, hp::Real r, hp::Real t) {
    return hp::trace_log(q.x, hp::geometric_mean(powered(a, r), hp::power(b, r), t));
}

inline TrialOutcome outcome(hp::Real lhs, hp::Real rhs, double commNorm) {
    return inequality_outcome(d(lhs), d(rhs), commNorm);
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sides {
    hp::Real lhs, rhs;
};

inline Sides cla_sides(const Quad& q, hp::Real p) {
    return {sandwich_log(q, q.ey, p / 2, q.ez, p), p * (q.xLogX + q.xLogY)};
}

inline Sides clb_sides(const Quad& q, hp::Real r, hp::Real s) {
    return {mean_log(q, q.ey, q.ez, r, s), r * (s * q.xLogX + (1 - s) * q.xLogY)};
}

inline Sides seca_sides(const Quad& q, hp::Real r, hp::Real t) {
    return {r * ((1 - t) * q.xLogX + t * q.xLogY), mean_log(q, q.ez, q.ey, r, t)};
}

/// Expects a Quad built with Z = X.
inline Sides secaa_sides(const Quad& q, hp::Real r, hp::Real t) {
    return {r * ((1 - t) * q.xLogX + t * q.xLogY), mean_log(q, q.ex, q.ey, r, t)};
}

inline Sides hphard_sides(const Quad& q, hp::Real p) {
    return {p * (q.xLogX + q.xLogY), sandwich_log(q, q.ex, p / 2, q.ey, p)};
}

}  // namespace logdetail

/// Log-inequality family. Commuting contexts use X, Y sharing a frame and Z = X.
inline std::vector<CheckDefinition> log_checks() {
    using namespace logdetail;
    std::vector<CheckDefinition> out;

    out.push_back({"main1_sandwich", "log", "Tr[X log(Y^{q/2} Z Y^{q/2})] <= Tr[X(log X + q log Y)]",
                   "positiveTriple", {{"q", 1.0}}, {{"q", -10.0, 10.0}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple s = sample_triple(rng, c);
                       const Quad q = quad(s);
                       const hp::Real qq = c.param("q");
                       return outcome(sandwich_log(q, q.ey, qq / 2, q.ez, 1), q.xLogX + qq * q.xLogY,
                                      commutator_norm(s.z.matrix(), s.y.matrix()));
                   }});

    out.push_back({"main1_mean", "log", "Tr[X log(Z^r #_t Y^r)] <= Tr[X(log X + q log Y)], r(1-t) = 1, q = rt",
                   "positiveTriple", {{"t", 0.5}}, {{"t", 0.0, 1.0, true, true}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple s = sample_triple(rng, c);
                       const Quad q = quad(s);
                       const hp::Real t = c.param("t");
                       const hp::Real r = 1 / (1 - t);
                       return outcome(mean_log(q, q.ez, q.ey, r, t), q.xLogX + r * t * q.xLogY,
                                      commutator_norm(s.z.matrix(), s.y.matrix()));
                   }});

    out.push_back({"clC", "log", "Tr[X log int (l+Y)^-1 Z (l+Y)^-1 dl] <= Tr[X(log X - log Y)]", "positiveTriple",
                   {}, {}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple s = sample_triple(rng, c);
                       const Quad q = quad(s);
                       return outcome(hp::trace_log(q.x, hp::dlog(q.ey, q.z)), q.xLogX - q.xLogY,
                                      commutator_norm(s.z.matrix(), s.y.matrix()));
                   }});

    out.push_back({"clA", "log", "Tr[X log(Y^{p/2} Z^p Y^{p/2})] <= Tr[X(log X^p + log Y^p)]", "positiveTriple",
                   {{"p", 1.0}}, {{"p", 0.0, kInf, true}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple s = sample_triple(rng, c);
                       const Quad q = quad(s);
                       const Sides v = cla_sides(q, c.param("p"));
                       return outcome(v.lhs, v.rhs, commutator_norm(s.z.matrix(), s.y.matrix()));
                   }});

    out.push_back({"clB", "log", "Tr[X log(Y^r #_s Z^r)] <= Tr[X(s log X^r + (1-s) log Y^r)]", "positiveTriple",
                   {{"r", 1.0}, {"s", 0.5}}, {{"r", 0.0, kInf, true}, {"s", 0.0, 1.0}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple s = sample_triple(rng, c);
                       const Quad q = quad(s);
                       const Sides v = clb_sides(q, c.param("r"), c.param("s"));
                       return outcome(v.lhs, v.rhs, commutator_norm(s.z.matrix(), s.y.matrix()));
                   }});

    out.push_back({"secA", "log", "Tr[X log(Z^r #_t Y^r)] >= Tr[X((1-t) log X^r + t log Y^r)], t >= 1",
                   "positiveTriple", {{"r", 1.0}, {"t", 1.5}}, {{"r", 0.0, kInf, true}, {"t", 1.0, kInf}}, 0.0,
                   true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple s = sample_triple(rng, c);
                       const Quad q = quad(s);
                       const Sides v = seca_sides(q, c.param("r"), c.param("t"));
                       return outcome(v.lhs, v.rhs, commutator_norm(s.z.matrix(), s.y.matrix()));
                   }});

    out.push_back({"secAA", "log", "Tr[X log(X^r #_t Y^r)] >= Tr[X((1-t) log X^r + t log Y^r)], t <= 0",
                   "positive", {{"r", 1.0}, {"t", -0.5}}, {{"r", 0.0, kInf, true}, {"t", -kInf, 0.0}}, 0.0, true,
                   false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair s = sample_pair(rng, c);
                       const Quad q = quad(s.x, s.y, s.x);
                       const Sides v = secaa_sides(q, c.param("r"), c.param("t"));
                       return outcome(v.lhs, v.rhs, commutator_norm(s.x.matrix(), s.y.matrix()));
                   }});

    out.push_back({"HPpair_lower", "log", "(1/p) Tr[X log(Y^{p/2} X^p Y^{p/2})] <= Tr[X(log X + log Y)]",
                   "positive", {{"p", 1.0}}, {{"p", 0.0, kInf, true}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair s = sample_pair(rng, c);
                       const Quad q = quad(s.x, s.y, s.x);
                       const hp::Real p = c.param("p");
                       return outcome(sandwich_log(q, q.ey, p / 2, q.ex, p) / p, q.xLogX + q.xLogY,
                                      commutator_norm(s.x.matrix(), s.y.matrix()));
                   }});

    out.push_back({"HPpair_upper", "log", "Tr[X(log X + log Y)] <= (1/p) Tr[X log(X^{p/2} Y^p X^{p/2})]",
                   "positive", {{"p", 1.0}}, {{"p", 0.0, kInf, true}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair s = sample_pair(rng, c);
                       const Quad q = quad(s.x, s.y, s.x);
                       const hp::Real p = c.param("p");
                       return outcome(q.xLogX + q.xLogY, sandwich_log(q, q.ex, p / 2, q.ey, p) / p,
                                      commutator_norm(s.x.matrix(), s.y.matrix()));
                   }});

    out.push_back({"HPhard", "log", "Tr[X(log X^p + log Y^p)] <= Tr[X log(X^{p/2} Y^p X^{p/2})]", "positive",
                   {{"p", 1.0}}, {{"p", 0.0, kInf, true}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair s = sample_pair(rng, c);
                       const Quad q = quad(s.x, s.y, s.x);
                       const Sides v = hphard_sides(q, c.param("p"));
                       return outcome(v.lhs, v.rhs, commutator_norm(s.x.matrix(), s.y.matrix()));
                   }});

    // Tr[X log(Y Z^p Y)] <= Tr[X(p log X + 2 log Y)] at p1 + p2; the p1 and p2 instances must hold too.
    out.push_back({"monprop", "log", "validity at p1 and p2 implies validity at p1 + p2", "positiveTriple",
                   {{"p1", 0.5}, {"p2", 0.5}}, {{"p1", 0.0, kInf, true}, {"p2", 0.0, kInf, true}}, 0.0, true, false,
                   1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple s = sample_triple(rng, c);
                       const Quad q = quad(s);
                       const hp::Real p1 = c.param("p1"), p2 = c.param("p2");
                       auto gap = [&](hp::Real p, hp::Real* lhs, hp::Real* rhs) {
                           *lhs = sandwich_log(q, q.ey, 1, q.ez, p);
                           *rhs = p * q.xLogX + 2 * q.xLogY;
                           return d(*rhs - *lhs);
                       };
                       hp::Real l1, r1, l2, r2, l, r;
                       const double g1 = gap(p1, &l1, &r1);
                       const double g2 = gap(p2, &l2, &r2);
                       gap(p1 + p2, &l, &r);
                       TrialOutcome o = outcome(l, r, commutator_norm(s.z.matrix(), s.y.matrix()));
                       const double allowed1 = c.tol * std::max({1.0, std::abs(d(l1)), std::abs(d(r1))});
                       const double allowed2 = c.tol * std::max({1.0, std::abs(d(l2)), std::abs(d(r2))});
                       o.sideOk = g1 >= -allowed1 && g2 >= -allowed2;
                       o.sideNote = "premise instance at p1 or p2 failed";
                       return o;
                   }});

    return out;
}

}  // namespace qre::harness
