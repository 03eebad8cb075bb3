#pragma once

#include <array>

#include "qre/harness/log_checks.hpp"
#include "qre/legendre.hpp"

namespace qre::harness {

namespace expdetail {

using logdetail::d;

struct QuadPair {
    hp::Mat h, k;
    hp::Eig eh, ek;
};

inline QuadPair quad(const HermitianPair& p) {
    QuadPair q;
    q.h = hp::from_double(p.h.matrix());
    q.k = hp::from_double(p.k.matrix());
    q.eh = hp::eig(q.h);
    q.ek = hp::eig(q.k);
    return q;
}

/// Eigen-data of e^{rA} from that of A.
inline hp::Eig exp_scaled(const hp::Eig& a, hp::Real r) {
    hp::Eig out = a;
    for (hp::Real& w : out.w) w = hp::exp(r * w);
    return out;
}

inline hp::Real trace_power(const hp::Eig& e, hp::Real p) {
    hp::Real s = 0;
    for (hp::Real w : e.w) s += hp::pow(w, p);
    return s;
}

inline hp::Real trace_exp(const hp::Mat& m) {
    const hp::Eig e = hp::eig(m);
    hp::Real s = 0;
    for (hp::Real w : e.w) s += hp::exp(w);
    return s;
}

/// Tr[(A^{r/2} B^r A^{r/2})^{1/r}]
inline hp::Real friedland_so(const hp::Eig& a, const hp::Eig& b, hp::Real r) {
    const hp::Mat o = hp::power(a, r / 2);
    return trace_power(hp::eig(hp::hermitian_part(o * hp::power(b, r) * o)), 1 / r);
}

/// Picks the link of a chain to report: the smallest gap, or the largest |gap| when all
/// links should vanish.
inline TrialOutcome worst_link(const std::vector<std::pair<double, double>>& links, bool twoSided, double commNorm) {
    std::size_t pick = 0;
    for (std::size_t k = 1; k < links.size(); ++k) {
        const double g = links[k].second - links[k].first;
        const double best = links[pick].second - links[pick].first;
        if (twoSided ? std::abs(g) > std::abs(best) : g < best) pick = k;
    }
    return inequality_outcome(links[pick].first, links[pick].second, commNorm);
}

/// Tr e^{log A + log B} against Tr[(A^{r/2} B^r A^{r/2})^{1/r}]; expects a Quad built with Z = X.
inline logdetail::Sides frso_sides(const logdetail::Quad& q, hp::Real r) {
    return {trace_exp(hp::logm(q.ex) + hp::logm(q.ey)), friedland_so(q.ex, q.ey, r)};
}

inline constexpr std::array<double, 5> kFrSoGrid = {0.25, 0.5, 1.0, 2.0, 4.0};

}  // namespace expdetail

/// Exponential family: Golden-Thompson refinements and complements.
inline std::vector<CheckDefinition> exp_checks() {
    using namespace expdetail;
    constexpr double kInf = logdetail::kInf;
    std::vector<CheckDefinition> out;

    out.push_back({"GT", "exp", "log Tr e^{H+K} <= inf lambda_max(H - log Q) <= log Tr[e^H e^K]", "hermitian", {},
                   {}, 0.0, true, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPair p = sample_hermitian_pair(rng, c);
                       const GoldenThompson g = golden_thompson_chain(p.h, p.k);
                       TrialOutcome o = worst_link({{g.lhs, g.mid}, {g.mid, g.rhs}}, c.commuting,
                                                   commutator_norm(p.h.matrix(), p.k.matrix()));
                       o.slack = g.saddle.slack();
                       return o;
                   }});

    out.push_back({"HPco", "exp", "Tr[(e^{rH} #_t e^{rK})^{1/r}] <= Tr e^{(1-t)H + tK}", "hermitian",
                   {{"r", 1.0}, {"t", 0.5}}, {{"r", 0.0, kInf, true}, {"t", 0.0, 1.0}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPair p = sample_hermitian_pair(rng, c);
                       const QuadPair q = quad(p);
                       const hp::Real r = c.param("r"), t = c.param("t");
                       const hp::Eig g = hp::eig(hp::geometric_mean(exp_scaled(q.eh, r), hp::reconstruct(exp_scaled(q.ek, r)), t));
                       return inequality_outcome(d(trace_power(g, 1 / r)), d(trace_exp((1 - t) * q.h + t * q.k)),
                                                 commutator_norm(p.h.matrix(), p.k.matrix()));
                   }});

    // W = (e^{rH} #_s e^{rK})^{1/r}, V = e^{(1-s)H + sK}: D(W||V) + Tr W <= Tr V.
    out.push_back({"HPC2", "exp", "D(W||V) + Tr W <= Tr V", "hermitian", {{"r", 0.5}, {"s", 0.5}},
                   {{"r", 0.0, kInf, true}, {"s", 0.0, 1.0}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPair p = sample_hermitian_pair(rng, c);
                       const QuadPair q = quad(p);
                       const hp::Real r = c.param("r"), s = c.param("s");
                       const hp::Eig g = hp::eig(hp::geometric_mean(exp_scaled(q.eh, r), hp::reconstruct(exp_scaled(q.ek, r)), s));
                       const hp::Mat w = hp::power(g, 1 / r);
                       const hp::Mat logW = (1 / r) * hp::logm(g);
                       const hp::Mat logV = (1 - s) * q.h + s * q.k;
                       const hp::Real trV = trace_exp(logV);
                       const hp::Real dwv = hp::trace_product(w, logW - logV) + trV - hp::trace(w);
                       return inequality_outcome(d(dwv + hp::trace(w)), d(trV),
                                                 commutator_norm(p.h.matrix(), p.k.matrix()));
                   }});

    out.push_back({"FrSo", "exp", "Tr e^{log A + log B} <= Tr[(A^{r/2} B^r A^{r/2})^{1/r}]", "positive",
                   {{"r", 1.0}}, {{"r", 0.0, kInf, true}}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair s = sample_pair(rng, c);
                       const logdetail::Quad q = logdetail::quad(s.x, s.y, s.x);
                       const logdetail::Sides v = frso_sides(q, c.param("r"));
                       return inequality_outcome(d(v.lhs), d(v.rhs), commutator_norm(s.x.matrix(), s.y.matrix()));
                   }});

    out.push_back({"FrSo_monotone", "exp", "r -> Tr[(A^{r/2} B^r A^{r/2})^{1/r}] increasing on {1/4,1/2,1,2,4}",
                   "positive", {}, {}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair s = sample_pair(rng, c);
                       const logdetail::Quad q = logdetail::quad(s.x, s.y, s.x);
                       std::vector<double> f;
                       for (double r : kFrSoGrid) f.push_back(d(friedland_so(q.ex, q.ey, r)));
                       std::vector<std::pair<double, double>> links;
                       for (std::size_t k = 0; k + 1 < f.size(); ++k) links.push_back({f[k], f[k + 1]});
                       return worst_link(links, c.commuting, commutator_norm(s.x.matrix(), s.y.matrix()));
                   }});

    out.push_back({"expdiff", "exp",
                   "Tr[e^H e^L] - Tr e^{H+L} <= Tr[e^H H e^L] - Tr[e^H e^{L/2} H e^{L/2}]", "hermitian", {}, {},
                   0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPair p = sample_hermitian_pair(rng, c);
                       const SidePair s = exp_difference_check(p.h, p.k);
                       return inequality_outcome(s.lhs, s.rhs, commutator_norm(p.h.matrix(), p.k.matrix()));
                   }});

    out.push_back({"geoexp", "exp", "Tr[(Y #_{1/2} e^H)^2] <= Tr e^{H + log Y}", "hermitian", {}, {}, 0.0, true,
                   false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c);
                       const SidePair s = geo_exp_lower(p.h, p.y);
                       return inequality_outcome(s.lhs, s.rhs, commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    return out;
}

}  // namespace qre::harness
