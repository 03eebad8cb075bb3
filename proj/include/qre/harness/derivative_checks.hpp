#pragma once

#include "qre/harness/log_checks.hpp"

namespace qre::harness {

namespace derivdetail {

inline constexpr double kStep = 1e-4;
inline constexpr double kRelTolerance = 1e-6;
inline constexpr double kAbsTolerance = 1e-8;

struct SlopePair {
    double analytic = 0.0;
    double richardson = 0.0;
};

/// d/ds Tr[X log(Y^p #_s Z^p)] at s = 0: Tr[W log(Y^{-p/2} Z^p Y^{-p/2})] with
/// W = Y^{p/2} Dlog(Y^p)[X] Y^{p/2}, against the Richardson extrapolation of central differences
/// at h and h/2. Evaluated in quad: Y^p at p = 4 has condition numbers near kappa^4.
inline SlopePair slopes(const PositiveMatrix& x, const PositiveMatrix& y, const PositiveMatrix& z, double p) {
    const hp::Mat xq = hp::from_double(x.matrix());
    const hp::Eig ey = hp::eig(hp::from_double(y.matrix()));
    const hp::Eig ez = hp::eig(hp::from_double(z.matrix()));
    hp::require_positive(ey);
    hp::require_positive(ez);
    const hp::Eig a = logdetail::powered(ey, p);
    const hp::Mat b = hp::power(ez, p);
    const hp::Mat aHalf = hp::power(ey, hp::Real(p) / 2), aInvHalf = hp::power(ey, -hp::Real(p) / 2);
    const hp::Mat w = hp::hermitian_part(aHalf * hp::dlog(a, xq) * aHalf);
    SlopePair out;
    out.analytic = logdetail::d(hp::trace_log(w, hp::hermitian_part(aInvHalf * b * aInvHalf)));
    auto f = [&](hp::Real s) { return hp::trace_log(xq, hp::geometric_mean(a, b, s)); };
    auto central = [&](hp::Real h) { return (f(h) - f(-h)) / (2 * h); };
    const hp::Real h = kStep;
    out.richardson = logdetail::d((4 * central(h / 2) - central(h)) / 3);
    return out;
}

}  // namespace derivdetail

/// Derivative family: the first-order expansion of s -> Tr[X log(Y^p #_s Z^p)].
inline std::vector<CheckDefinition> derivative_checks() {
    using namespace derivdetail;
    std::vector<CheckDefinition> out;

    out.push_back({"sextend", "derivative",
                   "d/ds Tr[X log(Y^p #_s Z^p)] at s = 0 equals Tr[W log(Y^{-p/2} Z^p Y^{-p/2})]", "positiveTriple",
                   {{"p", 1.0}}, {{"p", 0.0, std::numeric_limits<double>::infinity(), true}}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositiveTriple t = sample_triple(rng, c);
                       const SlopePair s = slopes(t.x, t.y, t.z, c.param("p"));
                       return threshold_outcome(std::abs(s.analytic - s.richardson),
                                                std::max(kRelTolerance * std::abs(s.analytic), kAbsTolerance),
                                                commutator_norm(t.z.matrix(), t.y.matrix()));
                   }});

    return out;
}

}  // namespace qre::harness
