#pragma once

#include "qre/entropy.hpp"
#include "qre/harness/engine.hpp"

namespace qre::harness {

namespace clsdetail {

inline constexpr int kProbes = 20;
inline constexpr double kMaximizerTolerance = 1e-10;

inline double log_trace_exp(const HermitianMatrix& a) {
    const RealVector& w = a.eigenvalues();
    const double top = w.maxCoeff();
    return top + std::log((w.array() - top).exp().sum());
}

inline double trace_xlogx(const PositiveMatrix& x) {
    const RealVector& w = x.eigenvalues();
    return (w.array() * w.array().log()).sum();
}

inline HermitianMatrix sum(const HermitianMatrix& a, const HermitianMatrix& b, double s = 1.0) {
    return HermitianMatrix(Matrix(a.matrix() + s * b.matrix()));
}

/// Log-uniform step in [1e-3, 1].
inline double probe_step(RandomStream& rng) { return std::pow(10.0, rng.uniform(-3.0, 0.0)); }

/// Unit-norm Hermitian direction, in the given frame when the context is commuting.
inline HermitianMatrix direction(RandomStream& rng, const TrialContext& c, const Matrix& frame) {
    const HermitianMatrix g = c.commuting ? hermitian_in_frame(frame, rng, c.dim) : random_hermitian(rng, c.dim);
    return HermitianMatrix(Matrix(g.matrix() / g.matrix().norm()));
}

/// (1 - e) X + e W for a random density W.
inline DensityMatrix mix_density(RandomStream& rng, const TrialContext& c, const DensityMatrix& x) {
    const double e = probe_step(rng);
    const PositiveMatrix w = c.commuting ? positive_in_frame(x.frame(), log_uniform_spectrum(rng, c.dim, c.kappa))
                                         : random_positive(rng, c.dim, c.kappa);
    const DensityMatrix wd = DensityMatrix::normalized(w);
    return DensityMatrix::normalized(PositiveMatrix(Matrix((1.0 - e) * x.matrix() + e * wd.matrix())));
}

/// Variational outcome: the best probe must not beat the closed value; the stated maximizer
/// attains it within kMaximizerTolerance.
inline TrialOutcome variational(double closed, double atMaximizer, double bestProbe, double commNorm) {
    TrialOutcome o = inequality_outcome(bestProbe, closed, commNorm);
    o.sideOk = std::abs(atMaximizer - closed) <= kMaximizerTolerance * std::max(1.0, std::abs(closed));
    o.sideNote = "stated maximizer misses the supremum by " + format_double(std::abs(atMaximizer - closed), 3);
    return o;
}

}  // namespace clsdetail

/// Classical family: Klein, Peierls-Bogoliubov and the Gibbs variational principles.
inline std::vector<CheckDefinition> classical_checks() {
    using namespace clsdetail;
    std::vector<CheckDefinition> out;

    out.push_back({"klein_exp", "classical", "Tr e^B >= Tr e^A + Tr[e^A (B - A)]", "hermitian", {}, {}, 0.0, false,
                   false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPair p = sample_hermitian_pair(rng, c);
                       const Matrix ea = expm(p.h).matrix();
                       return inequality_outcome(expm(p.h).trace() + trace_product(ea, p.k.matrix() - p.h.matrix()),
                                                 expm(p.k).trace(), commutator_norm(p.h.matrix(), p.k.matrix()));
                   }});

    out.push_back({"klein_xlogx", "classical", "Tr[B log B] >= Tr[A log A] + Tr[(1 + log A)(B - A)]", "positive", {},
                   {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const Matrix d = p.y.matrix() - p.x.matrix();
                       const double lhs = trace_xlogx(p.x) + d.trace().real() + trace_product(logm(p.x).matrix(), d);
                       return inequality_outcome(lhs, trace_xlogx(p.y), commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"PB", "classical", "Tr[e^H K]/Tr e^H <= log Tr e^{H+K} - log Tr e^H", "hermitian", {}, {}, 0.0,
                   false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPair p = sample_hermitian_pair(rng, c);
                       const double ltH = log_trace_exp(p.h);
                       // e^{H - log Tr e^H} is the Gibbs state of H.
                       const Matrix gibbs = expm(sum(p.h, HermitianMatrix::identity(c.dim), -ltH)).matrix();
                       return inequality_outcome(trace_product(gibbs, p.k.matrix()), log_trace_exp(sum(p.h, p.k)) - ltH,
                                                 commutator_norm(p.h.matrix(), p.k.matrix()));
                   }});

    out.push_back({"gibbs1", "classical", "Tr[X log X] = sup_K Tr[XK] - log Tr e^K, attained at K = log X", "density",
                   {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const DensityMatrix x = sample_density(rng, c);
                       auto objective = [&](const HermitianMatrix& k) {
                           return trace_product(x.matrix(), k.matrix()) - log_trace_exp(k);
                       };
                       const HermitianMatrix kStar = logm(x);
                       double best = -std::numeric_limits<double>::infinity();
                       for (int j = 0; j < kProbes; ++j)
                           best = std::max(best, objective(sum(kStar, direction(rng, c, x.frame()), probe_step(rng))));
                       return variational(trace_xlogx(x), objective(kStar), best, 0.0);
                   }});

    out.push_back({"gibbs2", "classical",
                   "log Tr e^K = sup_X Tr[XK] - Tr[X log X] over densities, attained at e^K/Tr e^K", "hermitian", {},
                   {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianMatrix k = sample_hermitian(rng, c);
                       auto objective = [&](const DensityMatrix& x) {
                           return trace_product(x.matrix(), k.matrix()) - trace_xlogx(x);
                       };
                       const DensityMatrix xStar = DensityMatrix::normalized(expm(k));
                       double best = -std::numeric_limits<double>::infinity();
                       for (int j = 0; j < kProbes; ++j) best = std::max(best, objective(mix_density(rng, c, xStar)));
                       return variational(log_trace_exp(k), objective(xStar), best, 0.0);
                   }});

    out.push_back({"gibbs3", "classical",
                   "D(X||Y) = sup_K Tr[XK] - (log Tr e^{K + log Y} + 1 - Tr Y), attained at K = log X - log Y",
                   "density", {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const DensityMatrix x = DensityMatrix::normalized(p.x);
                       const HermitianMatrix logY = logm(p.y);
                       auto objective = [&](const HermitianMatrix& k) {
                           return trace_product(x.matrix(), k.matrix()) -
                                  (log_trace_exp(sum(k, logY)) + 1.0 - p.y.trace());
                       };
                       const HermitianMatrix kStar = sum(logm(x), logY, -1.0);
                       double best = -std::numeric_limits<double>::infinity();
                       for (int j = 0; j < kProbes; ++j)
                           best = std::max(best, objective(sum(kStar, direction(rng, c, x.frame()), probe_step(rng))));
                       return variational(umegaki(x, p.y).value, objective(kStar), best,
                                          commutator_norm(x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"gibbs4", "classical",
                   "log Tr e^{K + log Y} + 1 - Tr Y = sup_X Tr[XK] - D(X||Y), attained at e^{K + log Y}/Tr",
                   "hermitian", {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c);
                       const HermitianMatrix a = sum(p.h, logm(p.y));
                       auto objective = [&](const DensityMatrix& x) {
                           return trace_product(x.matrix(), p.h.matrix()) - umegaki(x, p.y).value;
                       };
                       const DensityMatrix xStar = DensityMatrix::normalized(expm(a));
                       double best = -std::numeric_limits<double>::infinity();
                       for (int j = 0; j < kProbes; ++j) best = std::max(best, objective(mix_density(rng, c, xStar)));
                       return variational(log_trace_exp(a) + 1.0 - p.y.trace(), objective(xStar), best,
                                          commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    return out;
}

}  // namespace qre::harness
