#pragma once

#include "qre/entropy.hpp"
#include "qre/harness/exp_checks.hpp"
#include "qre/legendre.hpp"

namespace qre::harness {

namespace entdetail {

inline constexpr double kChainDonaldSlack = 1e-6;
inline constexpr double kCommutingChainTolerance = 1e-7;
inline constexpr double kDonaldConstraintTolerance = 1e-10;
inline constexpr double kLocalProbeStep = 1e-4;
inline constexpr double kLocalProbeTolerance = 1e-12;
inline constexpr int kLocalProbes = 20;
inline constexpr double kCommutingSolutionTolerance = 1e-8;
inline constexpr double kDualRelationTolerance = 1e-10;

inline PositiveMatrix scaled(const PositiveMatrix& a, double s) { return PositiveMatrix(Matrix(s * a.matrix())); }

/// R(X||W) for the two closed-form kinds.
inline double closed_form(EntropyKind kind, const PositiveMatrix& x, const PositiveMatrix& w) {
    return kind == EntropyKind::Umegaki ? umegaki(x, w).value : bs_entropy(x, w).value;
}

/// Worst relative defect of R(lambda X, W) = lambda R(X, W) + lambda log lambda Tr X + (1 - lambda) Tr W.
inline TrialOutcome scaling_outcome(const std::function<double(const PositiveMatrix&, const PositiveMatrix&)>& r,
                                    const PositiveMatrix& x, const PositiveMatrix& w, double lambda, double commNorm) {
    const double base = r(x, w);
    const double lhs = r(scaled(x, lambda), w);
    const double rhs = lambda * base + lambda * std::log(lambda) * x.trace() + (1.0 - lambda) * w.trace();
    return identity_outcome(std::abs(lhs - rhs), std::max({1.0, std::abs(lhs), std::abs(rhs)}), commNorm);
}

inline TrialOutcome homogeneity_outcome(const std::function<double(const PositiveMatrix&, const PositiveMatrix&)>& r,
                                        const PositiveMatrix& x, const PositiveMatrix& w, double lambda,
                                        double commNorm) {
    const double lhs = r(scaled(x, lambda), scaled(w, lambda));
    const double rhs = lambda * r(x, w);
    return identity_outcome(std::abs(lhs - rhs), std::max({1.0, std::abs(lhs), std::abs(rhs)}), commNorm);
}

inline TrialOutcome worse(const TrialOutcome& a, const TrialOutcome& b) {
    const double ga = (a.rhs - a.lhs) / std::max(*a.scale, 1e-300);
    const double gb = (b.rhs - b.lhs) / std::max(*b.scale, 1e-300);
    return gb < ga ? b : a;
}

/// Tr[X log Q]
inline double donald_objective(const PositiveMatrix& x, const Matrix& q) {
    return trace_product(x.matrix(), logm(PositiveMatrix(q)).matrix());
}

/// Ray value J(a) = a Tr[WH] - R(aW||Y) at a* = e^{J(1) + Tr Y - 1}, against e^{J(1) + Tr Y - 1} - Tr Y.
inline TrialOutcome dual_ray(const std::function<double(const PositiveMatrix&)>& entropyTo,
                             const HermitianMatrix& h, const DensityMatrix& w, const PositiveMatrix& y,
                             double commNorm) {
    const double trWH = trace_product(w.matrix(), h.matrix());
    const double j1 = trWH - entropyTo(w);
    const double a = std::exp(j1 + y.trace() - 1.0);
    const double ray = a * trWH - entropyTo(scaled(w, a));
    const double relation = a - y.trace();
    return threshold_outcome(std::abs(ray - relation) / std::max({1.0, std::abs(ray), std::abs(relation)}),
                             kDualRelationTolerance, commNorm);
}

}  // namespace entdetail

/// Entropy family: axioms, the D_D <= D <= D_BS chain, solver certificates and Legendre relations.
inline std::vector<CheckDefinition> entropy_checks() {
    using namespace entdetail;
    constexpr double kInf = logdetail::kInf;
    std::vector<CheckDefinition> out;

    out.push_back({"chain", "entropy", "D_D(X||W) <= D(X||W) <= D_BS(X||W)", "density", {}, {}, 0.0, true, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c, true);
                       const EntropyChain ch = entropy_chain(p.x, p.y);
                       TrialOutcome o = expdetail::worst_link({{ch.donald, ch.umegaki}, {ch.umegaki, ch.bs}},
                                                              c.commuting,
                                                              commutator_norm(p.x.matrix(), p.y.matrix()));
                       o.scale = ch.scale;
                       o.slack = (c.commuting ? kCommutingChainTolerance : kChainDonaldSlack) * ch.scale;
                       return o;
                   }});

    out.push_back({"copo", "entropy", "commuting X, W: D_D(X||W) = D(X||W)", "commutingPair", {}, {}, 1e-7, false,
                   false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       TrialContext cc = c;
                       cc.commuting = true;
                       const PositivePair p = sample_pair(rng, cc);
                       const double dd = donald(p.x, p.y).value, du = umegaki(p.x, p.y).value;
                       return identity_outcome(std::abs(dd - du), std::max({entropy_scale(p.x, p.y), std::abs(du)}),
                                               commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"scaling", "entropy", "R(lX, W) = l R(X, W) + l log l Tr X + (1 - l) Tr W, R in {D, D_BS}",
                   "positive", {{"lambda", 2.0}}, {{"lambda", 0.0, kInf, true}}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double l = c.param("lambda"), cn = commutator_norm(p.x.matrix(), p.y.matrix());
                       auto du = [](const PositiveMatrix& a, const PositiveMatrix& b) { return umegaki(a, b).value; };
                       auto db = [](const PositiveMatrix& a, const PositiveMatrix& b) { return bs_entropy(a, b).value; };
                       return worse(scaling_outcome(du, p.x, p.y, l, cn), scaling_outcome(db, p.x, p.y, l, cn));
                   }});

    out.push_back({"homogeneity", "entropy", "R(lX, lW) = l R(X, W), R in {D, D_BS}", "positive",
                   {{"lambda", 2.0}}, {{"lambda", 0.0, kInf, true}}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double l = c.param("lambda"), cn = commutator_norm(p.x.matrix(), p.y.matrix());
                       auto du = [](const PositiveMatrix& a, const PositiveMatrix& b) { return umegaki(a, b).value; };
                       auto db = [](const PositiveMatrix& a, const PositiveMatrix& b) { return bs_entropy(a, b).value; };
                       return worse(homogeneity_outcome(du, p.x, p.y, l, cn), homogeneity_outcome(db, p.x, p.y, l, cn));
                   }});

    out.push_back({"pinsker", "entropy", "R(X||W) >= 1/2 Tr X ||X/Tr X - W/Tr W||_1^2, R in {D, D_BS}", "positive",
                   {}, {}, 0.0, false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double bound = pinsker_bound(p.x, p.y);
                       return inequality_outcome(bound, std::min(umegaki(p.x, p.y).value, bs_entropy(p.x, p.y).value),
                                                 commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"donald_axioms", "entropy", "D_D: scaling, homogeneity and Pinsker", "positive",
                   {{"lambda", 2.0}}, {{"lambda", 0.0, kInf, true}}, 1e-8, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const double l = c.param("lambda"), cn = commutator_norm(p.x.matrix(), p.y.matrix());
                       auto dd = [](const PositiveMatrix& a, const PositiveMatrix& b) { return donald(a, b).value; };
                       TrialOutcome o = worse(scaling_outcome(dd, p.x, p.y, l, cn), homogeneity_outcome(dd, p.x, p.y, l, cn));
                       const double value = donald(p.x, p.y).value, bound = pinsker_bound(p.x, p.y);
                       o.sideOk = value >= bound - c.tol * std::max({1.0, value, bound});
                       o.sideNote = "Pinsker bound violated";
                       return o;
                   }});

    out.push_back({"donald_residual", "entropy", "Donald solver residual <= 1e-8", "positive", {}, {}, 0.0, false,
                   true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const DonaldSolution s = solve_donald_q(p.x, p.y);
                       return threshold_outcome(s.residual, kDonaldResidualTolerance,
                                                commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"donald_constraint", "entropy", "|Tr[QY] - Tr X| <= 1e-10 Tr X at the Donald maximizer",
                   "positive", {}, {}, 0.0, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const DonaldSolution s = solve_donald_q(p.x, p.y);
                       const double trX = p.x.trace();
                       return threshold_outcome(std::abs(trace_product(s.q.matrix(), p.y.matrix()) - trX) / trX,
                                                kDonaldConstraintTolerance,
                                                commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    // Q' = Q + eps |Q| G rescaled onto Tr[Q'Y] = Tr X; the objective must not increase.
    out.push_back({"donald_localopt", "entropy", "feasible perturbations of the Donald maximizer do not increase Tr[X log Q]",
                   "positive", {}, {}, 0.0, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const DonaldSolution s = solve_donald_q(p.x, p.y);
                       const double trX = p.x.trace();
                       const double qNorm = s.q.spectral().max();
                       double worst = -std::numeric_limits<double>::infinity();
                       for (int k = 0; k < kLocalProbes; ++k) {
                           Matrix g = random_hermitian(rng, c.dim).matrix();
                           g /= g.norm();
                           double step = kLocalProbeStep * qNorm;
                           Matrix q = s.q.matrix() + step * g;
                           while (jacobi_eigen(q).min() <= 0.0) {
                               step *= 0.5;
                               q = s.q.matrix() + step * g;
                           }
                           q *= trX / trace_product(q, p.y.matrix());
                           worst = std::max(worst, donald_objective(p.x, q) - s.objective);
                       }
                       const double scale = std::max({1.0, std::abs(s.objective), trX});
                       return threshold_outcome(worst, kLocalProbeTolerance * scale,
                                                commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"donald_commuting", "entropy", "commuting X, Y: Q = X Y^{-1}", "commutingPair", {}, {}, 0.0, false,
                   true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       TrialContext cc = c;
                       cc.commuting = true;
                       const PositivePair p = sample_pair(rng, cc);
                       const DonaldSolution s = solve_donald_q(p.x, p.y);
                       const Matrix expected = hermitian_part(p.x.matrix() * inverse(p.y).matrix());
                       const double scale = op_norm(expected);
                       return threshold_outcome(op_norm(s.q.matrix() - expected) / scale, kCommutingSolutionTolerance,
                                                commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"donald_pinching", "entropy",
                   "D_D >= classical entropy of any pinching, with equality in the frame of Q", "positive", {}, {},
                   1e-8, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c);
                       const DonaldSolution s = solve_donald_q(p.x, p.y);
                       const double value = s.objective + p.y.trace() - p.x.trace();
                       const double pinched = donald_pinched(p.x, p.y, haar_unitary(rng, c.dim));
                       TrialOutcome o = inequality_outcome(pinched, value, commutator_norm(p.x.matrix(), p.y.matrix()));
                       const double atQ = donald_pinched(p.x, p.y, s.q.frame());
                       o.sideOk = std::abs(atQ - value) <= c.tol * std::max({1.0, std::abs(value), p.x.trace()});
                       o.sideNote = "pinching in the frame of Q does not attain D_D";
                       return o;
                   }});

    out.push_back({"allsame", "entropy",
                   "the sandwich and geometric suprema equal D_D at the images of Q; the integral map round-trips",
                   "density", {}, {}, 1e-8, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c, true);
                       const DonaldSolution s = solve_donald_q(p.x, p.y);
                       const double value = s.objective + p.y.trace() - p.x.trace();
                       const AllSameValues a = allsame_values(p.x, p.y, s.q);
                       const double defect = std::max({std::abs(a.sandwich - value), std::abs(a.geometric - value),
                                                       std::abs(a.integral - value), a.traceDefect});
                       return identity_outcome(defect, std::max({1.0, std::abs(value), p.x.trace()}),
                                               commutator_norm(p.x.matrix(), p.y.matrix()));
                   }});

    out.push_back({"allsame_sup", "entropy", "Tr[X log Dlog(Y)[Z]] + Tr Y - Tr X <= D_D(X||Y) for Tr Z = Tr X",
                   "density", {}, {}, 1e-8, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const PositivePair p = sample_pair(rng, c, true);
                       const PositiveMatrix z = random_density(rng, c.dim, c.kappa);
                       return inequality_outcome(integral_objective(p.x, p.y, z), donald(p.x, p.y).value,
                                                 commutator_norm(z.matrix(), p.y.matrix()));
                   }});

    out.push_back({"bs_residual", "entropy", "BS maximizer residual <= 1e-8", "hermitian", {}, {}, 0.0, false, true,
                   1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c);
                       const BsMaximizer m = solve_bs_maximizer(p.h, p.y);
                       return threshold_outcome(m.residual, kBsResidualTolerance,
                                                commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    out.push_back({"bs_commuting", "entropy", "commuting H, Y: R = e^H", "commutingPair", {}, {}, 0.0, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       TrialContext cc = c;
                       cc.commuting = true;
                       const HermitianPositive p = sample_hermitian_positive(rng, cc);
                       const BsMaximizer m = solve_bs_maximizer(p.h, p.y);
                       const Matrix expected = expm(p.h).matrix();
                       return threshold_outcome(op_norm(m.r.matrix() - expected) / op_norm(expected),
                                                kCommutingSolutionTolerance,
                                                commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    out.push_back({"bs_psi", "entropy", "Psi_BS(H, Y) <= Psi(H, Y)", "hermitian", {}, {}, 0.0, true, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c);
                       const BsMaximizer m = solve_bs_maximizer(p.h, p.y);
                       return inequality_outcome(m.psiValue, psi_umegaki(p.h, p.y),
                                                 commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    out.push_back({"phid_gap", "entropy", "Phi_D duality gap <= 1e-5 (1 + |value|)", "hermitian", {}, {}, 0.0, false,
                   true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c, true);
                       const SaddleValue v = phi_donald(p.h, p.y, false);
                       return threshold_outcome(v.gap, kSaddleGapTolerance * (1.0 + std::abs(v.value)),
                                                commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    out.push_back({"phid_commuting", "entropy", "commuting H, Y: Phi_D = Phi", "commutingPair", {}, {}, 0.0, false,
                   true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       TrialContext cc = c;
                       cc.commuting = true;
                       const HermitianPositive p = sample_hermitian_positive(rng, cc, true);
                       const double u = phi_umegaki(p.h, p.y);
                       return threshold_outcome(std::abs(phi_donald(p.h, p.y).value - u),
                                                kCommutingChainTolerance * std::max(1.0, std::abs(u)),
                                                commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    out.push_back({"phid_order", "entropy", "Phi(H, Y) <= Phi_D(H, Y)", "hermitian", {}, {}, 0.0, true, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c, true);
                       const SaddleValue v = phi_donald(p.h, p.y);
                       TrialOutcome o = inequality_outcome(phi_umegaki(p.h, p.y), v.value,
                                                           commutator_norm(p.h.matrix(), p.y.matrix()));
                       o.slack = v.slack();
                       return o;
                   }});

    out.push_back({"dualrel_umegaki", "entropy", "Psi = e^{Phi + Tr Y - 1} - Tr Y for D", "hermitian", {}, {}, 0.0,
                   false, false, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c);
                       const DensityMatrix w = random_density(rng, c.dim, c.kappa);
                       const double cn = commutator_norm(p.h.matrix(), p.y.matrix());
                       TrialOutcome o = dual_ray([&](const PositiveMatrix& a) { return umegaki(a, p.y).value; }, p.h,
                                                 w, p.y, cn);
                       const double psi = psi_umegaki(p.h, p.y);
                       const double rel = psi_from_phi(phi_umegaki(p.h, p.y), p.y);
                       o.lhs = std::max(o.lhs, std::abs(psi - rel) / std::max({1.0, std::abs(psi), std::abs(rel)}));
                       return o;
                   }});

    out.push_back({"dualrel_bs", "entropy", "Psi_BS = e^{Phi_BS + Tr Y - 1} - Tr Y", "hermitian", {}, {}, 0.0, false,
                   true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c);
                       const DensityMatrix w = random_density(rng, c.dim, c.kappa);
                       const double cn = commutator_norm(p.h.matrix(), p.y.matrix());
                       TrialOutcome o = dual_ray([&](const PositiveMatrix& a) { return bs_entropy(a, p.y).value; },
                                                 p.h, w, p.y, cn);
                       // The Psi maximizer Y^{1/2} R Y^{1/2}, normalized, maximizes Phi_BS.
                       const BsMaximizer m = solve_bs_maximizer(p.h, p.y);
                       const Matrix yHalf = sqrtm(p.y).matrix();
                       const DensityMatrix xhat =
                           DensityMatrix::normalized(PositiveMatrix(hermitian_part(yHalf * m.r.matrix() * yHalf)));
                       const double phi = trace_product(xhat.matrix(), p.h.matrix()) - bs_entropy(xhat, p.y).value;
                       const double rel = psi_from_phi(phi, p.y);
                       o.lhs = std::max(o.lhs, std::abs(m.psiValue - rel) /
                                                   std::max({1.0, std::abs(m.psiValue), std::abs(rel)}));
                       return o;
                   }});

    out.push_back({"dualrel_donald", "entropy", "Psi_D = e^{Phi_D + Tr Y - 1} - Tr Y along rays", "hermitian", {}, {},
                   0.0, false, true, 1,
                   [](RandomStream& rng, const TrialContext& c) {
                       const HermitianPositive p = sample_hermitian_positive(rng, c);
                       const DensityMatrix w = random_density(rng, c.dim, c.kappa);
                       return dual_ray([&](const PositiveMatrix& a) { return donald(a, p.y).value; }, p.h, w, p.y,
                                       commutator_norm(p.h.matrix(), p.y.matrix()));
                   }});

    return out;
}

}  // namespace qre::harness
