#include <gtest/gtest.h>

#include <cmath>

#include "qre/core/random.hpp"
#include "qre/entropy.hpp"

using namespace qre;

namespace {

PositiveMatrix pdiag(std::initializer_list<double> d) {
    RealVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return PositiveMatrix::diagonal(v);
}

struct Pair {
    PositiveMatrix x, y;
};

Pair random_pair(std::uint64_t k, Eigen::Index n, double kappa = 100.0, bool density = true) {
    RandomStream rng(21, 22, k);
    if (density) return {random_density(rng, n, kappa), random_density(rng, n, kappa)};
    return {random_positive(rng, n, kappa), random_positive(rng, n, kappa)};
}

Pair commuting_pair(std::uint64_t k, Eigen::Index n) {
    RandomStream rng(23, 24, k);
    const Matrix u = haar_unitary(rng, n);
    return {positive_in_frame(u, log_uniform_spectrum(rng, n, 100)), positive_in_frame(u, log_uniform_spectrum(rng, n, 100))};
}

// Scalar KL with the trace correction.
double classical(const RealVector& x, const RealVector& w) {
    double v = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) v += x(i) * (std::log(x(i)) - std::log(w(i))) + w(i) - x(i);
    return v;
}

}  // namespace

TEST(Umegaki, Examples) {
    const auto [x, y] = random_pair(0, 3);
    EXPECT_NEAR(umegaki(x, x).value, 0.0, 1e-14);
    EXPECT_NEAR(umegaki(pdiag({.5, .5}), pdiag({.25, .75})).value, 0.5 * std::log(4.0 / 3.0), 1e-15);
    const PositiveMatrix x3(3.0 * x.matrix()), y3(3.0 * y.matrix());
    const double d = umegaki(x, y).value;
    EXPECT_NEAR(umegaki(x3, y3).value, 3 * d, 1e-10 * 3 * d);
    EXPECT_GE(d, 0.0);
}

TEST(Bs, Examples) {
    const auto [x, y] = random_pair(1, 3);
    EXPECT_NEAR(bs_entropy(x, x).value, 0.0, 1e-13);
    EXPECT_NEAR(bs_entropy(pdiag({.5, .5}), pdiag({.25, .75})).value, 0.5 * std::log(4.0 / 3.0), 1e-15);
    for (std::uint64_t k = 0; k < 50; ++k) {
        const auto [a, b] = random_pair(k, 3);
        EXPECT_GE(bs_entropy(a, b).value, umegaki(a, b).value - 1e-9);
        EXPECT_NEAR(bs_entropy(a, b).value, bs_entropy_alternate(a, b), 1e-9 * std::max(1.0, bs_entropy(a, b).value));
    }
}

TEST(DonaldSolver, CommutingRemark) {
    const DonaldSolution s = solve_donald_q(pdiag({.5, .5}), pdiag({1, 2}));
    EXPECT_LE(op_norm(s.q.matrix() - pdiag({.5, .25}).matrix()), 1e-12);
    EXPECT_LE(s.residual, 1e-12);
}

TEST(DonaldSolver, EqualInputs) {
    const auto [x, y] = random_pair(2, 3);
    const DonaldSolution s = solve_donald_q(x, x);
    EXPECT_LE(op_norm(s.q.matrix() - identity(3)), 1e-9);
    (void)y;
}

TEST(DonaldSolver, RandomPairsResidualConstraintAndProbe) {
    for (std::uint64_t k = 0; k < 30; ++k) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(k % 4);
        const auto [x, y] = random_pair(k, n, 1e3, k % 2 == 0);
        const DonaldSolution s = solve_donald_q(x, y);
        ASSERT_LE(s.residual, 1e-8) << k;
        ASSERT_NEAR(trace_product(s.q.matrix(), y.matrix()), x.trace(), 1e-10 * x.trace());
        RandomStream rng(25, 26, k);
        for (int p = 0; p < 20; ++p) {
            Matrix h = random_hermitian(rng, n).matrix();
            h -= (trace_product(h, y.matrix()) / trace_product(y.matrix(), y.matrix())) * y.matrix();
            h *= 1e-4 * op_norm(s.q.matrix()) / op_norm(h);
            const PositiveMatrix qp(hermitian_part(s.q.matrix() + h));
            const double obj = trace_product(x.matrix(), logm(qp).matrix());
            ASSERT_LE(obj, s.objective + 1e-12 * std::max(1.0, std::abs(s.objective))) << k << " " << p;
        }
    }
}

TEST(Donald, CommutingEqualsUmegaki) {
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto [x, y] = commuting_pair(k, 4);
        EXPECT_NEAR(donald(x, y).value, umegaki(x, y).value, 1e-9 * std::max(1.0, umegaki(x, y).value));
        const DonaldSolution s = solve_donald_q(x, y);
        const Matrix expected = x.matrix() * inverse(y).matrix();
        EXPECT_LE(op_norm(hermitian_part(s.q.matrix() - expected)), 1e-8 * op_norm(hermitian_part(expected)));
    }
}

TEST(Donald, BoundsAndPinched) {
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto [x, y] = random_pair(k, 3);
        const double d = donald(x, y).value;
        EXPECT_NEAR(donald(x, x).value, 0.0, 1e-12);
        EXPECT_LE(d, umegaki(x, y).value + 1e-8);
        EXPECT_GE(d, -1e-12);
        const DonaldSolution s = solve_donald_q(x, y);
        EXPECT_NEAR(donald_pinched(x, y, s.q.frame()), d, 1e-7);
        RandomStream rng(27, 28, k);
        EXPECT_LE(donald_pinched(x, y, haar_unitary(rng, 3)), d + 1e-8);
        EXPECT_NEAR(donald_pinched(x, x, haar_unitary(rng, 3)), 0.0, 1e-14);
    }
}

TEST(Donald, PinchedCommonFrame) {
    const auto [x, y] = commuting_pair(3, 3);
    EXPECT_NEAR(donald_pinched(x, y, x.frame()), umegaki(x, y).value, 1e-12);
    const RealVector yd = (x.frame().adjoint() * y.matrix() * x.frame()).diagonal().real();
    EXPECT_NEAR(donald_pinched(x, y, x.frame()), classical(x.eigenvalues(), yd), 1e-12);
}

TEST(Chain, Examples) {
    const auto [x, y] = random_pair(4, 3);
    const EntropyChain same = entropy_chain(x, x);
    EXPECT_NEAR(same.donald, 0.0, 1e-12);
    EXPECT_NEAR(same.umegaki, 0.0, 1e-12);
    EXPECT_NEAR(same.bs, 0.0, 1e-12);
    const auto [a, b] = commuting_pair(4, 3);
    const EntropyChain c = entropy_chain(a, b);
    EXPECT_NEAR(c.donald, c.umegaki, 1e-7 * c.scale);
    EXPECT_NEAR(c.bs, c.umegaki, 1e-7 * c.scale);
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto [p, q] = random_pair(k, 4);
        EXPECT_TRUE(entropy_chain(p, q).ordered());
    }
}

TEST(Pinsker, Examples) {
    const auto [x, y] = random_pair(5, 3);
    EXPECT_NEAR(pinsker_bound(x, x), 0.0, 1e-15);
    const double eps = 1e-4;
    const double expected = 0.5 * std::pow(2.0 * (1.0 - 2.0 * eps), 2);
    EXPECT_NEAR(pinsker_bound(pdiag({1 - eps, eps}), pdiag({eps, 1 - eps})), expected, 1e-12);
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto [p, q] = random_pair(k, 3);
        EXPECT_GE(donald(p, q).value, pinsker_bound(p, q) - 1e-9);
    }
}

TEST(AllSame, AgreesWithDonald) {
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto [x, y] = random_pair(k, 3, 100, false);
        const DonaldSolution s = solve_donald_q(x, y);
        const double d = s.objective + y.trace() - x.trace();
        const AllSameValues v = allsame_values(x, y, s.q);
        const double scale = std::max({1.0, x.trace(), y.trace()});
        EXPECT_NEAR(v.sandwich, d, 1e-7 * scale);
        EXPECT_NEAR(v.geometric, d, 1e-7 * scale);
        EXPECT_NEAR(v.integral, d, 1e-7 * scale);
        EXPECT_LE(v.traceDefect, 1e-9 * scale);
        RandomStream rng(31, 32, k);
        const PositiveMatrix z = random_positive(rng, 3, 100);
        const HermitianMatrix zs(z.matrix() * (x.trace() / z.trace()));
        EXPECT_LE(integral_objective(x, y, zs), d + 1e-9 * scale);
    }
}

TEST(AllSame, IntegralImageCanMissTheMaximizer) {
    // The inverse image of the Donald maximizer under the integral map is indefinite here.
    int indefinite = 0;
    for (std::uint64_t k = 0; k < 60; ++k) {
        const auto [x, y] = random_pair(k, 3, 1e3);
        const DonaldSolution s = solve_donald_q(x, y);
        if (allsame_values(x, y, s.q).integralMinEigen < 0) ++indefinite;
    }
    EXPECT_GT(indefinite, 0);
}

TEST(ExpMean, InvertsDlog) {
    RandomStream rng(29, 30, 0);
    const PositiveMatrix y = random_positive(rng, 4, 1e3);
    const HermitianMatrix q = random_hermitian(rng, 4);
    const HermitianMatrix back = divided_difference_apply(y, exp_mean_map(y, q), ScalarFunction::log());
    EXPECT_LE(max_abs_entry(back.matrix() - q.matrix()), 1e-12 * max_abs_entry(q.matrix()));
}
