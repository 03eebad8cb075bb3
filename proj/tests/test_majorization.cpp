#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qre/core/random.hpp"
#include "qre/majorization.hpp"

using namespace qre;

namespace {

RealVector vec(std::initializer_list<double> d) {
    RealVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return v;
}

}  // namespace

TEST(Majorizes, Examples) {
    EXPECT_TRUE(majorizes(vec({2, 2}), vec({3, 1})).holds);
    const MajorizationVerdict f = majorizes(vec({3, 1}), vec({2, 2}));
    EXPECT_FALSE(f.holds);
    EXPECT_DOUBLE_EQ(f.partialSumMargins(0), -1.0);
    EXPECT_FALSE(majorizes(vec({1, 1}), vec({3, 1})).holds);
    EXPECT_THROW(majorizes(vec({1}), vec({1, 2})), LengthMismatch);
}

TEST(Majorizes, DoublyStochasticImage) {
    for (std::uint64_t k = 0; k < 200; ++k) {
        RandomStream rng(71, 72, k);
        const int n = rng.uniform_int(2, 6);
        RealVector y(n);
        for (int i = 0; i < n; ++i) y(i) = rng.normal();
        // Random convex combination of permutations.
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
        double total = 0;
        for (int m = 0; m < 4; ++m) {
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
            const double w = rng.uniform();
            total += w;
            for (int i = 0; i < n; ++i) p(i, perm[static_cast<std::size_t>(i)]) += w;
        }
        p /= total;
        ASSERT_TRUE(majorizes(p * y, y).holds) << k;
    }
}

TEST(EigenMajorizes, Examples) {
    RandomStream rng(73, 74, 0);
    const HermitianMatrix y = random_hermitian(rng, 4);
    EXPECT_TRUE(eigen_majorizes(pinch(y, haar_unitary(rng, 4)), y).holds);
    const MajorizationVerdict same = eigen_majorizes(y, y);
    EXPECT_TRUE(same.holds);
    EXPECT_LE(same.partialSumMargins.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_TRUE(eigen_majorizes(HermitianMatrix(y.trace() / 4.0 * identity(4)), y).holds);
}

TEST(Choi, Examples) {
    RealVector d(2);
    d << 2, 0;
    const HermitianMatrix c = choi_map(HermitianMatrix::diagonal(d));
    EXPECT_NEAR(c(0, 0).real(), 0.0, 1e-15);
    EXPECT_NEAR(c(1, 1).real(), 2.0, 1e-15);
    EXPECT_LE(max_abs_entry(choi_map(HermitianMatrix::identity(3)).matrix() - identity(3)), 1e-15);
    RandomStream rng(75, 76, 0);
    const HermitianMatrix a = random_hermitian(rng, 5);
    EXPECT_NEAR(choi_map(a).trace(), a.trace(), 1e-12 * std::max(1.0, std::abs(a.trace())));
    EXPECT_THROW(choi_map(HermitianMatrix::identity(1)), DimensionTooSmall);
}

TEST(Bosulem, Examples) {
    RandomStream rng(77, 78, 0);
    const HermitianMatrix x = random_hermitian(rng, 3);
    EXPECT_LE(max_abs_entry(bosulem_map(PositiveMatrix::identity(3), x).matrix() - x.matrix()), 1e-15);
    const PositiveMatrix a = positive_in_frame(x.frame(), log_uniform_spectrum(rng, 3, 100));
    EXPECT_LE(max_abs_entry(bosulem_map(a, x).matrix() - x.matrix()), 1e-12);
    RealVector d(2);
    d << 1, 2;
    Matrix off(2, 2);
    off << 0, 1, 1, 0;
    const HermitianMatrix r = bosulem_map(PositiveMatrix::diagonal(d), HermitianMatrix(off));
    EXPECT_NEAR(r(0, 1).real(), std::sqrt(2.0) * std::log(2.0), 1e-15);
    EXPECT_NEAR(r(0, 0).real(), 0.0, 1e-15);
}

TEST(Bosulem, UnitalTracePreservingContractive) {
    for (std::uint64_t k = 0; k < 100; ++k) {
        RandomStream rng(79, 80, k);
        const int n = rng.uniform_int(2, 6);
        const PositiveMatrix a = random_positive(rng, n, 1e3);
        const HermitianMatrix x = random_hermitian(rng, n);
        const HermitianMatrix m = bosulem_map(a, x);
        ASSERT_NEAR(m.trace(), x.trace(), 1e-12 * std::max(1.0, std::abs(x.trace())));
        ASSERT_LE(max_abs_entry(bosulem_map(a, HermitianMatrix::identity(n)).matrix() - identity(n)), 1e-13);
        ASSERT_TRUE(eigen_majorizes(m, x).holds);
        for (double p : {1.0, 2.0, 3.0}) ASSERT_LE(schatten_p(m, p), schatten_p(x, p) * (1 + 1e-9));
    }
}
