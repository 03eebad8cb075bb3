#include <gtest/gtest.h>

#include "qre/core/random.hpp"
#include "qre/means.hpp"

using namespace qre;

namespace {

PositiveMatrix pdiag(std::initializer_list<double> d) {
    RealVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return PositiveMatrix::diagonal(v);
}

double opdiff(const HermitianMatrix& a, const HermitianMatrix& b) { return op_norm(a.matrix() - b.matrix()); }

}  // namespace

TEST(GeometricMean, CommutingDiagonal) {
    EXPECT_LE(opdiff(weighted_geometric_mean(pdiag({1, 4}), pdiag({9, 1}), 0.5), pdiag({3, 2})), 1e-14);
}

TEST(GeometricMean, MinusOneIsXYinvX) {
    RandomStream rng(1, 1, 0);
    const PositiveMatrix x = random_positive(rng, 3, 100), y = random_positive(rng, 3, 100);
    const Matrix expected = x.matrix() * inverse(y).matrix() * x.matrix();
    EXPECT_LE(op_norm(weighted_geometric_mean(x, y, -1).matrix() - expected), 1e-11 * op_norm(expected));
}

TEST(GeometricMean, IdentityStart) {
    RandomStream rng(1, 1, 1);
    const PositiveMatrix y = random_positive(rng, 3, 100);
    for (double t : {-1.0, 0.3, 2.0}) {
        const PositiveMatrix yt = powm(y, t);
        EXPECT_LE(opdiff(weighted_geometric_mean(PositiveMatrix::identity(3), y, t), yt), 1e-12 * op_norm(yt.matrix()));
    }
}

TEST(GeometricMean, Endpoints) {
    RandomStream rng(1, 1, 2);
    const PositiveMatrix x = random_positive(rng, 4, 1e3), y = random_positive(rng, 4, 1e3);
    const GeodesicPath path(x, y);
    EXPECT_LE(opdiff(path.evaluate(0), x), 1e-10 * op_norm(x.matrix()));
    EXPECT_LE(opdiff(path.evaluate(1), y), 1e-10 * op_norm(y.matrix()));
}

TEST(HarmonicMean, Examples) {
    EXPECT_LE(opdiff(harmonic_mean(pdiag({1, 1}), pdiag({1, 1})), pdiag({1, 1})), 1e-15);
    EXPECT_LE(opdiff(harmonic_mean(pdiag({2, 8}), pdiag({2, 8})), pdiag({2, 8})), 1e-14);
    EXPECT_LE(opdiff(harmonic_mean(pdiag({1, 4}), pdiag({4, 4})), pdiag({1.6, 4})), 1e-14);
    RandomStream rng(2, 2, 0);
    const PositiveMatrix a = random_positive(rng, 3, 100), b = random_positive(rng, 3, 100);
    EXPECT_LE(opdiff(harmonic_mean(a, b), harmonic_mean(b, a)), 1e-10 * op_norm(harmonic_mean(a, b).matrix()));
}

TEST(Quadrature, CommutingAndEqual) {
    EXPECT_LE(opdiff(geometric_mean_quadrature(pdiag({1, 4}), pdiag({9, 1}), 0.5), pdiag({3, 2})), 1e-7);
    RandomStream rng(3, 3, 0);
    const PositiveMatrix x = random_positive(rng, 3, 100);
    EXPECT_LE(opdiff(geometric_mean_quadrature(x, x, 0.4), x), 1e-7 * op_norm(x.matrix()));
    EXPECT_THROW(geometric_mean_quadrature(x, x, 1.0), DomainError);
}

TEST(Quadrature, MatchesDefinition) {
    for (int k = 0; k < 30; ++k) {
        RandomStream rng(4, 4, static_cast<std::uint64_t>(k));
        const PositiveMatrix x = random_positive(rng, 3, 1e3), y = random_positive(rng, 3, 1e3);
        for (double t : {0.05, 0.3, 0.5, 0.7, 0.95}) {
            const PositiveMatrix m = weighted_geometric_mean(x, y, t);
            ASSERT_LE(opdiff(geometric_mean_quadrature(x, y, t), m), 1e-7 * op_norm(m.matrix())) << k << " " << t;
        }
    }
}

TEST(Distance, Examples) {
    EXPECT_NEAR(geodesic_distance(PositiveMatrix::identity(2), pdiag({std::exp(2.0), 1})), 2.0, 1e-14);
    RandomStream rng(5, 5, 0);
    const Matrix u = haar_unitary(rng, 3);
    const PositiveMatrix x = positive_in_frame(u, log_uniform_spectrum(rng, 3, 100));
    const PositiveMatrix y = positive_in_frame(u, log_uniform_spectrum(rng, 3, 100));
    EXPECT_NEAR(geodesic_distance(x, y), (logm(x).matrix() - logm(y).matrix()).norm(), 1e-12);
    const PositiveMatrix a = random_positive(rng, 3, 100), b = random_positive(rng, 3, 100);
    const Matrix g = gaussian_matrix(rng, 3);
    const PositiveMatrix ca(hermitian_part(g.adjoint() * a.matrix() * g));
    const PositiveMatrix cb(hermitian_part(g.adjoint() * b.matrix() * g));
    const double d = geodesic_distance(a, b);
    EXPECT_NEAR(geodesic_distance(ca, cb), d, 1e-9 * d);
    EXPECT_NEAR(geodesic_distance(b, a), d, 1e-10 * d);
}

TEST(MidpointInverse, Examples) {
    RandomStream rng(6, 6, 0);
    const PositiveMatrix y = random_positive(rng, 3, 100);
    EXPECT_LE(opdiff(midpoint_inverse(PositiveMatrix::identity(3), y), y), 1e-13 * op_norm(y.matrix()));
    EXPECT_LE(opdiff(midpoint_inverse(pdiag({4, 1}), pdiag({1, 9})), pdiag({4, 9})), 1e-14);
    const PositiveMatrix q = random_positive(rng, 3, 100);
    const PositiveMatrix z = midpoint_inverse(q, y);
    const PositiveMatrix qh = sqrtm(q);
    EXPECT_LE(opdiff(weighted_geometric_mean(z, inverse(y), 0.5), qh), 1e-9 * op_norm(qh.matrix()));
}
