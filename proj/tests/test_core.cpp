#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "qre/core/functions.hpp"
#include "qre/core/io.hpp"
#include "qre/core/optimize.hpp"
#include "qre/core/random.hpp"

using namespace qre;

namespace {

Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

Matrix diag(std::initializer_list<double> d) {
    RealVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return v.cast<Complex>().asDiagonal();
}

// Eigenvalues of a real symmetric 2x2 from the characteristic polynomial.
std::pair<double, double> eig2(double a, double b, double d) {
    const double m = 0.5 * (a + d), r = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    return {m - r, m + r};
}

}  // namespace

TEST(Spectral, DiagonalInput) {
    const HermitianMatrix h(diag({3, 1}));
    EXPECT_DOUBLE_EQ(h.eigenvalues()(0), 1.0);
    EXPECT_DOUBLE_EQ(h.eigenvalues()(1), 3.0);
    EXPECT_NEAR(std::abs(h.frame()(1, 0)), 1.0, 1e-15);
}

TEST(Spectral, Identity) {
    const HermitianMatrix h = HermitianMatrix::identity(4);
    for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(h.eigenvalues()(i), 1.0);
}

TEST(Spectral, TwoByTwoClosedForm) {
    const HermitianMatrix h(real_matrix({{2, 1}, {1, 2}}));
    const auto [lo, hi] = eig2(2, 1, 2);
    EXPECT_NEAR(h.eigenvalues()(0), lo, 1e-14);
    EXPECT_NEAR(h.eigenvalues()(1), hi, 1e-14);
    const Complex ratio = h.frame()(1, 0) / h.frame()(0, 0);
    EXPECT_NEAR(ratio.real(), -1.0, 1e-13);
    EXPECT_NEAR(std::abs(h.frame()(0, 0)), 1.0 / std::sqrt(2.0), 1e-13);
}

TEST(Spectral, ReconstructionAndOrthonormality) {
    for (int k = 0; k < 1000; ++k) {
        RandomStream rng(1, 2, static_cast<std::uint64_t>(k));
        const Eigen::Index n = rng.uniform_int(2, 8);
        const HermitianMatrix h = random_hermitian(rng, n);
        const SpectralDecomposition& s = h.spectral();
        for (Eigen::Index i = 1; i < n; ++i) ASSERT_LE(s.eigenvalues(i - 1), s.eigenvalues(i));
        const double opn = op_norm(h.matrix());
        ASSERT_LE(op_norm(reconstruct(s) - h.matrix()), 1e-11 * opn);
        ASSERT_LE(unitary_defect(s.frame), 1e-12);
    }
}

TEST(Spectral, ComplexHermitian) {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(0, 2), Complex(0, -2), Complex(1, 0);
    const HermitianMatrix h(m);
    EXPECT_NEAR(h.eigenvalues()(0), -1.0, 1e-14);
    EXPECT_NEAR(h.eigenvalues()(1), 3.0, 1e-14);
}

TEST(Types, RejectsNonHermitian) {
    EXPECT_THROW(HermitianMatrix(real_matrix({{1, 2}, {0, 1}})), InvalidMatrix);
    EXPECT_THROW(HermitianMatrix(Matrix(2, 3)), DimensionMismatch);
}

TEST(Types, RejectsNonPositive) {
    EXPECT_THROW(PositiveMatrix(diag({1, 0})), DomainError);
    EXPECT_THROW(PositiveMatrix(diag({1, -2})), DomainError);
}

TEST(Types, DensityTrace) {
    EXPECT_NO_THROW(DensityMatrix(diag({0.25, 0.75})));
    EXPECT_THROW(DensityMatrix(diag({0.5, 0.75})), DomainError);
    const DensityMatrix d = DensityMatrix::normalized(PositiveMatrix(diag({1, 3})));
    EXPECT_DOUBLE_EQ(d.trace(), 1.0);
    EXPECT_DOUBLE_EQ(d.eigenvalues()(1), 0.75);
}

TEST(Functions, LogOfDiagonal) {
    const HermitianMatrix l = logm(PositiveMatrix(diag({1, std::exp(1.0)})));
    EXPECT_NEAR(l(0, 0).real(), 0.0, 1e-15);
    EXPECT_NEAR(l(1, 1).real(), 1.0, 1e-15);
}

TEST(Functions, PowerOfIdentity) {
    for (double p : {-2.0, 0.3, 5.0}) {
        const PositiveMatrix r = powm(PositiveMatrix::identity(3), p);
        EXPECT_LE(max_abs_entry(r.matrix() - identity(3)), 1e-15);
    }
}

TEST(Functions, LogTwoByTwo) {
    const HermitianMatrix l = logm(PositiveMatrix(real_matrix({{2, 1}, {1, 2}})));
    // frame diag(0, ln 3) frame* with frame (1,-1)/sqrt2, (1,1)/sqrt2
    const double h = 0.5 * std::log(3.0);
    EXPECT_NEAR(l(0, 0).real(), h, 1e-14);
    EXPECT_NEAR(l(0, 1).real(), h, 1e-14);
    EXPECT_NEAR(l(1, 1).real(), h, 1e-14);
}

TEST(Functions, PowerHomomorphism) {
    for (int k = 0; k < 50; ++k) {
        RandomStream rng(3, 4, static_cast<std::uint64_t>(k));
        const PositiveMatrix a = random_positive(rng, 4, 100.0);
        const double p = rng.uniform(-2, 2), q = rng.uniform(-2, 2);
        const Matrix lhs = powm(powm(a, p), q).matrix();
        const Matrix rhs = powm(a, p * q).matrix();
        ASSERT_LE(op_norm(lhs - rhs), 1e-10 * op_norm(rhs));
    }
}

TEST(Functions, ExpAcceptsHermitian) {
    const PositiveMatrix e = expm(HermitianMatrix(diag({-1, 2})));
    EXPECT_NEAR(e(0, 0).real(), std::exp(-1.0), 1e-15);
    EXPECT_THROW(apply_function(HermitianMatrix(diag({-1, 2})), ScalarFunction::log()), DomainError);
}

TEST(DividedDifference, IdentityKernel) {
    RandomStream rng(5, 6, 0);
    const HermitianMatrix x = random_hermitian(rng, 3);
    const HermitianMatrix r = divided_difference_apply(HermitianMatrix::identity(3), x, ScalarFunction::log());
    EXPECT_LE(max_abs_entry(r.matrix() - x.matrix()), 1e-15);
}

TEST(DividedDifference, ScalarOracle) {
    const HermitianMatrix r = divided_difference_apply(HermitianMatrix(diag({1, 2})),
                                                       HermitianMatrix(real_matrix({{0, 1}, {1, 0}})),
                                                       ScalarFunction::log());
    EXPECT_NEAR(r(0, 1).real(), std::log(2.0), 1e-15);
    EXPECT_NEAR(r(0, 0).real(), 0.0, 1e-15);
}

TEST(DividedDifference, DiagonalInput) {
    const HermitianMatrix r =
        divided_difference_apply(HermitianMatrix(diag({2, 5})), HermitianMatrix(diag({3, 7})), ScalarFunction::log());
    EXPECT_NEAR(r(0, 0).real(), 1.5, 1e-15);
    EXPECT_NEAR(r(1, 1).real(), 1.4, 1e-15);
}

TEST(DividedDifference, SelfAdjointAndChainIdentity) {
    for (int k = 0; k < 100; ++k) {
        RandomStream rng(7, 8, static_cast<std::uint64_t>(k));
        const PositiveMatrix a = random_positive(rng, 4, 1e3);
        const HermitianMatrix x = random_hermitian(rng, 4);
        const HermitianMatrix y = random_hermitian(rng, 4);
        const auto f = ScalarFunction::log();
        const double l = hs_inner(y.matrix(), divided_difference_apply(a, x, f).matrix());
        const double r = hs_inner(divided_difference_apply(a, y, f).matrix(), x.matrix());
        ASSERT_NEAR(l, r, 1e-10 * std::max(1.0, std::abs(l)));
        const double tr = trace_product(divided_difference_apply(a, x, f).matrix(), a.matrix());
        ASSERT_NEAR(tr, x.trace(), 1e-10 * std::max(1.0, std::abs(x.trace())));
    }
}

TEST(DividedDifference, MatchesFiniteDifference) {
    RandomStream rng(9, 10, 0);
    const PositiveMatrix a = random_positive(rng, 3, 10.0);
    const HermitianMatrix x = random_hermitian(rng, 3);
    for (const auto& f : {ScalarFunction::log(), ScalarFunction::xlogx(), ScalarFunction::power(0.7)}) {
        const double h = 1e-5;
        const Matrix fd = (apply_function(PositiveMatrix(a.matrix() + h * x.matrix()), f).matrix() -
                           apply_function(PositiveMatrix(a.matrix() - h * x.matrix()), f).matrix()) /
                          (2 * h);
        EXPECT_LE(max_abs_entry(fd - divided_difference_apply(a, x, f).matrix()), 1e-8) << f.name();
    }
}

TEST(DividedDifference, NearDegenerateBranch) {
    const auto f = ScalarFunction::log();
    EXPECT_NEAR(f.divided_difference(1.0, 1.0 + 1e-9), 1.0 / (1.0 + 5e-10), 1e-15);
    EXPECT_NEAR(f.divided_difference(1.0, 1.0 + 1e-6), std::log1p(1e-6) / 1e-6, 1e-15);
}

TEST(Sandwich, Examples) {
    EXPECT_LE(max_abs_entry(sandwich(identity(2), HermitianMatrix(diag({1, 2}))).matrix() - diag({1, 2})), 0.0);
    EXPECT_LE(max_abs_entry(sandwich(diag({2, 1}), HermitianMatrix::identity(2)).matrix() - diag({4, 1})), 0.0);
    EXPECT_LE(max_abs_entry(sandwich(real_matrix({{0, 1}, {1, 0}}), HermitianMatrix(diag({1, 2}))).matrix() -
                            diag({2, 1})),
              0.0);
    EXPECT_THROW(sandwich(identity(3), HermitianMatrix::identity(2)), DimensionMismatch);
}

TEST(Schatten, Examples) {
    auto s = schatten(HermitianMatrix(diag({1, -1})));
    EXPECT_DOUBLE_EQ(s.traceNorm, 2.0);
    EXPECT_DOUBLE_EQ(s.hsNorm, std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(s.opNorm, 1.0);
    s = schatten(HermitianMatrix::zero(3));
    EXPECT_EQ(s.traceNorm + s.hsNorm + s.opNorm, 0.0);
    s = schatten(HermitianMatrix(real_matrix({{2, 1}, {1, 2}})));
    EXPECT_NEAR(s.traceNorm, 4.0, 1e-14);
    EXPECT_NEAR(s.hsNorm, std::sqrt(10.0), 1e-14);
    EXPECT_NEAR(s.opNorm, 3.0, 1e-14);
}

TEST(LambdaMax, Examples) {
    EXPECT_DOUBLE_EQ(lambda_max(HermitianMatrix(diag({1, 5, 2}))), 5.0);
    EXPECT_DOUBLE_EQ(lambda_max(HermitianMatrix::identity(3)), 1.0);
    EXPECT_NEAR(lambda_max(HermitianMatrix(real_matrix({{2, 1}, {1, 2}}))), 3.0, 1e-14);
}

TEST(Pinch, Examples) {
    const HermitianMatrix x(real_matrix({{2, 1}, {1, 2}}));
    const HermitianMatrix p = pinch(x, x.frame());
    EXPECT_LE(max_abs_entry(p.matrix() - x.matrix()), 1e-14);
    RandomStream rng(1, 1, 1);
    EXPECT_LE(max_abs_entry(pinch(HermitianMatrix::identity(3), haar_unitary(rng, 3)).matrix() - identity(3)), 1e-14);
    const HermitianMatrix q = pinch(HermitianMatrix(real_matrix({{1, 1}, {1, 1}})), identity(2));
    EXPECT_LE(max_abs_entry(q.matrix() - identity(2)), 0.0);
    EXPECT_THROW(pinch(x, diag({1, 2})), NotUnitary);
}

TEST(Pinch, PreservesTrace) {
    RandomStream rng(11, 12, 0);
    const HermitianMatrix x = random_hermitian(rng, 5);
    const HermitianMatrix p = pinch(x, haar_unitary(rng, 5));
    EXPECT_NEAR(p.trace(), x.trace(), 1e-13);
}

TEST(Random, Deterministic) {
    for (auto kind : {EnsembleKind::Hermitian, EnsembleKind::Positive, EnsembleKind::Density, EnsembleKind::Unitary,
                      EnsembleKind::CommutingPair, EnsembleKind::PositiveTriple}) {
        EnsembleSpec spec;
        spec.kind = kind;
        spec.dim = 4;
        const auto a = random_ensemble(spec, 17);
        const auto b = random_ensemble(spec, 17);
        ASSERT_EQ(a.matrices.size(), b.matrices.size());
        for (std::size_t k = 0; k < a.matrices.size(); ++k)
            EXPECT_EQ(std::memcmp(a.matrices[k].data(), b.matrices[k].data(),
                                  sizeof(Complex) * static_cast<std::size_t>(a.matrices[k].size())),
                      0);
    }
}

TEST(Random, DensityAndKappa) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::Density;
    for (int i = 0; i < 50; ++i)
        EXPECT_NEAR(trace_real(random_ensemble(spec, static_cast<std::uint64_t>(i)).matrices[0]), 1.0, 1e-12);
    spec.kind = EnsembleKind::Positive;
    spec.kappa = 100;
    for (int i = 0; i < 50; ++i) {
        const PositiveMatrix p(random_ensemble(spec, static_cast<std::uint64_t>(i)).matrices[0]);
        EXPECT_LE(p.condition_number(), 100 * (1 + 1e-9));
    }
}

TEST(Random, HaarIsUnitaryAndCommutingPairCommutes) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::Unitary;
    spec.dim = 6;
    EXPECT_LE(unitary_defect(random_ensemble(spec, 3).matrices[0]), 1e-13);
    spec.kind = EnsembleKind::CommutingPair;
    const auto s = random_ensemble(spec, 3);
    EXPECT_LE(commutator_norm(s.matrices[0], s.matrices[1]), 1e-13);
    spec.kind = EnsembleKind::PositiveTriple;
    const auto t = random_ensemble(spec, 3);
    EXPECT_NEAR(trace_real(t.matrices[2]), trace_real(t.matrices[0]), 1e-12);
}

TEST(Io, RoundTrip) {
    RandomStream rng(13, 14, 0);
    const Matrix m = random_hermitian(rng, 3).matrix();
    EXPECT_EQ(parse_matrix(matrix_to_json(m)), m);
}

TEST(Io, EntryLevelDiagnostics) {
    try {
        parse_matrix(R"({"dim": 2, "entries": [[1,0],[0,0],"x",[1,0]]})");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("row 1, col 0"), std::string::npos);
    }
    EXPECT_THROW(parse_matrix(R"({"dim": 2, "entries": [[1,0]]})"), ParseError);
    EXPECT_THROW(parse_matrix("{"), ParseError);
}

TEST(Optimize, VectorizationIsIsometric) {
    RandomStream rng(15, 16, 0);
    const Matrix a = random_hermitian(rng, 4).matrix(), b = random_hermitian(rng, 4).matrix();
    EXPECT_NEAR(hermitian_to_vector(a).dot(hermitian_to_vector(b)), hs_inner(a, b), 1e-13);
    EXPECT_LE(max_abs_entry(vector_to_hermitian(hermitian_to_vector(a), 4) - a), 1e-15);
}

TEST(Optimize, BfgsOnQuadratic) {
    Eigen::MatrixXd q(2, 2);
    q << 3, 1, 1, 2;
    Vector b(2);
    b << 1, -1;
    auto f = [&](const Vector& x, Vector& g) {
        g = q * x - b;
        return 0.5 * x.dot(q * x) - b.dot(x);
    };
    const BfgsResult r = bfgs_minimize(f, Vector::Zero(2));
    EXPECT_TRUE(r.converged);
    EXPECT_LE((r.x - q.ldlt().solve(b)).norm(), 1e-11);
}
