#pragma once

#include <cmath>

#include "qre/harness/exp_checks.hpp"
#include "qre/harness/log_checks.hpp"
#include "qre/harness/strictness_goldens.hpp"

namespace qre::harness {

inline constexpr int kStrictnessFixtures = 10;
inline constexpr double kStrictnessRelTolerance = 1e-9;

/// Checks whose inequality is strict off the commuting set.
inline const std::vector<std::string>& strict_checks() {
    static const std::vector<std::string> ids = {"clA", "clB", "HPhard", "secA", "secAA", "FrSo"};
    return ids;
}

struct StrictnessFixture {
    std::string check;
    int index = 0;
    ParamMap params;
    PositiveMatrix x, y, z;
};

namespace strictdetail {

/// Product of Givens rotations on (j, j+1) with angle a + 0.37 j and phase b + 0.61 j.
inline Matrix givens_unitary(Eigen::Index n, double a, double b) {
    Matrix u = Matrix::Identity(n, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const double th = a + 0.37 * static_cast<double>(j), ph = b + 0.61 * static_cast<double>(j);
        Matrix g = Matrix::Identity(n, n);
        const double c = std::cos(th), s = std::sin(th);
        g(j, j) = c;
        g(j + 1, j + 1) = c;
        g(j, j + 1) = -std::polar(1.0, -ph) * s;
        g(j + 1, j) = std::polar(1.0, ph) * s;
        u = u * g;
    }
    return u;
}

inline ParamMap fixture_params(const std::string& check, int k) {
    const double rs = std::array{0.5, 1.0, 2.0}[static_cast<std::size_t>(k % 3)];
    const auto third = static_cast<std::size_t>((k / 3) % 3);
    if (check == "clA" || check == "HPhard") return {{"p", std::array{0.5, 1.0, 2.0, 4.0}[static_cast<std::size_t>(k % 4)]}};
    if (check == "clB") return {{"r", rs}, {"s", std::array{0.25, 0.5, 0.75}[third]}};
    if (check == "secA") return {{"r", rs}, {"t", std::array{1.25, 1.5, 2.0}[third]}};
    if (check == "secAA") return {{"r", rs}, {"t", std::array{-1.0, -0.5, -0.25}[third]}};
    if (check == "FrSo") return {{"r", std::array{0.25, 0.5, 1.0, 2.0, 4.0}[static_cast<std::size_t>(k % 5)]}};
    throw UnknownCheckId(check + " (no strictness fixtures)");
}

}  // namespace strictdetail

/// Fixture k of a strict check: dim 2 + k mod 3, Y diagonal, X and Z rotated off Y's frame, Tr Z = Tr X.
inline StrictnessFixture strictness_fixture(const std::string& check, int k) {
    using strictdetail::givens_unitary;
    const Eigen::Index n = 2 + k % 3;
    const double kk = k;
    RealVector x(n), y(n), z(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double jj = static_cast<double>(j);
        x(j) = 0.5 + 0.7 * jj + 0.05 * kk;
        y(j) = 1.0 + 0.9 * jj * (1.0 + 0.1 * kk);
        z(j) = 2.0 - 0.4 * jj + 0.03 * kk;
    }
    const Matrix u1 = givens_unitary(n, 0.3 + 0.11 * kk, 0.2 + 0.07 * kk);
    const Matrix u2 = givens_unitary(n, 0.9 + 0.13 * kk, 1.1 + 0.05 * kk);
    const Matrix zm = reconstruct(u2, z) * (x.sum() / z.sum());
    return {check, k, strictdetail::fixture_params(check, k), PositiveMatrix(reconstruct(u1, x)),
            PositiveMatrix(Matrix(y.cast<Complex>().asDiagonal())), PositiveMatrix(zm)};
}

/// rhs - lhs of the check on a fixture, through the same evaluation as its random trials.
inline double strictness_gap(const StrictnessFixture& f) {
    using namespace logdetail;
    auto p = [&](const char* name) { return hp::Real(f.params.at(name)); };
    Sides v{};
    if (f.check == "clA") v = cla_sides(quad(f.x, f.y, f.z), p("p"));
    else if (f.check == "clB") v = clb_sides(quad(f.x, f.y, f.z), p("r"), p("s"));
    else if (f.check == "secA") v = seca_sides(quad(f.x, f.y, f.z), p("r"), p("t"));
    else if (f.check == "secAA") v = secaa_sides(quad(f.x, f.y, f.x), p("r"), p("t"));
    else if (f.check == "HPhard") v = hphard_sides(quad(f.x, f.y, f.x), p("p"));
    else if (f.check == "FrSo") v = expdetail::frso_sides(quad(f.x, f.y, f.x), p("r"));
    else throw UnknownCheckId(f.check + " (no strictness fixtures)");
    return d(v.rhs - v.lhs);
}

inline double strictness_golden(const std::string& check, int k) {
    for (const StrictnessGolden& g : kStrictnessGoldens)
        if (check == g.check && k == g.index) return g.gap;
    throw UnknownCheckId(check + " (no golden for fixture " + std::to_string(k) + ")");
}

struct StrictnessResult {
    std::string check;
    int index = 0;
    ParamMap params;
    double gap = 0.0;
    double golden = 0.0;
    double commNorm = 0.0;
    bool pass = false;  // gap > 0 and within kStrictnessRelTolerance of the golden
};

inline std::vector<StrictnessResult> verify_strictness() {
    std::vector<StrictnessResult> out;
    for (const std::string& check : strict_checks()) {
        for (int k = 0; k < kStrictnessFixtures; ++k) {
            const StrictnessFixture f = strictness_fixture(check, k);
            StrictnessResult r{check, k, f.params, strictness_gap(f), strictness_golden(check, k), 0.0, false};
            const Matrix& partner = (check == "secAA" || check == "HPhard" || check == "FrSo") ? f.x.matrix()
                                                                                                : f.z.matrix();
            r.commNorm = commutator_norm(partner, f.y.matrix());
            r.pass = r.gap > 0.0 && std::abs(r.gap - r.golden) <= kStrictnessRelTolerance * std::abs(r.golden);
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace qre::harness
