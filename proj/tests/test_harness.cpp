#include <gtest/gtest.h>

#include <set>

#include "qre/qre.hpp"

using namespace qre;
using namespace qre::harness;

namespace {

PositiveMatrix pdiag(std::initializer_list<double> d) {
    RealVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return PositiveMatrix::diagonal(v);
}

EnsembleSpec ensemble(int dim = 3, std::uint64_t seed = 42, bool commuting = false) {
    EnsembleSpec e;
    e.dim = dim;
    e.masterSeed = seed;
    if (commuting) e.kind = EnsembleKind::CommutingPair;
    return e;
}

RunOptions options(int trials, int jobs = 1) {
    RunOptions o;
    o.trials = trials;
    o.jobs = jobs;
    return o;
}

CheckReport run(const std::string& id, const ParamMap& params, int trials, bool commuting = false) {
    return run_check(find_check(id), params, ensemble(3, 42, commuting), options(trials, default_jobs()));
}

}  // namespace

// ---- catalogue ----------------------------------------------------------------------------------

TEST(Catalogue, SuitesPartitionAll) {
    EXPECT_EQ(suite_names().size(), 9u);
    std::size_t total = 0;
    for (std::size_t k = 1; k < suite_names().size(); ++k) total += suite_entries(suite_names()[k]).size();
    EXPECT_EQ(suite_entries("all").size(), total);
}

TEST(Catalogue, IdsUnique) {
    std::set<std::string> seen;
    for (const CheckDefinition* d : all_checks()) EXPECT_TRUE(seen.insert(d->id).second) << d->id;
}

TEST(Catalogue, GeometryMembership) {
    std::set<std::string> ids;
    for (const CatalogueEntry& e : suite_entries("geometry")) ids.insert(e.check->id);
    EXPECT_TRUE(ids.count("reparam"));
    EXPECT_TRUE(ids.count("ABClemma"));
    EXPECT_TRUE(ids.count("quadrature"));
}

TEST(Catalogue, GridParamsAreInDomain) {
    for (const CatalogueEntry& e : suite_entries("all")) EXPECT_NO_THROW(resolve_params(*e.check, e.params)) << e.check->id;
}

TEST(Catalogue, UnknownSuiteAndCheck) {
    EXPECT_THROW(run_suite("nonsense", ensemble(), options(1)), UnknownSuite);
    EXPECT_THROW(find_check("nonsense"), UnknownCheckId);
    EXPECT_THROW(check_log_inequalities({"pinch", {}, "hermitian", ""}, ensemble(), options(1)), UnknownCheckId);
    EXPECT_THROW(check_majorization({"clA", {}, "positiveTriple", ""}, ensemble(), options(1)), UnknownCheckId);
}

TEST(Catalogue, ParamDomains) {
    auto attempt = [](const std::string& id, const ParamMap& p) {
        return run_check(find_check(id), p, ensemble(), options(1));
    };
    EXPECT_THROW(attempt("clA", {{"p", -1.0}}), ParamOutOfDomain);
    EXPECT_THROW(attempt("clA", {{"p", 0.0}}), ParamOutOfDomain);
    EXPECT_THROW(attempt("clB", {{"s", 1.5}}), ParamOutOfDomain);
    EXPECT_THROW(attempt("secA", {{"t", 0.5}}), ParamOutOfDomain);
    EXPECT_THROW(attempt("secAA", {{"t", 0.5}}), ParamOutOfDomain);
    EXPECT_THROW(attempt("jointconvexout", {{"t", 0.5}}), ParamOutOfDomain);
    EXPECT_THROW(attempt("ABClemma", {{"s", 1.0}}), ParamOutOfDomain);
    EXPECT_THROW(attempt("clA", {{"nope", 1.0}}), ParamOutOfDomain);
    EXPECT_NO_THROW(attempt("secA", {{"t", 1.0}}));
    EXPECT_NO_THROW(attempt("secAA", {{"t", 0.0}}));
}

TEST(Catalogue, FamilyEntryPointsRespectEnsembleKind) {
    const CheckReport g = check_log_inequalities({"clA", {{"p", 2.0}}, "positiveTriple", ""}, ensemble(), options(20));
    const CheckReport c = check_log_inequalities({"clA", {{"p", 2.0}}, "commutingPair", ""}, ensemble(), options(20));
    EXPECT_EQ(g.descriptor.ensembleKind, "positiveTriple");
    EXPECT_EQ(c.descriptor.ensembleKind, "commutingPair");
    for (const TrialRecord& r : c.records) EXPECT_LT(r.commNorm, 1e-10);
    for (const TrialRecord& r : g.records) EXPECT_GT(r.commNorm, 1e-6);
}

TEST(Catalogue, SolverChecksCapTrials) {
    EXPECT_EQ(run("donald_residual", {}, 200).records.size(), static_cast<std::size_t>(kSolverTrialCap));
    EXPECT_EQ(run("chain", {}, 60).records.size(), 60u);
}

// ---- engine semantics ---------------------------------------------------------------------------

TEST(Engine, PassRuleUsesScaleAndSlack) {
    TrialOutcome o;
    o.lhs = 1000.0;
    o.rhs = 1000.0 - 5e-7;
    EXPECT_TRUE(make_record(0, o, 1e-9, false).pass);  // scale 1000
    o.rhs = 1000.0 - 2e-6;
    EXPECT_FALSE(make_record(0, o, 1e-9, false).pass);
    o.slack = 1e-5;
    EXPECT_TRUE(make_record(0, o, 1e-9, false).pass);
    o = TrialOutcome{};
    o.lhs = 0.0;
    o.rhs = 1e-3;
    EXPECT_TRUE(make_record(0, o, 1e-9, false).pass);
    EXPECT_FALSE(make_record(0, o, 1e-9, true).pass);  // two-sided in commuting equality cases
}

TEST(Engine, ExactThresholdAndSideCondition) {
    TrialOutcome o = threshold_outcome(2e-10, 1e-10);
    EXPECT_FALSE(make_record(0, o, 1.0, false).pass);
    o = threshold_outcome(5e-11, 1e-10);
    EXPECT_TRUE(make_record(0, o, 1e-9, false).pass);
    o.sideOk = false;
    o.sideNote = "side";
    const TrialRecord r = make_record(0, o, 1e-9, false);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.error, "side");
}

// ---- determinism and reports --------------------------------------------------------------------

TEST(Determinism, JobsDoNotChangeReports) {
    const auto a = run_suite("classical", ensemble(3, 7), options(30, 1));
    const auto b = run_suite("classical", ensemble(3, 7), options(30, 4));
    const auto c = run_suite("classical", ensemble(3, 7), options(30, 4));
    EXPECT_EQ(reports_to_json(a), reports_to_json(b));
    EXPECT_EQ(reports_to_json(b), reports_to_json(c));
}

TEST(Determinism, SeedChangesDraws) {
    const auto a = run_suite("geometry", ensemble(3, 7), options(5));
    const auto b = run_suite("geometry", ensemble(3, 8), options(5));
    EXPECT_NE(reports_to_json(a), reports_to_json(b));
}

TEST(Report, JsonRoundTripsLosslessly) {
    const auto reps = run_suite("majorization", ensemble(), options(10));
    const std::string text = reports_to_json(reps);
    EXPECT_EQ(reports_to_json(reports_from_json(text)), text);
}

TEST(Report, SchemaFields) {
    const auto reps = run_suite("derivative", ensemble(), options(3));
    const Json j = Json::parse(reports_to_json(reps)).at(0);
    for (const char* key : {"check", "params", "seed", "dim", "trials", "tol", "failures", "minGap", "records"})
        EXPECT_TRUE(j.contains(key)) << key;
    for (const char* key : {"i", "lhs", "rhs", "gap", "commNorm", "pass"})
        EXPECT_TRUE(j.at("records").at(0).contains(key)) << key;
}

TEST(Report, TextAndCsv) {
    auto reps = run_suite("classical", ensemble(), options(5));
    EXPECT_TRUE(reports_to_text(reps).ends_with("PASS\n"));
    reps.front().failures = 2;
    EXPECT_TRUE(reports_to_text(reps).ends_with("FAIL: 1/" + std::to_string(reps.size()) + "\n"));
    EXPECT_EQ(reports_to_csv(reps).substr(0, std::string(kCsvHeader).size()), kCsvHeader);
}

TEST(Report, FailuresCountFalsePasses) {
    for (const CheckReport& r : run_suite("exp", ensemble(), options(10))) {
        int count = 0;
        for (const TrialRecord& t : r.records) count += t.pass ? 0 : 1;
        EXPECT_EQ(r.failures, count);
    }
}

// ---- commuting soundness ------------------------------------------------------------------------

TEST(Soundness, LogSuiteOnCommutingPairsIsEquality) {
    for (const CheckReport& r : run_suite("log", ensemble(3, 42, true), options(50, default_jobs()))) {
        EXPECT_EQ(r.failures, 0) << r.descriptor.id;
        if (!find_check(r.descriptor.id).commutingEquality) continue;
        for (const TrialRecord& t : r.records) EXPECT_LE(std::abs(t.gap), r.tol * t.scale + t.slack) << r.descriptor.id;
    }
}

TEST(Soundness, EverySuiteHoldsInBothModes) {
    for (bool commuting : {false, true})
        for (const CheckReport& r : run_suite("all", ensemble(3, 11, commuting), options(20, default_jobs())))
            EXPECT_EQ(r.failures, 0) << r.descriptor.id << " " << format_params(r.descriptor.params)
                                     << (commuting ? " commuting" : "");
}

// ---- oracles ------------------------------------------------------------------------------------

TEST(Oracle, ClaScalarDiagonal) {
    const PositiveMatrix x = pdiag({0.3, 1.7, 4.0}), y = pdiag({2.0, 0.5, 9.0});
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
        const logdetail::Sides v = logdetail::cla_sides(logdetail::quad(x, y, x), p);
        double expected = 0.0;
        for (auto [a, b] : {std::pair{0.3, 2.0}, {1.7, 0.5}, {4.0, 9.0}}) expected += a * std::log(std::pow(a * b, p));
        EXPECT_NEAR(logdetail::d(v.lhs), expected, 1e-13 * std::abs(expected));
        EXPECT_NEAR(logdetail::d(v.rhs), expected, 1e-13 * std::abs(expected));
    }
}

TEST(Oracle, ClaRandomP1) { EXPECT_EQ(run("clA", {{"p", 1.0}}, 500).failures, 0); }

TEST(Oracle, MonpropHalfAndHalf) { EXPECT_EQ(run("monprop", {{"p1", 0.5}, {"p2", 0.5}}, 200).failures, 0); }

TEST(Oracle, Hpc2Strengthened) { EXPECT_EQ(run("HPC2", {{"r", 0.5}, {"s", 0.5}}, 200).failures, 0); }

TEST(Oracle, FrSoConstantOnCommutingPairs) { EXPECT_EQ(run("FrSo_monotone", {}, 200, true).failures, 0); }

TEST(Oracle, PinskerTwoPoint) {
    for (auto [a, b] : {std::pair{0.2, 0.7}, {0.5, 0.5}, {0.9, 0.1}}) {
        const PositiveMatrix x = pdiag({a, 1 - a}), w = pdiag({b, 1 - b});
        const double tv = 2 * std::abs(a - b);
        EXPECT_NEAR(pinsker_bound(x, w), 0.5 * tv * tv, 1e-14);
        const double kl = a * std::log(a / b) + (1 - a) * std::log((1 - a) / (1 - b));
        EXPECT_NEAR(umegaki(x, w).value, kl, 1e-14);
    }
    EXPECT_EQ(run("pinsker", {}, 200, true).failures, 0);
}

TEST(Oracle, DerivativeCommutingScalar) {
    const PositiveMatrix x = pdiag({0.4, 1.1, 2.5}), y = pdiag({1.5, 0.3, 2.0}), z = pdiag({0.7, 3.0, 1.2});
    for (double p : {0.5, 1.0, 2.0}) {
        const derivdetail::SlopePair s = derivdetail::slopes(x, y, z, p);
        const double expected =
            p * (0.4 * std::log(0.7 / 1.5) + 1.1 * std::log(3.0 / 0.3) + 2.5 * std::log(1.2 / 2.0));
        EXPECT_NEAR(s.analytic, expected, 1e-13);
        EXPECT_NEAR(s.richardson, expected, 1e-8);
    }
}

TEST(Oracle, DerivativeVanishesAtZEqualsY) {
    RandomStream rng(5, 5, 0);
    const PositiveMatrix x = random_positive(rng, 3, 10), y = random_positive(rng, 3, 10);
    const derivdetail::SlopePair s = derivdetail::slopes(x, y, y, 1.5);
    EXPECT_NEAR(s.analytic, 0.0, 1e-12);
    EXPECT_NEAR(s.richardson, 0.0, 1e-8);
}

TEST(Oracle, JointconvexoutAtMinusOne) { EXPECT_EQ(run("jointconvexout", {{"t", -1.0}}, 200).failures, 0); }

TEST(Oracle, Gibbs2MaximizerEquality) {
    const CheckReport r = run("gibbs2", {}, 500);
    EXPECT_EQ(r.failures, 0);
    for (const TrialRecord& t : r.records) EXPECT_TRUE(t.error.empty()) << t.error;
}

TEST(Oracle, BosulemKernelAgainstResolventIntegral) {
    EXPECT_EQ(run("bosulem_kernel", {{"p", 1.0}}, 100).failures, 0);
    EXPECT_EQ(run("bosulem_kernel", {{"p", 2.0}}, 100, true).failures, 0);
}

// ---- strictness fixtures ------------------------------------------------------------------------

TEST(Strictness, GoldensReproduced) {
    const std::vector<StrictnessResult> results = verify_strictness();
    EXPECT_EQ(results.size(), strict_checks().size() * kStrictnessFixtures);
    for (const StrictnessResult& r : results) {
        EXPECT_GT(r.golden, 0.0) << r.check << "[" << r.index << "]";
        EXPECT_TRUE(r.pass) << r.check << "[" << r.index << "] gap " << r.gap << " golden " << r.golden;
        EXPECT_GT(r.commNorm, 1e-3) << r.check << "[" << r.index << "]";
    }
}

TEST(Strictness, FixturesRespectDomains) {
    for (const std::string& check : strict_checks())
        for (int k = 0; k < kStrictnessFixtures; ++k) {
            const StrictnessFixture f = strictness_fixture(check, k);
            EXPECT_NO_THROW(resolve_params(find_check(check), f.params));
            EXPECT_NEAR(f.z.trace(), f.x.trace(), 1e-12);
            if (check == "clB") {
                EXPECT_TRUE(f.params.at("s") > 0 && f.params.at("s") < 1);
            } else if (check == "secA") {
                EXPECT_GT(f.params.at("t"), 1.0);
            } else if (check == "secAA") {
                EXPECT_LT(f.params.at("t"), 0.0);
            }
        }
    EXPECT_THROW(strictness_fixture("pinch", 0), UnknownCheckId);
}

TEST(Strictness, CorrelationIsReported) {
    const CheckReport r = run("clA", {{"p", 2.0}}, 100);
    EXPECT_TRUE(std::isfinite(r.corrCommGap));
    EXPECT_LE(std::abs(r.corrCommGap), 1.0);
}
