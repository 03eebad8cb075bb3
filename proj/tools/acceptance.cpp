// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <set>

#include "qre/cli.hpp"
#include "qre/harness/strictness.hpp"

using namespace qre;
using namespace qre::harness;

namespace {

struct Tally {
    int configs = 0;
    long trials = 0;
    int failures = 0;
    double worstEquality = 0.0;  // max |gap| / scale over commuting equality records
    double maxTol = 0.0;
    std::vector<std::string> failed;

    bool ok() const { return failures == 0 && configs > 0; }

    void add(const CheckReport& r, bool commuting) {
        ++configs;
        trials += static_cast<long>(r.records.size());
        failures += r.failures;
        maxTol = std::max(maxTol, r.tol);
        if (r.failures) failed.push_back(r.descriptor.id + " [" + format_params(r.descriptor.params) + "]" +
                                         (commuting ? " commuting" : ""));
        if (commuting && find_check(r.descriptor.id).commutingEquality)
            for (const TrialRecord& t : r.records)
                worstEquality = std::max(worstEquality, std::abs(t.gap) / t.scale);
    }
};

std::string sci(double v) { return format_double(v, 2); }

class Acceptance {
public:
    Acceptance(std::uint64_t seed, int jobs) : seed_(seed), jobs_(jobs) {}

    EnsembleSpec ensemble(bool commuting, int dim = 3, int maxDim = 0) const {
        EnsembleSpec e;
        e.dim = dim;
        e.maxDim = maxDim;
        e.masterSeed = seed_;
        if (commuting) e.kind = EnsembleKind::CommutingPair;
        return e;
    }

    RunOptions options(int trials, double tol = 1e-9) const {
        RunOptions o;
        o.trials = trials;
        o.tol = tol;
        o.jobs = jobs_;
        return o;
    }

    /// Suite entries whose id is in `ids` (all entries when empty), in both modes unless told otherwise.
    Tally run(const std::string& suite, const std::set<std::string>& ids, int trials, bool generic = true,
              bool commuting = true, int dim = 3, int maxDim = 0) const {
        Tally t;
        for (const CatalogueEntry& e : suite_entries(suite)) {
            if (!ids.empty() && !ids.count(e.check->id)) continue;
            if (generic) t.add(run_check(*e.check, e.params, ensemble(false, dim, maxDim), options(trials)), false);
            if (commuting) t.add(run_check(*e.check, e.params, ensemble(true, dim, maxDim), options(trials)), true);
        }
        return t;
    }

    void line(int n, bool ok, const std::string& what, const std::string& detail) {
        allOk_ = allOk_ && ok;
        std::printf("criterion %2d %s  %s: %s\n", n, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
        std::fflush(stdout);
    }

    static std::string summary(const Tally& t) {
        std::string s = std::to_string(t.failures) + " failures / " + std::to_string(t.trials) + " trials over " +
                        std::to_string(t.configs) + " runs";
        for (std::size_t k = 0; k < t.failed.size() && k < 3; ++k) s += (k ? ", " : "; failing: ") + t.failed[k];
        return s;
    }

    bool allOk() const { return allOk_; }

private:
    std::uint64_t seed_;
    int jobs_;
    bool allOk_ = true;
};

std::pair<int, int> strictness(const std::set<std::string>& checks) {
    int ok = 0, total = 0;
    for (const StrictnessResult& r : verify_strictness()) {
        if (!checks.count(r.check)) continue;
        ++total;
        ok += r.pass ? 1 : 0;
    }
    return {ok, total};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria 1-12"};
    std::uint64_t seed = 42;
    int jobs = default_jobs();
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads");
    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    Acceptance a(seed, jobs);

    try {
        {
            const Tally t = a.run("log", {}, 500);
            const auto [ok, total] = strictness({"clA", "clB", "HPhard", "secA", "secAA"});
            a.line(1, t.ok() && t.worstEquality <= 1e-9 && ok == total, "log inequalities",
                   Acceptance::summary(t) + "; commuting max |gap|/scale " + sci(t.worstEquality) +
                       " (tol 1e-9); strict fixtures " + std::to_string(ok) + "/" + std::to_string(total));
        }
        {
            const Tally t = a.run("exp", {}, 500);
            const auto [ok, total] = strictness({"FrSo"});
            a.line(2, t.ok() && ok == total, "exponential suite",
                   Acceptance::summary(t) + "; GT chain within tol + gapSlack; strict FrSo fixtures " +
                       std::to_string(ok) + "/" + std::to_string(total));
        }
        {
            const Tally g = a.run("entropy", {"chain"}, 500, true, false, 2, 6);
            const Tally c = a.run("entropy", {"chain"}, 500, false, true, 2, 6);
            a.line(3, g.ok() && c.ok(), "entropy chain D_D <= D <= D_BS",
                   "dims 2-6, " + Acceptance::summary(g) + " (Donald slack 1e-6 scale); commuting equal within 1e-7: " +
                       Acceptance::summary(c));
        }
        {
            const Tally t = a.run("entropy", {"donald_residual", "donald_constraint", "donald_localopt", "donald_commuting"},
                                  50, true, false);
            a.line(4, t.ok(), "Donald solver",
                   Acceptance::summary(t) + " (residual 1e-8, constraint 1e-10 Tr X, 20 probes at 1e-4 within "
                                            "1e-12 scale, commuting Q = XY^-1 within 1e-8)");
        }
        {
            const Tally t =
                a.run("entropy", {"phid_gap", "phid_commuting", "dualrel_umegaki", "dualrel_bs", "dualrel_donald"}, 50,
                      true, false);
            a.line(5, t.ok(), "Phi_D saddle",
                   Acceptance::summary(t) + " (gap 1e-5 (1+|value|), commuting within 1e-7, dual relation 1e-10)");
        }
        {
            const Tally t = a.run("entropy", {"bs_residual", "bs_commuting", "bs_psi"}, 50, true, false);
            a.line(6, t.ok(), "BS maximizer",
                   Acceptance::summary(t) + " (residual 1e-8, commuting R = e^H within 1e-8, Psi_BS <= Psi)");
        }
        {
            const Tally t = a.run("geometry", {}, 500);
            a.line(7, t.ok(), "geometry identities",
                   Acceptance::summary(t) + " (identity tol 1e-8, quadrature tol 1e-7; max tol used " + sci(t.maxTol) +
                       ")");
        }
        {
            const Tally t = a.run("convexity", {}, 200);
            a.line(8, t.ok(), "convexity and concavity", Acceptance::summary(t));
        }
        {
            const Tally t = a.run("majorization", {}, 500);
            a.line(9, t.ok(), "majorization", Acceptance::summary(t) + " (Schatten p in {1,2,3})");
        }
        {
            const Tally t = a.run("classical", {}, 500);
            a.line(10, t.ok(), "classical appendix", Acceptance::summary(t) + " (maximizers within 1e-10)");
        }
        {
            const Tally t = a.run("derivative", {}, 100);
            a.line(11, t.ok(), "derivative", Acceptance::summary(t) + " (max(1e-6 rel, 1e-8 abs))");
        }
        {
            auto verify = [](int j) {
                const std::string js = std::to_string(j);
                const char* args[] = {"qre", "verify", "--suite", "all", "--format", "json", "--jobs", js.c_str()};
                std::ostringstream out, err;
                const int code = cli::run_cli(8, args, out, err);
                return std::make_pair(code, out.str());
            };
            const auto first = verify(1), second = verify(1), parallel = verify(std::max(4, jobs));
            const bool same = first.second == second.second && first.second == parallel.second;
            a.line(12, same && first.first == 0, "determinism",
                   std::string(same ? "byte-identical" : "DIFFERENT") + " reports for verify --suite all at jobs 1, 1, " +
                       std::to_string(std::max(4, jobs)) + " (" + std::to_string(first.second.size()) + " bytes, exit " +
                       std::to_string(first.first) + ")");
        }
    } catch (const Error& e) {
        std::printf("error: %s\n", e.what());
        return 2;
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s in %.1f s\n", a.allOk() ? "ALL PASS" : "SOME FAIL", secs);
    return a.allOk() ? 0 : 1;
}
