#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "qre/entropy.hpp"
#include "qre/harness/catalogue.hpp"
#include "qre/legendre.hpp"
#include "qre/means.hpp"

namespace qre::cli {

using harness::Json;
using harness::ParamMap;

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2 };

struct CliConfig {
    std::string command;
    std::string subcommand;
    int dim = 3;
    int maxDim = 0;
    int trials = 200;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    double kappa = 1e3;
    std::string format = "text";
    std::string outPath;
    std::map<std::string, std::string> inputs;
    ParamMap params;
    int jobs = harness::default_jobs();
    std::string ensemble = "native";
    std::string suite;
    std::string check;
    std::string kind;
    std::string sweepParam;
    double from = 0.0, to = 0.0;
    int steps = 1;
};

namespace detail {

inline std::string scalar(double v) { return format_double(v, 12); }

inline EnsembleSpec ensemble_of(const CliConfig& c) {
    if (c.ensemble != "native" && c.ensemble != "commutingPair")
        throw ParseError("--ensemble must be native or commutingPair, got " + c.ensemble);
    EnsembleSpec e;
    e.dim = c.dim;
    e.maxDim = c.maxDim;
    e.kappa = c.kappa;
    e.masterSeed = c.seed;
    if (c.ensemble == "commutingPair") e.kind = EnsembleKind::CommutingPair;
    if (c.dim < 1) throw ParamOutOfDomain("--dim must be positive");
    if (c.maxDim != 0 && c.maxDim < c.dim) throw ParamOutOfDomain("--max-dim must be at least --dim");
    return e;
}

inline harness::RunOptions run_options(const CliConfig& c) {
    harness::RunOptions o;
    o.trials = c.trials;
    o.tol = c.tol;
    o.jobs = std::max(1, c.jobs);
    return o;
}

inline const std::string& input(const CliConfig& c, const std::string& name) {
    const auto it = c.inputs.find(name);
    if (it == c.inputs.end() || it->second.empty()) throw ParseError("missing --" + name + " matrix file");
    return it->second;
}

template <class T>
T load(const CliConfig& c, const std::string& name) {
    const std::string& path = input(c, name);
    const Matrix m = read_matrix_file(path);
    try {
        return T(m);
    } catch (const Error& e) {
        throw InvalidMatrix(path + ": " + e.what());
    }
}

inline void emit(const CliConfig& c, const std::string& text, std::ostream& out) {
    if (c.outPath.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.outPath);
    if (!f) throw ParseError("cannot write " + c.outPath);
    f << text;
}

/// Scalar results as "key: value" lines or one JSON object; matrices use the core format.
struct Result {
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, Matrix>> matrices;

    std::string render(const std::string& format) const {
        if (format == "json") {
            Json j = Json::object();
            for (const auto& [k, v] : scalars) j[k] = v;
            for (const auto& [k, m] : matrices) j[k] = Json::parse(matrix_to_json(m));
            return j.dump(2) + "\n";
        }
        std::ostringstream os;
        for (const auto& [k, v] : scalars) os << k << ": " << scalar(v) << '\n';
        for (const auto& [k, m] : matrices) os << k << ": " << matrix_to_json(m) << '\n';
        return os.str();
    }
};

inline void require_format(const CliConfig& c, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (c.format == f) return;
    throw ParseError("--format " + c.format + " is not supported by " + c.command);
}

inline double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2) return hi;
    return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
}

}  // namespace detail

inline int cmd_verify(const CliConfig& c, std::ostream& out) {
    detail::require_format(c, {"text", "json", "csv"});
    const EnsembleSpec ens = detail::ensemble_of(c);
    std::vector<harness::CheckReport> reports;
    if (!c.check.empty()) {
        reports.push_back(harness::run_check(harness::find_check(c.check), c.params, ens, detail::run_options(c)));
    } else {
        if (!c.params.empty()) throw ParseError("--set applies to a single --check");
        reports = harness::run_suite(c.suite, ens, detail::run_options(c));
    }
    int failed = 0;
    for (const harness::CheckReport& r : reports) failed += r.passed() ? 0 : 1;
    const std::string summary = failed ? "FAIL: " + std::to_string(failed) + "/" + std::to_string(reports.size())
                                       : std::string("PASS");
    std::string text;
    if (c.format == "json") text = harness::reports_to_json(reports);
    else if (c.format == "csv") text = harness::reports_to_csv(reports);
    else text = harness::reports_to_text(reports);
    detail::emit(c, text, out);
    if (!c.outPath.empty() || c.format != "text") out << summary << '\n';
    return failed ? kFail : kPass;
}

inline int cmd_compute(const CliConfig& c, std::ostream& out) {
    detail::require_format(c, {"text", "json"});
    detail::Result res;
    if (c.subcommand == "entropy") {
        const auto x = detail::load<PositiveMatrix>(c, "x");
        const auto y = detail::load<PositiveMatrix>(c, "y");
        const EntropyKind kind = entropy_kind_from_string(c.kind);
        if (kind == EntropyKind::Donald) {
            const DonaldSolution s = solve_donald_q(x, y);
            res.scalars = {{"donald", s.objective + y.trace() - x.trace()},
                           {"residual", s.residual},
                           {"iterations", s.iterations}};
        } else {
            res.scalars = {{to_string(kind), relative_entropy(kind, x, y).value}};
        }
    } else if (c.subcommand == "mean") {
        const auto x = detail::load<PositiveMatrix>(c, "x");
        const auto y = detail::load<PositiveMatrix>(c, "y");
        res.matrices = {{"mean", weighted_geometric_mean(x, y, c.params.at("t")).matrix()}};
    } else if (c.subcommand == "distance") {
        res.scalars = {{"distance",
                        geodesic_distance(detail::load<PositiveMatrix>(c, "x"), detail::load<PositiveMatrix>(c, "y"))}};
    } else if (c.subcommand == "gt-chain") {
        const GoldenThompson g =
            golden_thompson_chain(detail::load<HermitianMatrix>(c, "h"), detail::load<HermitianMatrix>(c, "k"));
        res.scalars = {{"lhs", g.lhs}, {"mid", g.mid}, {"rhs", g.rhs}, {"gapSlack", g.saddle.slack()}};
    } else {
        throw ParseError("unknown compute subcommand " + c.subcommand);
    }
    detail::emit(c, res.render(c.format), out);
    return kPass;
}

inline int cmd_sweep(const CliConfig& c, std::ostream& out) {
    detail::require_format(c, {"text", "csv"});
    if (c.steps < 1) throw ParamOutOfDomain("--steps must be at least 1");
    if (c.sweepParam.empty()) throw ParseError("missing --param");
    const harness::CheckDefinition& def = harness::find_check(c.check);
    const EnsembleSpec ens = detail::ensemble_of(c);
    std::vector<ParamMap> grid;
    for (int k = 0; k < c.steps; ++k) {
        ParamMap p = c.params;
        p[c.sweepParam] = c.steps == 1 ? c.from : c.from + (c.to - c.from) * k / (c.steps - 1);
        harness::resolve_params(def, p);  // reject the whole grid before running any of it
        grid.push_back(std::move(p));
    }
    std::ostringstream os;
    os << "paramValue,trials,failures,minGap,medianGap\n";
    int failures = 0;
    for (const ParamMap& p : grid) {
        const harness::CheckReport r = harness::run_check(def, p, ens, detail::run_options(c));
        std::vector<double> gaps;
        for (const harness::TrialRecord& t : r.records)
            if (t.error.empty() && std::isfinite(t.gap)) gaps.push_back(t.gap);
        failures += r.failures;
        os << format_double(p.at(c.sweepParam)) << ',' << r.records.size() << ',' << r.failures << ','
           << format_double(r.minGap) << ',' << format_double(detail::median(gaps)) << '\n';
    }
    detail::emit(c, os.str(), out);
    return failures ? kFail : kPass;
}

inline int cmd_solve(const CliConfig& c, std::ostream& out, std::ostream& err) {
    detail::require_format(c, {"text", "json"});
    detail::Result res;
    int code = kPass;
    if (c.subcommand == "donald-q") {
        const auto x = detail::load<PositiveMatrix>(c, "x");
        const auto y = detail::load<PositiveMatrix>(c, "y");
        try {
            const DonaldSolution s = solve_donald_q(x, y);
            res.scalars = {{"residual", s.residual}, {"iterations", s.iterations}, {"objective", s.objective}};
            res.matrices = {{"Q", s.q.matrix()}};
        } catch (const NonConvergence& e) {
            err << "error: " << e.what() << '\n';
            res.scalars = {{"residual", e.bestResidual()}, {"iterations", e.iterations()}};
            code = kFail;
        }
    } else if (c.subcommand == "bs-r") {
        const auto h = detail::load<HermitianMatrix>(c, "h");
        const auto y = detail::load<PositiveMatrix>(c, "y");
        try {
            const BsMaximizer s = solve_bs_maximizer(h, y);
            res.scalars = {{"residual", s.residual}, {"iterations", s.iterations}, {"value", s.psiValue}};
            res.matrices = {{"R", s.r.matrix()}};
        } catch (const NonConvergence& e) {
            err << "error: " << e.what() << '\n';
            res.scalars = {{"residual", e.bestResidual()}, {"iterations", e.iterations()}};
            code = kFail;
        }
    } else if (c.subcommand == "phi-donald") {
        const SaddleValue s = phi_donald(detail::load<HermitianMatrix>(c, "h"), detail::load<PositiveMatrix>(c, "y"), false);
        res.scalars = {{"value", s.value}, {"lower", s.dualLower}, {"upper", s.primalUpper}, {"gap", s.gap}};
        res.matrices = {{"Q", s.q}};
        if (!(s.gap <= kSaddleGapTolerance * (1.0 + std::abs(s.value)))) {
            err << "error: Phi_D saddle gap " << detail::scalar(s.gap) << " above tolerance\n";
            code = kFail;
        }
    } else {
        throw ParseError("unknown solve subcommand " + c.subcommand);
    }
    detail::emit(c, res.render(c.format), out);
    return code;
}

inline int dispatch(const CliConfig& c, std::ostream& out, std::ostream& err) {
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "compute") return cmd_compute(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    return cmd_solve(c, out, err);
}

/// Parses name=value pairs from --set.
inline ParamMap parse_params(const std::vector<std::string>& items) {
    ParamMap out;
    for (const std::string& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("--set expects name=value, got " + item);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item.substr(eq + 1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() - eq - 1) throw ParseError("--set " + item + ": value is not a number");
        out[item.substr(0, eq)] = v;
    }
    return out;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CliConfig c;
    std::vector<std::string> sets;
    std::optional<double> t;

    CLI::App app{"Quantum relative entropy toolkit"};
    app.set_help_flag("--help", "print help");  // -h would clash with the --h input
    app.require_subcommand(1);
    auto common = [&](CLI::App* s, bool ensemble) {
        s->add_option("--format", c.format, "text, json or csv")->capture_default_str();
        s->add_option("--out", c.outPath, "write the main output to this file");
        if (!ensemble) return;
        s->add_option("--dim", c.dim, "matrix dimension")->capture_default_str();
        s->add_option("--max-dim", c.maxDim, "draw dimensions uniformly from [dim, max-dim]");
        s->add_option("--trials", c.trials, "trials per check")->capture_default_str();
        s->add_option("--seed", c.seed, "master seed")->capture_default_str();
        s->add_option("--tol", c.tol, "relative tolerance")->capture_default_str();
        s->add_option("--kappa", c.kappa, "condition-number bound of sampled positives")->capture_default_str();
        s->add_option("--jobs", c.jobs, "worker threads; reports do not depend on it");
        s->add_option("--ensemble", c.ensemble, "native or commutingPair")->capture_default_str();
        s->add_option("--set", sets, "check parameter name=value");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite or a single check");
    verify->add_option("--suite", c.suite, "all, log, exp, entropy, convexity, classical, geometry, majorization, "
                                           "derivative")->default_val("all");
    verify->add_option("--check", c.check, "run one check instead of a suite");
    common(verify, true);

    CLI::App* compute = app.add_subcommand("compute", "evaluate entropies, means and chains on matrix files");
    compute->require_subcommand(1);
    for (const char* name : {"entropy", "mean", "distance", "gt-chain"}) {
        CLI::App* s = compute->add_subcommand(name);
        common(s, false);
        if (std::string(name) == "gt-chain") {
            s->add_option("--h", c.inputs["h"], "Hermitian H")->required();
            s->add_option("--k", c.inputs["k"], "Hermitian K")->required();
            continue;
        }
        s->add_option("--x", c.inputs["x"], "positive X")->required();
        s->add_option("--y", c.inputs["y"], "positive Y")->required();
        if (std::string(name) == "entropy")
            s->add_option("--kind", c.kind, "umegaki, donald or bs")->default_val("umegaki");
        if (std::string(name) == "mean") s->add_option("--t", t, "weight")->required();
    }

    CLI::App* sweep = app.add_subcommand("sweep", "run one check over a parameter grid; CSV output");
    sweep->add_option("--check", c.check, "check id")->required();
    sweep->add_option("--param", c.sweepParam, "swept parameter")->required();
    sweep->add_option("--from", c.from)->required();
    sweep->add_option("--to", c.to)->required();
    sweep->add_option("--steps", c.steps)->required();
    common(sweep, true);

    CLI::App* solve = app.add_subcommand("solve", "run a solver and print its certificate");
    solve->require_subcommand(1);
    for (const char* name : {"donald-q", "bs-r", "phi-donald"}) {
        CLI::App* s = solve->add_subcommand(name);
        common(s, false);
        if (std::string(name) == "donald-q") s->add_option("--x", c.inputs["x"], "positive X")->required();
        else s->add_option("--h", c.inputs["h"], "Hermitian H")->required();
        s->add_option("--y", c.inputs["y"], "positive Y")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPass : kInputError;
    }

    for (CLI::App* s : app.get_subcommands()) {
        c.command = s->get_name();
        if (!s->get_subcommands().empty()) c.subcommand = s->get_subcommands().front()->get_name();
    }
    try {
        c.params = parse_params(sets);
        if (t) c.params["t"] = *t;
        return dispatch(c, out, err);
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kFail;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace qre::cli
