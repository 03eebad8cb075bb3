#pragma once

#include "qre/harness/classical_checks.hpp"
#include "qre/harness/convexity_checks.hpp"
#include "qre/harness/derivative_checks.hpp"
#include "qre/harness/entropy_checks.hpp"
#include "qre/harness/exp_checks.hpp"
#include "qre/harness/geometry_checks.hpp"
#include "qre/harness/log_checks.hpp"
#include "qre/harness/majorization_checks.hpp"

namespace qre::harness {

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"all",       "log",       "exp",       "entropy",   "convexity",
                                                   "classical", "geometry",  "majorization", "derivative"};
    return names;
}

inline const std::vector<CheckDefinition>& family_checks(const std::string& family) {
    static const std::map<std::string, std::vector<CheckDefinition>> families = {
        {"log", log_checks()},           {"exp", exp_checks()},
        {"entropy", entropy_checks()},   {"convexity", convexity_checks()},
        {"classical", classical_checks()}, {"geometry", geometry_checks()},
        {"majorization", majorization_checks()}, {"derivative", derivative_checks()}};
    const auto it = families.find(family);
    if (it == families.end()) throw UnknownSuite(family);
    return it->second;
}

/// Every catalogued check, in suite order.
inline std::vector<const CheckDefinition*> all_checks() {
    std::vector<const CheckDefinition*> out;
    for (std::size_t k = 1; k < suite_names().size(); ++k)
        for (const CheckDefinition& d : family_checks(suite_names()[k])) out.push_back(&d);
    return out;
}

inline const CheckDefinition& find_check(const std::string& id) {
    for (const CheckDefinition* d : all_checks())
        if (d->id == id) return *d;
    throw UnknownCheckId(id);
}

/// One configured run in a suite.
struct CatalogueEntry {
    const CheckDefinition* check;
    ParamMap params;
};

namespace catdetail {

/// Parameter grids per check id; checks without a grid run once at their defaults.
inline const std::map<std::string, std::vector<ParamMap>>& grids() {
    static const std::map<std::string, std::vector<ParamMap>> g = {
        {"main1_sandwich", {{{"q", -1.0}}, {{"q", 1.0}}, {{"q", 2.0}}}},
        {"main1_mean", {{{"t", 0.25}}, {{"t", 0.5}}, {{"t", 0.75}}}},
        {"clA", {{{"p", 0.5}}, {{"p", 1.0}}, {{"p", 2.0}}, {{"p", 4.0}}}},
        {"clB",
         {{{"r", 0.5}, {"s", 0.25}}, {{"r", 0.5}, {"s", 0.75}}, {{"r", 1.0}, {"s", 0.25}}, {{"r", 1.0}, {"s", 0.5}},
          {{"r", 1.0}, {"s", 0.75}}, {{"r", 2.0}, {"s", 0.25}}, {{"r", 2.0}, {"s", 0.75}}}},
        {"secA", {{{"t", 1.0}}, {{"t", 1.5}}, {{"t", 2.0}}}},
        {"secAA", {{{"t", -1.0}}, {{"t", -0.5}}, {{"t", 0.0}}}},
        {"HPpair_lower", {{{"p", 0.5}}, {{"p", 1.0}}, {{"p", 2.0}}}},
        {"HPpair_upper", {{{"p", 0.5}}, {{"p", 1.0}}, {{"p", 2.0}}}},
        {"HPhard", {{{"p", 0.5}}, {{"p", 1.0}}, {{"p", 2.0}}, {{"p", 4.0}}}},
        {"HPco", {{{"r", 1.0}, {"t", 0.5}}, {{"r", 0.5}, {"t", 0.25}}, {{"r", 2.0}, {"t", 0.75}}}},
        {"HPC2", {{{"r", 0.5}, {"s", 0.5}}, {{"r", 1.0}, {"s", 0.25}}, {{"r", 2.0}, {"s", 0.75}}}},
        {"FrSo", {{{"r", 0.25}}, {{"r", 1.0}}, {{"r", 4.0}}}},
        {"jointconvexout", {{}, {{"t", -1.0}}, {{"t", 2.0}}}},
        {"schatten", {{{"p", 1.0}}, {{"p", 2.0}}, {{"p", 3.0}}}},
        {"bosulem_kernel", {{{"p", 1.0}}, {{"p", 2.0}}}},
        {"sextend", {{{"p", 0.5}}, {{"p", 1.0}}, {{"p", 2.0}}}},
    };
    return g;
}

}  // namespace catdetail

/// Configured entries of a suite; "all" concatenates every family.
inline std::vector<CatalogueEntry> suite_entries(const std::string& suite) {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw UnknownSuite(suite);
    std::vector<CatalogueEntry> out;
    for (std::size_t k = 1; k < suite_names().size(); ++k) {
        const std::string& family = suite_names()[k];
        if (suite != "all" && suite != family) continue;
        for (const CheckDefinition& d : family_checks(family)) {
            const auto g = catdetail::grids().find(d.id);
            if (g == catdetail::grids().end()) {
                out.push_back({&d, {}});
                continue;
            }
            for (const ParamMap& p : g->second) out.push_back({&d, p});
        }
    }
    return out;
}

inline std::vector<CheckReport> run_suite(const std::string& suite, const EnsembleSpec& ens, const RunOptions& opt) {
    std::vector<CheckReport> out;
    for (const CatalogueEntry& e : suite_entries(suite)) out.push_back(run_check(*e.check, e.params, ens, opt));
    return out;
}

namespace catdetail {

inline CheckReport run_in_family(const std::string& family, const CheckDescriptor& d, EnsembleSpec ens,
                                 const RunOptions& opt) {
    const std::vector<CheckDefinition>& checks = family_checks(family);
    const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckDefinition& c) { return c.id == d.id; });
    if (it == checks.end()) throw UnknownCheckId(d.id + " (not a " + family + " check)");
    if (d.ensembleKind == "commutingPair") ens.kind = EnsembleKind::CommutingPair;
    return run_check(*it, d.params, ens, opt);
}

}  // namespace catdetail

inline CheckReport check_log_inequalities(const CheckDescriptor& d, const EnsembleSpec& ens, const RunOptions& opt) {
    return catdetail::run_in_family("log", d, ens, opt);
}
inline CheckReport check_exponential_inequalities(const CheckDescriptor& d, const EnsembleSpec& ens,
                                                  const RunOptions& opt) {
    return catdetail::run_in_family("exp", d, ens, opt);
}
inline CheckReport check_entropy_axioms(const CheckDescriptor& d, const EnsembleSpec& ens, const RunOptions& opt) {
    return catdetail::run_in_family("entropy", d, ens, opt);
}
inline CheckReport check_convexity(const CheckDescriptor& d, const EnsembleSpec& ens, const RunOptions& opt) {
    return catdetail::run_in_family("convexity", d, ens, opt);
}
inline CheckReport check_classical(const CheckDescriptor& d, const EnsembleSpec& ens, const RunOptions& opt) {
    return catdetail::run_in_family("classical", d, ens, opt);
}
inline CheckReport check_geometry(const CheckDescriptor& d, const EnsembleSpec& ens, const RunOptions& opt) {
    return catdetail::run_in_family("geometry", d, ens, opt);
}
inline CheckReport check_majorization(const CheckDescriptor& d, const EnsembleSpec& ens, const RunOptions& opt) {
    return catdetail::run_in_family("majorization", d, ens, opt);
}
inline CheckReport check_derivative(const CheckDescriptor& d, const EnsembleSpec& ens, const RunOptions& opt) {
    return catdetail::run_in_family("derivative", d, ens, opt);
}

}  // namespace qre::harness
