#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qre/core/io.hpp"

namespace qre::harness {

using ParamMap = std::map<std::string, double>;

struct CheckDescriptor {
    std::string id;
    ParamMap params;
    std::string ensembleKind;  // "commutingPair" switches a check to its commuting-case sampler
    std::string anchor;
};

/// gap = rhs - lhs; gap >= 0 means the inequality holds.
struct TrialRecord {
    std::uint64_t i = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double scale = 1.0;
    double slack = 0.0;  // absolute widening from a solver certificate
    double commNorm = 0.0;
    bool pass = true;
    std::string error;  // records with an error never pass
};

struct CheckReport {
    CheckDescriptor descriptor;
    std::vector<TrialRecord> records;
    int failures = 0;
    double minGap = 0.0;
    std::uint64_t masterSeed = 0;
    double tol = 0.0;
    int dim = 0;
    int maxDim = 0;
    double kappa = 0.0;
    double corrCommGap = 0.0;  // Pearson correlation of commNorm and gap

    bool passed() const { return failures == 0; }
};

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    if (n < 2) return 0.0;
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sab += (a[k] - ma) * (b[k] - mb);
        saa += (a[k] - ma) * (a[k] - ma);
        sbb += (b[k] - mb) * (b[k] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

/// Fills failures, minGap and corrCommGap from the records.
inline void aggregate(CheckReport& r) {
    r.failures = 0;
    r.minGap = r.records.empty() ? 0.0 : r.records.front().gap;
    std::vector<double> comm, gap;
    for (const TrialRecord& t : r.records) {
        if (!t.pass) ++r.failures;
        r.minGap = std::min(r.minGap, t.gap);
        comm.push_back(t.commNorm);
        gap.push_back(t.gap);
    }
    r.corrCommGap = pearson(comm, gap);
}

using Json = nlohmann::ordered_json;

namespace detail {

// JSON has no non-finite numbers; they are written as strings and read back.
inline Json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline double read_number(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "nan") return std::nan("");
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
    }
    throw ParseError("report field is not a number");
}

}  // namespace detail

inline Json to_json(const CheckReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.descriptor.params) params[k] = detail::number(v);
    Json records = Json::array();
    for (const TrialRecord& t : r.records) {
        Json rec = {{"i", t.i},
                    {"lhs", detail::number(t.lhs)},
                    {"rhs", detail::number(t.rhs)},
                    {"gap", detail::number(t.gap)},
                    {"commNorm", detail::number(t.commNorm)},
                    {"pass", t.pass},
                    {"scale", detail::number(t.scale)},
                    {"slack", detail::number(t.slack)}};
        if (!t.error.empty()) rec["error"] = t.error;
        records.push_back(std::move(rec));
    }
    return Json{{"check", r.descriptor.id},
                {"params", params},
                {"seed", r.masterSeed},
                {"dim", r.dim},
                {"trials", r.records.size()},
                {"tol", detail::number(r.tol)},
                {"failures", r.failures},
                {"minGap", detail::number(r.minGap)},
                {"maxDim", r.maxDim},
                {"kappa", detail::number(r.kappa)},
                {"ensemble", r.descriptor.ensembleKind},
                {"anchor", r.descriptor.anchor},
                {"corrCommGap", detail::number(r.corrCommGap)},
                {"records", records}};
}

inline CheckReport report_from_json(const Json& j) {
    try {
        CheckReport r;
        r.descriptor.id = j.at("check").get<std::string>();
        for (const auto& [k, v] : j.at("params").items()) r.descriptor.params[k] = detail::read_number(v);
        r.masterSeed = j.at("seed").get<std::uint64_t>();
        r.dim = j.at("dim").get<int>();
        r.tol = detail::read_number(j.at("tol"));
        r.failures = j.at("failures").get<int>();
        r.minGap = detail::read_number(j.at("minGap"));
        r.maxDim = j.value("maxDim", 0);
        r.kappa = j.contains("kappa") ? detail::read_number(j["kappa"]) : 0.0;
        r.descriptor.ensembleKind = j.value("ensemble", std::string());
        r.descriptor.anchor = j.value("anchor", std::string());
        r.corrCommGap = j.contains("corrCommGap") ? detail::read_number(j["corrCommGap"]) : 0.0;
        for (const Json& rec : j.at("records")) {
            TrialRecord t;
            t.i = rec.at("i").get<std::uint64_t>();
            t.lhs = detail::read_number(rec.at("lhs"));
            t.rhs = detail::read_number(rec.at("rhs"));
            t.gap = detail::read_number(rec.at("gap"));
            t.commNorm = detail::read_number(rec.at("commNorm"));
            t.pass = rec.at("pass").get<bool>();
            t.scale = rec.contains("scale") ? detail::read_number(rec["scale"]) : 1.0;
            t.slack = rec.contains("slack") ? detail::read_number(rec["slack"]) : 0.0;
            t.error = rec.value("error", std::string());
            r.records.push_back(std::move(t));
        }
        if (j.at("trials").get<std::size_t>() != r.records.size())
            throw ParseError("\"trials\" does not match the number of records");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

inline std::string reports_to_json(const std::vector<CheckReport>& reports) {
    Json arr = Json::array();
    for (const CheckReport& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

inline std::vector<CheckReport> reports_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    std::vector<CheckReport> out;
    if (j.is_object()) {
        out.push_back(report_from_json(j));
    } else if (j.is_array()) {
        for (const Json& r : j) out.push_back(report_from_json(r));
    } else {
        throw ParseError("report must be an object or an array");
    }
    return out;
}

inline constexpr const char* kCsvHeader = "check,i,lhs,rhs,gap,scale,slack,commNorm,pass";

inline std::string reports_to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const CheckReport& r : reports)
        for (const TrialRecord& t : r.records)
            os << r.descriptor.id << ',' << t.i << ',' << format_double(t.lhs) << ',' << format_double(t.rhs) << ','
               << format_double(t.gap) << ',' << format_double(t.scale) << ',' << format_double(t.slack) << ','
               << format_double(t.commNorm) << ',' << (t.pass ? "true" : "false") << '\n';
    return os.str();
}

inline std::string format_params(const ParamMap& params) {
    std::string s;
    for (const auto& [k, v] : params) {
        if (!s.empty()) s += ' ';
        s += k + '=' + format_double(v, 6);
    }
    return s.empty() ? "-" : s;
}

/// One line per check, then "PASS" or "FAIL: k/N" over checks.
inline std::string reports_to_text(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    int failed = 0;
    for (const CheckReport& r : reports) {
        if (!r.passed()) ++failed;
        os << (r.passed() ? "ok   " : "FAIL ") << r.descriptor.id << " [" << format_params(r.descriptor.params)
           << "] trials=" << r.records.size() << " failures=" << r.failures
           << " minGap=" << format_double(r.minGap, 6) << '\n';
    }
    if (failed == 0)
        os << "PASS\n";
    else
        os << "FAIL: " << failed << '/' << reports.size() << '\n';
    return os.str();
}

}  // namespace qre::harness
