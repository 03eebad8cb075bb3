#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qre/core/types.hpp"

namespace qre {

/// Shortest-round-trip-safe formatting with 17 significant digits.
inline std::string format_double(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// {"dim": n, "entries": [[re, im], ...]} row-major.
inline std::string matrix_to_json(const Matrix& m) {
    std::ostringstream os;
    os << "{\"dim\": " << m.rows() << ", \"entries\": [";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i || j) os << ", ";
            os << '[' << format_double(m(i, j).real()) << ", " << format_double(m(i, j).imag()) << ']';
        }
    os << "]}";
    return os.str();
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw ParseError("matrix object needs \"dim\" and \"entries\"");
    if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) throw ParseError("\"dim\" must be a positive integer");
    const long n = j["dim"].get<long>();
    const auto& e = j["entries"];
    if (!e.is_array() || static_cast<long>(e.size()) != n * n)
        throw ParseError("\"entries\" must hold dim*dim = " + std::to_string(n * n) + " values");
    Matrix m(n, n);
    for (long k = 0; k < n * n; ++k) {
        const auto& z = e[static_cast<std::size_t>(k)];
        const std::string where = "entry " + std::to_string(k) + " (row " + std::to_string(k / n) + ", col " +
                                  std::to_string(k % n) + ")";
        if (z.is_number()) {
            m(k / n, k % n) = Complex(z.get<double>(), 0.0);
        } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
            m(k / n, k % n) = Complex(z[0].get<double>(), z[1].get<double>());
        } else {
            throw ParseError(where + " must be [re, im]");
        }
    }
    return m;
}

inline Matrix parse_matrix(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return matrix_from_json(j);
}

inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_matrix(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << matrix_to_json(m) << '\n';
}

}  // namespace qre
