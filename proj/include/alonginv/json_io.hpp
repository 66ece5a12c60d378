#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "alonginv/along.hpp"
#include "alonginv/matrix.hpp"
#include "alonginv/theorems.hpp"
#include "alonginv/zn.hpp"

namespace alonginv {

using nlohmann::json;

namespace detail {

inline const json& require_field(const json& j, const char* field, const char* what) {
    if (!j.contains(field))
        throw error(errc::parse_error,
                    std::string(what) + ": missing required field \"" + field + "\"");
    return j.at(field);
}

inline std::size_t parse_dim(const json& j, const char* field, const char* what) {
    const json& v = require_field(j, field, what);
    if ((!v.is_number_integer() && !v.is_number_unsigned()) || v.get<std::int64_t>() <= 0)
        throw error(errc::parse_error, std::string(what) + ": field \"" + field +
                                           "\" must be a positive integer");
    return v.get<std::size_t>();
}

} // namespace detail

/// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
inline json to_json(const cmatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline cmatrix cmatrix_from_json(const json& j, const char* what = "matrix") {
    const std::size_t rows = detail::parse_dim(j, "rows", what);
    const std::size_t cols = detail::parse_dim(j, "cols", what);
    const json& data = detail::require_field(j, "data", what);
    if (!data.is_array() || data.size() != rows * cols)
        throw error(errc::parse_error,
                    std::string(what) + ": field \"data\" must hold rows*cols entries");
    cmatrix m(rows, cols);
    std::size_t k = 0;
    for (const auto& cell : data) {
        double re = 0.0, im = 0.0;
        if (cell.is_number()) {
            re = cell.get<double>();
        } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() &&
                   cell[1].is_number()) {
            re = cell[0].get<double>();
            im = cell[1].get<double>();
        } else {
            throw error(errc::parse_error, std::string(what) +
                                               ": field \"data\" entries must be numbers or "
                                               "[re, im] pairs");
        }
        m(k / cols, k % cols) = cx(re, im);
        ++k;
    }
    if (!all_finite(m))
        throw error(errc::parse_error,
                    std::string(what) + ": field \"data\" contains non-finite values");
    return m;
}

/// {"modulus": n, "rows": r, "cols": c, "data": [int, ...]}.
inline json to_json(const zn_matrix& m) {
    json data = json::array();
    for (const auto& e : m.entries()) data.push_back(e);
    return json{{"field", "zn"},
                {"modulus", m.modulus()},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"data", std::move(data)}};
}

inline zn_matrix zn_matrix_from_json(const json& j, const char* what = "matrix") {
    const std::size_t rows = detail::parse_dim(j, "rows", what);
    const std::size_t cols = detail::parse_dim(j, "cols", what);
    const json& mod = detail::require_field(j, "modulus", what);
    if ((!mod.is_number_integer() && !mod.is_number_unsigned()) ||
        mod.get<std::int64_t>() < 2)
        throw error(errc::parse_error,
                    std::string(what) + ": field \"modulus\" must be an integer >= 2");
    const json& data = detail::require_field(j, "data", what);
    if (!data.is_array() || data.size() != rows * cols)
        throw error(errc::parse_error,
                    std::string(what) + ": field \"data\" must hold rows*cols entries");
    std::vector<std::uint64_t> entries;
    entries.reserve(data.size());
    for (const auto& cell : data) {
        if (!cell.is_number_integer() && !cell.is_number_unsigned())
            throw error(errc::parse_error,
                        std::string(what) + ": field \"data\" entries must be integers");
        const std::int64_t v = cell.get<std::int64_t>();
        const std::int64_t n = static_cast<std::int64_t>(mod.get<std::uint64_t>());
        entries.push_back(static_cast<std::uint64_t>(((v % n) + n) % n));
    }
    return zn_matrix(rows, cols, mod.get<std::uint64_t>(), std::move(entries));
}

/// Reads a matrix file and reports whether it is tagged complex or Z_n.
/// The "field" tag decides; absent a tag, a "modulus" field selects Z_n.
struct matrix_file {
    bool is_zn = false;
    cmatrix complex_value;
    zn_matrix zn_value;
};

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, "cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw error(errc::parse_error, path + ": " + e.what());
    }
    return j;
}

inline matrix_file load_matrix(const std::string& path) {
    const json j = load_json(path);
    matrix_file f;
    std::string field = "complex";
    if (j.contains("field")) {
        if (!j.at("field").is_string())
            throw error(errc::parse_error, path + ": field \"field\" must be a string");
        field = j.at("field").get<std::string>();
    } else if (j.contains("modulus")) {
        field = "zn";
    }
    if (field == "zn") {
        f.is_zn = true;
        f.zn_value = zn_matrix_from_json(j, path.c_str());
    } else if (field == "complex") {
        f.complex_value = cmatrix_from_json(j, path.c_str());
    } else {
        throw error(errc::parse_error,
                    path + ": field \"field\" must be \"complex\" or \"zn\"");
    }
    return f;
}

inline json to_json(const along_result& r) {
    json diag{{"cond_compressed", r.cond_compressed}, {"history", r.history}};
    return json{{"matrix", to_json(r.b)},
                {"method", route_name(r.how)},
                {"residuals",
                 {{"outer", r.outer_residual},
                  {"eq_left", r.eq_left_residual},
                  {"eq_right", r.eq_right_residual}}},
                {"diagnostics", std::move(diag)}};
}

inline json to_json(const existence_report& r) {
    json j{{"exists", r.exists}, {"v", to_json(r.v)}, {"cond_v", r.cond_v}};
    j["w"] = r.w ? to_json(*r.w) : json(nullptr);
    return j;
}

/// One JSONL line per verdict: {"theorem_id", "holds", "residuals", "seed"}.
inline std::string to_jsonl(const verdict_report& r) {
    const json j{{"theorem_id", r.theorem_id},
                 {"holds", r.holds},
                 {"residuals", r.residuals},
                 {"seed", r.seed}};
    return j.dump();
}

/// Convergence history CSV with the columns t, error_vs_block, bound.
struct history_row {
    double t = 0.0;
    double error_vs_block = 0.0;
    double bound = 0.0;
};

inline void write_history_csv(std::ostream& out, const std::vector<history_row>& rows) {
    out << "t,error_vs_block,bound\n";
    out.precision(17);
    for (const auto& r : rows) out << r.t << ',' << r.error_vs_block << ',' << r.bound << '\n';
}

inline void write_history_csv(const std::string& path, const std::vector<history_row>& rows) {
    std::ofstream out(path);
    if (!out) throw error(errc::parse_error, "cannot open output file: " + path);
    write_history_csv(out, rows);
}

} // namespace alonginv
