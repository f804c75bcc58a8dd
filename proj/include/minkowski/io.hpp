#pragma once
// CSV / JSON-lines output. Every file starts with a header block (version,
// config, tolerances). Floats go out with 17 significant digits so that
// reading them back gives the same doubles.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "identities.hpp"
#include "stieltjes_quadrature.hpp"

namespace minkowski {

inline constexpr const char* library_version = "1.0.0";

using ordered_json = nlohmann::ordered_json;

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format '" + s + "' (csv or json)");
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string csv_cell(const ordered_json& v) {
  if (v.is_number_float()) return fmt17(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace detail

// rows share the keys of rows.front(); the header object goes out as
// "# key: value" lines (CSV) or a leading {"header": ...} line (JSON lines)
inline void write_table(std::ostream& os, OutputFormat fmt, const ordered_json& header,
                        const std::vector<ordered_json>& rows) {
  ordered_json h = {{"version", library_version}};
  for (auto it = header.begin(); it != header.end(); ++it) h[it.key()] = it.value();
  if (fmt == OutputFormat::json) {
    os << ordered_json{{"header", h}}.dump() << '\n';
    for (const auto& r : rows) os << r.dump() << '\n';
    return;
  }
  for (auto it = h.begin(); it != h.end(); ++it)
    os << "# " << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
       << '\n';
  if (rows.empty()) return;
  bool first = true;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    os << (first ? "" : ",") << it.key();
    first = false;
  }
  os << '\n';
  for (const auto& r : rows) {
    first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
      os << (first ? "" : ",") << (r.contains(it.key()) ? detail::csv_cell(r[it.key()]) : std::string());
      first = false;
    }
    os << '\n';
  }
}

// writes to `path`, or stdout when path is empty
inline void emit_table(const std::string& path, OutputFormat fmt, const ordered_json& header,
                       const std::vector<ordered_json>& rows) {
  if (path.empty()) {
    write_table(std::cout, fmt, header, rows);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_table(f, fmt, header, rows);
}

// ---------------------------------------------------------------------------
// coefficient tables: n,d_n,err
// ---------------------------------------------------------------------------

inline std::vector<ordered_json> coefficient_rows(const CoefficientTable& t) {
  std::vector<ordered_json> rows;
  rows.reserve(t.entries.size());
  for (const auto& e : t.entries) rows.push_back({{"n", e.n}, {"d_n", e.d}, {"err", e.err}});
  return rows;
}

inline void write_coefficients(std::ostream& os, const CoefficientTable& t, OutputFormat fmt) {
  write_table(os, fmt, {{"table", "fourier_stieltjes_coefficients"}, {"max_n", t.max_n()}, {"tol", t.tol}},
              coefficient_rows(t));
}

// reads what write_coefficients produced (either format); only n, d, err survive
inline CoefficientTable read_coefficients(std::istream& is) {
  CoefficientTable t;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    CoefficientEntry e;
    if (line[0] == '{') {
      const auto j = ordered_json::parse(line);
      if (j.contains("header")) {
        if (j["header"].contains("tol")) t.tol = j["header"]["tol"].get<double>();
        continue;
      }
      e.n = j.at("n").get<long>();
      e.d = j.at("d_n").get<double>();
      e.err = j.at("err").get<double>();
    } else if (line[0] == '#') {
      if (line.rfind("# tol: ", 0) == 0) t.tol = std::stod(line.substr(7));
      continue;
    } else if (!header_seen) {
      if (line != "n,d_n,err") throw std::runtime_error("read_coefficients: unexpected column line '" + line + "'");
      header_seen = true;
      continue;
    } else {
      std::istringstream ss(line);
      std::string a, b, c;
      std::getline(ss, a, ',');
      std::getline(ss, b, ',');
      std::getline(ss, c, ',');
      e.n = std::stol(a);
      e.d = std::stod(b);
      e.err = std::stod(c);
    }
    if (e.n != static_cast<long>(t.entries.size()))
      throw std::runtime_error("read_coefficients: rows must be n = 0, 1, 2, ...");
    e.farey = e.riemann = e.d;
    t.entries.push_back(e);
  }
  return t;
}

// ---------------------------------------------------------------------------
// residual reports
// ---------------------------------------------------------------------------

inline ordered_json to_json(const ResidualReport& r) {
  ordered_json params = ordered_json::object(), diag = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  for (const auto& [k, v] : r.diagnostics) diag[k] = v;
  return {{"identity", r.identity},
          {"parameters", params},
          {"lhs_re", r.lhs.real()},
          {"lhs_im", r.lhs.imag()},
          {"rhs_re", r.rhs.real()},
          {"rhs_im", r.rhs.imag()},
          {"residual", r.residual},
          {"quadrature_error", r.quadrature_error},
          {"truncation", {{"parameter", r.truncation.parameter}, {"value", r.truncation.value},
                          {"tail_bound", r.truncation.tail_bound}}},
          {"bound", r.bound()},
          {"pass", r.within_bound()},
          {"diagnostics", diag}};
}

// one flat row for the summary table
inline ordered_json summary_row(const ResidualReport& r) {
  std::string p;
  for (const auto& [k, v] : r.parameters) p += (p.empty() ? "" : ";") + k + "=" + fmt17(v);
  return {{"identity", r.identity}, {"parameters", p},     {"residual", r.residual},
          {"bound", r.bound()},     {"pass", r.within_bound()}};
}

// JSON lines: full reports; CSV: summary rows
inline void emit_reports(const std::string& path, OutputFormat fmt, const ordered_json& header,
                         const std::vector<ResidualReport>& reports) {
  std::vector<ordered_json> rows;
  for (const auto& r : reports) rows.push_back(fmt == OutputFormat::json ? to_json(r) : summary_row(r));
  emit_table(path, fmt, header, rows);
}

}  // namespace minkowski
