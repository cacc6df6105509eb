#pragma once

#include "matcore.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wdrazin {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool read_number(const char*& p, double& out) {
  if (*p == '\0' || std::isspace(static_cast<unsigned char>(*p))) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(p, &end);
  if (end == p || errno == ERANGE) return false;
  // strtod also accepts inf, nan and hex floats; the grammar does not
  for (const char* c = p; c != end; ++c)
    if (!(std::isdigit(static_cast<unsigned char>(*c)) || *c == '.' || *c == '-' || *c == '+' || *c == 'e' || *c == 'E'))
      return false;
  p = end;
  return true;
}

inline std::string fmt_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// <real> or <real>(+|-)<imag>i
inline cplx parse_entry(const std::string& tok) {
  const char* p = tok.c_str();
  double re = 0.0, im = 0.0;
  if (!detail::read_number(p, re)) throw ParseError("bad matrix entry '" + tok + "'");
  if (*p == '\0') return {re, 0.0};
  if (*p != '+' && *p != '-') throw ParseError("bad matrix entry '" + tok + "'");
  double sign = *p == '-' ? -1.0 : 1.0;
  ++p;
  if (*p == '+' || *p == '-' || !detail::read_number(p, im) || *p != 'i' || p[1] != '\0')
    throw ParseError("bad matrix entry '" + tok + "'");
  return {re, sign * im};
}

inline std::string format_entry(cplx z) {
  std::string s = detail::fmt_real(z.real());
  double im = z.imag();
  if (im == 0.0) return s;
  s += im < 0 ? "-" : "+";
  s += detail::fmt_real(std::abs(im));
  s += "i";
  return s;
}

inline Matrix parse_matrix(std::istream& in, const std::string& name = "matrix") {
  std::string line;
  long long rows = 0, cols = 0;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> rows >> cols) || (hs >> extra) || rows < 1 || cols < 1)
      throw ParseError(name + ": header must be 'rows cols' with positive counts");
  }
  Matrix A(rows, cols);
  std::string tok;
  long long count = 0;
  while (in >> tok) {
    if (count >= rows * cols) throw ParseError(name + ": more than " + std::to_string(rows * cols) + " entries");
    A(count / cols, count % cols) = parse_entry(tok);
    ++count;
  }
  if (count != rows * cols)
    throw ParseError(name + ": expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(count));
  return A;
}

inline Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_matrix(in, path);
}

inline std::string format_matrix(const Matrix& A) {
  std::string s = std::to_string(A.rows()) + " " + std::to_string(A.cols()) + "\n";
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) s += ' ';
      s += format_entry(A(i, j));
    }
    s += '\n';
  }
  return s;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

// 17 significant digits in scientific notation
inline std::string json_real(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1.0e308" : "-1.0e308";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);
  return buf;
}

struct ReportContext {
  std::optional<std::uint64_t> seed;
  std::vector<std::string> fixtures_used;
};

namespace detail {
inline std::string conditions_json(const std::vector<Condition>& cs) {
  std::string s = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ",";
    s += "{\"label\":" + json_string(cs[i].label) + ",\"residual\":" + json_real(cs[i].residual) +
         ",\"pass\":" + (cs[i].pass ? "true" : "false") + "}";
  }
  return s + "]";
}
}  // namespace detail

// one line, keys in fixed order
inline std::string report_json(const VerificationReport& r, const ReportContext& ctx) {
  std::string s = "{\"theorem_id\":" + json_string(r.theorem_id);
  s += ",\"tolerances\":{\"rank_rtol\":" + json_real(r.tol.rank_rtol) +
       ",\"residual_atol\":" + json_real(r.tol.residual_atol) + "}";
  s += ",\"conditions\":" + detail::conditions_json(r.conditions);
  s += ",\"informational\":" + detail::conditions_json(r.informational);
  s += std::string(",\"overall\":") + (r.overall() ? "true" : "false");
  s += ",\"seed\":" + (ctx.seed ? std::to_string(*ctx.seed) : std::string("null"));
  s += ",\"fixtures_used\":[";
  for (std::size_t i = 0; i < ctx.fixtures_used.size(); ++i) s += (i ? "," : "") + json_string(ctx.fixtures_used[i]);
  return s + "]}";
}

}  // namespace wdrazin
