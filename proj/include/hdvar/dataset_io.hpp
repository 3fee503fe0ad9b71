#pragma once

// Plain-text dataset format:
//   line 1:        n p
//   next n lines:  x_i1 ... x_ip y_i     (whitespace separated)
// Blank lines are ignored.

#include <cmath>
#include <cstdlib>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hdvar/csv.hpp"
#include "hdvar/model.hpp"

namespace hdvar {

namespace detail {
inline std::vector<double> parse_numbers(const std::string& line, std::size_t lineno) {
  std::istringstream ls(line);
  std::vector<double> out;
  std::string tok;
  while (ls >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v))
      throw csv::ParseError(lineno, "bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}
}  // namespace detail

inline Dataset read_dataset(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](std::string& out) {
    while (std::getline(is, out)) {
      ++lineno;
      if (!detail::blank(out)) return true;
    }
    return false;
  };
  if (!next(line)) throw csv::ParseError(lineno + 1, "missing 'n p' header");
  const auto dims = detail::parse_numbers(line, lineno);
  if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1 || dims[0] != std::floor(dims[0]) ||
      dims[1] != std::floor(dims[1]))
    throw csv::ParseError(lineno, "header must be two positive integers 'n p'");
  const auto n = static_cast<std::size_t>(dims[0]);
  const auto p = static_cast<std::size_t>(dims[1]);
  std::vector<double> x;
  x.reserve(n * p);
  std::vector<double> y;
  y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next(line)) throw csv::ParseError(lineno + 1, "expected " + std::to_string(n) +
                                                           " data rows, found " + std::to_string(i));
    const auto vals = detail::parse_numbers(line, lineno);
    if (vals.size() != p + 1)
      throw csv::ParseError(lineno, "expected " + std::to_string(p + 1) + " values, got " +
                                        std::to_string(vals.size()));
    x.insert(x.end(), vals.begin(), vals.end() - 1);
    y.push_back(vals.back());
  }
  if (next(line)) throw csv::ParseError(lineno, "unexpected extra row");
  auto design = std::make_shared<const DesignMatrix>(n, p, std::move(x));
  return Dataset(std::move(design), std::move(y));
}

inline void write_dataset(std::ostream& os, const Dataset& d) {
  os << d.n() << ' ' << d.p() << '\n';
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (double v : d.design->row(i)) os << csv::format_real(v) << ' ';
    os << csv::format_real(d.response[i]) << '\n';
  }
}

}  // namespace hdvar
