#pragma once

// Comma-separated tables with '#'-prefixed header comments. Reals are written
// with 17 significant digits so every value re-parses to the same double.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hdvar::csv {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_real(const std::string& s, std::size_t line = 0) {
  if (s.empty()) throw ParseError(line, "empty field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError(line, "not a real number: '" + s + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& s, std::size_t line = 0) {
  if (s.empty() || s.front() == '-') throw ParseError(line, "not an unsigned integer: '" + s + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError(line, "not an unsigned integer: '" + s + "'");
  return v;
}

struct Table {
  std::vector<std::string> comments;  ///< without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    throw std::out_of_range("csv: no column '" + name + "'");
  }
};

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline void write(std::ostream& os, const Table& t) {
  for (const auto& c : t.comments) os << "# " << c << '\n';
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) os << (k ? "," : "") << fields[k];
    os << '\n';
  };
  emit(t.header);
  for (const auto& r : t.rows) emit(r);
}

inline std::string to_string(const Table& t) {
  std::ostringstream os;
  write(os, t);
  return os.str();
}

inline Table read(std::istream& is) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string c = line.substr(1);
      if (!c.empty() && c.front() == ' ') c.erase(0, 1);
      t.comments.push_back(std::move(c));
      continue;
    }
    auto fields = split_line(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() != t.header.size())
        throw ParseError(lineno, "expected " + std::to_string(t.header.size()) +
                                     " fields, got " + std::to_string(fields.size()));
      t.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw ParseError(lineno, "missing header row");
  return t;
}

inline Table read_string(const std::string& s) {
  std::istringstream is(s);
  return read(is);
}

/// Data rows only (header + body), i.e. the part that must be identical
/// between replays of the same configuration.
inline std::string body(const std::string& text) {
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.empty() || line.front() != '#') os << line << '\n';
  return os.str();
}

}  // namespace hdvar::csv
