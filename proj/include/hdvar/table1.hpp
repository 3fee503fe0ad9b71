#pragma once

// Grid of fixed-design scenarios: n = p in {100, ..., 1000}, null component
// (eta0^2, sigma0^2) = (1, 1), and five alternatives with total variance 2.

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "hdvar/harness.hpp"

namespace hdvar::table1 {

struct Column {
  double eta1_2;
  double sigma1_2;
  const char* label;
};

inline constexpr std::array<Column, 5> kColumns{{
    {5.0 / 6.0, 7.0 / 6.0, "(5/6,7/6)"},
    {4.0 / 6.0, 8.0 / 6.0, "(4/6,8/6)"},
    {3.0 / 6.0, 9.0 / 6.0, "(3/6,9/6)"},
    {2.0 / 6.0, 10.0 / 6.0, "(2/6,10/6)"},
    {1.0 / 6.0, 11.0 / 6.0, "(1/6,11/6)"},
}};

inline constexpr std::array<std::size_t, 10> kRows{100, 200, 300, 400, 500,
                                                   600, 700, 800, 900, 1000};

inline std::string scenario_id(std::size_t n, std::size_t col) {
  return "table1/n=" + std::to_string(n) + "/col=" + std::to_string(col + 1);
}

/// col is 0-based.
inline ScenarioConfig cell_config(std::size_t n, std::size_t col, std::size_t replications,
                                  std::uint64_t master_seed, unsigned threads = 0) {
  detail::require(col < kColumns.size(), "table1: column out of range");
  ScenarioConfig c;
  c.n = n;
  c.p = n;
  c.hyp = TwoPointHypothesis{1.0, 1.0, kColumns[col].eta1_2, kColumns[col].sigma1_2};
  c.replications = replications;
  c.master_seed = master_seed;
  c.scenario_id = scenario_id(n, col);
  c.threads = threads;
  return c;
}

}  // namespace hdvar::table1
