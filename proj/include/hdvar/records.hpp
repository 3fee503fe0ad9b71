#pragma once

// Typed rows for every CSV the command-line tool writes, with conversions to
// and from csv::Table.

#include <cstdint>
#include <string>
#include <vector>

#include "hdvar/csv.hpp"
#include "hdvar/harness.hpp"
#include "hdvar/histogram.hpp"

namespace hdvar::records {

using csv::format_real;

struct Table1Row {
  std::size_t n = 0, p = 0;
  double eta0_2 = 0, sigma0_2 = 0, eta1_2 = 0, sigma1_2 = 0;
  std::size_t replications = 0;
  double error_rate = 0, std_err = 0;
  std::uint64_t design_seed = 0;
  friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

inline Table1Row from_result(const ScenarioResult& r) {
  const auto& c = r.config_echo;
  return {c.n, c.p, c.hyp.eta0_2, c.hyp.sigma0_2, c.hyp.eta1_2, c.hyp.sigma1_2,
          r.replications, r.error_rate, r.std_err, r.design_seed};
}

inline const std::vector<std::string>& table1_header() {
  static const std::vector<std::string> h{"n", "p", "eta0_2", "sigma0_2", "eta1_2", "sigma1_2",
                                          "replications", "error_rate", "std_err", "design_seed"};
  return h;
}

inline std::vector<std::string> to_fields(const Table1Row& r) {
  return {std::to_string(r.n), std::to_string(r.p), format_real(r.eta0_2),
          format_real(r.sigma0_2), format_real(r.eta1_2), format_real(r.sigma1_2),
          std::to_string(r.replications), format_real(r.error_rate), format_real(r.std_err),
          std::to_string(r.design_seed)};
}

inline std::vector<Table1Row> parse_table1(const csv::Table& t) {
  std::vector<Table1Row> out;
  std::size_t line = 0;
  for (const auto& f : t.rows) {
    ++line;
    Table1Row r;
    r.n = csv::parse_u64(f.at(t.column("n")), line);
    r.p = csv::parse_u64(f.at(t.column("p")), line);
    r.eta0_2 = csv::parse_real(f.at(t.column("eta0_2")), line);
    r.sigma0_2 = csv::parse_real(f.at(t.column("sigma0_2")), line);
    r.eta1_2 = csv::parse_real(f.at(t.column("eta1_2")), line);
    r.sigma1_2 = csv::parse_real(f.at(t.column("sigma1_2")), line);
    r.replications = csv::parse_u64(f.at(t.column("replications")), line);
    r.error_rate = csv::parse_real(f.at(t.column("error_rate")), line);
    r.std_err = csv::parse_real(f.at(t.column("std_err")), line);
    r.design_seed = csv::parse_u64(f.at(t.column("design_seed")), line);
    out.push_back(r);
  }
  return out;
}

struct HistogramRow {
  double bin_lo = 0, bin_hi = 0;
  std::size_t count = 0;
  double density = 0, kde = 0;
  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

inline std::vector<HistogramRow> histogram_rows(const Histogram& h) {
  std::vector<HistogramRow> out;
  for (std::size_t k = 0; k < h.bins(); ++k)
    out.push_back({h.edges[k], h.edges[k + 1], h.counts[k], h.density[k], h.kde[k]});
  return out;
}

inline const std::vector<std::string>& histogram_header() {
  static const std::vector<std::string> h{"bin_lo", "bin_hi", "count", "density", "kde"};
  return h;
}

inline std::vector<std::string> to_fields(const HistogramRow& r) {
  return {format_real(r.bin_lo), format_real(r.bin_hi), std::to_string(r.count),
          format_real(r.density), format_real(r.kde)};
}

inline std::vector<HistogramRow> parse_histogram(const csv::Table& t) {
  std::vector<HistogramRow> out;
  std::size_t line = 0;
  for (const auto& f : t.rows) {
    ++line;
    out.push_back({csv::parse_real(f.at(t.column("bin_lo")), line),
                   csv::parse_real(f.at(t.column("bin_hi")), line),
                   csv::parse_u64(f.at(t.column("count")), line),
                   csv::parse_real(f.at(t.column("density")), line),
                   csv::parse_real(f.at(t.column("kde")), line)});
  }
  return out;
}

inline std::vector<std::string> variance_header() {
  return {"n", "p", "sigma2", "beta_norm2", "replications", "mc_mean", "mc_mean_se",
          "mc_variance", "formula", "ratio", "mean_pass", "variance_checked", "variance_pass",
          "pass"};
}

inline std::vector<std::string> to_fields(const VarianceCheckReport& r) {
  return {std::to_string(r.n), std::to_string(r.p), format_real(r.sigma2),
          format_real(r.beta_norm2), std::to_string(r.replications), format_real(r.mc_mean),
          format_real(r.mc_mean_se), format_real(r.mc_variance), format_real(r.formula),
          format_real(r.ratio), std::to_string(r.mean_pass), std::to_string(r.variance_checked),
          std::to_string(r.variance_pass), std::to_string(r.pass())};
}

inline std::vector<std::string> bound_header() {
  return {"n", "p", "replications", "exceedances", "probability", "probability_se", "mean_g",
          "bound_unit", "ratio", "fitted_constant", "rhs_fitted", "pass"};
}

inline std::vector<std::string> to_fields(const BoundScalingRow& r, const BoundScalingReport& rep) {
  return {std::to_string(r.n), std::to_string(r.p), std::to_string(r.replications),
          std::to_string(r.exceedances), format_real(r.probability),
          format_real(r.probability_se), format_real(r.mean_g), format_real(r.bound_unit),
          format_real(r.ratio), format_real(rep.fitted_constant),
          format_real(rep.fitted_constant * r.bound_unit), std::to_string(rep.pass())};
}

inline std::vector<std::string> moment_header() {
  return {"check", "estimate", "std_err", "target", "z", "tolerance_se", "pass"};
}

inline std::vector<std::vector<std::string>> moment_rows(const MomentCheckReport& r) {
  return {
      {"fourth_moment", format_real(r.fourth_moment), format_real(r.fourth_moment_se),
       format_real(r.fourth_target), format_real(r.fourth_z), "4", std::to_string(r.fourth_pass)},
      {"fourth_moment_excess", format_real(r.excess), format_real(r.fourth_moment_se),
       format_real(r.excess_target), format_real(r.fourth_z), "4", std::to_string(r.fourth_pass)},
      {"energy_variance", format_real(r.energy_variance), format_real(r.energy_variance_se),
       format_real(r.energy_target), format_real(r.energy_z), "5", std::to_string(r.energy_pass)},
  };
}

}  // namespace hdvar::records
