// hdvar: command-line front end for the residual-variance experiments.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdvar/hdvar.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

/// Usage or I/O problem; reported on one line and mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = hdvar::kDefaultMasterSeed;
  std::string out = ".";
  unsigned threads = 0;
  std::size_t replications = 0;  // 0 = command default
  std::size_t designs = 0;       // 0 = command default
};

std::size_t or_default(std::size_t v, std::size_t fallback) { return v == 0 ? fallback : v; }

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw UsageError("cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw UsageError("write failed for '" + path.string() + "'");
}

std::vector<std::string> provenance(const std::string& command, const GlobalOptions& g) {
  return {"hdvar " HDVAR_VERSION, "command=" + command, "master_seed=" + std::to_string(g.seed)};
}

std::string two_dp(double v, int prec = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

// ---------------------------------------------------------------------------

struct Table1Options {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;  // 1-based
};

int cmd_table1(const GlobalOptions& g, const Table1Options& opt) {
  const std::size_t reps = or_default(g.replications, 10000);
  std::vector<std::size_t> rows = opt.rows;
  if (rows.empty()) rows.assign(hdvar::table1::kRows.begin(), hdvar::table1::kRows.end());
  std::vector<std::size_t> cols = opt.cols;
  if (cols.empty())
    for (std::size_t c = 1; c <= hdvar::table1::kColumns.size(); ++c) cols.push_back(c);
  for (std::size_t c : cols)
    if (c < 1 || c > hdvar::table1::kColumns.size())
      throw UsageError("--cols entries must be in 1.." +
                       std::to_string(hdvar::table1::kColumns.size()));
  for (std::size_t n : rows)
    if (n < 2) throw UsageError("--rows entries must be >= 2");
  const fs::path out = prepare_out_dir(g.out);

  hdvar::csv::Table t;
  t.comments = provenance("table1", g);
  t.comments.push_back("replications_per_cell=" + std::to_string(reps));
  t.header = hdvar::records::table1_header();

  std::cout << "n=p";
  for (std::size_t c : cols) std::cout << "  " << std::setw(16) << hdvar::table1::kColumns[c - 1].label;
  std::cout << '\n';
  for (std::size_t n : rows) {
    std::cout << std::setw(4) << n;
    for (std::size_t c : cols) {
      const auto cfg = hdvar::table1::cell_config(n, c - 1, reps, g.seed, g.threads);
      const auto res = hdvar::run_scenario(cfg);
      t.rows.push_back(hdvar::records::to_fields(hdvar::records::from_result(res)));
      std::cout << "  " << std::setw(16)
                << (two_dp(res.error_rate) + "(" + two_dp(res.std_err) + ")");
      std::cout.flush();
    }
    std::cout << '\n';
  }
  write_file(out / "table1.csv", hdvar::csv::to_string(t));
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct Figure1Options {
  std::size_t n = 100;
  std::size_t col = 1;
  std::size_t bins = 30;
};

int cmd_figure1(const GlobalOptions& g, const Figure1Options& opt) {
  const std::size_t reps = or_default(g.replications, 10000);
  const std::size_t designs = or_default(g.designs, 1000);
  if (opt.col < 1 || opt.col > hdvar::table1::kColumns.size())
    throw UsageError("--col must be in 1..5");
  if (opt.bins < 1) throw UsageError("--bins must be >= 1");
  const fs::path out = prepare_out_dir(g.out);

  auto cfg = hdvar::table1::cell_config(opt.n, opt.col - 1, reps, g.seed, g.threads);
  cfg.scenario_id = "figure1/n=" + std::to_string(opt.n) + "/col=" + std::to_string(opt.col);
  const auto study = hdvar::run_repetition_study(cfg, designs);
  const auto hist = hdvar::make_histogram(study.error_rates, opt.bins);

  auto comments = provenance("figure1", g);
  comments.push_back("n=" + std::to_string(opt.n) + " p=" + std::to_string(opt.n) +
                     " column=" + hdvar::table1::kColumns[opt.col - 1].label);
  comments.push_back("designs=" + std::to_string(designs) +
                     " inner_replications=" + std::to_string(reps));

  hdvar::csv::Table raw;
  raw.comments = comments;
  raw.header = {"design", "error_rate"};
  std::size_t below = 0;
  for (std::size_t d = 0; d < study.error_rates.size(); ++d) {
    raw.rows.push_back({std::to_string(d), hdvar::csv::format_real(study.error_rates[d])});
    if (study.error_rates[d] < 0.5) ++below;
  }
  hdvar::csv::Table ht;
  ht.comments = comments;
  ht.comments.push_back("kde_bandwidth=" + hdvar::csv::format_real(hist.bandwidth));
  ht.header = hdvar::records::histogram_header();
  for (const auto& r : hdvar::records::histogram_rows(hist))
    ht.rows.push_back(hdvar::records::to_fields(r));

  hdvar::SvgPlotStyle style;
  style.title = "Conditional error over " + std::to_string(designs) + " designs, n=p=" +
                std::to_string(opt.n);
  style.x_label = "error rate";
  write_file(out / "figure1_raw.csv", hdvar::csv::to_string(raw));
  write_file(out / "figure1_hist.csv", hdvar::csv::to_string(ht));
  write_file(out / "figure1.svg", hdvar::histogram_svg(hist, study.error_rates, style));

  const auto mv = hdvar::mean_variance(study.error_rates);
  std::cout << "designs=" << designs << " mean_error=" << two_dp(mv.mean, 4)
            << " sd=" << two_dp(std::sqrt(mv.variance), 4) << " fraction_below_0.5="
            << two_dp(static_cast<double>(below) / static_cast<double>(designs), 4) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EstimateOptions {
  std::string path;
  std::optional<double> sigma2;
  std::optional<double> beta_norm2;
};

int cmd_estimate(const EstimateOptions& opt) {
  if (opt.sigma2.has_value() != opt.beta_norm2.has_value())
    throw UsageError("--sigma2 and --beta-norm2 must be given together");
  std::ifstream is(opt.path);
  if (!is) throw UsageError("cannot open dataset file '" + opt.path + "'");
  std::optional<hdvar::Dataset> data;
  try {
    data.emplace(hdvar::read_dataset(is));
  } catch (const hdvar::csv::ParseError& e) {
    throw UsageError(opt.path + ": " + e.what());
  }
  const auto est = hdvar::dicker_estimate(*data);
  const auto f = hdvar::csv::format_real;
  std::cout << "n=" << est.n << " p=" << est.p << '\n'
            << "estimate=" << f(est.value) << '\n'
            << "y_norm2=" << f(est.y_norm2) << '\n'
            << "xty_norm2=" << f(est.xty_norm2) << '\n';
  if (opt.sigma2) {
    std::cout << "variance_formula="
              << f(hdvar::dicker_variance_formula(est.n, est.p, *opt.sigma2, *opt.beta_norm2))
              << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VarianceOptions {
  std::size_t n = 400, p = 400;
  double sigma2 = 1.0, beta_norm2 = 1.0;
};

int cmd_variance_check(const GlobalOptions& g, const VarianceOptions& opt) {
  const std::size_t reps = or_default(g.replications, 20000);
  const fs::path out = prepare_out_dir(g.out);
  const auto rep =
      hdvar::run_variance_check(opt.n, opt.p, opt.sigma2, opt.beta_norm2, reps, g.seed, g.threads);
  hdvar::csv::Table t;
  t.comments = provenance("variance-check", g);
  t.header = hdvar::records::variance_header();
  t.rows.push_back(hdvar::records::to_fields(rep));
  write_file(out / "variance_check.csv", hdvar::csv::to_string(t));
  std::cout << "mean=" << two_dp(rep.mc_mean, 5) << " (se " << two_dp(rep.mc_mean_se, 5)
            << ")  variance=" << two_dp(rep.mc_variance, 5) << "  formula=" << two_dp(rep.formula, 5)
            << "  ratio=" << two_dp(rep.ratio, 4) << "  " << (rep.pass() ? "PASS" : "FAIL") << '\n';
  if (!rep.pass()) {
    std::cerr << "variance-check failed: ";
    hdvar::csv::Table row{{}, t.header, t.rows};
    std::cerr << hdvar::csv::body(hdvar::csv::to_string(row));
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BoundOptions {
  double c = 1.0;
  std::vector<std::size_t> n_grid{100, 400, 1600};
  double sigma2 = 1.0, beta_norm2 = 1.0, xi = 0.5, max_constant = 10.0;
};

int cmd_bound_check(const GlobalOptions& g, const BoundOptions& opt) {
  hdvar::BoundScalingConfig cfg;
  cfg.c = opt.c;
  cfg.n_grid = opt.n_grid;
  cfg.sigma2 = opt.sigma2;
  cfg.beta_norm2 = opt.beta_norm2;
  cfg.xi = opt.xi;
  cfg.max_constant = opt.max_constant;
  cfg.replications = or_default(g.replications, 10000);
  cfg.master_seed = g.seed;
  cfg.threads = g.threads;
  const fs::path out = prepare_out_dir(g.out);
  const auto rep = hdvar::run_bound_scaling_check(cfg);

  hdvar::csv::Table t;
  t.comments = provenance("bound-check", g);
  t.comments.push_back("c=" + hdvar::csv::format_real(cfg.c) + " xi=" + hdvar::csv::format_real(cfg.xi) +
                       " sigma2=" + hdvar::csv::format_real(cfg.sigma2) +
                       " beta_norm2=" + hdvar::csv::format_real(cfg.beta_norm2));
  t.comments.push_back("slope=" + hdvar::csv::format_real(rep.slope) +
                       " slope_se=" + hdvar::csv::format_real(rep.slope_se) +
                       " strictly_decreasing=" + std::to_string(rep.strictly_decreasing));
  t.header = hdvar::records::bound_header();
  for (const auto& r : rep.rows) t.rows.push_back(hdvar::records::to_fields(r, rep));
  write_file(out / "bound_check.csv", hdvar::csv::to_string(t));

  for (const auto& r : rep.rows)
    std::cout << "n=" << r.n << " p=" << r.p << " pr=" << two_dp(r.probability, 5)
              << " g/(xi^2 sqrt n)=" << two_dp(r.bound_unit, 4) << " ratio=" << two_dp(r.ratio, 5) << '\n';
  std::cout << "fitted C=" << two_dp(rep.fitted_constant, 5) << " slope=" << two_dp(rep.slope, 5)
            << " (se " << two_dp(rep.slope_se, 5) << ")  " << (rep.pass() ? "PASS" : "FAIL") << '\n';
  if (!rep.pass()) {
    std::cerr << "bound-check failed: fitted C=" << rep.fitted_constant << " (max "
              << cfg.max_constant << "), slope=" << rep.slope << " (2 se = " << 2 * rep.slope_se
              << ")\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MomentOptions {
  std::vector<double> beta{1.0};
  std::size_t draws = 1000000;
  std::size_t n = 50;
};

int cmd_moment_check(const GlobalOptions& g, const MomentOptions& opt) {
  hdvar::MomentCheckConfig cfg;
  cfg.beta = opt.beta;
  cfg.draws = opt.draws;
  cfg.designs = or_default(g.designs, 10000);
  cfg.n = opt.n;
  cfg.master_seed = g.seed;
  cfg.threads = g.threads;
  const fs::path out = prepare_out_dir(g.out);
  const auto rep = hdvar::run_moment_identity_check(cfg);

  hdvar::csv::Table t;
  t.comments = provenance("moment-check", g);
  t.comments.push_back("beta_norm2=" + hdvar::csv::format_real(rep.beta_norm2) +
                       " draws=" + std::to_string(rep.draws) + " designs=" + std::to_string(rep.designs) +
                       " n=" + std::to_string(rep.n));
  t.header = hdvar::records::moment_header();
  t.rows = hdvar::records::moment_rows(rep);
  write_file(out / "moment_check.csv", hdvar::csv::to_string(t));

  std::cout << "E(x'b)^4=" << two_dp(rep.fourth_moment, 5) << " (se " << two_dp(rep.fourth_moment_se, 5)
            << ", target " << two_dp(rep.fourth_target, 5) << ")  var(|mu|^2/n)="
            << two_dp(rep.energy_variance, 6) << " (se " << two_dp(rep.energy_variance_se, 6)
            << ", target " << two_dp(rep.energy_target, 6) << ")  " << (rep.pass() ? "PASS" : "FAIL")
            << '\n';
  if (!rep.pass()) {
    std::cerr << "moment-check failed:\n";
    for (const auto& row : t.rows)
      if (row.back() == "0") {
        for (std::size_t k = 0; k < row.size(); ++k) std::cerr << (k ? "," : "") << row[k];
        std::cerr << '\n';
      }
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual-variance estimation experiments for high-dimensional Gaussian regression",
               "hdvar"};
  app.set_version_flag("--version", HDVAR_VERSION);
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style config file (flags override file values)");

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores); results do not depend on it");
  app.add_option("--replications", g.replications, "Replications per scenario (command default if omitted)");
  app.add_option("--designs", g.designs, "Number of designs (figure1, moment-check)");

  Table1Options t1;
  auto* table1 = app.add_subcommand("table1", "Error-rate grid n=p in 100..1000 x five alternatives");
  table1->add_option("--rows", t1.rows, "Restrict to these n values")->delimiter(',');
  table1->add_option("--cols", t1.cols, "Restrict to these columns (1..5)")->delimiter(',');

  Figure1Options f1;
  auto* figure1 = app.add_subcommand("figure1", "Distribution of the error rate over redrawn designs");
  figure1->add_option("--n", f1.n, "n = p")->capture_default_str();
  figure1->add_option("--col", f1.col, "Alternative column (1..5)")->capture_default_str();
  figure1->add_option("--bins", f1.bins, "Histogram bins")->capture_default_str();

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Moment estimate of sigma^2 for a dataset file");
  estimate->add_option("data", est.path, "Dataset file ('n p' then n rows of x_1..x_p y)")->required();
  estimate->add_option("--sigma2", est.sigma2, "True sigma^2 (for the variance formula)");
  estimate->add_option("--beta-norm2", est.beta_norm2, "True ||beta||^2 (for the variance formula)");

  VarianceOptions vo;
  auto* variance = app.add_subcommand("variance-check", "Monte Carlo mean/variance vs the leading-term formula");
  variance->add_option("--n", vo.n)->capture_default_str();
  variance->add_option("--p", vo.p)->capture_default_str();
  variance->add_option("--sigma2", vo.sigma2)->capture_default_str();
  variance->add_option("--beta-norm2", vo.beta_norm2)->capture_default_str();

  BoundOptions bo;
  auto* bound = app.add_subcommand("bound-check", "Fixed-design exceedance probabilities vs C g/(xi^2 sqrt n)");
  bound->add_option("--c", bo.c, "p / n")->capture_default_str();
  bound->add_option("--n-grid", bo.n_grid, "Increasing list of n")->delimiter(',');
  bound->add_option("--sigma2", bo.sigma2)->capture_default_str();
  bound->add_option("--beta-norm2", bo.beta_norm2)->capture_default_str();
  bound->add_option("--xi", bo.xi, "Deviation threshold")->capture_default_str();
  bound->add_option("--C", bo.max_constant, "Largest acceptable fitted constant")->capture_default_str();

  MomentOptions mo;
  auto* moment = app.add_subcommand("moment-check", "Gaussian fourth-moment and energy-variance identities");
  moment->add_option("--beta", mo.beta, "Coefficient vector")->delimiter(',');
  moment->add_option("--draws", mo.draws, "Draws of x for E (x'beta)^4")->capture_default_str();
  moment->add_option("--n", mo.n, "Rows per design for var(||mu||^2/n)")->capture_default_str();

  for (auto* sub : {table1, figure1, estimate, variance, bound, moment}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table1) return cmd_table1(g, t1);
    if (*figure1) return cmd_figure1(g, f1);
    if (*estimate) return cmd_estimate(est);
    if (*variance) return cmd_variance_check(g, vo);
    if (*bound) return cmd_bound_check(g, bo);
    if (*moment) return cmd_moment_check(g, mo);
  } catch (const UsageError& e) {
    std::cerr << "hdvar: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hdvar: invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "hdvar: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
