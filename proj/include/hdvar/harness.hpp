#pragma once

// Monte Carlo experiments around the moment estimator:
//   * fixed-design scenarios under the mixture prior with beta ~ N(0, eta_J^2/p I)
//   * repetition over independently drawn designs
//   * unconditional mean/variance check, conditional deviation-bound scaling,
//     and the Gaussian moment identities used by the conditional bound.
//
// Replications draw from streams keyed by (master seed, label, index) and write
// their outcome by index; aggregation is sequential. Results therefore do not
// depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdvar/bayes_test.hpp"
#include "hdvar/error.hpp"
#include "hdvar/estimators.hpp"
#include "hdvar/linalg.hpp"
#include "hdvar/model.hpp"
#include "hdvar/parallel.hpp"
#include "hdvar/rng.hpp"

namespace hdvar {

inline constexpr std::uint64_t kDefaultMasterSeed = 20240101ULL;

/// Binomial standard error sqrt(q (1 - q) / m).
inline double binomial_std_err(double rate, std::size_t m) noexcept {
  return m == 0 ? 0.0 : std::sqrt(rate * (1.0 - rate) / static_cast<double>(m));
}

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased (m - 1 denominator)
};

/// Two-pass mean and sample variance in index order.
inline MeanVar mean_variance(std::span<const double> v) {
  MeanVar out;
  if (v.empty()) return out;
  double s = 0.0;
  for (double x : v) s += x;
  out.mean = s / static_cast<double>(v.size());
  if (v.size() < 2) return out;
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.variance = ss / static_cast<double>(v.size() - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-design scenario

struct ScenarioConfig {
  std::size_t n = 100;
  std::size_t p = 100;
  TwoPointHypothesis hyp{1.0, 1.0, 5.0 / 6.0, 7.0 / 6.0};
  std::size_t replications = 10000;
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::string scenario_id = "scenario";
  unsigned threads = 0;  ///< 0 = hardware concurrency; never affects results

  void validate() const {
    detail::require(n >= 1, "ScenarioConfig: n must be >= 1");
    detail::require(p >= 2, "ScenarioConfig: p must be >= 2 for standardization");
    detail::require(replications >= 2 && replications % 2 == 0,
                    "ScenarioConfig: replications must be even and >= 2");
    hyp.validate();
    detail::require(hyp.sigma1_2 >= hyp.sigma0_2,
                    "ScenarioConfig: need sigma1^2 >= sigma0^2");
  }

  [[nodiscard]] SeedSpec design_seed() const { return {master_seed, scenario_id + "/design", 0}; }
  [[nodiscard]] SeedSpec beta_seed(std::size_t r) const { return {master_seed, scenario_id + "/beta", r}; }
  [[nodiscard]] SeedSpec noise_seed(std::size_t r) const { return {master_seed, scenario_id + "/noise", r}; }
  /// Component J used for replication r: the first half is J = 0.
  [[nodiscard]] int component(std::size_t r) const noexcept { return r < replications / 2 ? 0 : 1; }
};

struct ScenarioResult {
  double error_rate = 0.0;
  double std_err = 0.0;
  std::size_t replications = 0;
  std::size_t errors = 0;
  std::uint64_t design_seed = 0;  ///< derived stream seed of the design
  ScenarioConfig config_echo;
};

/// The standardized design a scenario uses.
inline DesignMatrix scenario_design(const ScenarioConfig& cfg) {
  return standardize_rows(sample_design(cfg.n, cfg.p, cfg.design_seed()));
}

/// Replication r of a scenario built through the public samplers. run_scenario
/// draws exactly the same numbers in place.
inline Dataset scenario_replication(const ScenarioConfig& cfg, DesignPtr design,
                                    std::size_t r) {
  const int j = cfg.component(r);
  const double eta2 = j == 0 ? cfg.hyp.eta0_2 : cfg.hyp.eta1_2;
  const double sigma2 = j == 0 ? cfg.hyp.sigma0_2 : cfg.hyp.sigma1_2;
  GaussianLinearModel model{sample_beta_spherical(cfg.p, eta2, cfg.beta_seed(r)), sigma2};
  return sample_response(std::move(design), model, cfg.noise_seed(r));
}

/// Error rate of the midpoint rule on the moment estimator, design fixed.
inline ScenarioResult run_scenario_on(const ScenarioConfig& cfg, const DesignMatrix& x) {
  cfg.validate();
  detail::require_dims(x.rows() == cfg.n && x.cols() == cfg.p,
                       "run_scenario: design shape != (n, p)");
  const std::size_t reps = cfg.replications;
  std::vector<std::uint8_t> miss(reps, 0);
  const auto& h = cfg.hyp;
  parallel_for_blocks(reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> beta(cfg.p), y(cfg.n), xty(cfg.p);
    for (std::size_t r = begin; r < end; ++r) {
      const int j = cfg.component(r);
      const double eta2 = j == 0 ? h.eta0_2 : h.eta1_2;
      const double sigma2 = j == 0 ? h.sigma0_2 : h.sigma1_2;
      if (eta2 == 0.0) {
        std::fill(beta.begin(), beta.end(), 0.0);
      } else {
        NormalStream brng(cfg.beta_seed(r));
        fill_normal(brng, beta, std::sqrt(eta2 / static_cast<double>(cfg.p)));
      }
      linalg::gemv(x.data(), cfg.n, cfg.p, beta, y);
      NormalStream erng(cfg.noise_seed(r));
      const double sd = std::sqrt(sigma2);
      for (double& v : y) v += sd * erng.normal();
      const double est = dicker_estimate(x, y, xty).value;
      miss[r] = midpoint_decision(est, h.sigma0_2, h.sigma1_2).j_hat != j ? 1 : 0;
    }
  });
  ScenarioResult out;
  for (auto m : miss) out.errors += m;
  out.replications = reps;
  out.error_rate = static_cast<double>(out.errors) / static_cast<double>(reps);
  out.std_err = binomial_std_err(out.error_rate, reps);
  out.design_seed = cfg.design_seed().stream_seed();
  out.config_echo = cfg;
  return out;
}

inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  return run_scenario_on(cfg, scenario_design(cfg));
}

// ---------------------------------------------------------------------------
// Repetition over designs

struct RepetitionStudyResult {
  std::vector<double> error_rates;
  std::size_t designs = 0;
  std::size_t inner_replications = 0;
};

/// Scenario label used for design d of a repetition study.
inline std::string repetition_scenario_id(const std::string& base, std::size_t d) {
  return base + "/rep" + std::to_string(d);
}

inline RepetitionStudyResult run_repetition_study(const ScenarioConfig& cfg,
                                                  std::size_t designs) {
  cfg.validate();
  detail::require(designs >= 1, "run_repetition_study: designs must be >= 1");
  RepetitionStudyResult out;
  out.designs = designs;
  out.inner_replications = cfg.replications;
  out.error_rates.reserve(designs);
  for (std::size_t d = 0; d < designs; ++d) {
    ScenarioConfig c = cfg;
    c.scenario_id = repetition_scenario_id(cfg.scenario_id, d);
    out.error_rates.push_back(run_scenario(c).error_rate);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Independent-means prior versus the fixed-design prior

struct RuleRisk {
  double error_rate = 0.0;
  double std_err = 0.0;
  std::size_t replications = 0;
};

inline RuleRisk make_rule_risk(std::size_t errors, std::size_t reps) {
  RuleRisk r;
  r.replications = reps;
  r.error_rate = reps == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(reps);
  r.std_err = binomial_std_err(r.error_rate, reps);
  return r;
}

struct PriorContrastResult {
  RuleRisk bayes_y_only;   ///< bayes_rule_or_tie under iid means
  RuleRisk energy_y_only;  ///< (1/n) sum y^2 > (total0 + total1)/2 under iid means
  ScenarioResult dicker;   ///< midpoint rule under beta ~ N(0, eta_J^2/p I), fixed X
};

/// Under iid means mu_i ~ N(0, eta_J^2) the y-only rules are evaluated; the
/// moment-estimator rule is evaluated on the same (n, p, hyp) with the
/// fixed-design prior, where X carries information about J.
inline PriorContrastResult run_prior_contrast(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.replications;
  std::vector<std::uint8_t> bayes_miss(reps, 0), energy_miss(reps, 0);
  const auto& h = cfg.hyp;
  const double energy_cut = 0.5 * (h.total0() + h.total1());
  parallel_for_blocks(reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> y(cfg.n);
    for (std::size_t r = begin; r < end; ++r) {
      const int j = cfg.component(r);
      const double eta = std::sqrt(j == 0 ? h.eta0_2 : h.eta1_2);
      const double sd = std::sqrt(j == 0 ? h.sigma0_2 : h.sigma1_2);
      NormalStream mrng(SeedSpec{cfg.master_seed, cfg.scenario_id + "/iid-means", r});
      NormalStream erng(SeedSpec{cfg.master_seed, cfg.scenario_id + "/iid-noise", r});
      for (double& v : y) v = eta * mrng.normal();
      for (double& v : y) v += sd * erng.normal();
      bayes_miss[r] = bayes_rule_or_tie(y, h).j_hat != j ? 1 : 0;
      const double energy = linalg::squared_norm(y) / static_cast<double>(cfg.n);
      energy_miss[r] = (energy > energy_cut ? 1 : 0) != j ? 1 : 0;
    }
  });
  std::size_t b = 0, e = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    b += bayes_miss[r];
    e += energy_miss[r];
  }
  PriorContrastResult out;
  out.bayes_y_only = make_rule_risk(b, reps);
  out.energy_y_only = make_rule_risk(e, reps);
  out.dicker = run_scenario(cfg);
  return out;
}

// ---------------------------------------------------------------------------
// Unconditional mean and variance

struct VarianceCheckReport {
  std::size_t n = 0, p = 0, replications = 0;
  double sigma2 = 0.0, beta_norm2 = 0.0;
  double mc_mean = 0.0, mc_mean_se = 0.0, mc_variance = 0.0;
  double formula = 0.0;      ///< leading-term variance
  double ratio = 0.0;        ///< mc_variance / formula
  bool mean_pass = false;    ///< |mc_mean - sigma2| <= 3 mc_mean_se
  bool variance_checked = false;  ///< ratio is only enforced for n >= 400
  bool variance_pass = true;      ///< |ratio - 1| <= 0.10 when checked
  [[nodiscard]] bool pass() const noexcept { return mean_pass && variance_pass; }
};

inline VarianceCheckReport run_variance_check(std::size_t n, std::size_t p, double sigma2,
                                              double beta_norm2, std::size_t replications,
                                              std::uint64_t seed, unsigned threads = 0) {
  detail::require(n >= 1 && p >= 1, "run_variance_check: n, p must be >= 1");
  detail::require(sigma2 > 0.0, "run_variance_check: sigma2 must be positive");
  detail::require(beta_norm2 >= 0.0, "run_variance_check: beta_norm2 must be >= 0");
  detail::require(replications >= 1000, "run_variance_check: need >= 1000 replications");
  std::vector<double> est(replications);
  const double sd = std::sqrt(sigma2);
  parallel_for_blocks(replications, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> xbuf(n * p), y(n), xty(p);
    for (std::size_t r = begin; r < end; ++r) {
      NormalStream xrng(SeedSpec{seed, "variance-check/design", r});
      fill_normal(xrng, xbuf);
      const auto beta = sample_beta_fixed_norm(p, beta_norm2, {seed, "variance-check/beta", r});
      linalg::gemv(xbuf, n, p, beta, y);
      NormalStream erng(SeedSpec{seed, "variance-check/noise", r});
      for (double& v : y) v += sd * erng.normal();
      linalg::gemv_transposed(xbuf, n, p, y, xty);
      est[r] = dicker_combine(linalg::squared_norm(y), linalg::squared_norm(xty), n, p);
    }
  });
  const MeanVar mv = mean_variance(est);
  VarianceCheckReport rep;
  rep.n = n;
  rep.p = p;
  rep.replications = replications;
  rep.sigma2 = sigma2;
  rep.beta_norm2 = beta_norm2;
  rep.mc_mean = mv.mean;
  rep.mc_variance = mv.variance;
  rep.mc_mean_se = std::sqrt(mv.variance / static_cast<double>(replications));
  rep.formula = dicker_variance_formula(n, p, sigma2, beta_norm2);
  rep.ratio = rep.mc_variance / rep.formula;
  rep.mean_pass = std::abs(rep.mc_mean - sigma2) <= 3.0 * rep.mc_mean_se;
  rep.variance_checked = n >= 400;
  rep.variance_pass = !rep.variance_checked || std::abs(rep.ratio - 1.0) <= 0.10;
  return rep;
}

// ---------------------------------------------------------------------------
// Conditional deviation bound

struct BoundScalingConfig {
  double c = 1.0;
  std::vector<std::size_t> n_grid{100, 400, 1600};
  double sigma2 = 1.0;
  double beta_norm2 = 1.0;
  double xi = 0.5;
  std::size_t replications = 10000;
  std::uint64_t master_seed = kDefaultMasterSeed;
  double max_constant = 10.0;  ///< largest acceptable fitted C
  unsigned threads = 0;

  void validate() const {
    detail::require(c >= 1.0, "BoundScalingConfig: c must be >= 1");
    detail::require(!n_grid.empty(), "BoundScalingConfig: empty n_grid");
    for (std::size_t k = 0; k < n_grid.size(); ++k) {
      detail::require(n_grid[k] >= 2, "BoundScalingConfig: n must be >= 2");
      if (k > 0)
        detail::require(n_grid[k] > n_grid[k - 1],
                        "BoundScalingConfig: n_grid must be strictly increasing");
    }
    detail::require(sigma2 > 0.0, "BoundScalingConfig: sigma2 must be positive");
    detail::require(beta_norm2 >= 0.0, "BoundScalingConfig: beta_norm2 must be >= 0");
    detail::require(xi > 0.0, "BoundScalingConfig: xi must be positive");
    detail::require(replications >= 1, "BoundScalingConfig: replications must be >= 1");
    detail::require(max_constant > 0.0, "BoundScalingConfig: max_constant must be positive");
  }
};

struct BoundScalingRow {
  std::size_t n = 0, p = 0, replications = 0, exceedances = 0;
  double probability = 0.0, probability_se = 0.0;
  double mean_g = 0.0;
  double bound_unit = 0.0;  ///< mean_g / (xi^2 sqrt(n)), i.e. the bound with C = 1
  double ratio = 0.0;       ///< probability / bound_unit
};

struct BoundScalingReport {
  std::vector<BoundScalingRow> rows;
  double fitted_constant = 0.0;  ///< max ratio
  double slope = 0.0;            ///< least-squares slope of ratio against log n
  double slope_se = 0.0;
  bool strictly_decreasing = false;
  bool constant_ok = false;
  bool no_growth = false;
  [[nodiscard]] bool pass() const noexcept { return constant_ok && no_growth; }
};

inline BoundScalingReport run_bound_scaling_check(const BoundScalingConfig& cfg) {
  cfg.validate();
  BoundScalingReport rep;
  const double sd = std::sqrt(cfg.sigma2);
  for (std::size_t n : cfg.n_grid) {
    const auto p = static_cast<std::size_t>(std::llround(cfg.c * static_cast<double>(n)));
    const std::string label = "bound-check/n=" + std::to_string(n);
    const DesignMatrix x = standardize_rows(sample_design(n, p, {cfg.master_seed, label + "/design", 0}));
    std::vector<std::uint8_t> hit(cfg.replications, 0);
    std::vector<double> g(cfg.replications, 0.0);
    parallel_for_blocks(cfg.replications, cfg.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> y(n), xty(p);
      for (std::size_t r = begin; r < end; ++r) {
        const auto beta = sample_beta_fixed_norm(p, cfg.beta_norm2, {cfg.master_seed, label + "/beta", r});
        linalg::gemv(x.data(), n, p, beta, y);
        const double mu_norm2 = linalg::squared_norm(y);
        NormalStream erng(SeedSpec{cfg.master_seed, label + "/noise", r});
        for (double& v : y) v += sd * erng.normal();
        const double est = dicker_estimate(x, y, xty).value;
        hit[r] = std::abs(est - cfg.sigma2) >= cfg.xi ? 1 : 0;
        g[r] = theorem_bound_g({cfg.c, n, mu_norm2, cfg.sigma2, cfg.xi});
      }
    });
    BoundScalingRow row;
    row.n = n;
    row.p = p;
    row.replications = cfg.replications;
    for (auto h : hit) row.exceedances += h;
    row.probability = static_cast<double>(row.exceedances) / static_cast<double>(cfg.replications);
    row.probability_se = binomial_std_err(row.probability, cfg.replications);
    row.mean_g = mean_variance(g).mean;
    row.bound_unit = row.mean_g / (cfg.xi * cfg.xi * std::sqrt(static_cast<double>(n)));
    row.ratio = row.probability / row.bound_unit;
    rep.rows.push_back(row);
  }

  rep.strictly_decreasing = true;
  for (std::size_t k = 1; k < rep.rows.size(); ++k)
    if (!(rep.rows[k].probability < rep.rows[k - 1].probability)) rep.strictly_decreasing = false;
  if (rep.rows.size() < 2) rep.strictly_decreasing = false;

  for (const auto& r : rep.rows) rep.fitted_constant = std::max(rep.fitted_constant, r.ratio);
  rep.constant_ok = rep.fitted_constant <= cfg.max_constant;

  // Weighted sum form of the OLS slope so its noise follows from the
  // per-row binomial errors.
  const std::size_t m = rep.rows.size();
  if (m >= 2) {
    double xbar = 0.0;
    for (const auto& r : rep.rows) xbar += std::log(static_cast<double>(r.n));
    xbar /= static_cast<double>(m);
    double sxx = 0.0;
    for (const auto& r : rep.rows) {
      const double dx = std::log(static_cast<double>(r.n)) - xbar;
      sxx += dx * dx;
    }
    double slope = 0.0, var = 0.0;
    for (const auto& r : rep.rows) {
      const double w = (std::log(static_cast<double>(r.n)) - xbar) / sxx;
      const double se = r.probability_se / r.bound_unit;
      slope += w * r.ratio;
      var += w * w * se * se;
    }
    rep.slope = slope;
    rep.slope_se = std::sqrt(var);
  }
  rep.no_growth = rep.slope <= 2.0 * rep.slope_se;
  return rep;
}

// ---------------------------------------------------------------------------
// Gaussian moment identities

struct MomentCheckConfig {
  std::vector<double> beta{1.0};
  std::size_t draws = 1000000;   ///< draws of x ~ N(0, I_p) for E (x^T beta)^4
  std::size_t designs = 10000;   ///< unstandardized designs for var(||mu||^2 / n)
  std::size_t n = 50;
  std::uint64_t master_seed = kDefaultMasterSeed;
  unsigned threads = 0;

  void validate() const {
    detail::require(!beta.empty(), "MomentCheckConfig: empty beta");
    detail::require(draws >= 100000, "MomentCheckConfig: need draws >= 1e5");
    detail::require(designs >= 2, "MomentCheckConfig: need designs >= 2");
    detail::require(n >= 1, "MomentCheckConfig: n must be >= 1");
  }
};

struct MomentCheckReport {
  double beta_norm2 = 0.0;
  std::size_t draws = 0, designs = 0, n = 0;
  double fourth_moment = 0.0;     ///< MC estimate of E (x^T beta)^4
  double fourth_moment_se = 0.0;
  double fourth_target = 0.0;     ///< 3 ||beta||^4
  double excess = 0.0;            ///< fourth_moment - ||beta||^4, target 2 ||beta||^4
  double excess_target = 0.0;
  double fourth_z = 0.0;
  bool fourth_pass = false;       ///< |z| <= 4
  double energy_variance = 0.0;   ///< sample variance of ||X beta||^2 / n
  double energy_variance_se = 0.0;
  double energy_target = 0.0;     ///< 2 ||beta||^4 / n
  double energy_z = 0.0;
  bool energy_pass = false;       ///< |z| <= 5
  [[nodiscard]] bool pass() const noexcept { return fourth_pass && energy_pass; }
};

namespace detail {
inline bool within_se(double value, double target, double se, double k, double& z) {
  const double diff = value - target;
  if (se > 0.0) {
    z = diff / se;
    return std::abs(z) <= k;
  }
  z = 0.0;
  return std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(target));
}
}  // namespace detail

inline MomentCheckReport run_moment_identity_check(const MomentCheckConfig& cfg) {
  cfg.validate();
  const std::size_t p = cfg.beta.size();
  const double b2 = linalg::squared_norm(cfg.beta);
  MomentCheckReport rep;
  rep.beta_norm2 = b2;
  rep.draws = cfg.draws;
  rep.designs = cfg.designs;
  rep.n = cfg.n;

  std::vector<double> q(cfg.draws);
  parallel_for_blocks(cfg.draws, cfg.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> x(p);
    for (std::size_t d = begin; d < end; ++d) {
      NormalStream rng(SeedSpec{cfg.master_seed, "moment-check/x", d});
      fill_normal(rng, x);
      const double t = linalg::dot(x, cfg.beta);
      q[d] = t * t * t * t;
    }
  });
  const MeanVar mq = mean_variance(q);
  rep.fourth_moment = mq.mean;
  rep.fourth_moment_se = std::sqrt(mq.variance / static_cast<double>(cfg.draws));
  rep.fourth_target = 3.0 * b2 * b2;
  rep.excess = rep.fourth_moment - b2 * b2;
  rep.excess_target = 2.0 * b2 * b2;
  rep.fourth_pass = detail::within_se(rep.fourth_moment, rep.fourth_target,
                                      rep.fourth_moment_se, 4.0, rep.fourth_z);

  std::vector<double> energy(cfg.designs);
  parallel_for_blocks(cfg.designs, cfg.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> xbuf(cfg.n * p), mu(cfg.n);
    for (std::size_t d = begin; d < end; ++d) {
      NormalStream rng(SeedSpec{cfg.master_seed, "moment-check/design", d});
      fill_normal(rng, xbuf);
      linalg::gemv(xbuf, cfg.n, p, cfg.beta, mu);
      energy[d] = linalg::squared_norm(mu) / static_cast<double>(cfg.n);
    }
  });
  const MeanVar me = mean_variance(energy);
  // SE of a sample variance: sqrt((m4 - s^4) / m), m4 the fourth central moment.
  double m4 = 0.0;
  for (double e : energy) {
    const double dev = e - me.mean;
    m4 += dev * dev * dev * dev;
  }
  m4 /= static_cast<double>(cfg.designs);
  rep.energy_variance = me.variance;
  rep.energy_variance_se =
      std::sqrt(std::max(0.0, m4 - me.variance * me.variance) / static_cast<double>(cfg.designs));
  rep.energy_target = 2.0 * b2 * b2 / static_cast<double>(cfg.n);
  rep.energy_pass = detail::within_se(rep.energy_variance, rep.energy_target,
                                      rep.energy_variance_se, 5.0, rep.energy_z);
  return rep;
}

}  // namespace hdvar
