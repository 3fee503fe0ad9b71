#pragma once

// Random objects of the Gaussian linear model y | x ~ N(beta^T x, sigma^2),
// x ~ N(0, I): design matrices, coefficient vectors, conditional means and
// responses. Every sampler is a pure function of its arguments and SeedSpec.

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdvar/error.hpp"
#include "hdvar/linalg.hpp"
#include "hdvar/rng.hpp"

namespace hdvar {

/// Dense row-major n x p design. Immutable once built.
class DesignMatrix {
 public:
  DesignMatrix(std::size_t n, std::size_t p, std::vector<double> entries,
               bool standardized = false)
      : n_(n), p_(p), entries_(std::move(entries)), standardized_(standardized) {
    detail::require(n_ >= 1 && p_ >= 1, "DesignMatrix: n and p must be >= 1");
    detail::require_dims(entries_.size() == n_ * p_,
                         "DesignMatrix: entry count != n * p");
    for (double v : entries_)
      detail::require(std::isfinite(v), "DesignMatrix: non-finite entry");
    if (standardized_) check_standardized();
  }

  [[nodiscard]] std::size_t rows() const noexcept { return n_; }
  [[nodiscard]] std::size_t cols() const noexcept { return p_; }
  [[nodiscard]] bool standardized() const noexcept { return standardized_; }
  [[nodiscard]] std::span<const double> data() const noexcept { return entries_; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(entries_).subspan(i * p_, p_);
  }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * p_ + j];
  }

 private:
  void check_standardized() const {
    const double tol = 1e-9 * static_cast<double>(p_);
    for (std::size_t i = 0; i < n_; ++i) {
      double sum = 0.0, ss = 0.0;
      for (double v : row(i)) {
        sum += v;
        ss += v * v;
      }
      detail::require(std::abs(sum) <= tol &&
                          std::abs(ss - static_cast<double>(p_)) <=
                              tol * static_cast<double>(p_),
                      "DesignMatrix: row " + std::to_string(i) +
                          " violates the standardization invariant");
    }
  }

  std::size_t n_;
  std::size_t p_;
  std::vector<double> entries_;
  bool standardized_;
};

using DesignPtr = std::shared_ptr<const DesignMatrix>;

struct GaussianLinearModel {
  std::vector<double> beta;
  double sigma2 = 1.0;

  void validate() const {
    detail::require(sigma2 > 0.0 && std::isfinite(sigma2),
                    "GaussianLinearModel: sigma2 must be positive");
    for (double b : beta)
      detail::require(std::isfinite(b), "GaussianLinearModel: non-finite beta");
  }
};

/// mu = X beta.
struct ConditionalMeans {
  std::vector<double> mu;
};

/// A design (shared, read-only) together with its response vector.
struct Dataset {
  DesignPtr design;
  std::vector<double> response;

  Dataset(DesignPtr x, std::vector<double> y)
      : design(std::move(x)), response(std::move(y)) {
    detail::require(design != nullptr, "Dataset: null design");
    detail::require_dims(response.size() == design->rows(),
                         "Dataset: response length != design rows");
  }

  [[nodiscard]] std::size_t n() const noexcept { return design->rows(); }
  [[nodiscard]] std::size_t p() const noexcept { return design->cols(); }
};

inline void fill_normal(NormalStream& rng, std::span<double> out, double scale = 1.0) {
  for (double& v : out) v = scale * rng.normal();
}

/// n x p matrix of iid N(0, 1) entries, drawn row by row.
inline DesignMatrix sample_design(std::size_t n, std::size_t p, const SeedSpec& seed) {
  detail::require(n >= 1 && p >= 1, "sample_design: n and p must be >= 1");
  std::vector<double> entries(n * p);
  NormalStream rng(seed);
  fill_normal(rng, entries);
  return DesignMatrix(n, p, std::move(entries), false);
}

/// Centers each row and rescales it so that sum_j x_ij = 0, sum_j x_ij^2 = p.
inline DesignMatrix standardize_rows(const DesignMatrix& design) {
  const std::size_t n = design.rows();
  const std::size_t p = design.cols();
  detail::require(p >= 2, "standardize_rows: need p >= 2");
  std::vector<double> out(design.data().begin(), design.data().end());
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> row(out.data() + i * p, p);
    double sum = 0.0, raw_ss = 0.0;
    for (double v : row) {
      sum += v;
      raw_ss += v * v;
    }
    const double mean = sum / static_cast<double>(p);
    double ss = 0.0;
    for (double& v : row) {
      v -= mean;
      ss += v * v;
    }
    if (!(ss > 1e-24 * raw_ss) || ss == 0.0)
      throw std::invalid_argument("standardize_rows: row " + std::to_string(i) +
                                  " is constant");
    const double scale = std::sqrt(static_cast<double>(p) / ss);
    for (double& v : row) v *= scale;
  }
  return DesignMatrix(n, p, std::move(out), true);
}

/// beta_j iid N(0, eta2 / p); all zeros when eta2 == 0.
inline std::vector<double> sample_beta_spherical(std::size_t p, double eta2,
                                                 const SeedSpec& seed) {
  detail::require(p >= 1, "sample_beta_spherical: p must be >= 1");
  detail::require(eta2 >= 0.0 && std::isfinite(eta2),
                  "sample_beta_spherical: eta2 must be >= 0");
  std::vector<double> beta(p, 0.0);
  if (eta2 == 0.0) return beta;
  NormalStream rng(seed);
  fill_normal(rng, beta, std::sqrt(eta2 / static_cast<double>(p)));
  return beta;
}

/// Uniformly random direction with ||beta||^2 = norm2.
inline std::vector<double> sample_beta_fixed_norm(std::size_t p, double norm2,
                                                  const SeedSpec& seed) {
  detail::require(p >= 1, "sample_beta_fixed_norm: p must be >= 1");
  detail::require(norm2 >= 0.0 && std::isfinite(norm2),
                  "sample_beta_fixed_norm: norm2 must be >= 0");
  std::vector<double> beta(p, 0.0);
  if (norm2 == 0.0) return beta;
  NormalStream rng(seed);
  double ss = 0.0;
  do {
    fill_normal(rng, beta);
    ss = linalg::squared_norm(beta);
  } while (ss == 0.0);
  const double scale = std::sqrt(norm2 / ss);
  for (double& b : beta) b *= scale;
  return beta;
}

inline ConditionalMeans conditional_means(const DesignMatrix& design,
                                          std::span<const double> beta) {
  detail::require_dims(beta.size() == design.cols(),
                       "conditional_means: beta length != design columns");
  ConditionalMeans out{std::vector<double>(design.rows())};
  linalg::gemv(design.data(), design.rows(), design.cols(), beta, out.mu);
  return out;
}

/// Y = X beta + eps with eps iid N(0, sigma2).
inline Dataset sample_response(DesignPtr design, const GaussianLinearModel& model,
                               const SeedSpec& seed) {
  detail::require(design != nullptr, "sample_response: null design");
  model.validate();
  detail::require_dims(model.beta.size() == design->cols(),
                       "sample_response: beta length != design columns");
  std::vector<double> y = conditional_means(*design, model.beta).mu;
  NormalStream rng(seed);
  const double sd = std::sqrt(model.sigma2);
  for (double& v : y) v += sd * rng.normal();
  return Dataset(std::move(design), std::move(y));
}

inline Dataset sample_response(const DesignMatrix& design,
                               const GaussianLinearModel& model, const SeedSpec& seed) {
  return sample_response(std::make_shared<const DesignMatrix>(design), model, seed);
}

}  // namespace hdvar
