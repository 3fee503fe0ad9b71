#pragma once

// Moment estimator of the residual variance, its unconditional variance, and
// the conditional deviation bound for fixed designs.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hdvar/error.hpp"
#include "hdvar/linalg.hpp"
#include "hdvar/model.hpp"

namespace hdvar {

struct DickerEstimate {
  double value = 0.0;      ///< estimate of sigma^2; may be negative
  double y_norm2 = 0.0;    ///< ||Y||^2
  double xty_norm2 = 0.0;  ///< ||X^T Y||^2
  std::size_t n = 0;
  std::size_t p = 0;
};

/// Combines the two moment components:
///   (p + n + 1) / (n (n + 1)) ||Y||^2 - 1 / (n (n + 1)) ||X^T Y||^2.
inline double dicker_combine(double y_norm2, double xty_norm2, std::size_t n,
                             std::size_t p) noexcept {
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const double denom = nd * (nd + 1.0);
  return (pd + nd + 1.0) / denom * y_norm2 - xty_norm2 / denom;
}

/// Estimate from a design and response; `workspace` must hold p doubles and
/// receives X^T Y.
inline DickerEstimate dicker_estimate(const DesignMatrix& x, std::span<const double> y,
                                      std::span<double> workspace) {
  detail::require_dims(y.size() == x.rows(), "dicker_estimate: response length != n");
  detail::require_dims(workspace.size() >= x.cols(),
                       "dicker_estimate: workspace shorter than p");
  const auto xty = workspace.first(x.cols());
  linalg::gemv_transposed(x.data(), x.rows(), x.cols(), y, xty);
  DickerEstimate e;
  e.n = x.rows();
  e.p = x.cols();
  e.y_norm2 = linalg::squared_norm(y);
  e.xty_norm2 = linalg::squared_norm(xty);
  e.value = dicker_combine(e.y_norm2, e.xty_norm2, e.n, e.p);
  return e;
}

inline DickerEstimate dicker_estimate(const DesignMatrix& x, std::span<const double> y) {
  std::vector<double> ws(x.cols());
  return dicker_estimate(x, y, ws);
}

inline DickerEstimate dicker_estimate(const Dataset& data) {
  return dicker_estimate(*data.design, data.response);
}

/// Leading term (2/n){(p/n)(sigma^2 + ||beta||^2)^2 + sigma^4 + ||beta||^4};
/// the 1 + O(1/n) factor is not modeled.
inline double dicker_variance_formula(std::size_t n, std::size_t p, double sigma2,
                                      double beta_norm2) {
  detail::require(n >= 1 && p >= 1, "dicker_variance_formula: n, p must be >= 1");
  detail::require(sigma2 > 0.0, "dicker_variance_formula: sigma2 must be positive");
  detail::require(beta_norm2 >= 0.0, "dicker_variance_formula: beta_norm2 must be >= 0");
  const double nd = static_cast<double>(n);
  const double ratio = static_cast<double>(p) / nd;
  const double total = sigma2 + beta_norm2;
  return 2.0 / nd *
         (ratio * total * total + sigma2 * sigma2 + beta_norm2 * beta_norm2);
}

struct BoundInputs {
  double c = 1.0;           ///< limiting p / n, >= 1
  std::size_t n = 1;
  double mu_norm2 = 0.0;    ///< ||mu||^2 = ||X beta||^2
  double sigma2 = 1.0;
  double xi = 1.0;          ///< deviation threshold

  void validate() const {
    detail::require(c >= 1.0, "BoundInputs: c must be >= 1");
    detail::require(n >= 1, "BoundInputs: n must be >= 1");
    detail::require(mu_norm2 >= 0.0, "BoundInputs: mu_norm2 must be >= 0");
    detail::require(sigma2 > 0.0, "BoundInputs: sigma2 must be positive");
    detail::require(xi > 0.0, "BoundInputs: xi must be positive");
  }
};

/// g(c, n, mu, sigma^2) = 1 + 2(c+1){(||mu||^2/n)^2 + sigma^4}
///                        + (4 sigma^2 / n)||mu||^2 + 2 sigma^4.
inline double theorem_bound_g(const BoundInputs& in) {
  in.validate();
  const double nd = static_cast<double>(in.n);
  const double m = in.mu_norm2 / nd;
  const double s4 = in.sigma2 * in.sigma2;
  return 1.0 + 2.0 * (in.c + 1.0) * (m * m + s4) + 4.0 * in.sigma2 * m + 2.0 * s4;
}

/// C g / (xi^2 sqrt(n)); C is supplied by the caller.
inline double conditional_bound_rhs(const BoundInputs& in, double constant = 1.0) {
  detail::require(constant > 0.0, "conditional_bound_rhs: C must be positive");
  return constant * theorem_bound_g(in) /
         (in.xi * in.xi * std::sqrt(static_cast<double>(in.n)));
}

}  // namespace hdvar
