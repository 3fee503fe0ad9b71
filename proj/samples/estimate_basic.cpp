// Draws one dataset from the Gaussian linear model with p = 2n and prints the
// moment estimate of sigma^2 next to its leading-term standard deviation.

#include <cmath>
#include <cstdio>
#include <memory>

#include "hdvar/hdvar.hpp"

int main() {
  const std::size_t n = 300, p = 600;
  const double sigma2 = 1.5, beta_norm2 = 2.0;
  const hdvar::SeedSpec seed{hdvar::kDefaultMasterSeed, "sample", 0};

  auto x = std::make_shared<const hdvar::DesignMatrix>(hdvar::sample_design(n, p, seed.sub("design")));
  hdvar::GaussianLinearModel model{hdvar::sample_beta_fixed_norm(p, beta_norm2, seed.sub("beta")), sigma2};
  const hdvar::Dataset data = hdvar::sample_response(x, model, seed.sub("noise"));

  const auto est = hdvar::dicker_estimate(data);
  const double sd = std::sqrt(hdvar::dicker_variance_formula(n, p, sigma2, beta_norm2));
  std::printf("n=%zu p=%zu  sigma2=%.3f  estimate=%.4f  (sd ~ %.4f)\n", n, p, sigma2,
              est.value, sd);
  std::printf("||Y||^2=%.4f  ||X^T Y||^2=%.4f\n", est.y_norm2, est.xty_norm2);
  return 0;
}
