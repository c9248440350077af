#pragma once

#include <stdexcept>

#include "wincurse/normal.hpp"

namespace wincurse {

// A significant upper-tail test: observed z-statistic, the threshold it
// cleared, and the standard error linking the z scale to the effect scale.
struct TestContext {
  double t_obs = 0.0;   // observed statistic, z scale
  double alpha = 0.0;   // one-sided type-I error rate
  double c = 0.0;       // critical value, = upper alpha-quantile
  double se = 0.0;      // standard error of the naive effect estimate

  // True when downstream estimators may consume this context.
  bool significant() const { return t_obs > c; }
};

inline double critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::domain_error("alpha must be in (0, 0.5)");
  return standard_normal_upper_quantile(alpha);
}

inline TestContext make_context(double t_obs, double alpha, double se) {
  if (!(se > 0.0)) throw std::domain_error("se must be positive");
  return TestContext{t_obs, alpha, critical_value(alpha), se};
}

// Effect size on both scales: m is the mean of the z-statistic (mu / se).
struct NormalizedEffect {
  double m = 0.0;
  double mu = 0.0;
};

inline NormalizedEffect normalized_effect(double m, const TestContext& ctx) {
  return NormalizedEffect{m, m * ctx.se};
}

}  // namespace wincurse
