#pragma once

#include <string>

#include "wincurse/context.hpp"

namespace wincurse {

enum class IntervalKind { none, confidence, hpd };

// One corrected (or uncorrected) effect estimate, on the effect scale.
struct EstimateRecord {
  std::string method;  // "N", "MLE", "B.L", "B.H", "B.M", "B.Unif", "B.BMA"
  double point = 0.0;
  double interval_low = 0.0;
  double interval_high = 0.0;
  IntervalKind interval_kind = IntervalKind::none;
  bool clamped = false;  // MLE only: unconstrained maximizer was negative
};

// The reported (uncorrected) estimate t_obs * se.
EstimateRecord naive_estimate(const TestContext& ctx);

// Maximizer of the truncated-normal likelihood over m in [-8, t_obs], then
// clamped below at zero. The score (t - m) - mills(c - m) is strictly
// decreasing in m, so the root is found by bisection (|score| < 1e-8 or
// bracket < 1e-10). Throws std::domain_error for non-significant input.
EstimateRecord conditional_mle(const TestContext& ctx);

// Log-likelihood of m under the truncated model (z scale); used by the
// profile interval and exposed for tests.
double conditional_loglik(double m, const TestContext& ctx);

// Profile-likelihood interval {mu >= 0 : 2[l(mu_hat) - l(mu)] <= chi2_1(level)}
// on the effect scale; endpoints located by bisection to 1e-8 on the m scale
// within [0, t_obs + 6]; the lower endpoint clamps at 0.
struct EffectInterval {
  double low = 0.0;
  double high = 0.0;
};
EffectInterval profile_confidence_interval(const TestContext& ctx, double level);

}  // namespace wincurse
