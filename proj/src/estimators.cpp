#include "wincurse/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "wincurse/conditional.hpp"
#include "wincurse/normal.hpp"

namespace wincurse {

namespace {
constexpr double kMleLowerBracket = -8.0;
constexpr double kScoreTol = 1e-8;
constexpr double kBracketTol = 1e-10;
constexpr double kCiTol = 1e-8;

// d/dm log-likelihood of the truncated model; strictly decreasing in m.
double score(double m, const TestContext& ctx) {
  return (ctx.t_obs - m) - conditional_bias(m, ctx.c);
}

void require_significant(const TestContext& ctx) {
  if (!ctx.significant()) throw std::domain_error("context is not significant (t_obs <= c)");
}
}  // namespace

EstimateRecord naive_estimate(const TestContext& ctx) {
  return EstimateRecord{"N", ctx.t_obs * ctx.se, 0.0, 0.0, IntervalKind::none, false};
}

EstimateRecord conditional_mle(const TestContext& ctx) {
  require_significant(ctx);
  double lo = kMleLowerBracket;
  double hi = ctx.t_obs;  // score(t_obs) = -mills(c - t_obs) < 0
  double m_hat;
  if (score(lo, ctx) <= 0.0) {
    m_hat = lo;  // maximizer at or below the bracket; will clamp to zero
  } else {
    m_hat = 0.5 * (lo + hi);
    while (true) {
      const double s = score(m_hat, ctx);
      if (std::fabs(s) < kScoreTol || (hi - lo) < kBracketTol) break;
      (s > 0.0 ? lo : hi) = m_hat;
      m_hat = 0.5 * (lo + hi);
    }
  }
  const bool clamped = m_hat < 0.0;
  if (clamped) m_hat = 0.0;
  return EstimateRecord{"MLE", m_hat * ctx.se, 0.0, 0.0, IntervalKind::none, clamped};
}

double conditional_loglik(double m, const TestContext& ctx) {
  return standard_normal_log_pdf(ctx.t_obs - m) - standard_normal_log_upper_tail(ctx.c - m);
}

EffectInterval profile_confidence_interval(const TestContext& ctx, double level) {
  require_significant(ctx);
  if (!(level > 0.5 && level < 1.0))
    throw std::domain_error("profile interval level must be in (0.5, 1)");

  const double m_hat = conditional_mle(ctx).point / ctx.se;  // constrained
  const double l_max = conditional_loglik(m_hat, ctx);
  const double z = standard_normal_quantile(0.5 * (1.0 + level));
  const double cutoff = z * z;  // chi-square(1) quantile at `level`

  // Inside the interval iff deficit(m) <= 0; deficit is decreasing below
  // m_hat and increasing above it.
  const auto deficit = [&](double m) { return 2.0 * (l_max - conditional_loglik(m, ctx)) - cutoff; };

  const auto bisect = [&](double a, double b, bool rising) {
    // Root of deficit on [a, b]; `rising` = deficit goes - to + across it.
    while (b - a > kCiTol) {
      const double mid = 0.5 * (a + b);
      const bool below = deficit(mid) <= 0.0;
      if (rising == below) a = mid; else b = mid;
    }
    return 0.5 * (a + b);
  };

  double low = 0.0;
  if (deficit(0.0) > 0.0) low = bisect(0.0, m_hat, false);
  const double upper_bracket = ctx.t_obs + 6.0;  // likelihood negligible beyond
  const double high = bisect(m_hat, upper_bracket, true);
  return EffectInterval{low * ctx.se, high * ctx.se};
}

}  // namespace wincurse
