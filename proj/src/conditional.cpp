#include "wincurse/conditional.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wincurse/normal.hpp"

namespace wincurse {

double conditional_density(double t, double m, double c) {
  if (t <= c) return 0.0;
  return std::exp(conditional_log_density(t, m, c));
}

double conditional_log_density(double t, double m, double c) {
  if (t <= c) return -std::numeric_limits<double>::infinity();
  return standard_normal_log_pdf(t - m) - standard_normal_log_upper_tail(c - m);
}

double conditional_bias(double m, double c) { return mills_ratio(c - m); }

double power_of_test(double m, double c) { return standard_normal_upper_tail(c - m); }

std::int64_t required_sample_size(double mu, double sigma, double alpha, double power) {
  if (!(mu > 0.0)) throw std::domain_error("required_sample_size: mu must be positive");
  if (!(sigma > 0.0)) throw std::domain_error("required_sample_size: sigma must be positive");
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::domain_error("required_sample_size: bad alpha");
  if (!(power > alpha && power < 1.0))
    throw std::domain_error("required_sample_size: power must be in (alpha, 1)");
  const double c = standard_normal_upper_quantile(alpha);
  const double z = standard_normal_quantile(power);
  const double root = (c + z) * sigma / mu;
  if (!(root > 0.0)) throw std::domain_error("required_sample_size: infeasible inputs");
  const auto n = static_cast<std::int64_t>(std::llround(root * root));
  return n < 1 ? 1 : n;
}

}  // namespace wincurse
