#include "wincurse/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace wincurse {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2*pi)
constexpr double kInvSqrt2 = 0.70710678118654752440;    // 1/sqrt(2)
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Beyond this the double-precision erfc underflows and the pdf/tail ratio
// degenerates to 0/0; the asymptotic series in 1/x^2 is exact to <1e-16 here.
constexpr double kAsymptoticCut = 37.0;

// Leading terms of the Mills-ratio expansion: 1/mills(x) ~ series(x)/x.
// Truncating after the u^5 term leaves a relative error below 1e-15 for
// x >= 37 (next term is 10395*u^6 with u = 1/x^2 <= 7.4e-4).
double tail_series(double x) {
  const double u = 1.0 / (x * x);
  return 1.0 + u * (-1.0 + u * (3.0 + u * (-15.0 + u * (105.0 - u * 945.0))));
}

double horner(const double* coef, int n, double r) {
  double v = coef[0];
  for (int i = 1; i < n; ++i) v = v * r + coef[i];
  return v;
}

// Wichura (1988) AS241, PPND16 coefficient sets, highest order first.
constexpr double kA[] = {2.5090809287301226727e3,  3.3430575583588128105e4,
                         6.7265770927008700853e4,  4.5921953931549871457e4,
                         1.3731693765509461125e4,  1.9715909503065514427e3,
                         1.3314166789178437745e2,  3.3871328727963666080e0};
constexpr double kB[] = {5.2264952788528545610e3,  2.8729085735721942674e4,
                         3.9307895800092710610e4,  2.1213794301586595867e4,
                         5.3941960214247511077e3,  6.8718700749205790830e2,
                         4.2313330701600911252e1,  1.0};
constexpr double kC[] = {7.74545014278341407640e-4, 2.27238449892691845833e-2,
                         2.41780725177450611770e-1, 1.27045825245236838258e0,
                         3.64784832476320460504e0,  5.76949722146069140550e0,
                         4.63033784615654529590e0,  1.42343711074968357734e0};
constexpr double kD[] = {1.05075007164441684324e-9, 5.47593808499534494600e-4,
                         1.51986665636164571966e-2, 1.48103976427480074590e-1,
                         6.89767334985100004550e-1, 1.67638483018380384940e0,
                         2.05319162663775882187e0,  1.0};
constexpr double kE[] = {2.01033439929228813265e-7, 2.71155556874348757815e-5,
                         1.24266094738807843860e-3, 2.65321895265761230930e-2,
                         2.96560571828504891230e-1, 1.78482653991729133580e0,
                         5.46378491116411436990e0,  6.65790464350110377720e0};
constexpr double kF[] = {2.04426310338993978564e-15, 1.42151175831644588870e-7,
                         1.84631831751005468180e-5,  7.86869131145613259100e-4,
                         1.48753612908506148525e-2,  1.36929880922735805310e-1,
                         5.99832206555887937690e-1,  1.0};
}  // namespace

double standard_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double standard_normal_log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double standard_normal_upper_tail(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double standard_normal_log_upper_tail(double x) {
  if (x > kAsymptoticCut) {
    return standard_normal_log_pdf(x) - std::log(x) + std::log(tail_series(x));
  }
  if (x < -kAsymptoticCut) return 0.0;  // tail is 1 up to <1e-300
  return std::log(standard_normal_upper_tail(x));
}

double standard_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal quantile needs p in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * horner(kA, 8, r) / horner(kB, 8, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = horner(kC, 8, r) / horner(kD, 8, r);
  } else {
    r -= 5.0;
    x = horner(kE, 8, r) / horner(kF, 8, r);
  }
  return q < 0.0 ? -x : x;
}

double standard_normal_upper_quantile(double p) { return -standard_normal_quantile(p); }

double mills_ratio(double x) {
  if (x > kAsymptoticCut) return x / tail_series(x);
  if (x < -kAsymptoticCut) return standard_normal_pdf(x);  // tail is ~1
  return standard_normal_pdf(x) / standard_normal_upper_tail(x);
}

}  // namespace wincurse
