#pragma once

// Standard normal density, distribution, quantile and tail utilities.
//
// The far upper tail matters here: observed z-statistics reach ~15 and
// p-values ~1e-53, so 1 - Phi(x) is computed through erfc rather than by
// subtraction, the quantile accepts p down to ~1e-316, and the Mills ratio
// and log tail switch to asymptotic series where erfc underflows.

namespace wincurse {

// phi(x) = exp(-x^2/2) / sqrt(2*pi)
double standard_normal_pdf(double x);

// log phi(x), safe for |x| up to ~1e8.
double standard_normal_log_pdf(double x);

// Phi(x) computed as 0.5*erfc(-x/sqrt(2)); full relative precision in the
// lower tail, absolute precision ~1e-16 elsewhere.
double standard_normal_cdf(double x);

// 1 - Phi(x) computed as 0.5*erfc(x/sqrt(2)); keeps relative precision in
// the upper tail (exact complement of the cdf by construction).
double standard_normal_upper_tail(double x);

// log(1 - Phi(x)); uses the asymptotic tail series beyond x = 37 where erfc
// underflows to zero.
double standard_normal_log_upper_tail(double x);

// Inverse of Phi (Wichura's AS241, ~1e-16 relative); throws
// std::domain_error outside (0,1).
double standard_normal_quantile(double p);

// Upper-tail quantile: x with 1 - Phi(x) = p, computed as -quantile(p) so
// tiny p (e.g. 4e-53) keeps full precision.
double standard_normal_upper_quantile(double p);

// Mills ratio phi(x) / (1 - Phi(x)); asymptotic series beyond |x| = 37.
double mills_ratio(double x);

}  // namespace wincurse
