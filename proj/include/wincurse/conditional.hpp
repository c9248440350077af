#pragma once

#include <cstdint>

namespace wincurse {

// Sampling density of a z-statistic with mean m reported only when it
// exceeds c: phi(t - m) / (1 - Phi(c - m)) on (c, inf), zero below c.
double conditional_density(double t, double m, double c);

// log of the above; -inf for t <= c.
double conditional_log_density(double t, double m, double c);

// Expected excess E[T - m | T > c] = phi(c-m)/(1-Phi(c-m)): the exact bias
// of the naive estimator on the z scale. Strictly positive, decreasing in m.
double conditional_bias(double m, double c);

// P(T > c) for a statistic with mean m.
double power_of_test(double m, double c);

// Smallest n with power ~ `power` at one-sided level alpha for effect mu and
// population sd sigma: round(((c + Phi^-1(power)) * sigma / mu)^2).
// Throws std::domain_error for infeasible inputs (mu <= 0, power <= alpha).
std::int64_t required_sample_size(double mu, double sigma, double alpha, double power);

}  // namespace wincurse
