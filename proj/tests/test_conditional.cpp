#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wincurse/conditional.hpp"
#include "wincurse/context.hpp"
#include "wincurse/normal.hpp"
#include "wincurse/quadrature.hpp"

using namespace wincurse;

namespace {
void check_close(double got, double want, double tol) {
  CHECK_MESSAGE(std::fabs(got - want) <= tol,
                "got " << got << ", want " << want << " +/- " << tol);
}
void check_rel(double got, double want, double rel) {
  CHECK_MESSAGE(std::fabs(got - want) <= rel * std::fabs(want),
                "got " << got << ", want " << want << " rel " << rel);
}
}  // namespace

TEST_SUITE("conditional") {

TEST_CASE("truncated density spot values") {
  check_rel(conditional_density(2.0, 0.0, 1.645), 1.08014541451781, 1e-12);
  check_rel(conditional_density(5.0, 3.0, 4.753424308822899), 1.35776458338502, 1e-12);
  check_rel(conditional_density(6.0, 5.2, 4.753424308822899), 0.430826229829602, 1e-12);
}

TEST_CASE("density vanishes at and below the threshold") {
  CHECK(conditional_density(1.645, 0.0, 1.645) == 0.0);
  CHECK(conditional_density(1.0, 0.0, 1.645) == 0.0);
  CHECK(conditional_log_density(1.645, 0.0, 1.645) ==
        -std::numeric_limits<double>::infinity());
  CHECK(std::exp(conditional_log_density(2.0, 0.0, 1.645)) ==
        doctest::Approx(conditional_density(2.0, 0.0, 1.645)).epsilon(1e-13));
}

TEST_CASE("truncated density integrates to one") {
  for (auto [m, c] : {std::pair{0.0, 1.645}, {3.0, 1.645}, {-2.0, 2.878},
                      {5.2, 4.753424308822899}}) {
    const double hi = std::max(m, c) + 12.0;
    const double total = integrate([=](double t) { return conditional_density(t, m, c); },
                                   c, hi);
    check_close(total, 1.0, 1e-9);
  }
}

TEST_CASE("mean of the truncated density is the center plus the bias term") {
  for (auto [m, c] : {std::pair{0.0, 1.645}, {1.0, 3.719016485455680},
                      {3.472, 4.7534243088229}}) {
    const double hi = std::max(m, c) + 12.0;
    const double mean = integrate(
        [=](double t) { return t * conditional_density(t, m, c); }, c, hi);
    check_close(mean, m + conditional_bias(m, c), 1e-8);
  }
}

TEST_CASE("bias spot values") {
  check_rel(conditional_bias(0.0, 1.645), 2.06283897068247, 1e-12);
  check_rel(conditional_bias(1.0, 3.719016485455680), 3.02325712205153, 1e-12);
}

TEST_CASE("bias is positive, keeps the mean above the threshold, and shrinks as the signal grows") {
  const double c = 2.878;
  double prev = conditional_bias(-3.0, c);
  for (double m = -2.5; m <= 6.0; m += 0.5) {
    const double b = conditional_bias(m, c);
    CHECK(b > 0.0);
    CHECK(m + b > c);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("power at zero effect equals the test level") {
  for (double alpha : {0.05, 1e-4, 1e-6})
    check_rel(power_of_test(0.0, critical_value(alpha)), alpha, 1e-10);
}

TEST_CASE("power is increasing in the effect and approaches one") {
  const double c = critical_value(1e-4);
  double prev = 0.0;
  for (double m = -2.0; m <= 10.0; m += 0.5) {
    const double p = power_of_test(m, c);
    CHECK(p > prev);
    prev = p;
  }
  CHECK(power_of_test(12.0, c) > 1.0 - 1e-12);
}

TEST_CASE("sample size grid at sigma 1.685") {
  const double mu = std::log(1.1);
  const double sigma = 1.685;
  const std::int64_t expected[3][5] = {{41, 202, 846, 2677, 4929},
                                       {1857, 2588, 4323, 7816, 11423},
                                       {3767, 4783, 7062, 11383, 15666}};
  const double alphas[3] = {0.05, 1e-4, 1e-6};
  const double powers[5] = {0.1, 0.2, 0.5, 0.9, 0.99};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(required_sample_size(mu, sigma, alphas[i], powers[j]) == expected[i][j]);
}

TEST_CASE("sample size grid at sigma 1.6855") {
  const double mu = std::log(1.1);
  const double sigma = 1.6855;
  const std::int64_t expected[3][5] = {{41, 202, 846, 2678, 4932},
                                       {1858, 2589, 4325, 7820, 11429},
                                       {3770, 4786, 7066, 11390, 15675}};
  const double alphas[3] = {0.05, 1e-4, 1e-6};
  const double powers[5] = {0.1, 0.2, 0.5, 0.9, 0.99};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(required_sample_size(mu, sigma, alphas[i], powers[j]) == expected[i][j]);
}

TEST_CASE("sample size yields roughly the requested power") {
  const double mu = std::log(1.1);
  const double sigma = 1.6855;
  for (double alpha : {0.05, 1e-4, 1e-6})
    for (double power : {0.1, 0.5, 0.99}) {
      const auto n = required_sample_size(mu, sigma, alpha, power);
      const double m = mu * std::sqrt(double(n)) / sigma;
      check_close(power_of_test(m, critical_value(alpha)), power, 0.02);
    }
}

TEST_CASE("sample size rejects infeasible requests") {
  CHECK_THROWS_AS(required_sample_size(0.0, 1.0, 0.05, 0.5), std::domain_error);
  CHECK_THROWS_AS(required_sample_size(-0.1, 1.0, 0.05, 0.5), std::domain_error);
  CHECK_THROWS_AS(required_sample_size(0.1, 0.0, 0.05, 0.5), std::domain_error);
  CHECK_THROWS_AS(required_sample_size(0.1, 1.0, 0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(required_sample_size(0.1, 1.0, 0.6, 0.7), std::domain_error);
  CHECK_THROWS_AS(required_sample_size(0.1, 1.0, 0.05, 0.05), std::domain_error);
  CHECK_THROWS_AS(required_sample_size(0.1, 1.0, 0.05, 0.01), std::domain_error);
  CHECK_THROWS_AS(required_sample_size(0.1, 1.0, 0.05, 1.0), std::domain_error);
}

TEST_CASE("critical value guards its domain") {
  CHECK_THROWS_AS(critical_value(0.0), std::domain_error);
  CHECK_THROWS_AS(critical_value(0.5), std::domain_error);
  check_rel(critical_value(0.002), 2.87816173909548, 1e-12);
  check_rel(critical_value(5e-7), 4.89163847569859, 1e-12);
  check_rel(critical_value(5e-8), 5.3267238863845, 1e-12);
}

TEST_CASE("context construction and significance") {
  const TestContext ctx = make_context(3.0, 0.05, 0.5);
  CHECK(ctx.t_obs == 3.0);
  CHECK(ctx.alpha == 0.05);
  check_rel(ctx.c, 1.64485362695147, 1e-12);
  CHECK(ctx.se == 0.5);
  CHECK(ctx.significant());
  CHECK_FALSE(make_context(1.2, 0.05, 0.5).significant());
  CHECK_THROWS_AS(make_context(3.0, 0.05, 0.0), std::domain_error);
}

}  // TEST_SUITE("conditional")
