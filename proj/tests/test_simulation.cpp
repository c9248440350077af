#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "wincurse/conditional.hpp"
#include "wincurse/estimators.hpp"
#include "wincurse/normal.hpp"
#include "wincurse/parallel.hpp"
#include "wincurse/simulation.hpp"

using namespace wincurse;

namespace {
void check_close(double got, double want, double tol) {
  CHECK_MESSAGE(std::fabs(got - want) <= tol,
                "got " << got << ", want " << want << " +/- " << tol);
}

SimulationOptions fast_options(std::uint64_t base_seed, int threads = 1) {
  SimulationOptions opt;
  opt.chain.iterations = 12000;  // keeps 10000 draws, the bridge minimum
  opt.chain.burn_in = 2000;
  opt.base_seed = base_seed;
  opt.threads = threads;
  return opt;
}
}  // namespace

TEST_SUITE("simulation") {

TEST_CASE("derived seeds separate the streams of neighboring replicates") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t base = 1; base <= 300; ++base)
    for (std::uint64_t stream = 0; stream < 6; ++stream)
      seen.insert(derive_seed(base, stream));
  CHECK(seen.size() == 300 * 6);
}

TEST_CASE("power-targeted design reproduces the published cell sizes") {
  const Scenario a = scenario_from_power(std::log(1.1), 1.685, 1e-6, 0.99);
  CHECK(a.n == 15666);
  const Scenario b = scenario_from_power(std::log(1.1), 1.6855, 1e-6, 0.99);
  CHECK(b.n == 15675);
  check_close(a.power, 0.99, 0.001);
  const Scenario c = scenario_from_power(std::log(1.1), 1.6855, 1e-6, 0.1);
  CHECK(c.n == 3770);
  check_close(c.se(), 0.02745099443537, 1e-12);
  check_close(c.m_true(), 3.47201191668014, 1e-10);
}

TEST_CASE("fixed-size design computes the achieved power") {
  const Scenario null_cell = scenario_with_n(0.0, 1.6855, 0.05, 1000);
  check_close(null_cell.power, 0.05, 1e-12);
  const Scenario cell = scenario_with_n(0.0953101798043249, 1.6855, 0.05, 846);
  check_close(cell.power, 0.499952341093313, 1e-10);
  check_close(cell.crit(), 1.64485362695147, 1e-12);
}

TEST_CASE("scenario construction rejects bad fields") {
  CHECK_THROWS_AS(scenario_with_n(0.1, 1.0, 0.05, 0), std::invalid_argument);
  CHECK_THROWS_AS(scenario_with_n(-0.1, 1.0, 0.05, 100), std::invalid_argument);
  CHECK_THROWS_AS(scenario_with_n(0.1, 0.0, 0.05, 100), std::invalid_argument);
  CHECK_THROWS_AS(scenario_with_n(0.1, 1.0, 0.6, 100), std::invalid_argument);
  CHECK_THROWS_AS(scenario_with_n(0.1, 1.0, 0.05, 100, 0), std::invalid_argument);
}

TEST_CASE("simulated statistics always clear the threshold") {
  const Scenario s = scenario_with_n(0.362, 1.0, 0.05, 1);
  Rng rng(23);
  const double c = s.crit();
  for (int i = 0; i < 20000; ++i) CHECK(draw_significant_statistic(s, rng) > c);
}

TEST_CASE("simulated statistics have the truncated mean and tail profile") {
  const Scenario s = scenario_with_n(0.362, 1.0, 0.05, 1);
  Rng rng(29);
  const double c = s.crit();
  const double m = s.m_true();
  double sum = 0.0;
  int beyond = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double t = draw_significant_statistic(s, rng);
    sum += t;
    if (t > c + 1.0) ++beyond;
  }
  check_close(sum / n, 2.1180652381564, 0.012);
  const double expect_beyond = power_of_test(m, c + 1.0) / power_of_test(m, c);
  check_close(double(beyond) / n, expect_beyond, 0.006);
}

TEST_CASE("one replicate wires every estimator to the same context") {
  const Scenario s = scenario_with_n(0.0953101798043249, 1.6855, 0.05, 846, 4);
  const SimulationOptions opt = fast_options(400);
  Rng rng(derive_seed(401, 0));
  const double t_obs = draw_significant_statistic(s, rng);
  const auto est = run_replicate(s, t_obs, opt, 401);
  const TestContext ctx = make_context(t_obs, s.alpha, s.se());
  CHECK(est[0] == naive_estimate(ctx).point);
  CHECK(est[1] == conditional_mle(ctx).point);
  ChainConfig cfg = opt.chain;
  cfg.seed = derive_seed(401, 1);
  const ChainResult bl = run_chain(ctx, preset_prior(PresetPrior::skeptical, opt.u_max), cfg);
  CHECK(est[2] == bl.posterior_mean_mu);
  cfg.seed = derive_seed(401, 4);
  const ChainResult bu = run_chain(ctx, preset_prior(PresetPrior::uniform, opt.u_max), cfg);
  CHECK(est[5] == bu.posterior_mean_mu);
  CHECK(est[6] >= std::min(est[2], est[3]));
  CHECK(est[6] <= std::max(est[2], est[3]));
  for (double v : est) CHECK(std::isfinite(v));
}

TEST_CASE("a cell is deterministic and independent of the thread count") {
  const Scenario s = scenario_with_n(0.0953101798043249, 1.6855, 0.05, 846, 6);
  std::vector<std::array<double, kMethodCount>> serial, threaded;
  const SummaryTable a = run_scenario(s, fast_options(500, 1), &serial);
  const SummaryTable b = run_scenario(s, fast_options(500, 3), &threaded);
  REQUIRE(serial.size() == 6);
  REQUIRE(threaded.size() == 6);
  for (int r = 0; r < 6; ++r)
    for (int m = 0; m < kMethodCount; ++m) CHECK(serial[r][m] == threaded[r][m]);
  for (int m = 0; m < kMethodCount; ++m) {
    CHECK(a.methods[m].mean == b.methods[m].mean);
    CHECK(a.methods[m].rmse == b.methods[m].rmse);
  }
  const SummaryTable c = run_scenario(s, fast_options(501, 1));
  CHECK(c.methods[0].mean != a.methods[0].mean);  // a new seed moves the draws
}

TEST_CASE("cell summaries are the plain statistics of the replicate estimates") {
  const Scenario s = scenario_with_n(0.0953101798043249, 1.6855, 0.05, 846, 8);
  std::vector<std::array<double, kMethodCount>> reps;
  const SummaryTable table = run_scenario(s, fast_options(600), &reps);
  REQUIRE(reps.size() == 8);
  for (int m = 0; m < kMethodCount; ++m) {
    double mean = 0.0;
    for (const auto& r : reps) mean += r[m];
    mean /= 8.0;
    double var = 0.0;
    for (const auto& r : reps) var += (r[m] - mean) * (r[m] - mean);
    var /= 8.0;
    const MethodSummary& ms = table.methods[m];
    check_close(ms.mean, mean, 1e-12);
    check_close(ms.bias, mean - s.mu_true, 1e-12);
    check_close(ms.variance, var, 1e-12);
    check_close(ms.rmse, std::sqrt(ms.bias * ms.bias + ms.variance), 1e-12);
    CHECK(ms.method == kMethodNames[m]);
  }
  CHECK(table.base_seed == 600);
}

TEST_CASE("method lookup by name") {
  const Scenario s = scenario_with_n(0.0953101798043249, 1.6855, 0.05, 846, 2);
  const SummaryTable table = run_scenario(s, fast_options(700));
  CHECK(table.by_name("MLE").method == "MLE");
  CHECK(table.by_name("B.BMA").method == "B.BMA");
  CHECK_THROWS_AS(table.by_name("nope"), std::out_of_range);
}

TEST_CASE("fixed-size sweep runs the full design grid in order") {
  const std::vector<double> mus = {0.0, 0.0953101798043249};
  const std::vector<double> alphas = {0.05, 1e-4};
  const auto tables = fixed_n_sweep(1000, mus, alphas, 1.6855, 2, fast_options(800));
  REQUIRE(tables.size() == 4);
  CHECK(tables[0].scenario.mu_true == 0.0);
  CHECK(tables[0].scenario.alpha == 0.05);
  CHECK(tables[1].scenario.mu_true == 0.0);
  CHECK(tables[1].scenario.alpha == 1e-4);
  CHECK(tables[2].scenario.mu_true == 0.0953101798043249);
  CHECK(tables[3].scenario.alpha == 1e-4);
  for (const auto& t : tables) {
    CHECK(t.scenario.n == 1000);
    CHECK(t.scenario.replicates == 2);
  }
  check_close(tables[0].scenario.power, 0.05, 1e-12);
  check_close(tables[1].scenario.power, 1e-4, 1e-14);
}

}  // TEST_SUITE("simulation")
