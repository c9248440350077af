#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wincurse/bma.hpp"
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

ChainResult preset_chain(const TestContext& ctx, PresetPrior which, double u_max,
                         std::uint64_t seed, int iterations = 20000, int burn_in = 5000) {
  ChainConfig cfg;
  cfg.iterations = iterations;
  cfg.burn_in = burn_in;
  cfg.seed = seed;
  return run_chain(ctx, preset_prior(which, u_max), cfg);
}
}  // namespace

TEST_SUITE("bma") {

TEST_CASE("prior model weights decay with the threshold") {
  const WeightPair a = prior_model_weights(1.64485362695147);
  check_rel(a.w1, 0.439364104927493, 1e-12);
  check_close(a.w1 + a.w2, 1.0, 1e-15);
  const WeightPair b = prior_model_weights(4.753424308822899);
  check_rel(b.w1, 0.0928553702995766, 1e-12);
  CHECK(b.w1 < a.w1);
  CHECK_THROWS_AS(prior_model_weights(0.0), std::domain_error);
  CHECK_THROWS_AS(prior_model_weights(-1.0), std::domain_error);
}

TEST_CASE("model pair wires the presets and the weights together") {
  const ModelPair pair = make_model_pair(2.878, 0.2);
  CHECK(pair.m1_prior.a == 8.0);
  CHECK(pair.m1_prior.b == 0.5);
  CHECK(pair.m1_prior.u_max == 0.2);
  CHECK(pair.m2_prior.a == 0.5);
  CHECK(pair.m2_prior.b == 8.0);
  const WeightPair w = prior_model_weights(2.878);
  CHECK(pair.prior_w1 == w.w1);
  CHECK(pair.prior_w2 == w.w2);
}

TEST_CASE("log prior ratio spot values") {
  check_rel(log_prior_ratio(0.9), 16.4791843300216, 1e-12);
  check_rel(log_prior_ratio(0.3, SpikeSlabPrior{2.0, 3.0, 2.0}, SpikeSlabPrior{4.0, 1.0, 2.0}),
            2.79320800944252, 1e-12);
}

TEST_CASE("log prior ratio identities") {
  const SpikeSlabPrior p1{8.0, 0.5, 2.0};
  const SpikeSlabPrior p2{0.5, 8.0, 2.0};
  for (double xi : {0.01, 0.2, 0.5, 0.77, 0.99}) {
    CHECK(log_prior_ratio(xi) ==
          doctest::Approx(log_prior_ratio(xi, p1, p2)).epsilon(1e-12));
    check_close(log_prior_ratio(xi, p1, p1), 0.0, 1e-12);
    check_close(log_prior_ratio(xi, p1, p2) + log_prior_ratio(xi, p2, p1), 0.0, 1e-10);
  }
  CHECK_THROWS_AS(log_prior_ratio(0.0), std::domain_error);
  CHECK_THROWS_AS(log_prior_ratio(1.0), std::domain_error);
}

TEST_CASE("averaged estimate interpolates the two model means") {
  const double c = 1.64485362695147;
  const WeightPair w = prior_model_weights(c);
  const double r = 2.0, mu1 = 0.1, mu2 = 0.3;
  const EstimateRecord rec = bma_estimate(mu1, mu2, r, c);
  CHECK(rec.method == "B.BMA");
  const double expect = (r * w.w1 * mu1 + w.w2 * mu2) / (r * w.w1 + w.w2);
  check_close(rec.point, expect, 1e-15);
  // r = 1 leaves the prior weights untouched.
  check_close(bma_estimate(mu1, mu2, 1.0, c).point, w.w1 * mu1 + w.w2 * mu2, 1e-15);
  // Overwhelming evidence pushes the average onto one model.
  CHECK(bma_estimate(mu1, mu2, std::numeric_limits<double>::infinity(), c).point == mu1);
  check_close(bma_estimate(mu1, mu2, 1e-300, c).point, mu2, 1e-12);
  CHECK_THROWS_AS(bma_estimate(mu1, mu2, 0.0, c), std::domain_error);
  CHECK_THROWS_AS(bma_estimate(mu1, mu2, -2.0, c), std::domain_error);
}

// The opposing priors leave the two posteriors with little overlap, so the
// bridge carries ~24% Monte Carlo error on a 15k-draw chain pair. The long
// chains below shrink that to ~2.5% and ~3.3%; the tolerances are ~3 sigma.
TEST_CASE("bridge estimate matches the quadrature marginal ratio") {
  const TestContext ctx = make_context(3.17857680834059, 0.002, 0.105856254830247);
  const ChainResult c1 = preset_chain(ctx, PresetPrior::skeptical, 2.0, 31, 1500000, 100000);
  const ChainResult c2 = preset_chain(ctx, PresetPrior::confident, 2.0, 32, 1500000, 100000);
  const BridgeEstimate est = bridge_ratio(c1, c2);
  CHECK(est.converged);
  CHECK(est.iterations_used <= 500);
  check_rel(est.r_hat, 4.38625548558, 0.08);
  const double oracle = marginal_ratio_oracle(ctx, preset_prior(PresetPrior::skeptical),
                                              preset_prior(PresetPrior::confident));
  check_rel(oracle, 4.38625548558, 1e-9);
}

TEST_CASE("bridge estimate on the narrow-slab variant") {
  const TestContext ctx = make_context(5.85887973727069, 5e-8, 0.00768064920563856);
  const ChainResult c1 = preset_chain(ctx, PresetPrior::skeptical, 0.2, 41, 1500000, 100000);
  const ChainResult c2 = preset_chain(ctx, PresetPrior::confident, 0.2, 42, 1500000, 100000);
  const BridgeEstimate est =
      bridge_ratio(c1, c2, preset_prior(PresetPrior::skeptical, 0.2),
                   preset_prior(PresetPrior::confident, 0.2), BridgeKind::optimal);
  CHECK(est.converged);
  check_rel(est.r_hat, 1.68017247834, 0.10);
}

TEST_CASE("identical models bridge to one") {
  const TestContext ctx = make_context(2.31929890395538, 0.05, 0.0579486836856399);
  const ChainResult c1 = preset_chain(ctx, PresetPrior::uniform, 2.0, 51);
  const ChainResult c2 = preset_chain(ctx, PresetPrior::uniform, 2.0, 52);
  const SpikeSlabPrior p = preset_prior(PresetPrior::uniform);
  const BridgeEstimate est = bridge_ratio(c1, c2, p, p, BridgeKind::optimal);
  CHECK(est.converged);
  check_close(est.r_hat, 1.0, 0.05);
}

TEST_CASE("swapping the models inverts the ratio") {
  const TestContext ctx = make_context(2.31929890395538, 0.05, 0.0579486836856399);
  const ChainResult cl = preset_chain(ctx, PresetPrior::skeptical, 2.0, 61);
  const ChainResult ch = preset_chain(ctx, PresetPrior::confident, 2.0, 62);
  const SpikeSlabPrior pl = preset_prior(PresetPrior::skeptical);
  const SpikeSlabPrior ph = preset_prior(PresetPrior::confident);
  const double r12 = bridge_ratio(cl, ch, pl, ph, BridgeKind::optimal).r_hat;
  const double r21 = bridge_ratio(ch, cl, ph, pl, BridgeKind::optimal).r_hat;
  check_close(r12 * r21, 1.0, 0.1);
}

TEST_CASE("geometric bridge cross-checks the optimal one") {
  const TestContext ctx = make_context(3.17857680834059, 0.002, 0.105856254830247);
  const ChainResult c1 = preset_chain(ctx, PresetPrior::skeptical, 2.0, 71);
  const ChainResult c2 = preset_chain(ctx, PresetPrior::confident, 2.0, 72);
  const double opt = bridge_ratio(c1, c2, preset_prior(PresetPrior::skeptical),
                                  preset_prior(PresetPrior::confident), BridgeKind::optimal)
                         .r_hat;
  const double geo = bridge_ratio(c1, c2, preset_prior(PresetPrior::skeptical),
                                  preset_prior(PresetPrior::confident), BridgeKind::geometric)
                         .r_hat;
  check_rel(geo, opt, 0.10);
}

TEST_CASE("bridge refuses chains with too few draws") {
  const TestContext ctx = make_context(2.31929890395538, 0.05, 0.0579486836856399);
  const ChainResult small1 = preset_chain(ctx, PresetPrior::skeptical, 2.0, 81, 11999, 2000);
  const ChainResult small2 = preset_chain(ctx, PresetPrior::confident, 2.0, 82, 11999, 2000);
  CHECK(small1.draws.size() == 9999);
  CHECK_THROWS_AS(bridge_ratio(small1, small2), std::invalid_argument);
}

}  // TEST_SUITE("bma")
