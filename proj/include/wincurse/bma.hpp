#pragma once

#include "wincurse/chain.hpp"
#include "wincurse/context.hpp"
#include "wincurse/estimators.hpp"

namespace wincurse {

// Model averaging over the skeptical (M1, Beta(8, 0.5)) and confident
// (M2, Beta(0.5, 8)) hyperpriors. Prior model weights shrink toward M2 as
// the significance threshold rises; the data enter through the marginal
// likelihood ratio r = p(T | M1) / p(T | M2), estimated by bridge sampling
// from the two chains' xi draws.

struct ModelPair {
  SpikeSlabPrior m1_prior;
  SpikeSlabPrior m2_prior;
  double prior_w1 = 0.0;  // exp(-c/2)
  double prior_w2 = 0.0;
};

ModelPair make_model_pair(double c, double u_max = 2.0);

// (exp(-c/2), 1 - exp(-c/2)).
struct WeightPair {
  double w1 = 0.0;
  double w2 = 0.0;
};
WeightPair prior_model_weights(double c);

// log of the prior density ratio between two Beta hyperpriors at xi;
// the likelihood shared by both models cancels, so this is the whole
// per-draw bridge term. The preset pair overload reduces to
// 7.5 * [log xi - log(1 - xi)] (Beta normalizers cancel by symmetry).
double log_prior_ratio(double xi, const SpikeSlabPrior& p1, const SpikeSlabPrior& p2);
double log_prior_ratio(double xi);

struct BridgeEstimate {
  double r_hat = 1.0;       // p(T | M1) / p(T | M2)
  int iterations_used = 0;
  bool converged = false;
};

enum class BridgeKind { optimal, geometric };

// Iterative optimal bridge (fixed point started at r = 1, relative change
// < 1e-8, at most 500 rounds) over the xi draws of two chains run on the
// same context; chain1 under M1's prior, chain2 under M2's. The geometric
// bridge (single-pass, higher variance) is available as a cross-check.
// Requires >= 10000 retained draws per chain.
BridgeEstimate bridge_ratio(const ChainResult& chain1, const ChainResult& chain2,
                            const SpikeSlabPrior& prior1, const SpikeSlabPrior& prior2,
                            BridgeKind kind = BridgeKind::optimal);
BridgeEstimate bridge_ratio(const ChainResult& chain1, const ChainResult& chain2);

// Posterior-model-weighted combination of the two posterior means:
// weight on mu1 is r*w1 / (r*w1 + w2) with (w1, w2) = prior_model_weights(c).
EstimateRecord bma_estimate(double mu1, double mu2, double r, double c);

}  // namespace wincurse
