#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wincurse/context.hpp"

namespace wincurse {

// Mixture prior on the effect: with probability xi the effect is exactly 0
// (false positive), otherwise mu ~ Uniform(0, u_max); xi ~ Beta(a, b).
// theta = mu / u_max is the slab coordinate the sampler moves on.
struct SpikeSlabPrior {
  double a = 1.0;
  double b = 1.0;
  double u_max = 2.0;

  double prior_mean_xi() const { return a / (a + b); }
};

enum class PresetPrior { skeptical, confident, middle, uniform };

// Named presets: skeptical "B.L" Beta(8, 0.5) expects false positives,
// confident "B.H" Beta(0.5, 8) expects true positives, plus the
// middle Beta(2/3, 2/3) "B.M" and flat Beta(1, 1) "B.Unif".
SpikeSlabPrior preset_prior(PresetPrior which, double u_max = 2.0);
const char* preset_name(PresetPrior which);

struct ChainConfig {
  int iterations = 20000;
  int burn_in = 5000;
  double proposal_sd = 0.1;
  std::uint64_t seed = 0;
};

struct PosteriorDraw {
  int z = 0;          // 1 = slab (real effect), 0 = spike (null)
  double theta = 0.0; // slab coordinate; 0 when z == 0
  double xi = 0.0;
  double mu = 0.0;    // z * u_max * theta
};

struct ChainResult {
  std::vector<PosteriorDraw> draws;    // post burn-in
  double posterior_mean_mu = 0.0;
  double spike_probability = 0.0;      // fraction of z == 0
  double posterior_mean_xi = 0.0;
  double hpd_low = 0.0;
  double hpd_high = 0.0;
  double mh_acceptance_rate = 0.0;
  double mc_se_mu = 0.0;               // batch-means errors, 50 batches
  double mc_se_spike = 0.0;
};

// RNG for the sampler: one engine per chain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // (0, 1)
    double u;
    do { u = std::uniform_real_distribution<double>(0.0, 1.0)(engine_); } while (u <= 0.0);
    return u;
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  double gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(engine_);
  }
  // Beta(a, b) from two gamma draws, clamped away from {0, 1} so logs and
  // Beta-likelihood ratios stay finite.
  double beta(double a, double b);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// One indicator draw: z = 0 with probability p0/(p0+p1) where
// p0 = xi * f(t | null) and p1 = (1 - xi) * f(t | mu = u_max * theta),
// both under the truncated likelihood. Computed in log space.
int sample_indicator(double xi, double theta, const TestContext& ctx,
                     const SpikeSlabPrior& prior, Rng& rng);

// One random-walk Metropolis step on theta targeting the slab conditional
// (truncated likelihood at mu = u_max * theta, flat prior on (0,1));
// Gaussian proposal reflected at {0, 1}.
struct MhStep {
  double theta = 0.0;
  bool accepted = false;
};
MhStep mh_update_theta(double theta, const TestContext& ctx, const SpikeSlabPrior& prior,
                       const ChainConfig& config, Rng& rng);

// Conjugate update: Beta(a+1, b) after a spike draw, Beta(a, b+1) after a
// slab draw.
double sample_xi(int z, const SpikeSlabPrior& prior, Rng& rng);

// Data-augmentation sampler alternating the indicator with (theta, xi).
// After a spike draw the latent slab coordinate is refreshed from its prior
// (Uniform(0,1)); carrying a degenerate theta instead would bias the next
// indicator draw and the chain would not hold its target (see README).
// Recorded draws follow the PosteriorDraw convention (theta = mu = 0 on
// spike draws). Deterministic given (ctx, prior, config).
ChainResult run_chain(const TestContext& ctx, const SpikeSlabPrior& prior,
                      const ChainConfig& config);

// Batch-means Monte Carlo standard error of the mean of an autocorrelated
// series (50 batches).
double batch_means_se(const std::vector<double>& series, int batches = 50);

}  // namespace wincurse
