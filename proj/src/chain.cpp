#include "wincurse/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wincurse/conditional.hpp"
#include "wincurse/hpd.hpp"

namespace wincurse {

namespace {
constexpr double kXiClamp = 1e-15;

double slab_log_density(double theta, const TestContext& ctx, const SpikeSlabPrior& prior) {
  return conditional_log_density(ctx.t_obs, prior.u_max * theta / ctx.se, ctx.c);
}
}  // namespace

SpikeSlabPrior preset_prior(PresetPrior which, double u_max) {
  switch (which) {
    case PresetPrior::skeptical: return SpikeSlabPrior{8.0, 0.5, u_max};
    case PresetPrior::confident: return SpikeSlabPrior{0.5, 8.0, u_max};
    case PresetPrior::middle:    return SpikeSlabPrior{2.0 / 3.0, 2.0 / 3.0, u_max};
    case PresetPrior::uniform:   return SpikeSlabPrior{1.0, 1.0, u_max};
  }
  throw std::logic_error("unknown preset prior");
}

const char* preset_name(PresetPrior which) {
  switch (which) {
    case PresetPrior::skeptical: return "B.L";
    case PresetPrior::confident: return "B.H";
    case PresetPrior::middle:    return "B.M";
    case PresetPrior::uniform:   return "B.Unif";
  }
  throw std::logic_error("unknown preset prior");
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  double v = x / (x + y);
  return std::clamp(v, kXiClamp, 1.0 - kXiClamp);
}

int sample_indicator(double xi, double theta, const TestContext& ctx,
                     const SpikeSlabPrior& prior, Rng& rng) {
  const double lp0 = std::log(xi) + conditional_log_density(ctx.t_obs, 0.0, ctx.c);
  const double lp1 = std::log1p(-xi) + slab_log_density(theta, ctx, prior);
  // p(z=0) = 1 / (1 + exp(lp1 - lp0)); stable for both orderings.
  const double diff = lp1 - lp0;
  double p0;
  if (diff > 700.0) p0 = 0.0;
  else if (diff < -700.0) p0 = 1.0;
  else p0 = 1.0 / (1.0 + std::exp(diff));
  return rng.uniform() < p0 ? 0 : 1;
}

MhStep mh_update_theta(double theta, const TestContext& ctx, const SpikeSlabPrior& prior,
                       const ChainConfig& config, Rng& rng) {
  double proposal = theta + config.proposal_sd * rng.normal();
  // Reflect into (0, 1); keeps the proposal density symmetric.
  while (proposal < 0.0 || proposal > 1.0)
    proposal = proposal < 0.0 ? -proposal : 2.0 - proposal;
  const double log_ratio = slab_log_density(proposal, ctx, prior) -
                           slab_log_density(theta, ctx, prior);
  if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio)
    return MhStep{proposal, true};
  return MhStep{theta, false};
}

double sample_xi(int z, const SpikeSlabPrior& prior, Rng& rng) {
  return z == 0 ? rng.beta(prior.a + 1.0, prior.b) : rng.beta(prior.a, prior.b + 1.0);
}

ChainResult run_chain(const TestContext& ctx, const SpikeSlabPrior& prior,
                      const ChainConfig& config) {
  if (!ctx.significant()) throw std::domain_error("run_chain: context is not significant");
  if (!(config.burn_in >= 0 && config.burn_in < config.iterations))
    throw std::invalid_argument("run_chain: need 0 <= burn_in < iterations");
  if (!(config.proposal_sd > 0.0)) throw std::invalid_argument("run_chain: proposal_sd <= 0");
  if (!(prior.a > 0.0 && prior.b > 0.0 && prior.u_max > 0.0))
    throw std::invalid_argument("run_chain: prior parameters must be positive");

  Rng rng(config.seed);
  double xi = prior.prior_mean_xi();
  double theta = std::min(ctx.t_obs * ctx.se / prior.u_max, 0.99);

  ChainResult out;
  out.draws.reserve(config.iterations - config.burn_in);
  long mh_attempts = 0, mh_accepts = 0;

  for (int it = 0; it < config.iterations; ++it) {
    const int z = sample_indicator(xi, theta, ctx, prior, rng);
    if (z == 0) {
      xi = sample_xi(0, prior, rng);
      theta = rng.uniform();  // refresh the latent coordinate from its prior
      if (it >= config.burn_in) out.draws.push_back(PosteriorDraw{0, 0.0, xi, 0.0});
    } else {
      const MhStep step = mh_update_theta(theta, ctx, prior, config, rng);
      theta = step.theta;
      ++mh_attempts;
      if (step.accepted) ++mh_accepts;
      xi = sample_xi(1, prior, rng);
      if (it >= config.burn_in)
        out.draws.push_back(PosteriorDraw{1, theta, xi, prior.u_max * theta});
    }
  }

  const auto n = static_cast<double>(out.draws.size());
  std::vector<double> mu_series, spike_series;
  mu_series.reserve(out.draws.size());
  spike_series.reserve(out.draws.size());
  for (const auto& d : out.draws) {
    mu_series.push_back(d.mu);
    spike_series.push_back(d.z == 0 ? 1.0 : 0.0);
    out.posterior_mean_xi += d.xi;
  }
  out.posterior_mean_mu = std::accumulate(mu_series.begin(), mu_series.end(), 0.0) / n;
  out.spike_probability = std::accumulate(spike_series.begin(), spike_series.end(), 0.0) / n;
  out.posterior_mean_xi /= n;
  out.mh_acceptance_rate = mh_attempts > 0 ? double(mh_accepts) / double(mh_attempts) : 0.0;
  out.mc_se_mu = batch_means_se(mu_series);
  out.mc_se_spike = batch_means_se(spike_series);
  const auto hpd = hpd_interval(mu_series, 0.95);
  out.hpd_low = hpd.low;
  out.hpd_high = hpd.high;
  return out;
}

double batch_means_se(const std::vector<double>& series, int batches) {
  if (batches < 2 || series.size() < static_cast<std::size_t>(2 * batches))
    throw std::invalid_argument("batch_means_se: series too short");
  const std::size_t per = series.size() / batches;  // drop the remainder
  std::vector<double> means(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < per; ++i) acc += series[b * per + i];
    means[b] = acc / double(per);
  }
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / batches;
  double ss = 0.0;
  for (double m : means) ss += (m - grand) * (m - grand);
  const double var_of_mean = ss / (batches - 1) / batches;
  return std::sqrt(var_of_mean);
}

}  // namespace wincurse
