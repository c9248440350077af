#include "wincurse/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "wincurse/bma.hpp"
#include "wincurse/conditional.hpp"
#include "wincurse/estimators.hpp"
#include "wincurse/parallel.hpp"

namespace wincurse {

const std::array<const char*, kMethodCount> kMethodNames = {
    "N", "MLE", "B.L", "B.H", "B.M", "B.Unif", "B.BMA"};

double Scenario::se() const { return sigma / std::sqrt(double(n)); }
double Scenario::m_true() const { return mu_true / se(); }
double Scenario::crit() const { return critical_value(alpha); }

namespace {
void validate(const Scenario& s) {
  if (!(s.sigma > 0.0) || !(s.alpha > 0.0 && s.alpha < 0.5) || s.n < 1 || s.replicates < 1)
    throw std::invalid_argument("scenario: invalid fields");
  if (s.mu_true < 0.0) throw std::invalid_argument("scenario: mu_true must be >= 0");
}
}  // namespace

Scenario scenario_from_power(double mu_true, double sigma, double alpha, double power,
                             int replicates) {
  Scenario s;
  s.mu_true = mu_true;
  s.sigma = sigma;
  s.alpha = alpha;
  s.replicates = replicates;
  s.n = required_sample_size(mu_true, sigma, alpha, power);
  s.power = power_of_test(s.m_true(), s.crit());
  validate(s);
  return s;
}

Scenario scenario_with_n(double mu_true, double sigma, double alpha, std::int64_t n,
                         int replicates) {
  Scenario s;
  s.mu_true = mu_true;
  s.sigma = sigma;
  s.alpha = alpha;
  s.n = n;
  s.replicates = replicates;
  validate(s);
  s.power = power_of_test(s.m_true(), s.crit());
  return s;
}

double draw_significant_statistic(const Scenario& scenario, Rng& rng) {
  const double m = scenario.m_true();
  const double c = scenario.crit();
  const double tail = power_of_test(m, c);  // P(T > c)
  const double u = rng.uniform();           // (0, 1)
  double t = m + standard_normal_upper_quantile(tail * u);
  if (t <= c) t = std::nextafter(c, c + 1.0);  // guard fp rounding at u -> 1
  return t;
}

std::array<double, kMethodCount> run_replicate(const Scenario& scenario, double t_obs,
                                               const SimulationOptions& opt,
                                               std::uint64_t replicate_seed) {
  const TestContext ctx = make_context(t_obs, scenario.alpha, scenario.se());
  std::array<double, kMethodCount> est{};
  est[0] = naive_estimate(ctx).point;
  est[1] = conditional_mle(ctx).point;

  const std::array<PresetPrior, 4> presets = {PresetPrior::skeptical, PresetPrior::confident,
                                              PresetPrior::middle, PresetPrior::uniform};
  std::array<ChainResult, 4> chains;
  for (std::size_t k = 0; k < presets.size(); ++k) {
    ChainConfig cfg = opt.chain;
    cfg.seed = derive_seed(replicate_seed, 1 + k);
    chains[k] = run_chain(ctx, preset_prior(presets[k], opt.u_max), cfg);
    est[2 + k] = chains[k].posterior_mean_mu;
  }
  const BridgeEstimate bridge =
      bridge_ratio(chains[0], chains[1], preset_prior(PresetPrior::skeptical, opt.u_max),
                   preset_prior(PresetPrior::confident, opt.u_max), BridgeKind::optimal);
  est[6] = bma_estimate(est[2], est[3], bridge.r_hat, ctx.c).point;
  return est;
}

SummaryTable run_scenario(const Scenario& scenario, const SimulationOptions& opt,
                          std::vector<std::array<double, kMethodCount>>* replicates_out) {
  validate(scenario);
  const int R = scenario.replicates;
  std::vector<std::array<double, kMethodCount>> results(R);

  parallel_for(R, opt.threads, [&](int r) {
    const std::uint64_t seed = opt.base_seed + std::uint64_t(r);
    Rng rng(derive_seed(seed, 0));
    const double t_obs = draw_significant_statistic(scenario, rng);
    results[r] = run_replicate(scenario, t_obs, opt, seed);
  });

  SummaryTable table;
  table.scenario = scenario;
  table.base_seed = opt.base_seed;
  for (int m = 0; m < kMethodCount; ++m) {
    double mean = 0.0;
    for (int r = 0; r < R; ++r) mean += results[r][m];
    mean /= R;
    double var = 0.0;
    for (int r = 0; r < R; ++r) {
      const double d = results[r][m] - mean;
      var += d * d;
    }
    var /= R;  // population convention, so rmse^2 = bias^2 + variance exactly
    const double bias = mean - scenario.mu_true;
    table.methods[m] =
        MethodSummary{kMethodNames[m], mean, bias, var, std::sqrt(bias * bias + var)};
  }
  if (replicates_out) *replicates_out = std::move(results);
  return table;
}

std::vector<SummaryTable> fixed_n_sweep(std::int64_t n, const std::vector<double>& mus,
                                        const std::vector<double>& alphas, double sigma,
                                        int replicates, const SimulationOptions& opt) {
  std::vector<SummaryTable> out;
  out.reserve(mus.size() * alphas.size());
  for (double mu : mus) {
    for (double alpha : alphas) {
      out.push_back(run_scenario(scenario_with_n(mu, sigma, alpha, n, replicates), opt));
    }
  }
  return out;
}

const MethodSummary& SummaryTable::by_name(const std::string& name) const {
  for (const auto& m : methods)
    if (m.method == name) return m;
  throw std::out_of_range("no such method: " + name);
}

}  // namespace wincurse
