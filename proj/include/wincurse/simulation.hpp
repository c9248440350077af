#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wincurse/chain.hpp"
#include "wincurse/context.hpp"

namespace wincurse {

// One factorial cell: true effect, population sd, test level, and either a
// target power (n derived) or a fixed n (power derived).
struct Scenario {
  double mu_true = 0.0;
  double sigma = 1.6855;
  double alpha = 0.05;
  double power = 0.5;       // achieved power given n
  std::int64_t n = 0;
  int replicates = 200;

  double se() const;        // sigma / sqrt(n)
  double m_true() const;    // mu_true / se
  double crit() const;
};

// n derived from (alpha, power) via required_sample_size; mu_true > 0.
Scenario scenario_from_power(double mu_true, double sigma, double alpha, double power,
                             int replicates = 200);
// n fixed; power computed (equals alpha when mu_true = 0).
Scenario scenario_with_n(double mu_true, double sigma, double alpha, std::int64_t n,
                         int replicates = 200);

// One draw of T | T > c, T ~ N(m, 1), by inverse CDF on the tail:
// t = m + upper_quantile(power * U) with U ~ Uniform(0,1); exact and
// rejection-free, always > c.
double draw_significant_statistic(const Scenario& scenario, Rng& rng);

constexpr int kMethodCount = 7;
extern const std::array<const char*, kMethodCount> kMethodNames;  // N, MLE, B.L, B.H, B.M, B.Unif, B.BMA

struct MethodSummary {
  std::string method;
  double mean = 0.0;
  double bias = 0.0;
  double variance = 0.0;  // population (divide by R)
  double rmse = 0.0;      // rmse^2 = bias^2 + variance
};

struct SummaryTable {
  Scenario scenario;
  std::uint64_t base_seed = 0;
  std::array<MethodSummary, kMethodCount> methods;

  const MethodSummary& by_name(const std::string& name) const;
};

struct SimulationOptions {
  ChainConfig chain;        // seed field ignored; per-replicate seeds derived
  double u_max = 2.0;
  std::uint64_t base_seed = 1;
  int threads = 0;          // 0 = hardware concurrency
  bool keep_replicates = false;
};

// All seven estimates for one simulated statistic; order = kMethodNames.
std::array<double, kMethodCount> run_replicate(const Scenario& scenario, double t_obs,
                                               const SimulationOptions& opt,
                                               std::uint64_t replicate_seed);

// Full cell: replicate r owns seed base_seed + r; its statistic draw and
// its four preset chains use streams derived from that seed (derive_seed
// streams 0 and 1..4), the bridge reuses the B.L/B.H chains, and results
// aggregate to mean / bias / variance / RMSE per method. Deterministic for
// fixed seeds regardless of thread count.
SummaryTable run_scenario(const Scenario& scenario, const SimulationOptions& opt,
                          std::vector<std::array<double, kMethodCount>>* replicates_out = nullptr);

// Fixed-n sweep over a mu x alpha grid (null cells included via mu = 0).
std::vector<SummaryTable> fixed_n_sweep(std::int64_t n, const std::vector<double>& mus,
                                        const std::vector<double>& alphas, double sigma,
                                        int replicates, const SimulationOptions& opt);

}  // namespace wincurse
