#include "wincurse/bma.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wincurse {

namespace {
constexpr std::size_t kMinDraws = 10000;
constexpr int kMaxBridgeRounds = 500;
constexpr double kBridgeTol = 1e-8;

std::vector<double> log_terms(const ChainResult& chain, const SpikeSlabPrior& p1,
                              const SpikeSlabPrior& p2) {
  std::vector<double> out;
  out.reserve(chain.draws.size());
  for (const auto& d : chain.draws) out.push_back(log_prior_ratio(d.xi, p1, p2));
  return out;
}
}  // namespace

WeightPair prior_model_weights(double c) {
  if (!(c > 0.0)) throw std::domain_error("prior_model_weights: c must be positive");
  const double w1 = std::exp(-0.5 * c);
  return WeightPair{w1, 1.0 - w1};
}

ModelPair make_model_pair(double c, double u_max) {
  const WeightPair w = prior_model_weights(c);
  return ModelPair{preset_prior(PresetPrior::skeptical, u_max),
                   preset_prior(PresetPrior::confident, u_max), w.w1, w.w2};
}

double log_prior_ratio(double xi, const SpikeSlabPrior& p1, const SpikeSlabPrior& p2) {
  if (!(xi > 0.0 && xi < 1.0)) throw std::domain_error("log_prior_ratio: xi must be in (0,1)");
  const double log_beta1 = std::lgamma(p1.a) + std::lgamma(p1.b) - std::lgamma(p1.a + p1.b);
  const double log_beta2 = std::lgamma(p2.a) + std::lgamma(p2.b) - std::lgamma(p2.a + p2.b);
  return (p1.a - p2.a) * std::log(xi) + (p1.b - p2.b) * std::log1p(-xi) +
         (log_beta2 - log_beta1);
}

double log_prior_ratio(double xi) {
  return log_prior_ratio(xi, preset_prior(PresetPrior::skeptical),
                         preset_prior(PresetPrior::confident));
}

BridgeEstimate bridge_ratio(const ChainResult& chain1, const ChainResult& chain2,
                            const SpikeSlabPrior& prior1, const SpikeSlabPrior& prior2,
                            BridgeKind kind) {
  if (chain1.draws.size() < kMinDraws || chain2.draws.size() < kMinDraws)
    throw std::invalid_argument("bridge_ratio: need at least 10000 retained draws per chain");

  // l = q1(xi)/q2(xi); the shared likelihood cancels, leaving the prior ratio.
  const std::vector<double> ll1 = log_terms(chain1, prior1, prior2);
  const std::vector<double> ll2 = log_terms(chain2, prior1, prior2);
  const double n1 = double(ll1.size());
  const double n2 = double(ll2.size());

  if (kind == BridgeKind::geometric) {
    // r = E2[l^(1/2)] / E1[l^(-1/2)] for the bridge function sqrt(q1 q2).
    double num = 0.0, den = 0.0;
    for (double l : ll2) num += std::exp(0.5 * l);
    for (double l : ll1) den += std::exp(-0.5 * l);
    return BridgeEstimate{(num / n2) / (den / n1), 1, true};
  }

  const double s1 = n1 / (n1 + n2);
  const double s2 = n2 / (n1 + n2);
  double r = 1.0;
  int used = 0;
  bool converged = false;
  for (int round = 1; round <= kMaxBridgeRounds; ++round) {
    used = round;
    // Numerator: (1/n2) sum l2 / (s1 l2 + s2 r)    = 1 / (s1 + s2 r e^-ll)
    // Denominator: (1/n1) sum 1 / (s1 l1 + s2 r)   = 1 / (s1 e^ll + s2 r)
    // Both forms stay finite as ll -> +-inf.
    double num = 0.0;
    for (double ll : ll2) num += 1.0 / (s1 + s2 * r * std::exp(-ll));
    double den = 0.0;
    for (double ll : ll1) den += 1.0 / (s1 * std::exp(ll) + s2 * r);
    const double next = (num / n2) / (den / n1);
    const double rel = std::fabs(next - r) / next;
    r = next;
    if (rel < kBridgeTol) {
      converged = true;
      break;
    }
  }
  return BridgeEstimate{r, used, converged};
}

BridgeEstimate bridge_ratio(const ChainResult& chain1, const ChainResult& chain2) {
  return bridge_ratio(chain1, chain2, preset_prior(PresetPrior::skeptical),
                      preset_prior(PresetPrior::confident), BridgeKind::optimal);
}

EstimateRecord bma_estimate(double mu1, double mu2, double r, double c) {
  if (!(r > 0.0)) throw std::domain_error("bma_estimate: r must be positive");
  const WeightPair w = prior_model_weights(c);
  double weight1;
  if (std::isinf(r)) {
    weight1 = 1.0;
  } else {
    weight1 = r * w.w1 / (r * w.w1 + w.w2);
  }
  const double point = weight1 * mu1 + (1.0 - weight1) * mu2;
  return EstimateRecord{"B.BMA", point, 0.0, 0.0, IntervalKind::none, false};
}

}  // namespace wincurse
