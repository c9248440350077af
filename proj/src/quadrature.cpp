#include "wincurse/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "wincurse/chain.hpp"
#include "wincurse/conditional.hpp"

namespace wincurse {

namespace {
constexpr int kNodes = 20;

struct GaussLegendre {
  std::array<double, kNodes> node;    // on (-1, 1)
  std::array<double, kNodes> weight;

  // Nodes are the roots of P_20, found by Newton from the Chebyshev-angle
  // initial guess; weights w = 2 / ((1 - x^2) P'_n(x)^2).
  GaussLegendre() {
    const int n = kNodes;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      node[i] = -x;
      node[n - 1 - i] = x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weight[i] = w;
      weight[n - 1 - i] = w;
    }
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre r;
  return r;
}
}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, int panels) {
  if (!(hi > lo)) throw std::domain_error("integrate: empty interval");
  if (panels < 1) throw std::domain_error("integrate: panels must be positive");
  const auto& r = rule();
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < kNodes; ++i) acc += r.weight[i] * f(mid + 0.5 * h * r.node[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

double spike_component_density(const TestContext& ctx) {
  return conditional_density(ctx.t_obs, 0.0, ctx.c);
}

double slab_component_density(const TestContext& ctx, double u_max) {
  // Average over theta in (0,1) with mu = u_max * theta.
  return integrate(
      [&](double theta) {
        return conditional_density(ctx.t_obs, u_max * theta / ctx.se, ctx.c);
      },
      0.0, 1.0);
}

double spike_prob_oracle(const TestContext& ctx, const SpikeSlabPrior& prior) {
  const double w0 = prior.a / (prior.a + prior.b);
  const double f0 = spike_component_density(ctx);
  const double f1 = slab_component_density(ctx, prior.u_max);
  return w0 * f0 / (w0 * f0 + (1.0 - w0) * f1);
}

double posterior_mean_oracle(const TestContext& ctx, const SpikeSlabPrior& prior) {
  const double w0 = prior.a / (prior.a + prior.b);
  const double f0 = spike_component_density(ctx);
  const double f1 = slab_component_density(ctx, prior.u_max);
  const double slab_first_moment = integrate(
      [&](double theta) {
        return prior.u_max * theta *
               conditional_density(ctx.t_obs, prior.u_max * theta / ctx.se, ctx.c);
      },
      0.0, 1.0);
  return (1.0 - w0) * slab_first_moment / (w0 * f0 + (1.0 - w0) * f1);
}

double marginal_ratio_oracle(const TestContext& ctx, const SpikeSlabPrior& prior1,
                             const SpikeSlabPrior& prior2) {
  const double f0 = spike_component_density(ctx);
  const double w1 = prior1.a / (prior1.a + prior1.b);
  const double w2 = prior2.a / (prior2.a + prior2.b);
  const double f1_1 = slab_component_density(ctx, prior1.u_max);
  const double f1_2 = slab_component_density(ctx, prior2.u_max);
  return (w1 * f0 + (1.0 - w1) * f1_1) / (w2 * f0 + (1.0 - w2) * f1_2);
}

}  // namespace wincurse
