#pragma once

#include <functional>

#include "wincurse/context.hpp"

namespace wincurse {

// Composite Gauss-Legendre integral of f over [lo, hi]: `panels` equal
// subintervals, 20 nodes each. With the default 512 panels this resolves
// integrands as narrow as ~1e-3 of the interval to near machine precision.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 int panels = 512);

struct SpikeSlabPrior;  // chain.hpp

// Exact (quadrature) posterior functionals of the spike-and-slab model for
// one significant statistic. These are the deterministic references the
// MCMC output is tested against.

// marginal density of t under the spike: phi(t)/(1-Phi(c)).
double spike_component_density(const TestContext& ctx);

// marginal density of t under the slab: the conditional density averaged
// over mu ~ Uniform(0, u_max).
double slab_component_density(const TestContext& ctx, double u_max);

// P(effect is null | T = t, T > c) under Beta(a,b) mixing: enters linearly,
// so only the prior mean a/(a+b) matters.
double spike_prob_oracle(const TestContext& ctx, const SpikeSlabPrior& prior);

// E[mu | T = t, T > c] = (1 - spike_prob) * E[mu | slab, T].
double posterior_mean_oracle(const TestContext& ctx, const SpikeSlabPrior& prior);

// p(T | prior1) / p(T | prior2), both priors sharing u_max.
double marginal_ratio_oracle(const TestContext& ctx, const SpikeSlabPrior& prior1,
                             const SpikeSlabPrior& prior2);

}  // namespace wincurse
