#include "wincurse/hpd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wincurse {

HpdInterval hpd_interval(std::vector<double> draws, double mass) {
  if (draws.empty()) throw std::invalid_argument("hpd_interval: no draws");
  if (!(mass > 0.5 && mass < 1.0))
    throw std::invalid_argument("hpd_interval: mass must be in (0.5, 1)");
  std::sort(draws.begin(), draws.end());
  const std::size_t n = draws.size();
  auto k = static_cast<std::size_t>(std::ceil(mass * double(n)));
  k = std::min(std::max<std::size_t>(k, 1), n);

  const auto zeros = static_cast<std::size_t>(
      std::count(draws.begin(), draws.end(), 0.0));
  if (double(zeros) >= (1.0 - mass) * double(n) && draws.front() == 0.0) {
    // Spike-dominated: every credible window must include the atom, so the
    // narrowest one is [0, k-th smallest draw].
    return HpdInterval{0.0, draws[k - 1]};
  }

  std::size_t best = 0;
  double best_width = draws[k - 1] - draws[0];
  for (std::size_t i = 1; i + k <= n; ++i) {
    const double width = draws[i + k - 1] - draws[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return HpdInterval{draws[best], draws[best + k - 1]};
}

}  // namespace wincurse
