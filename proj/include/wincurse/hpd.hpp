#pragma once

#include <vector>

namespace wincurse {

struct HpdInterval {
  double low = 0.0;
  double high = 0.0;
};

// Shortest contiguous window of the sorted draws containing ceil(mass * N)
// points. When a point mass at 0 (the spike) holds at least 1 - mass of the
// draws, the interval is anchored at 0.
HpdInterval hpd_interval(std::vector<double> draws, double mass);

}  // namespace wincurse
