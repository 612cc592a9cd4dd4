#pragma once

// Small hand-built layouts shared by the transport and metrics tests.

#include "atomroute/motion.hpp"
#include "atomroute/transpiler.hpp"

#include <optional>

namespace fixture {

using namespace atomroute;

/// Layout with dMin = rb/3 and scale = 6/rb.
inline Layout layout(const PointList& homes, const PointList& hubs, double rb) {
  return Layout::build(homes, hubs, rb, 6.0 / rb, rb / 3.0);
}

/// Straight-line cache, optionally marking one pair unreachable.
inline DistanceCache euclideanCache(const Layout& l,
                                    std::optional<std::pair<int, int>> cut = {}) {
  DistanceCache c(static_cast<std::size_t>(l.trapCount()));
  for (int a = 0; a < l.trapCount(); ++a) {
    for (int b = a + 1; b < l.trapCount(); ++b) {
      const bool gone = cut && ((cut->first == a && cut->second == b) ||
                                (cut->first == b && cut->second == a));
      c.set(a, b, gone ? std::nullopt : std::optional<double>(l.trapDistance(a, b)));
    }
  }
  return c;
}

} // namespace fixture
