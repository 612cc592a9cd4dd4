#pragma once

#include "atomroute/circuit.hpp"
#include "atomroute/geometry.hpp"

#include <vector>

namespace atomroute {

struct HubConfig {
  int nHub = 8;
  bool ringEnabled = false;
  double longRangeFactor = 1.1;
  double ringRadiusFactor = 0.9;
  int ringDirections = 8;
};

enum class HubOrigin { Midpoint, Ring, Given };

struct HubCandidate {
  Point position;
  HubOrigin origin = HubOrigin::Midpoint;
  QubitPair pair{-1, -1};
  int endpoint = -1;  // ring candidates only
  int direction = -1; // ring candidates only
};

struct HubSet {
  std::vector<HubCandidate> hubs;

  [[nodiscard]] PointList positions() const;
  [[nodiscard]] std::size_t size() const { return hubs.size(); }
};

/// CZ pairs longer than factor*rb, sorted; all CZ pairs if none is that long.
std::vector<QubitPair> longRangePairs(const InteractionGraph& g,
                                      const PointList& coords, double rb,
                                      double factor);

/// Midpoints, then (if enabled) ring points around endpoint i and j, per pair
/// in the given order. Points outside the unit square are dropped.
std::vector<HubCandidate> generateCandidates(const std::vector<QubitPair>& pairs,
                                             const PointList& coords,
                                             const HubConfig& cfg, double rb);

/// Endpoint-proximity score weighted by CZ counts.
double hubScore(const Point& c, const std::vector<QubitPair>& longPairs,
                const InteractionGraph& g, const PointList& coords);

/// Greedy max-score selection of feasible candidates; a candidate is
/// feasible when no home trap or chosen hub is closer than rb/3.
HubSet placeHubs(const InteractionGraph& g, const PointList& coords, double rb,
                 const HubConfig& cfg);

} // namespace atomroute
