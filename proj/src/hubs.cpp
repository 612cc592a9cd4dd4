#include "atomroute/hubs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace atomroute {

PointList HubSet::positions() const {
  PointList out;
  out.reserve(hubs.size());
  for (const auto& h : hubs) {
    out.push_back(h.position);
  }
  return out;
}

std::vector<QubitPair> longRangePairs(const InteractionGraph& g,
                                      const PointList& coords, double rb,
                                      double factor) {
  std::vector<QubitPair> all;
  std::vector<QubitPair> longPairs;
  for (const auto& [pair, w] : g.weights) {
    all.push_back(pair);
    const double d = distance(coords[static_cast<std::size_t>(pair.first)],
                              coords[static_cast<std::size_t>(pair.second)]);
    if (d > factor * rb) {
      longPairs.push_back(pair);
    }
  }
  // std::map iteration already yields lexicographic order
  return longPairs.empty() ? all : longPairs;
}

std::vector<HubCandidate> generateCandidates(const std::vector<QubitPair>& pairs,
                                             const PointList& coords,
                                             const HubConfig& cfg, double rb) {
  std::vector<HubCandidate> out;
  const double ringRadius = cfg.ringRadiusFactor * rb;
  for (const auto& pair : pairs) {
    const Point& a = coords[static_cast<std::size_t>(pair.first)];
    const Point& b = coords[static_cast<std::size_t>(pair.second)];
    HubCandidate mid;
    mid.position = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    mid.pair = pair;
    out.push_back(mid);
    if (!cfg.ringEnabled || cfg.ringDirections <= 0) {
      continue;
    }
    for (const int endpoint : {pair.first, pair.second}) {
      const Point& e = coords[static_cast<std::size_t>(endpoint)];
      for (int k = 0; k < cfg.ringDirections; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / cfg.ringDirections;
        HubCandidate ring;
        ring.position = {e.x + ringRadius * std::cos(angle),
                         e.y + ringRadius * std::sin(angle)};
        if (!insideUnitSquare(ring.position)) {
          continue;
        }
        ring.origin = HubOrigin::Ring;
        ring.pair = pair;
        ring.endpoint = endpoint;
        ring.direction = k;
        out.push_back(ring);
      }
    }
  }
  return out;
}

double hubScore(const Point& c, const std::vector<QubitPair>& longPairs,
                const InteractionGraph& g, const PointList& coords) {
  double score = 0.0;
  for (const auto& [i, j] : longPairs) {
    const double w = g.weight(i, j);
    score += w * (1.0 / (1.0 + distance(coords[static_cast<std::size_t>(i)], c)) +
                  1.0 / (1.0 + distance(coords[static_cast<std::size_t>(j)], c)));
  }
  return score;
}

HubSet placeHubs(const InteractionGraph& g, const PointList& coords, double rb,
                 const HubConfig& cfg) {
  HubSet result;
  if (cfg.nHub <= 0 || g.weights.empty()) {
    return result;
  }
  const double dMin = rb / 3.0;
  const auto pairs = longRangePairs(g, coords, rb, cfg.longRangeFactor);
  const auto candidates = generateCandidates(pairs, coords, cfg, rb);

  // score does not depend on the hubs chosen so far, so compute it once
  std::vector<double> scores(candidates.size());
  std::vector<char> alive(candidates.size(), 1);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    scores[k] = hubScore(candidates[k].position, pairs, g, coords);
    for (const auto& home : coords) {
      if (distance(home, candidates[k].position) < dMin) {
        alive[k] = 0;
        break;
      }
    }
  }

  while (static_cast<int>(result.hubs.size()) < cfg.nHub) {
    std::size_t best = candidates.size();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (alive[k] != 0 && (best == candidates.size() || scores[k] > scores[best])) {
        best = k;
      }
    }
    if (best == candidates.size()) {
      break;
    }
    result.hubs.push_back(candidates[best]);
    alive[best] = 0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (alive[k] != 0 &&
          distance(candidates[k].position, candidates[best].position) < dMin) {
        alive[k] = 0;
      }
    }
  }
  return result;
}

} // namespace atomroute
