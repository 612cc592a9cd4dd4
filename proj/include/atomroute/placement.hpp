#pragma once

#include "atomroute/circuit.hpp"
#include "atomroute/geometry.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace atomroute {

struct Placement {
  PointList coords;
  std::uint64_t seed = 0;
  /// Annealing energy of `coords`: Pearson objective plus separation penalty.
  double objectiveValue = 0.0;
};

enum class RadiusRule { ConnectedDiameter, MstFallback, Given };

struct RadiusSelection {
  double rb = 0.0;
  RadiusRule rule = RadiusRule::ConnectedDiameter;
  double scale = 0.0; // um per normalized unit
};

struct AnnealOptions {
  int maxiter = 10000;
  std::uint64_t seed = 0;
  double separationPenaltyWeight = 1.0;
  /// Proposals per temperature step; 0 means one per qubit.
  int movesPerStep = 0;
  /// Restricts the Pearson vectors to interacting pairs instead of all pairs.
  bool interactingPairsOnly = false;
};

/// Pearson correlation between CZ weights and pairwise distances over all
/// unordered pairs (zero-weight pairs included). Returns 0 when either vector
/// has zero variance. Throws DegenerateInput for fewer than two points.
double placementObjective(const InteractionGraph& g, const PointList& coords,
                          bool interactingPairsOnly = false);

/// Seeded simulated annealing over [0,1]^2 per qubit. Deterministic in
/// (g, opts). Throws BudgetExceeded once `deadline` passes.
Placement optimizePlacement(
    const InteractionGraph& g, const AnnealOptions& opts,
    std::optional<std::chrono::steady_clock::time_point> deadline = {});

/// Largest edge of the Euclidean minimum spanning tree (0 for < 2 points).
double mstMaxEdge(const PointList& points);

/// Smallest pairwise distance r whose contact graph is connected with
/// hop-diameter <= sqrt(|V|); MST fallback otherwise.
RadiusSelection selectRadius(const PointList& coords, double rbPhys);

double scaleFactor(double rb, double rbPhys);

/// All unordered pairs closer than dMin (strict).
std::vector<std::pair<int, int>> validateMinSeparation(const PointList& points,
                                                       double dMin);

/// Pushes apart the closest violating pair until no pair is closer than
/// dMin. Returns false if the iteration cap is hit first.
bool repairMinSeparation(PointList& points, double dMin,
                         int maxIterations = 1000);

} // namespace atomroute
