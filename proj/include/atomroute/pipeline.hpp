#pragma once

#include "atomroute/circuit.hpp"
#include "atomroute/hubs.hpp"
#include "atomroute/metrics.hpp"
#include "atomroute/operating_point.hpp"
#include "atomroute/placement.hpp"
#include "atomroute/transpiler.hpp"

#include <optional>
#include <string>

namespace atomroute {

/// Externally supplied geometry. Homes replace the annealed placement; an
/// absent radius is selected as usual; given hubs replace hub placement.
struct FixedLayout {
  PointList homes;
  std::optional<double> rb;
  std::optional<PointList> hubs;
};

struct CompileOptions {
  Method method = Method::ProposedRing;
  OperatingPoint op;
  AnnealOptions anneal;
  HubConfig hubs;
  CompileConfig compile;
  /// Motion grid cell size as a fraction of the normalized minimum separation.
  double cellSizeFactor = 0.5;
  std::optional<FixedLayout> layout;

  /// Defaults with the method's flags and hub budget applied.
  static CompileOptions forMethod(Method m);
  /// Re-applies a method's flag triple (and zero hubs for no-hub).
  void applyMethod(Method m);
};

enum class Outcome { Ok, NoValidTransport, BudgetExceeded };

std::string toString(Outcome o);
Outcome outcomeFromString(const std::string& s);

struct TransportFailure {
  int qubitA = -1;
  int qubitB = -1;
  std::size_t gate = 0;
  bool swapUnavailable = true;
  bool shuttleUnavailable = true;
  bool evictionUnavailable = true;
};

struct CompileArtifact {
  Circuit circuit;
  CompileOptions options;
  Placement placement;
  RadiusSelection radius;
  HubSet hubs;
  Layout layout;
  std::optional<Schedule> schedule;
  std::optional<MetricsReport> metrics;
  Outcome outcome = Outcome::Ok;
  std::string detail;
  std::optional<TransportFailure> failure;
  double compileSeconds = 0.0;
};

/// Placement, radius selection, separation repair, hub placement, distance
/// precompute, transpilation and metrics. NoValidTransport and
/// BudgetExceeded are reported through the artifact outcome.
CompileArtifact compileCircuit(const Circuit& circuit, const CompileOptions& options);

} // namespace atomroute
