#pragma once

#include "atomroute/operating_point.hpp"
#include "atomroute/transpiler.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace atomroute {

struct OpCounts {
  std::size_t swaps = 0;
  std::size_t shuttles = 0;
  std::size_t cz = 0;
  std::size_t oneq = 0;
  std::size_t layers = 0;

  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct MetricsReport {
  double execTimeUs = 0.0;
  double logFidelity = 0.0;
  double fidelity = 1.0; // exp(logFidelity); may underflow to 0
  OpCounts counts;
  std::optional<double> m2ExecTimeUs;
  std::optional<std::size_t> m2Batches;
};

OpCounts countOps(const Schedule& schedule);

/// Sum over layers of the longest op duration in the layer.
double executionTime(const Schedule& schedule);

/// Natural log of the fidelity proxy: per-layer decoherence exp(-t_max/T_eff)
/// times per-op fidelities. Accumulated per term so the shuttle contribution
/// is exactly count * ln(F_sh).
double logFidelity(const Schedule& schedule, const OperatingPoint& op);

struct M2Result {
  double execTimeUs = 0.0;
  std::size_t batches = 0;
  /// Batch index per shuttle, in schedule order.
  std::vector<std::size_t> assignment;
};

/// Offline parallel-shuttle pass: first-fit batching of shuttles whose
/// straight segments are pairwise disjoint and whose atoms are untouched by
/// any other op across the batch's layer window. Each batch is charged in
/// the layer of its longest member.
M2Result batchShuttlesM2(const Schedule& schedule, const Layout& layout);

/// (F_sh, log fidelity) for each requested shuttle fidelity.
std::vector<std::pair<double, double>> sweepFsh(const Schedule& schedule,
                                                const OperatingPoint& op,
                                                const std::vector<double>& values);

MetricsReport computeMetrics(const Schedule& schedule, const Layout& layout,
                             const OperatingPoint& op);

} // namespace atomroute
