#pragma once

#include "atomroute/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace atomroute {

/// Occupancy grid over [0,1]^2. A cell is blocked for a query when its
/// centre lies within dMin of any trap other than the query's endpoints.
class MotionGrid {
public:
  MotionGrid(PointList traps, double dMin, double cellSize);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double cellSize() const { return cellSize_; }
  [[nodiscard]] double dMin() const { return dMin_; }
  [[nodiscard]] const PointList& traps() const { return traps_; }
  [[nodiscard]] std::size_t trapCount() const { return traps_.size(); }

  [[nodiscard]] int cellIndex(int ix, int iy) const { return iy * dim_ + ix; }
  [[nodiscard]] Point cellCenter(int cell) const;
  [[nodiscard]] int trapCell(int trap) const;

  /// Number of traps whose exclusion disk covers the cell.
  [[nodiscard]] int blockCount(int cell) const {
    return blockCount_[static_cast<std::size_t>(cell)];
  }
  [[nodiscard]] bool covers(int trap, int cell) const;
  /// Blocked state with the `from`/`to` disks lifted (pass -1 for none).
  [[nodiscard]] bool isBlocked(int cell, int from, int to) const;

private:
  PointList traps_;
  double dMin_;
  double cellSize_;
  int dim_;
  std::vector<std::uint16_t> blockCount_;
  std::vector<int> trapCells_;
};

MotionGrid buildGrid(const PointList& traps, double dMin, double cellSize);

/// Cell-centre path cost of an 8-connected route: orthogonal and diagonal
/// step counts, so equal routes compare bit-exactly.
struct GridPath {
  int orthogonal = 0;
  int diagonal = 0;
  [[nodiscard]] double length(double cellSize) const;
};

/// A* with an octile heuristic between the trap cells; nullopt if no route.
std::optional<GridPath> astarGridPath(const MotionGrid& grid, int from, int to);

/// Shuttle path length between two traps: the A* grid length floored at the
/// straight-line distance. nullopt means unreachable. Throws UnknownTrap.
std::optional<double> astarDistance(const MotionGrid& grid, int from, int to);

/// Symmetric all-pairs shuttle distances. Unreachable pairs hold +inf.
class DistanceCache {
public:
  DistanceCache() = default;
  explicit DistanceCache(std::size_t n);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::optional<double> lookup(int a, int b) const;
  [[nodiscard]] double raw(int a, int b) const;
  void set(int a, int b, std::optional<double> d);
  [[nodiscard]] std::size_t pairCount() const { return n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2; }

  friend bool operator==(const DistanceCache&, const DistanceCache&) = default;

private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Default cell size: half the minimum separation.
inline double defaultCellSize(double dMin) { return dMin / 2.0; }

/// All-pairs A* over the trap set, pairs distributed across OpenMP threads.
DistanceCache precomputeDistances(const PointList& traps, double dMin,
                                  double cellSize);
DistanceCache precomputeDistances(const MotionGrid& grid);

/// Single-threaded reference for precomputeDistances.
DistanceCache precomputeDistancesSerial(const MotionGrid& grid);

} // namespace atomroute
