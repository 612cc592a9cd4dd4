#include "atomroute/motion.hpp"

#include "atomroute/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>


namespace atomroute {

namespace {

constexpr int kMaxGridDim = 4096;
constexpr double kInf = std::numeric_limits<double>::infinity();

void checkTrap(const MotionGrid& grid, int trap) {
  if (trap < 0 || static_cast<std::size_t>(trap) >= grid.trapCount()) {
    throw UnknownTrap("unknown trap id " + std::to_string(trap));
  }
}

// Step costs in units of cell size; the octile heuristic uses the same
// constants so the search stays consistent.
double octile(int dx, int dy) {
  const int lo = std::min(dx, dy);
  const int hi = std::max(dx, dy);
  return static_cast<double>(hi - lo) + std::numbers::sqrt2 * static_cast<double>(lo);
}

} // namespace

MotionGrid::MotionGrid(PointList traps, double dMin, double cellSize)
    : traps_(std::move(traps)), dMin_(dMin), cellSize_(cellSize) {
  if (!(cellSize > 0.0)) {
    throw DegenerateInput("cell size must be positive");
  }
  const double cells = std::ceil(1.0 / cellSize - 1e-9);
  if (cells > kMaxGridDim) {
    throw DegenerateInput("motion grid would exceed " +
                          std::to_string(kMaxGridDim) + " cells per side");
  }
  dim_ = std::max(1, static_cast<int>(cells));
  blockCount_.assign(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_), 0);
  trapCells_.reserve(traps_.size());
  for (std::size_t t = 0; t < traps_.size(); ++t) {
    const Point& p = traps_[t];
    const int cx = std::clamp(static_cast<int>(std::floor(p.x / cellSize_)), 0, dim_ - 1);
    const int cy = std::clamp(static_cast<int>(std::floor(p.y / cellSize_)), 0, dim_ - 1);
    trapCells_.push_back(cellIndex(cx, cy));
    if (dMin_ <= 0.0) {
      continue;
    }
    const int reach = static_cast<int>(std::ceil(dMin_ / cellSize_)) + 1;
    for (int iy = std::max(0, cy - reach); iy <= std::min(dim_ - 1, cy + reach); ++iy) {
      for (int ix = std::max(0, cx - reach); ix <= std::min(dim_ - 1, cx + reach); ++ix) {
        const int cell = cellIndex(ix, iy);
        if (covers(static_cast<int>(t), cell)) {
          ++blockCount_[static_cast<std::size_t>(cell)];
        }
      }
    }
  }
}

Point MotionGrid::cellCenter(int cell) const {
  const int ix = cell % dim_;
  const int iy = cell / dim_;
  return {(ix + 0.5) * cellSize_, (iy + 0.5) * cellSize_};
}

int MotionGrid::trapCell(int trap) const {
  return trapCells_.at(static_cast<std::size_t>(trap));
}

bool MotionGrid::covers(int trap, int cell) const {
  return distance(cellCenter(cell), traps_[static_cast<std::size_t>(trap)]) < dMin_;
}

bool MotionGrid::isBlocked(int cell, int from, int to) const {
  int count = blockCount(cell);
  if (count == 0) {
    return false;
  }
  if (from >= 0 && covers(from, cell)) {
    --count;
  }
  if (to >= 0 && to != from && covers(to, cell)) {
    --count;
  }
  return count > 0;
}

MotionGrid buildGrid(const PointList& traps, double dMin, double cellSize) {
  return MotionGrid(traps, dMin, cellSize);
}

double GridPath::length(double cellSize) const {
  return cellSize * (static_cast<double>(orthogonal) +
                     std::numbers::sqrt2 * static_cast<double>(diagonal));
}

std::optional<GridPath> astarGridPath(const MotionGrid& grid, int from, int to) {
  checkTrap(grid, from);
  checkTrap(grid, to);
  const int start = grid.trapCell(from);
  const int goal = grid.trapCell(to);
  if (start == goal) {
    return GridPath{};
  }
  const int dim = grid.dim();
  const auto cells = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  std::vector<GridPath> best(cells, GridPath{-1, -1});
  std::vector<double> cost(cells, kInf);
  std::vector<char> closed(cells, 0);

  const int gx = goal % dim;
  const int gy = goal / dim;
  auto heuristic = [&](int cell) {
    return octile(std::abs(cell % dim - gx), std::abs(cell / dim - gy));
  };

  struct Entry {
    double f;
    double g;
    int cell;
    bool operator>(const Entry& o) const {
      if (f != o.f) {
        return f > o.f;
      }
      if (g != o.g) {
        return g < o.g; // prefer deeper nodes on ties
      }
      return cell > o.cell;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  best[static_cast<std::size_t>(start)] = GridPath{};
  cost[static_cast<std::size_t>(start)] = 0.0;
  open.push({heuristic(start), 0.0, start});

  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    const auto cu = static_cast<std::size_t>(e.cell);
    if (closed[cu] != 0) {
      continue;
    }
    closed[cu] = 1;
    if (e.cell == goal) {
      return best[cu];
    }
    const int x = e.cell % dim;
    const int y = e.cell / dim;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) {
          continue;
        }
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= dim || ny >= dim) {
          continue;
        }
        const int next = grid.cellIndex(nx, ny);
        const auto cn = static_cast<std::size_t>(next);
        if (closed[cn] != 0 || grid.isBlocked(next, from, to)) {
          continue;
        }
        GridPath path = best[cu];
        if (dx != 0 && dy != 0) {
          ++path.diagonal;
        } else {
          ++path.orthogonal;
        }
        const double g = path.length(1.0);
        if (g < cost[cn]) {
          cost[cn] = g;
          best[cn] = path;
          open.push({g + heuristic(next), g, next});
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<double> astarDistance(const MotionGrid& grid, int from, int to) {
  checkTrap(grid, from);
  checkTrap(grid, to);
  if (from == to) {
    return 0.0;
  }
  const auto path = astarGridPath(grid, from, to);
  if (!path) {
    return std::nullopt;
  }
  const double straight = distance(grid.traps()[static_cast<std::size_t>(from)],
                                   grid.traps()[static_cast<std::size_t>(to)]);
  return std::max(path->length(grid.cellSize()), straight);
}

DistanceCache::DistanceCache(std::size_t n) : n_(n), values_(n * n, kInf) {
  for (std::size_t i = 0; i < n; ++i) {
    values_[i * n + i] = 0.0;
  }
}

double DistanceCache::raw(int a, int b) const {
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n_ ||
      static_cast<std::size_t>(b) >= n_) {
    throw UnknownTrap("unknown trap pair (" + std::to_string(a) + ", " +
                      std::to_string(b) + ")");
  }
  return values_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
}

std::optional<double> DistanceCache::lookup(int a, int b) const {
  const double v = raw(a, b);
  if (std::isinf(v)) {
    return std::nullopt;
  }
  return v;
}

void DistanceCache::set(int a, int b, std::optional<double> d) {
  const double v = d.value_or(kInf);
  static_cast<void>(raw(a, b)); // bounds check
  values_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)] = v;
  values_[static_cast<std::size_t>(b) * n_ + static_cast<std::size_t>(a)] = v;
}

DistanceCache precomputeDistances(const PointList& traps, double dMin,
                                  double cellSize) {
  return precomputeDistances(MotionGrid(traps, dMin, cellSize));
}

DistanceCache precomputeDistances(const MotionGrid& grid) {
  const auto n = static_cast<long long>(grid.trapCount());
  DistanceCache cache(grid.trapCount());
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      pairs.emplace_back(a, b);
    }
  }
  std::vector<double> lengths(pairs.size(), kInf);
  const auto count = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long k = 0; k < count; ++k) {
    const auto [a, b] = pairs[static_cast<std::size_t>(k)];
    lengths[static_cast<std::size_t>(k)] = astarDistance(grid, a, b).value_or(kInf);
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double v = lengths[k];
    cache.set(pairs[k].first, pairs[k].second,
              std::isinf(v) ? std::nullopt : std::optional<double>(v));
  }
  return cache;
}

DistanceCache precomputeDistancesSerial(const MotionGrid& grid) {
  const auto n = static_cast<int>(grid.trapCount());
  DistanceCache cache(grid.trapCount());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      cache.set(a, b, astarDistance(grid, a, b));
    }
  }
  return cache;
}

} // namespace atomroute
