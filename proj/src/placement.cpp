#include "atomroute/placement.hpp"

#include "atomroute/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

namespace atomroute {

namespace {

// Pairwise weight vector in (i<j) row-major order.
std::vector<double> pairWeights(const InteractionGraph& g, int n) {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      w.push_back(static_cast<double>(g.weight(i, j)));
    }
  }
  return w;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys,
               const std::vector<char>* mask) {
  double n = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (mask != nullptr && (*mask)[k] == 0) {
      continue;
    }
    n += 1.0;
    sx += xs[k];
    sy += ys[k];
  }
  if (n < 2.0) {
    return 0.0;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double cov = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (mask != nullptr && (*mask)[k] == 0) {
      continue;
    }
    const double dx = xs[k] - mx;
    const double dy = ys[k] - my;
    cov += dx * dy;
    vx += dx * dx;
    vy += dy * dy;
  }
  // relative threshold: sums of identical values can leave rounding residue
  const double eps = 1e-24;
  if (vx <= eps * std::max(1.0, mx * mx * n) ||
      vy <= eps * std::max(1.0, my * my * n)) {
    return 0.0;
  }
  return std::clamp(cov / std::sqrt(vx * vy), -1.0, 1.0);
}

class AnnealEnergy {
public:
  AnnealEnergy(const InteractionGraph& g, int n, const AnnealOptions& opts)
      : n_(n), weights_(pairWeights(g, n)), penaltyWeight_(opts.separationPenaltyWeight),
        distances_(weights_.size()) {
    if (opts.interactingPairsOnly) {
      mask_.resize(weights_.size());
      for (std::size_t k = 0; k < weights_.size(); ++k) {
        mask_[k] = weights_[k] > 0.0 ? 1 : 0;
      }
    }
  }

  double operator()(const PointList& pts) {
    std::size_t k = 0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        distances_[k++] = distance(pts[static_cast<std::size_t>(i)],
                                   pts[static_cast<std::size_t>(j)]);
      }
    }
    double energy = pearson(weights_, distances_, mask_.empty() ? nullptr : &mask_);
    if (penaltyWeight_ > 0.0) {
      energy += penaltyWeight_ * separationPenalty(pts);
    }
    return energy;
  }

private:
  // Quadratic penalty on pairs closer than a third of the MST radius,
  // relative to that threshold.
  double separationPenalty(const PointList& pts) const {
    const double threshold = mstMaxEdge(pts) / 3.0;
    if (threshold <= 0.0) {
      return static_cast<double>(distances_.size());
    }
    double penalty = 0.0;
    for (const double d : distances_) {
      if (d < threshold) {
        const double gap = (threshold - d) / threshold;
        penalty += gap * gap;
      }
    }
    return penalty;
  }

  int n_;
  std::vector<double> weights_;
  double penaltyWeight_;
  std::vector<double> distances_;
  std::vector<char> mask_;
};

int hopDiameter(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  int diameter = 0;
  std::vector<int> dist(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    q.push(s);
    dist[static_cast<std::size_t>(s)] = 0;
    int reached = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const int v : adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          diameter = std::max(diameter, dist[static_cast<std::size_t>(v)]);
          ++reached;
          q.push(v);
        }
      }
    }
    if (reached != n) {
      return -1;
    }
  }
  return diameter;
}

constexpr double kRadiusTolerance = 1e-12;

bool radiusQualifies(const PointList& pts, double r) {
  const std::size_t n = pts.size();
  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(pts[i], pts[j]) <= r + kRadiusTolerance) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  const int d = hopDiameter(adj);
  return d >= 0 && static_cast<double>(d) <= std::sqrt(static_cast<double>(n));
}

Point clipToBox(Point p) {
  return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
}

} // namespace

double placementObjective(const InteractionGraph& g, const PointList& coords,
                          bool interactingPairsOnly) {
  const int n = static_cast<int>(coords.size());
  if (n < 2) {
    throw DegenerateInput("placement objective needs at least two qubits");
  }
  const auto w = pairWeights(g, n);
  std::vector<double> d;
  d.reserve(w.size());
  std::vector<char> mask;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d.push_back(distance(coords[static_cast<std::size_t>(i)],
                           coords[static_cast<std::size_t>(j)]));
    }
  }
  if (interactingPairsOnly) {
    mask.resize(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      mask[k] = w[k] > 0.0 ? 1 : 0;
    }
  }
  return pearson(w, d, interactingPairsOnly ? &mask : nullptr);
}

Placement optimizePlacement(
    const InteractionGraph& g, const AnnealOptions& opts,
    std::optional<std::chrono::steady_clock::time_point> deadline) {
  if (opts.maxiter < 1) {
    throw DegenerateInput("maxiter must be at least 1");
  }
  const int n = g.numQubits;
  Placement result;
  result.seed = opts.seed;
  if (n <= 0) {
    return result;
  }
  if (n == 1) {
    result.coords = {Point{0.5, 0.5}};
    return result;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  PointList current(static_cast<std::size_t>(n));
  for (auto& p : current) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  AnnealEnergy energy(g, n, opts);
  double currentEnergy = energy(current);
  PointList best = current;
  double bestEnergy = currentEnergy;

  const double tStart = 0.1;
  const double tEnd = 1e-4;
  const int moves = opts.movesPerStep > 0 ? opts.movesPerStep : n;
  const double steps = static_cast<double>(std::max(1, opts.maxiter - 1));
  std::uniform_int_distribution<int> pickQubit(0, n - 1);

  for (int step = 0; step < opts.maxiter; ++step) {
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
      throw BudgetExceeded(0.0);
    }
    const double progress = static_cast<double>(step) / steps;
    const double temperature = tStart * std::pow(tEnd / tStart, progress);
    const double sigma = 0.01 + 0.3 * (1.0 - progress);
    for (int m = 0; m < moves; ++m) {
      const auto q = static_cast<std::size_t>(pickQubit(rng));
      const Point old = current[q];
      current[q] = clipToBox({old.x + sigma * gauss(rng), old.y + sigma * gauss(rng)});
      const double candidate = energy(current);
      const double delta = candidate - currentEnergy;
      const double u = unit(rng);
      if (delta <= 0.0 || u < std::exp(-delta / temperature)) {
        currentEnergy = candidate;
        if (candidate < bestEnergy) {
          bestEnergy = candidate;
          best = current;
        }
      } else {
        current[q] = old;
      }
    }
  }
  result.coords = std::move(best);
  result.objectiveValue = bestEnergy;
  return result;
}

double mstMaxEdge(const PointList& points) {
  const std::size_t n = points.size();
  if (n < 2) {
    return 0.0;
  }
  // Prim on the complete graph
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<char> inTree(n, 0);
  key[0] = 0.0;
  double maxEdge = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (inTree[v] == 0 && (u == n || key[v] < key[u])) {
        u = v;
      }
    }
    inTree[u] = 1;
    maxEdge = std::max(maxEdge, key[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (inTree[v] == 0) {
        key[v] = std::min(key[v], distance(points[u], points[v]));
      }
    }
  }
  return maxEdge;
}

double scaleFactor(double rb, double rbPhys) {
  if (!(rb > 0.0)) {
    throw DegenerateInput("normalized blockade radius must be positive");
  }
  return rbPhys / rb;
}

RadiusSelection selectRadius(const PointList& coords, double rbPhys) {
  const std::size_t n = coords.size();
  if (n < 2) {
    throw DegenerateInput("radius selection needs at least two qubits");
  }
  std::vector<double> candidates;
  candidates.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      candidates.push_back(distance(coords[i], coords[j]));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> unique;
  for (const double c : candidates) {
    if (c <= 0.0) {
      continue;
    }
    if (unique.empty() || c - unique.back() > kRadiusTolerance) {
      unique.push_back(c);
    }
  }

  // Both conditions are monotone in r (G_r only gains edges), so the
  // smallest qualifying candidate can be found by bisection.
  RadiusSelection sel;
  if (!unique.empty() && radiusQualifies(coords, unique.back())) {
    std::size_t lo = 0;
    std::size_t hi = unique.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (radiusQualifies(coords, unique[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    sel.rb = unique[lo];
    sel.rule = RadiusRule::ConnectedDiameter;
  } else {
    sel.rb = mstMaxEdge(coords);
    sel.rule = RadiusRule::MstFallback;
  }
  sel.scale = scaleFactor(sel.rb, rbPhys);
  return sel;
}

std::vector<std::pair<int, int>> validateMinSeparation(const PointList& points,
                                                       double dMin) {
  std::vector<std::pair<int, int>> violations;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (distance(points[i], points[j]) < dMin) {
        violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return violations;
}

bool repairMinSeparation(PointList& points, double dMin, int maxIterations) {
  const double target = dMin * (1.0 + 1e-9) + 1e-12;
  for (int it = 0; it < maxIterations; ++it) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        const double d = distance(points[i], points[j]);
        if (d < dMin && d < closest) {
          closest = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (!std::isfinite(closest)) {
      return true;
    }
    Point& a = points[bi];
    Point& b = points[bj];
    double ux = b.x - a.x;
    double uy = b.y - a.y;
    if (closest <= 0.0) {
      const double angle = 2.399963229728653 * static_cast<double>(bi + bj + 1);
      ux = std::cos(angle);
      uy = std::sin(angle);
    } else {
      ux /= closest;
      uy /= closest;
    }
    const double half = 0.5 * (target - closest);
    a = clipToBox({a.x - ux * half, a.y - uy * half});
    b = clipToBox({b.x + ux * half, b.y + uy * half});
    // a box wall may absorb part of one push; hand the rest to the other point
    const double remaining = target - distance(a, b);
    if (remaining > 0.0) {
      const Point movedB = clipToBox({b.x + ux * remaining, b.y + uy * remaining});
      if (distance(a, movedB) > distance(a, b)) {
        b = movedB;
      } else {
        a = clipToBox({a.x - ux * remaining, a.y - uy * remaining});
      }
    }
  }
  return validateMinSeparation(points, dMin).empty();
}

} // namespace atomroute
