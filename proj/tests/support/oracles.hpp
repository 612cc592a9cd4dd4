#pragma once

// Independent reference implementations used to cross-check the library.
// They share only data types with the code under test.

#include "atomroute/circuit.hpp"
#include "atomroute/motion.hpp"
#include "atomroute/transpiler.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using namespace atomroute;

/// Random CZ-heavy circuit: n qubits, nCz CZs on uniformly random pairs,
/// each followed by single-qubit gates with probability oneQRate per qubit.
inline Circuit randomCircuit(int n, int nCz, std::uint64_t seed, double oneQRate = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::ostringstream q;
  q << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << n << "];\n";
  for (int i = 0; i < n; ++i) {
    q << "h q[" << i << "];\n";
  }
  for (int k = 0; k < nCz; ++k) {
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) {
      b = pick(rng);
    }
    q << "cz q[" << a << "],q[" << b << "];\n";
    for (const int x : {a, b}) {
      if (unit(rng) < oneQRate) {
        q << "rz(0.25) q[" << x << "];\n";
      }
    }
  }
  return parseQasm(q.str(), "random_" + std::to_string(n) + "_" + std::to_string(seed));
}

/// Dijkstra over the motion grid with blocking recomputed from the raw trap
/// list: a cell is blocked when its centre lies strictly within dMin of a
/// trap other than the two endpoints. Costs are (orthogonal, diagonal)
/// step counts; 8-connected moves, corners may be cut.
inline std::optional<GridPath> dijkstraGridPath(const MotionGrid& grid, int from, int to) {
  const int dim = grid.dim();
  const int start = grid.trapCell(from);
  const int goal = grid.trapCell(to);
  auto blocked = [&](int cell) {
    const Point c = grid.cellCenter(cell);
    for (std::size_t t = 0; t < grid.trapCount(); ++t) {
      if (static_cast<int>(t) == from || static_cast<int>(t) == to) {
        continue;
      }
      if (distance(c, grid.traps()[t]) < grid.dMin()) {
        return true;
      }
    }
    return false;
  };
  const auto cells = static_cast<std::size_t>(dim * dim);
  std::vector<double> dist(cells, std::numeric_limits<double>::infinity());
  std::vector<GridPath> path(cells);
  std::vector<char> done(cells, 0);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[static_cast<std::size_t>(start)] = 0.0;
  pq.push({0.0, start});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[static_cast<std::size_t>(u)] != 0) {
      continue;
    }
    done[static_cast<std::size_t>(u)] = 1;
    if (u == goal) {
      return path[static_cast<std::size_t>(u)];
    }
    const int x = u % dim;
    const int y = u / dim;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= dim || ny >= dim) {
          continue;
        }
        const int v = ny * dim + nx;
        if (blocked(v)) {
          continue;
        }
        GridPath p = path[static_cast<std::size_t>(u)];
        (dx != 0 && dy != 0 ? p.diagonal : p.orthogonal) += 1;
        const double nd = p.orthogonal + std::numbers::sqrt2 * p.diagonal;
        if (nd < dist[static_cast<std::size_t>(v)]) {
          dist[static_cast<std::size_t>(v)] = nd;
          path[static_cast<std::size_t>(v)] = p;
          pq.push({nd, v});
        }
      }
    }
  }
  return std::nullopt;
}

/// A transport plan reduced to what identifies it.
struct PlanSummary {
  PlanKind kind = PlanKind::Swap;
  int movingAtom = -1;
  int targetTrap = -1;
  double score = 0.0;
  std::vector<std::tuple<OpKind, int, int>> steps; // kind, trapA, trapB
};

inline PlanSummary summarize(const TransportPlan& p) {
  PlanSummary s{p.kind, p.movingAtom, p.targetTrap, p.score, {}};
  for (const auto& st : p.steps) {
    s.steps.emplace_back(st.kind, st.trapA, st.trapB);
  }
  return s;
}

/// Exhaustive transport decision. SWAP hop distances come from
/// Floyd-Warshall over occupied traps; every (direction, target) pair is
/// scored, evictions expanded by walking occupants back home. Ties follow
/// the documented rule: shuttle over SWAP, then score, duration, target,
/// direction. Returns nullopt when no plan exists.
inline std::optional<PlanSummary> bruteForceDecision(int a, int b, const Occupancy& occ,
                                                     const Layout& layout,
                                                     const DistanceCache& cache,
                                                     const OperatingPoint& op,
                                                     const CompileConfig& cfg,
                                                     const std::set<int>& ready) {
  const int n = layout.trapCount();
  const double teff = op.t1 * op.t2 / (op.t1 + op.t2);
  auto within = [&](int s, int t) { return layout.trapDistance(s, t) <= layout.rb + 1e-12; };
  auto shuttleTime = [&](double len) {
    return 2.0 * op.tAct + layout.scale * len / op.vShuttle;
  };

  // SWAP candidate: hop distance and the lexicographically smallest shortest
  // path (BFS with ascending neighbour order yields the same path).
  std::optional<PlanSummary> swap;
  {
    constexpr int kInf = 1 << 20;
    std::vector<std::vector<int>> hop(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n), kInf));
    for (int i = 0; i < n; ++i) {
      if (occ.isEmpty(i)) {
        continue;
      }
      hop[i][i] = 0;
      for (int j = 0; j < n; ++j) {
        if (i != j && !occ.isEmpty(j) && within(i, j)) {
          hop[i][j] = 1;
        }
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          hop[i][j] = std::min(hop[i][j], hop[i][k] + hop[k][j]);
        }
      }
    }
    const int src = occ.trapOf(a);
    const int dst = occ.trapOf(b);
    if (hop[src][dst] < kInf) {
      const int hops = hop[src][dst];
      PlanSummary s;
      s.kind = PlanKind::Swap;
      s.movingAtom = a;
      const int swaps = std::max(0, hops - 1);
      const double perSwap = -(3.0 * std::log(op.fCZ) + 4.0 * std::log(op.f1Q));
      double t = 0.0;
      double nl = 0.0;
      for (int k = 0; k < swaps; ++k) {
        t += op.swapDuration();
        nl += perSwap;
      }
      s.score = swaps == 0 ? 0.0 : (t / teff + nl) / op.alphaGate;
      swap = s;
    }
  }

  struct Cand {
    PlanSummary plan;
    double duration;
    int direction;
  };
  std::optional<Cand> best;
  const double perShuttle = -std::log(op.fShuttle);
  for (int direction = 0; direction < 2; ++direction) {
    const int moving = direction == 0 ? a : b;
    const int stationary = direction == 0 ? b : a;
    const int from = occ.trapOf(moving);
    const int anchor = occ.trapOf(stationary);
    for (int t = 0; t < n; ++t) {
      if (t == from || t == anchor || !within(t, anchor)) {
        continue;
      }
      std::vector<std::tuple<OpKind, int, int>> steps;
      std::vector<double> lengths;
      bool ok = true;
      if (!occ.isEmpty(t)) {
        if (!cfg.evictionEnabled) {
          continue;
        }
        std::vector<int> chain;
        for (int trap = t; !occ.isEmpty(trap);) {
          const int c = occ.atomAt(trap);
          const bool repeat = std::find(chain.begin(), chain.end(), c) != chain.end();
          if (static_cast<int>(chain.size()) >= cfg.evictionDepthCap || ready.count(c) != 0 ||
              occ.trapOf(c) == c || repeat) {
            ok = false;
            break;
          }
          chain.push_back(c);
          trap = c; // home trap id equals atom id
        }
        for (auto it = chain.rbegin(); ok && it != chain.rend(); ++it) {
          const auto d = cache.lookup(occ.trapOf(*it), *it);
          if (!d) {
            ok = false;
            break;
          }
          steps.emplace_back(OpKind::Shuttle, occ.trapOf(*it), *it);
          lengths.push_back(*d);
        }
      }
      if (!ok) {
        continue;
      }
      const auto d = cache.lookup(from, t);
      if (!d) {
        continue;
      }
      steps.emplace_back(OpKind::Shuttle, from, t);
      lengths.push_back(*d);
      double dur = 0.0;
      double nl = 0.0;
      for (const double len : lengths) {
        dur += shuttleTime(len);
        nl += perShuttle;
      }
      Cand c{{PlanKind::Shuttle, moving, t, (dur / teff + nl) / op.alphaShuttle, steps},
             dur,
             direction};
      if (!best || std::tie(c.plan.score, c.duration, t, direction) <
                       std::tie(best->plan.score, best->duration, best->plan.targetTrap,
                                best->direction)) {
        best = c;
      }
    }
  }
  if (best && (!swap || best->plan.score <= swap->score)) {
    return best->plan;
  }
  return swap;
}

/// Log fidelity recomputed layer by layer from first principles.
inline double logFidelityOracle(const Schedule& s, const OperatingPoint& op) {
  const double teff = op.t1 * op.t2 / (op.t1 + op.t2);
  double total = 0.0;
  for (const auto& layer : s.layers) {
    double tmax = 0.0;
    double gates = 0.0;
    for (const auto& o : layer) {
      tmax = std::max(tmax, o.duration);
      switch (o.kind) {
      case OpKind::OneQ:
        gates += std::log(op.f1Q);
        break;
      case OpKind::CZ:
        gates += std::log(op.fCZ);
        break;
      case OpKind::SwapMacro:
        gates += 3.0 * std::log(op.fCZ) + 4.0 * std::log(op.f1Q);
        break;
      case OpKind::Shuttle:
        gates += std::log(op.fShuttle);
        break;
      }
    }
    total += gates - tmax / teff;
  }
  return total;
}

} // namespace oracle
