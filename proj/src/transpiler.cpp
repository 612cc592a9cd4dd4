#include "atomroute/transpiler.hpp"

#include "atomroute/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace atomroute {

namespace {

constexpr double kDistanceTolerance = 1e-12;

bool withinRadius(double d, double r) { return d <= r + kDistanceTolerance; }

ScheduledOp shuttleStep(int atom, int from, int to, double length,
                        const Layout& layout, const OperatingPoint& op) {
  ScheduledOp s;
  s.kind = OpKind::Shuttle;
  s.atomA = atom;
  s.trapA = from;
  s.trapB = to;
  s.pathLength = length;
  s.duration = shuttleDuration(length, layout.scale, op.tAct, op.vShuttle);
  return s;
}

std::vector<int> blockadeTraps(const ScheduledOp& op) {
  return {op.trapA, op.trapB};
}

} // namespace

// ---------------------------------------------------------------------------
// layout / occupancy

Layout Layout::build(const PointList& homes, const PointList& hubs, double rb,
                     double scale, double dMin) {
  Layout layout;
  layout.numQubits = static_cast<int>(homes.size());
  layout.rb = rb;
  layout.scale = scale;
  layout.dMin = dMin;
  int id = 0;
  for (std::size_t q = 0; q < homes.size(); ++q) {
    layout.traps.push_back({id++, homes[q], TrapKind::Home, static_cast<int>(q)});
  }
  for (const auto& h : hubs) {
    layout.traps.push_back({id++, h, TrapKind::Hub, -1});
  }
  return layout;
}

PointList Layout::positions() const {
  PointList out;
  out.reserve(traps.size());
  for (const auto& t : traps) {
    out.push_back(t.position);
  }
  return out;
}

Occupancy::Occupancy(int numAtoms, int numTraps)
    : atomTrap_(static_cast<std::size_t>(numAtoms)),
      trapAtom_(static_cast<std::size_t>(numTraps), -1) {
  if (numTraps < numAtoms) {
    throw DegenerateInput("fewer traps than atoms");
  }
  for (int a = 0; a < numAtoms; ++a) {
    atomTrap_[static_cast<std::size_t>(a)] = a;
    trapAtom_[static_cast<std::size_t>(a)] = a;
  }
}

Occupancy Occupancy::fromAssignment(const std::vector<int>& atomTrap, int numTraps) {
  Occupancy occ;
  occ.atomTrap_ = atomTrap;
  occ.trapAtom_.assign(static_cast<std::size_t>(std::max(numTraps, 0)), -1);
  for (std::size_t a = 0; a < atomTrap.size(); ++a) {
    const int t = atomTrap[a];
    if (t < 0 || t >= numTraps || occ.trapAtom_[static_cast<std::size_t>(t)] >= 0) {
      throw std::invalid_argument("atom placement is not a valid occupancy");
    }
    occ.trapAtom_[static_cast<std::size_t>(t)] = static_cast<int>(a);
  }
  return occ;
}

void Occupancy::move(int atom, int trap) {
  if (!isEmpty(trap)) {
    throw std::logic_error("shuttle into occupied trap " + std::to_string(trap));
  }
  trapAtom_[static_cast<std::size_t>(trapOf(atom))] = -1;
  trapAtom_[static_cast<std::size_t>(trap)] = atom;
  atomTrap_[static_cast<std::size_t>(atom)] = trap;
}

// ---------------------------------------------------------------------------
// names

std::string toString(OpKind kind) {
  switch (kind) {
  case OpKind::OneQ:
    return "oneq";
  case OpKind::CZ:
    return "cz";
  case OpKind::SwapMacro:
    return "swap";
  case OpKind::Shuttle:
    return "shuttle";
  }
  return "?";
}

OpKind opKindFromString(const std::string& s) {
  for (const auto k : {OpKind::OneQ, OpKind::CZ, OpKind::SwapMacro, OpKind::Shuttle}) {
    if (toString(k) == s) {
      return k;
    }
  }
  throw std::invalid_argument("unknown op kind '" + s + "'");
}

std::string toString(Method m) {
  switch (m) {
  case Method::ProposedRing:
    return "proposed-ring";
  case Method::Proposed:
    return "proposed";
  case Method::NoEviction:
    return "no-eviction";
  case Method::NoHub:
    return "no-hub";
  }
  return "?";
}

Method methodFromString(const std::string& s) {
  for (const auto m : {Method::ProposedRing, Method::Proposed,
                       Method::NoEviction, Method::NoHub}) {
    if (toString(m) == s) {
      return m;
    }
  }
  throw std::invalid_argument("unknown method '" + s + "'");
}

CompileConfig CompileConfig::forMethod(Method m) {
  CompileConfig cfg;
  switch (m) {
  case Method::ProposedRing:
    cfg.hubsEnabled = cfg.evictionEnabled = cfg.ringEnabled = true;
    break;
  case Method::Proposed:
    cfg.hubsEnabled = cfg.evictionEnabled = true;
    cfg.ringEnabled = false;
    break;
  case Method::NoEviction:
    cfg.hubsEnabled = true;
    cfg.evictionEnabled = cfg.ringEnabled = false;
    break;
  case Method::NoHub:
    cfg.hubsEnabled = cfg.evictionEnabled = cfg.ringEnabled = false;
    break;
  }
  return cfg;
}

std::string toString(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::AtomReuse:
    return "AtomReuse";
  case ViolationKind::OccupancyClash:
    return "OccupancyClash";
  case ViolationKind::ShuttleSource:
    return "ShuttleSource";
  case ViolationKind::CzOutOfRange:
    return "CzOutOfRange";
  case ViolationKind::SwapOutOfRange:
    return "SwapOutOfRange";
  case ViolationKind::LayerBlockade:
    return "LayerBlockade";
  case ViolationKind::LogicalMismatch:
    return "LogicalMismatch";
  case ViolationKind::DurationMismatch:
    return "DurationMismatch";
  case ViolationKind::BadReference:
    return "BadReference";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// feasibility

bool czFeasible(const Occupancy& occ, const Layout& layout, int a, int b) {
  return withinRadius(layout.trapDistance(occ.trapOf(a), occ.trapOf(b)), layout.rb);
}

bool layerAdmits(const Layer& layer, const ScheduledOp& op, const Layout& layout,
                 double blockadeRadius) {
  if (!op.blockades()) {
    return true;
  }
  const auto mine = blockadeTraps(op);
  for (const auto& other : layer) {
    if (!other.blockades()) {
      continue;
    }
    for (const int t : blockadeTraps(other)) {
      for (const int u : mine) {
        if (layout.trapDistance(t, u) < blockadeRadius) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// scoring

double stepNegLogFidelity(const ScheduledOp& step, const OperatingPoint& op) {
  switch (step.kind) {
  case OpKind::OneQ:
    return -std::log(op.f1Q);
  case OpKind::CZ:
    return -std::log(op.fCZ);
  case OpKind::SwapMacro:
    return -(3.0 * std::log(op.fCZ) + 4.0 * std::log(op.f1Q));
  case OpKind::Shuttle:
    return -std::log(op.fShuttle);
  }
  return 0.0;
}

double planScore(const TransportPlan& plan, const OperatingPoint& op,
                 double alpha) {
  if (plan.steps.empty()) {
    return 0.0;
  }
  double duration = 0.0;
  double negLog = 0.0;
  for (const auto& s : plan.steps) {
    duration += s.duration;
    negLog += stepNegLogFidelity(s, op);
  }
  return (duration / tEff(op) + negLog) / alpha;
}

void finalizePlan(TransportPlan& plan, const OperatingPoint& op, double alpha) {
  plan.totalDuration = 0.0;
  plan.negLogFidelity = 0.0;
  for (const auto& s : plan.steps) {
    plan.totalDuration += s.duration;
    plan.negLogFidelity += stepNegLogFidelity(s, op);
  }
  plan.score = planScore(plan, op, alpha);
}

// ---------------------------------------------------------------------------
// candidate plans

std::optional<TransportPlan> swapPlan(int a, int b, const Occupancy& occ,
                                      const TransportContext& ctx) {
  const Layout& layout = ctx.layout;
  const int n = layout.trapCount();
  const int src = occ.trapOf(a);
  const int dst = occ.trapOf(b);

  // BFS over occupied traps; neighbours visited in ascending trap id
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::queue<int> q;
  parent[static_cast<std::size_t>(src)] = -1;
  q.push(src);
  while (!q.empty() && parent[static_cast<std::size_t>(dst)] == -2) {
    const int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      if (parent[static_cast<std::size_t>(v)] != -2 || occ.isEmpty(v)) {
        continue;
      }
      if (withinRadius(layout.trapDistance(u, v), layout.rb)) {
        parent[static_cast<std::size_t>(v)] = u;
        q.push(v);
      }
    }
  }
  if (parent[static_cast<std::size_t>(dst)] == -2) {
    return std::nullopt;
  }
  std::vector<int> path;
  for (int t = dst; t != -1; t = parent[static_cast<std::size_t>(t)]) {
    path.push_back(t);
  }
  std::reverse(path.begin(), path.end());

  TransportPlan plan;
  plan.kind = PlanKind::Swap;
  plan.movingAtom = a;
  plan.targetTrap = path.size() >= 2 ? path[path.size() - 2] : src;
  // k hops need k-1 swaps to bring a's state next to b
  for (std::size_t k = 0; k + 2 < path.size(); ++k) {
    ScheduledOp s;
    s.kind = OpKind::SwapMacro;
    s.trapA = path[k];
    s.trapB = path[k + 1];
    s.atomA = occ.atomAt(path[k]);
    s.atomB = occ.atomAt(path[k + 1]);
    s.duration = ctx.op.swapDuration();
    plan.steps.push_back(s);
  }
  finalizePlan(plan, ctx.op, ctx.op.alphaGate);
  return plan;
}

namespace {

// Evicts the occupant of `target` (and, recursively, whatever blocks its
// home) back home. Returns the eviction shuttles in execution order, or
// nullopt when any link is not evictable or unreachable.
std::optional<std::vector<ScheduledOp>>
evictionChain(int target, const Occupancy& occ, const TransportContext& ctx,
              const std::set<int>& readyAtoms) {
  std::vector<int> chain;
  int trap = target;
  while (true) {
    const int atom = occ.atomAt(trap);
    if (atom < 0) {
      break;
    }
    if (static_cast<int>(chain.size()) >= ctx.cfg.evictionDepthCap ||
        readyAtoms.count(atom) != 0 || occ.atHome(atom) ||
        std::find(chain.begin(), chain.end(), atom) != chain.end()) {
      return std::nullopt;
    }
    chain.push_back(atom);
    trap = Occupancy::home(atom);
  }
  std::vector<ScheduledOp> steps;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const int from = occ.trapOf(*it);
    const int to = Occupancy::home(*it);
    const auto length = ctx.cache.lookup(from, to);
    if (!length) {
      return std::nullopt;
    }
    steps.push_back(shuttleStep(*it, from, to, *length, ctx.layout, ctx.op));
  }
  return steps;
}

struct ShuttleEnumeration {
  std::vector<TransportPlan> plans;
  bool sawEmptyTarget = false;
  bool sawOccupiedTarget = false;
};

ShuttleEnumeration enumerateShuttles(int a, int b, const Occupancy& occ,
                                     const TransportContext& ctx,
                                     const std::set<int>& readyAtoms) {
  ShuttleEnumeration out;
  const Layout& layout = ctx.layout;
  for (int direction = 0; direction < 2; ++direction) {
    const int moving = direction == 0 ? a : b;
    const int stationary = direction == 0 ? b : a;
    const int from = occ.trapOf(moving);
    const int anchor = occ.trapOf(stationary);
    for (int t = 0; t < layout.trapCount(); ++t) {
      if (t == from || t == anchor ||
          !withinRadius(layout.trapDistance(t, anchor), layout.rb)) {
        continue;
      }
      TransportPlan plan;
      plan.kind = PlanKind::Shuttle;
      plan.movingAtom = moving;
      plan.targetTrap = t;
      plan.direction = direction;
      if (occ.isEmpty(t)) {
        out.sawEmptyTarget = true;
      } else {
        out.sawOccupiedTarget = true;
        if (!ctx.cfg.evictionEnabled) {
          continue;
        }
        auto chain = evictionChain(t, occ, ctx, readyAtoms);
        if (!chain) {
          continue;
        }
        plan.evictions = static_cast<int>(chain->size());
        plan.steps = std::move(*chain);
      }
      const auto length = ctx.cache.lookup(from, t);
      if (!length) {
        continue;
      }
      plan.steps.push_back(shuttleStep(moving, from, t, *length, layout, ctx.op));
      finalizePlan(plan, ctx.op, ctx.op.alphaShuttle);
      out.plans.push_back(std::move(plan));
    }
  }
  return out;
}

} // namespace

std::vector<TransportPlan> shuttlePlans(int a, int b, const Occupancy& occ,
                                        const TransportContext& ctx,
                                        const std::set<int>& readyAtoms) {
  return enumerateShuttles(a, b, occ, ctx, readyAtoms).plans;
}

bool shuttlePlanBefore(const TransportPlan& x, const TransportPlan& y) {
  return std::tie(x.score, x.totalDuration, x.targetTrap, x.direction) <
         std::tie(y.score, y.totalDuration, y.targetTrap, y.direction);
}

TransportPlan decideTransport(int a, int b, const Occupancy& occ,
                              const TransportContext& ctx,
                              const std::set<int>& readyAtoms,
                              TransportStats* stats) {
  auto swap = swapPlan(a, b, occ, ctx);
  const auto shuttles = enumerateShuttles(a, b, occ, ctx, readyAtoms);

  const TransportPlan* bestShuttle = nullptr;
  bool direct = false;
  for (const auto& p : shuttles.plans) {
    direct = direct || p.evictions == 0;
    if (bestShuttle == nullptr || shuttlePlanBefore(p, *bestShuttle)) {
      bestShuttle = &p;
    }
  }
  if (stats != nullptr) {
    ++stats->decisions;
    if (direct) {
      ++stats->decisionsWithDirectShuttle;
    }
  }
  if (!swap && bestShuttle == nullptr) {
    const bool evictionPossible =
        std::any_of(shuttles.plans.begin(), shuttles.plans.end(),
                    [](const TransportPlan& p) { return p.evictions > 0; });
    throw NoValidTransport(a, b, 0, true, !direct, !evictionPossible);
  }
  if (bestShuttle != nullptr && (!swap || bestShuttle->score <= swap->score)) {
    if (stats != nullptr) {
      ++stats->shuttlePlansChosen;
    }
    return *bestShuttle;
  }
  if (stats != nullptr) {
    ++stats->swapPlansChosen;
  }
  return *swap;
}

// ---------------------------------------------------------------------------
// layering

namespace {

class Layering {
public:
  Layering(const Layout& layout, const CompileConfig& cfg, int numAtoms)
      : layout_(layout), blockadeRadius_(cfg.blockadeFactor * layout.rb),
        atomFree_(static_cast<std::size_t>(numAtoms), 0) {}

  // Places a gate op in the earliest layer at or after its atoms are free.
  void placeAsap(const ScheduledOp& op) {
    std::size_t layer = atomFree_[static_cast<std::size_t>(op.atomA)];
    if (op.atomB >= 0) {
      layer = std::max(layer, atomFree_[static_cast<std::size_t>(op.atomB)]);
    }
    while (layer < layers_.size() &&
           !layerAdmits(layers_[layer], op, layout_, blockadeRadius_)) {
      ++layer;
    }
    put(layer, op);
  }

  // Transport steps each open a fresh layer at the end.
  void append(const ScheduledOp& op) { put(layers_.size(), op); }

  std::vector<Layer> take() { return std::move(layers_); }

private:
  void put(std::size_t layer, const ScheduledOp& op) {
    if (layer == layers_.size()) {
      layers_.emplace_back();
    }
    layers_[layer].push_back(op);
    for (const int atom : {op.atomA, op.atomB}) {
      if (atom >= 0) {
        atomFree_[static_cast<std::size_t>(atom)] = layer + 1;
      }
    }
  }

  const Layout& layout_;
  double blockadeRadius_;
  std::vector<std::size_t> atomFree_;
  std::vector<Layer> layers_;
};

} // namespace

Schedule transpile(const Circuit& circuit, const Layout& layout,
                   const DistanceCache& cache, const CompileConfig& cfg,
                   const OperatingPoint& op,
                   std::optional<std::chrono::steady_clock::time_point> deadline) {
  if (layout.numQubits != circuit.numQubits) {
    throw DegenerateInput("layout does not match circuit qubit count");
  }
  if (cache.size() != static_cast<std::size_t>(layout.trapCount())) {
    throw DegenerateInput("distance cache does not match trap count");
  }
  const int n = circuit.numQubits;
  const TransportContext ctx{layout, cache, op, cfg};
  Schedule schedule;
  schedule.config = cfg;
  Occupancy occ(n, layout.trapCount());
  std::vector<int> atomOf(static_cast<std::size_t>(n));
  std::vector<int> logicalOf(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    atomOf[static_cast<std::size_t>(q)] = q;
    logicalOf[static_cast<std::size_t>(q)] = q;
  }

  const auto dag = dependencyDag(circuit);
  const std::size_t gateCount = circuit.gates.size();
  std::vector<std::vector<std::size_t>> successors(gateCount);
  std::vector<std::size_t> pending(gateCount);
  std::set<std::size_t> ready;
  for (std::size_t g = 0; g < gateCount; ++g) {
    pending[g] = dag.predecessors[g].size();
    for (const auto p : dag.predecessors[g]) {
      successors[p].push_back(g);
    }
    if (pending[g] == 0) {
      ready.insert(g);
    }
  }

  Layering layering(layout, cfg, n);
  long long planId = 0;
  while (!ready.empty()) {
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
      throw BudgetExceeded(cfg.budgetSeconds);
    }
    const std::size_t g = *ready.begin();
    const Gate& gate = circuit.gates[g];
    ScheduledOp sop;
    sop.gate = static_cast<long long>(g);
    if (gate.isCZ()) {
      const int qa = gate.qubits[0];
      const int qb = gate.qubits[1];
      if (!czFeasible(occ, layout, atomOf[static_cast<std::size_t>(qa)],
                      atomOf[static_cast<std::size_t>(qb)])) {
        std::set<int> readyAtoms;
        for (const auto r : ready) {
          for (const int q : circuit.gates[r].qubits) {
            readyAtoms.insert(atomOf[static_cast<std::size_t>(q)]);
          }
        }
        TransportPlan plan;
        try {
          plan = decideTransport(atomOf[static_cast<std::size_t>(qa)],
                                 atomOf[static_cast<std::size_t>(qb)], occ, ctx,
                                 readyAtoms, &schedule.stats);
        } catch (const NoValidTransport& e) {
          throw NoValidTransport(qa, qb, g, e.swapUnavailable,
                                 e.shuttleUnavailable, e.evictionUnavailable);
        }
        for (auto step : plan.steps) {
          step.plan = planId;
          layering.append(step);
          if (step.kind == OpKind::Shuttle) {
            occ.move(step.atomA, step.trapB);
          } else {
            const int la = logicalOf[static_cast<std::size_t>(step.atomA)];
            const int lb = logicalOf[static_cast<std::size_t>(step.atomB)];
            std::swap(atomOf[static_cast<std::size_t>(la)],
                      atomOf[static_cast<std::size_t>(lb)]);
            logicalOf[static_cast<std::size_t>(step.atomA)] = lb;
            logicalOf[static_cast<std::size_t>(step.atomB)] = la;
          }
        }
        ++planId;
      }
      sop.kind = OpKind::CZ;
      sop.atomA = atomOf[static_cast<std::size_t>(qa)];
      sop.atomB = atomOf[static_cast<std::size_t>(qb)];
      sop.trapA = occ.trapOf(sop.atomA);
      sop.trapB = occ.trapOf(sop.atomB);
      sop.duration = op.tCZ;
      if (!czFeasible(occ, layout, sop.atomA, sop.atomB)) {
        throw std::logic_error("transport plan left CZ infeasible");
      }
    } else {
      sop.kind = OpKind::OneQ;
      sop.atomA = atomOf[static_cast<std::size_t>(gate.qubits[0])];
      sop.trapA = occ.trapOf(sop.atomA);
      sop.duration = op.t1Q;
    }
    layering.placeAsap(sop);

    ready.erase(ready.begin());
    for (const auto s : successors[g]) {
      if (--pending[s] == 0) {
        ready.insert(s);
      }
    }
  }
  schedule.layers = layering.take();
  schedule.finalOccupancy = occ;
  return schedule;
}

// ---------------------------------------------------------------------------
// replay validation

ValidationReport validateSchedule(const Schedule& schedule,
                                  const Circuit& circuit, const Layout& layout,
                                  const OperatingPoint& op) {
  ValidationReport report;
  const int n = circuit.numQubits;
  auto fail = [&](ViolationKind kind, std::size_t layer, std::string detail) {
    report.violation = Violation{kind, layer, std::move(detail)};
    return report;
  };
  if (layout.numQubits != n || layout.trapCount() < n) {
    return fail(ViolationKind::BadReference, 0, "layout does not match circuit");
  }

  Occupancy occ(n, layout.trapCount());
  std::vector<int> logicalOf(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    logicalOf[static_cast<std::size_t>(a)] = a;
  }
  // per-qubit program order
  std::vector<std::vector<std::size_t>> order(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    for (const int q : circuit.gates[g].qubits) {
      order[static_cast<std::size_t>(q)].push_back(g);
    }
  }
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n), 0);
  std::vector<char> seen(circuit.gates.size(), 0);
  const double blockadeRadius = schedule.config.blockadeFactor * layout.rb;
  const double tolerance = 1e-9;

  auto validAtom = [&](int a) { return a >= 0 && a < n; };
  auto validTrap = [&](int t) { return t >= 0 && t < layout.trapCount(); };

  for (std::size_t li = 0; li < schedule.layers.size(); ++li) {
    const Layer& layer = schedule.layers[li];
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::set<int> claimed;
    for (std::size_t k = 0; k < layer.size(); ++k) {
      const ScheduledOp& o = layer[k];
      const bool twoAtoms = o.kind == OpKind::CZ || o.kind == OpKind::SwapMacro;
      if (!validAtom(o.atomA) || (twoAtoms && !validAtom(o.atomB))) {
        return fail(ViolationKind::BadReference, li, "op references unknown atom");
      }
      for (const int a : {o.atomA, twoAtoms ? o.atomB : -1}) {
        if (a < 0) {
          continue;
        }
        if (used[static_cast<std::size_t>(a)] != 0) {
          return fail(ViolationKind::AtomReuse, li,
                      "atom " + std::to_string(a) + " used twice");
        }
        used[static_cast<std::size_t>(a)] = 1;
      }

      double expected = 0.0;
      switch (o.kind) {
      case OpKind::OneQ:
        expected = op.t1Q;
        break;
      case OpKind::CZ:
        expected = op.tCZ;
        break;
      case OpKind::SwapMacro:
        expected = op.swapDuration();
        break;
      case OpKind::Shuttle:
        expected = shuttleDuration(o.pathLength, layout.scale, op.tAct, op.vShuttle);
        break;
      }
      if (std::abs(o.duration - expected) > tolerance * std::max(1.0, expected)) {
        return fail(ViolationKind::DurationMismatch, li,
                    toString(o.kind) + " duration " + std::to_string(o.duration));
      }

      if (o.kind == OpKind::OneQ || o.kind == OpKind::CZ) {
        if (o.gate < 0 || static_cast<std::size_t>(o.gate) >= circuit.gates.size()) {
          return fail(ViolationKind::BadReference, li, "op references unknown gate");
        }
        const auto g = static_cast<std::size_t>(o.gate);
        const Gate& gate = circuit.gates[g];
        if (seen[g] != 0 || gate.isCZ() != (o.kind == OpKind::CZ)) {
          return fail(ViolationKind::LogicalMismatch, li,
                      "gate " + std::to_string(g) + " duplicated or of wrong kind");
        }
        seen[g] = 1;
        std::vector<int> logical{logicalOf[static_cast<std::size_t>(o.atomA)]};
        if (o.kind == OpKind::CZ) {
          logical.push_back(logicalOf[static_cast<std::size_t>(o.atomB)]);
        }
        auto expectedQubits = gate.qubits;
        std::sort(logical.begin(), logical.end());
        std::sort(expectedQubits.begin(), expectedQubits.end());
        if (logical != expectedQubits) {
          return fail(ViolationKind::LogicalMismatch, li,
                      "gate " + std::to_string(g) + " acts on wrong qubits");
        }
        for (const int q : logical) {
          auto& c = cursor[static_cast<std::size_t>(q)];
          const auto& seq = order[static_cast<std::size_t>(q)];
          if (c >= seq.size() || seq[c] != g) {
            return fail(ViolationKind::LogicalMismatch, li,
                        "gate " + std::to_string(g) + " out of order on qubit " +
                            std::to_string(q));
          }
          ++c;
        }
      }

      if (o.kind == OpKind::CZ || o.kind == OpKind::SwapMacro) {
        if (!validTrap(o.trapA) || !validTrap(o.trapB) ||
            occ.trapOf(o.atomA) != o.trapA || occ.trapOf(o.atomB) != o.trapB) {
          return fail(ViolationKind::OccupancyClash, li,
                      toString(o.kind) + " trap record disagrees with occupancy");
        }
        if (!withinRadius(layout.trapDistance(o.trapA, o.trapB), layout.rb)) {
          return fail(o.kind == OpKind::CZ ? ViolationKind::CzOutOfRange
                                           : ViolationKind::SwapOutOfRange,
                      li, toString(o.kind) + " beyond blockade radius");
        }
        for (std::size_t m = 0; m < k; ++m) {
          const ScheduledOp& other = layer[m];
          if (!other.blockades()) {
            continue;
          }
          for (const int t : {other.trapA, other.trapB}) {
            for (const int u : {o.trapA, o.trapB}) {
              if (layout.trapDistance(t, u) < blockadeRadius) {
                return fail(ViolationKind::LayerBlockade, li,
                            "blockade conflict between parallel entangling ops");
              }
            }
          }
        }
      } else if (o.kind == OpKind::Shuttle) {
        if (!validTrap(o.trapA) || !validTrap(o.trapB)) {
          return fail(ViolationKind::BadReference, li, "shuttle references unknown trap");
        }
        if (occ.trapOf(o.atomA) != o.trapA) {
          return fail(ViolationKind::ShuttleSource, li,
                      "atom " + std::to_string(o.atomA) + " is not at shuttle source");
        }
        if (!occ.isEmpty(o.trapB) || claimed.count(o.trapB) != 0) {
          return fail(ViolationKind::OccupancyClash, li,
                      "shuttle into occupied trap " + std::to_string(o.trapB));
        }
        claimed.insert(o.trapB);
      }
    }
    // transport takes effect at the end of the layer
    for (const auto& o : layer) {
      if (o.kind == OpKind::Shuttle) {
        occ.move(o.atomA, o.trapB);
      } else if (o.kind == OpKind::SwapMacro) {
        std::swap(logicalOf[static_cast<std::size_t>(o.atomA)],
                  logicalOf[static_cast<std::size_t>(o.atomB)]);
      }
    }
  }
  for (std::size_t g = 0; g < seen.size(); ++g) {
    if (seen[g] == 0) {
      return fail(ViolationKind::LogicalMismatch, schedule.layers.size(),
                  "gate " + std::to_string(g) + " missing from schedule");
    }
  }
  return report;
}

} // namespace atomroute
