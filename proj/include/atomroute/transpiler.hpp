#pragma once

#include "atomroute/circuit.hpp"
#include "atomroute/geometry.hpp"
#include "atomroute/motion.hpp"
#include "atomroute/operating_point.hpp"

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace atomroute {

enum class TrapKind { Home, Hub };

struct Trap {
  int id = 0;
  Point position;
  TrapKind kind = TrapKind::Home;
  int owner = -1; // home traps only
};

/// Home traps 0..numQubits-1 (trap i is qubit i's home), then hub traps.
struct Layout {
  std::vector<Trap> traps;
  int numQubits = 0;
  double rb = 0.0;    // normalized blockade radius
  double scale = 0.0; // um per normalized unit
  double dMin = 0.0;  // normalized minimum separation

  static Layout build(const PointList& homes, const PointList& hubs, double rb,
                      double scale, double dMin);
  [[nodiscard]] PointList positions() const;
  [[nodiscard]] const Point& position(int trap) const {
    return traps[static_cast<std::size_t>(trap)].position;
  }
  [[nodiscard]] int trapCount() const { return static_cast<int>(traps.size()); }
  [[nodiscard]] double trapDistance(int a, int b) const {
    return distance(position(a), position(b));
  }
};

/// Atom-to-trap bijection onto the occupied traps. Atom i starts in (and
/// calls home) trap i.
class Occupancy {
public:
  Occupancy() = default;
  Occupancy(int numAtoms, int numTraps);
  /// Arbitrary placement; throws std::invalid_argument unless `atomTrap` is
  /// injective into [0, numTraps).
  static Occupancy fromAssignment(const std::vector<int>& atomTrap, int numTraps);

  [[nodiscard]] int numAtoms() const { return static_cast<int>(atomTrap_.size()); }
  [[nodiscard]] int numTraps() const { return static_cast<int>(trapAtom_.size()); }
  [[nodiscard]] int trapOf(int atom) const {
    return atomTrap_[static_cast<std::size_t>(atom)];
  }
  /// -1 when the trap is empty.
  [[nodiscard]] int atomAt(int trap) const {
    return trapAtom_[static_cast<std::size_t>(trap)];
  }
  [[nodiscard]] bool isEmpty(int trap) const { return atomAt(trap) < 0; }
  [[nodiscard]] static int home(int atom) { return atom; }
  [[nodiscard]] bool atHome(int atom) const { return trapOf(atom) == home(atom); }

  /// Moves an atom into an empty trap; throws std::logic_error otherwise.
  void move(int atom, int trap);

  friend bool operator==(const Occupancy&, const Occupancy&) = default;

private:
  std::vector<int> atomTrap_;
  std::vector<int> trapAtom_;
};

enum class OpKind { OneQ, CZ, SwapMacro, Shuttle };

std::string toString(OpKind kind);
OpKind opKindFromString(const std::string& s);

/// One scheduled operation. Trap fields record where the op executes:
/// CZ the traps of both atoms, SwapMacro the exchanged traps (u, v),
/// Shuttle the source and destination.
struct ScheduledOp {
  OpKind kind = OpKind::OneQ;
  int atomA = -1;
  int atomB = -1;
  int trapA = -1;
  int trapB = -1;
  double pathLength = 0.0; // shuttles only, normalized units
  double duration = 0.0;   // us
  long long gate = -1;     // source gate index, gates only
  long long plan = -1;     // transport plan id, transport steps only

  [[nodiscard]] bool blockades() const {
    return kind == OpKind::CZ || kind == OpKind::SwapMacro;
  }
  friend bool operator==(const ScheduledOp&, const ScheduledOp&) = default;
};

using Layer = std::vector<ScheduledOp>;

enum class Method { ProposedRing, Proposed, NoEviction, NoHub };

std::string toString(Method m);
Method methodFromString(const std::string& s);

struct CompileConfig {
  bool hubsEnabled = true;
  bool evictionEnabled = true;
  bool ringEnabled = true;
  double budgetSeconds = 900.0;
  int evictionDepthCap = 8;
  /// Parallel CZs conflict when a cross-pair distance is below factor*rb.
  double blockadeFactor = 1.0;

  static CompileConfig forMethod(Method m);
};

struct TransportStats {
  std::size_t decisions = 0;
  /// Decisions where at least one single-shuttle (empty target) plan existed.
  std::size_t decisionsWithDirectShuttle = 0;
  std::size_t swapPlansChosen = 0;
  std::size_t shuttlePlansChosen = 0;
};

struct Schedule {
  std::vector<Layer> layers;
  Occupancy finalOccupancy;
  CompileConfig config;
  TransportStats stats;
};

enum class PlanKind { Swap, Shuttle };

struct TransportPlan {
  PlanKind kind = PlanKind::Swap;
  std::vector<ScheduledOp> steps;
  double totalDuration = 0.0;
  double negLogFidelity = 0.0;
  double score = 0.0;
  int movingAtom = -1;
  int targetTrap = -1;
  int direction = 0; // 0: first atom moves, 1: second atom moves
  int evictions = 0;
};

/// Read-only inputs shared by the transport routines.
struct TransportContext {
  const Layout& layout;
  const DistanceCache& cache;
  const OperatingPoint& op;
  const CompileConfig& cfg;
};

bool czFeasible(const Occupancy& occ, const Layout& layout, int a, int b);

/// CZ-like ops (CZ, SwapMacro) conflict when any cross-pair trap distance is
/// below `blockadeRadius`; other ops never conflict.
bool layerAdmits(const Layer& layer, const ScheduledOp& op, const Layout& layout,
                 double blockadeRadius);

double stepNegLogFidelity(const ScheduledOp& step, const OperatingPoint& op);

/// Eq-style score (t/T_eff - sum ln f)/alpha; 0 for an empty plan.
double planScore(const TransportPlan& plan, const OperatingPoint& op,
                 double alpha);

/// Fills duration, fidelity and score of a plan from its steps.
void finalizePlan(TransportPlan& plan, const OperatingPoint& op, double alpha);

std::optional<TransportPlan> swapPlan(int a, int b, const Occupancy& occ,
                                      const TransportContext& ctx);

std::vector<TransportPlan> shuttlePlans(int a, int b, const Occupancy& occ,
                                        const TransportContext& ctx,
                                        const std::set<int>& readyAtoms);

/// Total order used to pick among shuttle plans: score, duration, target
/// trap, direction.
bool shuttlePlanBefore(const TransportPlan& x, const TransportPlan& y);

/// Lowest-score plan; exact ties go to shuttling. Throws NoValidTransport
/// (with atom ids) when no plan exists.
TransportPlan decideTransport(int a, int b, const Occupancy& occ,
                              const TransportContext& ctx,
                              const std::set<int>& readyAtoms,
                              TransportStats* stats = nullptr);

/// ASAP layering over the dependency DAG with transport insertion. Throws
/// NoValidTransport (logical qubits, gate index) and BudgetExceeded.
Schedule transpile(const Circuit& circuit, const Layout& layout,
                   const DistanceCache& cache, const CompileConfig& cfg,
                   const OperatingPoint& op,
                   std::optional<std::chrono::steady_clock::time_point> deadline = {});

enum class ViolationKind {
  AtomReuse,
  OccupancyClash,
  ShuttleSource,
  CzOutOfRange,
  SwapOutOfRange,
  LayerBlockade,
  LogicalMismatch,
  DurationMismatch,
  BadReference,
};

std::string toString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t layer = 0;
  std::string detail;
};

struct ValidationReport {
  std::optional<Violation> violation;
  [[nodiscard]] bool ok() const { return !violation.has_value(); }
};

/// Replays a schedule from the initial occupancy and reports the first
/// constraint violation.
ValidationReport validateSchedule(const Schedule& schedule,
                                  const Circuit& circuit, const Layout& layout,
                                  const OperatingPoint& op);

} // namespace atomroute
