#include "atomroute/errors.hpp"
#include "atomroute/transpiler.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace atomroute;

namespace {

const OperatingPoint kOp{};
const CompileConfig kFull = CompileConfig::forMethod(Method::ProposedRing);

ScheduledOp shuttleOfDuration(double us) {
  ScheduledOp s;
  s.kind = OpKind::Shuttle;
  s.duration = us;
  return s;
}

TransportPlan planOf(std::vector<ScheduledOp> steps) {
  TransportPlan p;
  p.steps = std::move(steps);
  return p;
}

ScheduledOp swapStep() {
  ScheduledOp s;
  s.kind = OpKind::SwapMacro;
  s.duration = kOp.swapDuration();
  return s;
}

} // namespace

TEST(Feasibility, CzWithinRadiusInclusive) {
  const auto l = fixture::layout({{0.1, 0.1}, {0.4, 0.1}, {0.9, 0.9}}, {}, 0.3);
  const Occupancy occ(3, 3);
  EXPECT_TRUE(czFeasible(occ, l, 0, 1));
  EXPECT_FALSE(czFeasible(occ, l, 0, 2));
}

TEST(Feasibility, LayerBlockadeOnlyForEntanglingOps) {
  const auto l = fixture::layout({{0.1, 0.1}, {0.2, 0.1}, {0.3, 0.1}, {0.4, 0.1}, {0.9, 0.9}},
                                 {}, 0.15);
  ScheduledOp cz01{OpKind::CZ, 0, 1, 0, 1};
  ScheduledOp cz23{OpKind::CZ, 2, 3, 2, 3};
  ScheduledOp one4{OpKind::OneQ, 4, -1, 4, -1};
  ScheduledOp sw23{OpKind::SwapMacro, 2, 3, 2, 3};
  EXPECT_FALSE(layerAdmits({cz01}, cz23, l, l.rb));
  EXPECT_FALSE(layerAdmits({cz01}, sw23, l, l.rb));
  EXPECT_TRUE(layerAdmits({cz01}, one4, l, l.rb));
  EXPECT_TRUE(layerAdmits({one4}, cz23, l, l.rb));
  // a smaller effective radius lets them through
  EXPECT_TRUE(layerAdmits({cz01}, cz23, l, 0.05));
}

TEST(Score, EmptyPlanIsZero) { EXPECT_EQ(planScore(TransportPlan{}, kOp, 1.0), 0.0); }

TEST(Score, SingleSwap) {
  EXPECT_NEAR(planScore(planOf({swapStep()}), kOp, 1.0), 0.01904666413830033, 1e-15);
  EXPECT_NEAR(stepNegLogFidelity(swapStep(), kOp), 0.019039626804966996, 1e-15);
}

TEST(Score, SingleShuttle) {
  const double t = shuttleDuration(0.5, 20.0, kOp.tAct, kOp.vShuttle);
  EXPECT_NEAR(planScore(planOf({shuttleOfDuration(t)}), kOp, 1.0), 1.4763636e-4, 1e-11);
}

TEST(Score, AlphaDividesScore) {
  const auto p = planOf({swapStep(), swapStep()});
  EXPECT_DOUBLE_EQ(planScore(p, kOp, 2.0), planScore(p, kOp, 1.0) / 2.0);
}

TEST(Score, DominanceThreshold) {
  // t_SWAP + T_eff * (-3 ln F_CZ - 4 ln F_1Q)
  const double threshold = 28147.779514729555;
  const double swap = planScore(planOf({swapStep()}), kOp, 1.0);
  EXPECT_LT(planScore(planOf({shuttleOfDuration(threshold - 0.01)}), kOp, 1.0), swap);
  EXPECT_GT(planScore(planOf({shuttleOfDuration(threshold + 0.01)}), kOp, 1.0), swap);
  // a unit-square diagonal at the smallest physical scale stays far below it
  const double longest = shuttleDuration(std::sqrt(2.0), 6.0 / 0.05, kOp.tAct, kOp.vShuttle);
  EXPECT_LT(longest, threshold);
}

TEST(SwapPlan, OneIntermediate) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}}, {}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  const auto p = swapPlan(0, 2, Occupancy(3, 3), ctx);
  ASSERT_TRUE(p);
  ASSERT_EQ(p->steps.size(), 1U);
  EXPECT_EQ(p->steps[0].kind, OpKind::SwapMacro);
  EXPECT_EQ(p->steps[0].trapA, 0);
  EXPECT_EQ(p->steps[0].trapB, 1);
}

TEST(SwapPlan, ChainOfIntermediates) {
  PointList homes;
  for (int i = 0; i < 6; ++i) {
    homes.push_back({0.1 + 0.15 * i, 0.5});
  }
  const auto l = fixture::layout(homes, {}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  const auto p = swapPlan(0, 5, Occupancy(6, 6), ctx);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->steps.size(), 4U);
  EXPECT_NEAR(p->totalDuration, 4 * 10.4, 1e-12);
}

TEST(SwapPlan, DisconnectedGivesNone) {
  const auto l = fixture::layout({{0.1, 0.1}, {0.9, 0.9}}, {}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  EXPECT_FALSE(swapPlan(0, 1, Occupancy(2, 2), ctx));
}

TEST(ShuttlePlan, DirectToEmptyHub) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.8, 0.5}}, {{0.7, 0.5}}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  const auto plans = shuttlePlans(0, 1, Occupancy(2, 3), ctx, {});
  ASSERT_EQ(plans.size(), 1U);
  EXPECT_EQ(plans[0].movingAtom, 0);
  EXPECT_EQ(plans[0].targetTrap, 2);
  EXPECT_EQ(plans[0].evictions, 0);
  EXPECT_NEAR(plans[0].steps[0].pathLength, 0.6, 1e-12);
}

TEST(ShuttlePlan, VacatedHomeIsATarget) {
  // atom 2 has left home; its empty home sits next to atom 1
  const auto l = fixture::layout({{0.1, 0.5}, {0.8, 0.5}, {0.8, 0.65}}, {{0.3, 0.9}}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  Occupancy occ(3, 4);
  occ.move(2, 3);
  const auto plans = shuttlePlans(0, 1, occ, ctx, {});
  ASSERT_FALSE(plans.empty());
  bool homeTarget = false;
  for (const auto& p : plans) {
    homeTarget = homeTarget || (p.targetTrap == 2 && p.evictions == 0);
  }
  EXPECT_TRUE(homeTarget);
}

TEST(ShuttlePlan, EvictsIdleAwayAtom) {
  // atom 2 sits in the only hub near atom 1; its home is far away and empty
  const auto l = fixture::layout({{0.1, 0.5}, {0.8, 0.5}, {0.45, 0.1}}, {{0.7, 0.5}}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  Occupancy occ(3, 4);
  occ.move(2, 3);
  const auto plans = shuttlePlans(0, 1, occ, ctx, {});
  ASSERT_EQ(plans.size(), 1U);
  EXPECT_EQ(plans[0].evictions, 1);
  ASSERT_EQ(plans[0].steps.size(), 2U);
  EXPECT_EQ(plans[0].steps[0].atomA, 2);
  EXPECT_EQ(plans[0].steps[0].trapB, 2);
  EXPECT_EQ(plans[0].steps[1].atomA, 0);

  // a ready occupant is not evictable
  EXPECT_TRUE(shuttlePlans(0, 1, occ, ctx, {2}).empty());
  // nor is anything when eviction is disabled
  const auto noEvict = CompileConfig::forMethod(Method::NoEviction);
  const TransportContext ctx2{l, cache, kOp, noEvict};
  EXPECT_TRUE(shuttlePlans(0, 1, occ, ctx2, {}).empty());
}

TEST(ShuttlePlan, AtomAtHomeIsNotEvicted) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.8, 0.5}, {0.7, 0.5}}, {}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  EXPECT_TRUE(shuttlePlans(0, 1, Occupancy(3, 3), ctx, {}).empty());
}

TEST(ShuttlePlan, UnreachableTargetSkipped) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.8, 0.5}}, {{0.7, 0.5}}, 0.2);
  const auto cache = fixture::euclideanCache(l, std::pair{0, 2});
  const TransportContext ctx{l, cache, kOp, kFull};
  const auto plans = shuttlePlans(0, 1, Occupancy(2, 3), ctx, {});
  // only atom 1 moving next to atom 0 could work, and no trap is near atom 0
  EXPECT_TRUE(plans.empty());
}

TEST(Decision, ShuttleBeatsSwapAtDefaultPoint) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}}, {{0.4, 0.65}}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  TransportStats stats;
  const auto p = decideTransport(0, 2, Occupancy(3, 4), ctx, {}, &stats);
  EXPECT_EQ(p.kind, PlanKind::Shuttle);
  EXPECT_EQ(stats.decisions, 1U);
  EXPECT_EQ(stats.decisionsWithDirectShuttle, 1U);
  EXPECT_EQ(stats.shuttlePlansChosen, 1U);
}

TEST(Decision, SwapWinsWhenShuttlingIsHeavilyPenalized) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}}, {{0.4, 0.65}}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  OperatingPoint op;
  op.fShuttle = 0.5;
  const TransportContext ctx{l, cache, op, kFull};
  EXPECT_EQ(decideTransport(0, 2, Occupancy(3, 4), ctx, {}).kind, PlanKind::Swap);
}

TEST(Decision, NoValidTransportCarriesReasons) {
  const auto l = fixture::layout({{0.1, 0.1}, {0.9, 0.9}}, {}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const TransportContext ctx{l, cache, kOp, kFull};
  try {
    decideTransport(0, 1, Occupancy(2, 2), ctx, {});
    FAIL() << "expected NoValidTransport";
  } catch (const NoValidTransport& e) {
    EXPECT_EQ(e.qubitA, 0);
    EXPECT_EQ(e.qubitB, 1);
    EXPECT_TRUE(e.swapUnavailable);
    EXPECT_TRUE(e.shuttleUnavailable);
    EXPECT_TRUE(e.evictionUnavailable);
  }
}

TEST(Decision, AgreesWithBruteForceOnRandomMicroInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int compared = 0;
  for (int inst = 0; inst < 400; ++inst) {
    const int atoms = 2 + static_cast<int>(rng() % 3);
    const int traps = atoms + 1 + static_cast<int>(rng() % static_cast<unsigned>(6 - atoms));
    PointList homes;
    PointList hubs;
    for (int t = 0; t < traps; ++t) {
      (t < atoms ? homes : hubs).push_back({u(rng), u(rng)});
    }
    const double rb = 0.25 + 0.5 * u(rng);
    const auto l = fixture::layout(homes, hubs, rb);
    DistanceCache cache(static_cast<std::size_t>(traps));
    for (int a = 0; a < traps; ++a) {
      for (int b = a + 1; b < traps; ++b) {
        const bool cut = u(rng) < 0.15;
        cache.set(a, b, cut ? std::nullopt
                            : std::optional<double>(l.trapDistance(a, b) * (1.0 + 0.3 * u(rng))));
      }
    }
    Occupancy occ(atoms, traps);
    for (int k = 0; k < 4; ++k) {
      const int atom = static_cast<int>(rng() % static_cast<unsigned>(atoms));
      const int t = static_cast<int>(rng() % static_cast<unsigned>(traps));
      if (occ.isEmpty(t)) {
        occ.move(atom, t);
      }
    }
    std::set<int> ready;
    for (int a = 0; a < atoms; ++a) {
      if (u(rng) < 0.3) {
        ready.insert(a);
      }
    }
    OperatingPoint op;
    op.fShuttle = std::array{1.0, 0.999, 0.99, 0.9}[rng() % 4];
    op.alphaGate = 0.5 + u(rng);
    CompileConfig cfg = kFull;
    cfg.evictionEnabled = u(rng) < 0.8;
    cfg.evictionDepthCap = 1 + static_cast<int>(rng() % 3);
    const int a = static_cast<int>(rng() % static_cast<unsigned>(atoms));
    const int b = (a + 1 + static_cast<int>(rng() % static_cast<unsigned>(atoms - 1))) % atoms;

    const TransportContext ctx{l, cache, op, cfg};
    const auto want = oracle::bruteForceDecision(a, b, occ, l, cache, op, cfg, ready);
    std::optional<oracle::PlanSummary> got;
    try {
      got = oracle::summarize(decideTransport(a, b, occ, ctx, ready));
    } catch (const NoValidTransport&) {
    }
    ASSERT_EQ(got.has_value(), want.has_value()) << "instance " << inst;
    if (got) {
      EXPECT_EQ(got->kind, want->kind) << "instance " << inst;
      EXPECT_EQ(got->movingAtom, want->movingAtom) << "instance " << inst;
      EXPECT_NEAR(got->score, want->score, 1e-12) << "instance " << inst;
      if (got->kind == PlanKind::Shuttle) {
        EXPECT_EQ(got->targetTrap, want->targetTrap) << "instance " << inst;
        EXPECT_EQ(got->steps, want->steps) << "instance " << inst;
      }
      ++compared;
    }
  }
  EXPECT_GT(compared, 200);
}

TEST(Transpile, LocalCircuitNeedsNoTransport) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}}, {}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  const auto c = parseQasm("OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncz q[0],q[1];\ncz q[1],q[2];\n");
  const auto s = transpile(c, l, cache, kFull, kOp);
  std::size_t ops = 0;
  for (const auto& layer : s.layers) {
    for (const auto& o : layer) {
      EXPECT_TRUE(o.kind == OpKind::CZ || o.kind == OpKind::OneQ);
      ++ops;
    }
  }
  EXPECT_EQ(ops, 3U);
  EXPECT_TRUE(validateSchedule(s, c, l, kOp).ok());
}

TEST(Transpile, LongRangeCzShuttlesThroughHub) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}}, {{0.45, 0.62}}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  const auto c = parseQasm("OPENQASM 2.0;\nqreg q[3];\ncz q[0],q[2];\ncz q[0],q[1];\n");
  const auto s = transpile(c, l, cache, kFull, kOp);
  EXPECT_EQ(s.stats.decisions, 1U);
  EXPECT_EQ(s.stats.shuttlePlansChosen, 1U);
  EXPECT_EQ(s.finalOccupancy.trapOf(0), 3);
  EXPECT_TRUE(validateSchedule(s, c, l, kOp).ok());
}

TEST(Transpile, SwapTracksLogicalQubits) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}}, {}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  const auto c = parseQasm(
      "OPENQASM 2.0;\nqreg q[3];\ncz q[0],q[2];\nh q[0];\ncz q[0],q[1];\ncz q[2],q[0];\n");
  const auto s = transpile(c, l, cache, CompileConfig::forMethod(Method::NoHub), kOp);
  EXPECT_EQ(s.stats.swapPlansChosen, 1U);
  EXPECT_TRUE(validateSchedule(s, c, l, kOp).ok());
}

TEST(Transpile, FailureNamesLogicalPairAndGate) {
  const auto l = fixture::layout({{0.1, 0.1}, {0.9, 0.9}}, {}, 0.2);
  const auto cache = fixture::euclideanCache(l);
  const auto c = parseQasm("OPENQASM 2.0;\nqreg q[2];\nh q[1];\ncz q[1],q[0];\n");
  try {
    transpile(c, l, cache, kFull, kOp);
    FAIL();
  } catch (const NoValidTransport& e) {
    EXPECT_EQ(e.gate, 1U);
    EXPECT_EQ(makePair(e.qubitA, e.qubitB), makePair(0, 1));
  }
}

TEST(Transpile, ExpiredDeadline) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}}, {}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  const auto c = parseQasm("OPENQASM 2.0;\nqreg q[2];\ncz q[0],q[1];\n");
  EXPECT_THROW(transpile(c, l, cache, kFull, kOp,
                         std::chrono::steady_clock::now() - std::chrono::seconds(1)),
               BudgetExceeded);
}

TEST(Transpile, MismatchedLayoutRejected) {
  const auto l = fixture::layout({{0.1, 0.5}, {0.3, 0.5}}, {}, 0.25);
  const auto cache = fixture::euclideanCache(l);
  const auto c = parseQasm("OPENQASM 2.0;\nqreg q[3];\ncz q[0],q[1];\n");
  EXPECT_THROW(transpile(c, l, cache, kFull, kOp), DegenerateInput);
}

TEST(Occupancy, MoveIntoOccupiedTrapThrows) {
  Occupancy occ(2, 3);
  EXPECT_THROW(occ.move(0, 1), std::logic_error);
  occ.move(0, 2);
  EXPECT_TRUE(occ.isEmpty(0));
  EXPECT_EQ(occ.atomAt(2), 0);
  EXPECT_FALSE(occ.atHome(0));
}
