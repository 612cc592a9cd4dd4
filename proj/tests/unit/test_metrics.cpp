#include "atomroute/metrics.hpp"
#include "atomroute/pipeline.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace atomroute;

namespace {

const OperatingPoint kOp{};

ScheduledOp shuttle(int atom, int from, int to, const Layout& l) {
  ScheduledOp s;
  s.kind = OpKind::Shuttle;
  s.atomA = atom;
  s.trapA = from;
  s.trapB = to;
  s.pathLength = l.trapDistance(from, to);
  s.duration = shuttleDuration(s.pathLength, l.scale, kOp.tAct, kOp.vShuttle);
  return s;
}

// Two atoms shuttle right along parallel rows, in consecutive layers.
struct ParallelPair {
  Layout layout = fixture::layout({{0.1, 0.2}, {0.1, 0.6}}, {{0.3, 0.2}, {0.5, 0.6}}, 0.25);
  Schedule schedule;
  ParallelPair() {
    schedule.layers.push_back({shuttle(0, 0, 2, layout)});
    schedule.layers.push_back({shuttle(1, 1, 3, layout)});
  }
};

Schedule oneLayer(std::initializer_list<OpKind> kinds) {
  Schedule s;
  Layer layer;
  int atom = 0;
  for (const auto k : kinds) {
    ScheduledOp o;
    o.kind = k;
    o.atomA = atom++;
    o.duration = k == OpKind::CZ ? kOp.tCZ : k == OpKind::OneQ ? kOp.t1Q : 0.0;
    if (k == OpKind::SwapMacro) {
      o.duration = kOp.swapDuration();
    }
    layer.push_back(o);
  }
  s.layers.push_back(layer);
  return s;
}

} // namespace

TEST(Metrics, SingleCzLayer) {
  const auto s = oneLayer({OpKind::CZ});
  EXPECT_DOUBLE_EQ(executionTime(s), 0.8);
  EXPECT_NEAR(logFidelity(s, kOp), -0.00501308315687762, 1e-15);
}

TEST(Metrics, LayerChargedByLongestOp) {
  const auto s = oneLayer({OpKind::CZ, OpKind::OneQ, OpKind::SwapMacro});
  EXPECT_DOUBLE_EQ(executionTime(s), 10.4);
  const auto c = countOps(s);
  EXPECT_EQ(c.cz, 1U);
  EXPECT_EQ(c.oneq, 1U);
  EXPECT_EQ(c.swaps, 1U);
  EXPECT_EQ(c.layers, 1U);
}

TEST(Metrics, EmptyScheduleIsPerfect) {
  const Schedule s;
  EXPECT_EQ(executionTime(s), 0.0);
  EXPECT_EQ(logFidelity(s, kOp), 0.0);
}

TEST(Metrics, LogFidelityMatchesLayerwiseOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto opts = CompileOptions::forMethod(Method::ProposedRing);
    opts.anneal.maxiter = 1500;
    opts.anneal.seed = seed;
    opts.op.fShuttle = 0.995;
    const auto art = compileCircuit(oracle::randomCircuit(9, 50, seed), opts);
    ASSERT_EQ(art.outcome, Outcome::Ok);
    const double got = logFidelity(*art.schedule, opts.op);
    EXPECT_NEAR(got, oracle::logFidelityOracle(*art.schedule, opts.op),
                1e-12 * std::max(1.0, std::abs(got)));
  }
}

TEST(Metrics, DeepScheduleDoesNotUnderflowLogFidelity) {
  Schedule s;
  for (int i = 0; i < 200000; ++i) {
    s.layers.push_back(oneLayer({OpKind::CZ}).layers[0]);
  }
  const double lf = logFidelity(s, kOp);
  EXPECT_TRUE(std::isfinite(lf));
  EXPECT_LT(lf, -700.0);
}

TEST(M2, ParallelShuttlesBatch) {
  const ParallelPair p;
  const auto r = batchShuttlesM2(p.schedule, p.layout);
  const double d1 = p.schedule.layers[0][0].duration;
  const double d2 = p.schedule.layers[1][0].duration;
  EXPECT_EQ(r.batches, 1U);
  EXPECT_DOUBLE_EQ(executionTime(p.schedule) - r.execTimeUs, std::min(d1, d2));
}

TEST(M2, CrossingShuttlesStaySerial) {
  const auto l = fixture::layout({{0.1, 0.2}, {0.1, 0.6}}, {{0.5, 0.6}, {0.5, 0.2}}, 0.25);
  Schedule s;
  s.layers.push_back({shuttle(0, 0, 2, l)});
  s.layers.push_back({shuttle(1, 1, 3, l)});
  const auto r = batchShuttlesM2(s, l);
  EXPECT_EQ(r.batches, 2U);
  EXPECT_DOUBLE_EQ(r.execTimeUs, executionTime(s));
}

TEST(M2, SameAtomShuttlesStaySerial) {
  const auto l = fixture::layout({{0.1, 0.2}}, {{0.3, 0.2}, {0.3, 0.6}}, 0.25);
  Schedule s;
  s.layers.push_back({shuttle(0, 0, 1, l)});
  s.layers.push_back({shuttle(0, 1, 2, l)});
  EXPECT_EQ(batchShuttlesM2(s, l).batches, 2U);
}

TEST(M2, AtomBusyInBetweenBlocksBatch) {
  const ParallelPair base;
  Schedule s = base.schedule;
  ScheduledOp gate;
  gate.kind = OpKind::OneQ;
  gate.atomA = 1;
  gate.trapA = 1;
  gate.duration = kOp.t1Q;
  s.layers.insert(s.layers.begin() + 1, Layer{gate});
  EXPECT_EQ(batchShuttlesM2(s, base.layout).batches, 2U);
}

TEST(M2, NeverSlowerOnCompiledSchedules) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto opts = CompileOptions::forMethod(Method::ProposedRing);
    opts.anneal.maxiter = 1500;
    opts.anneal.seed = seed;
    const auto art = compileCircuit(oracle::randomCircuit(10, 60, seed), opts);
    ASSERT_EQ(art.outcome, Outcome::Ok);
    const auto r = batchShuttlesM2(*art.schedule, art.layout);
    EXPECT_LE(r.execTimeUs, executionTime(*art.schedule));
    EXPECT_EQ(r.assignment.size(), countOps(*art.schedule).shuttles);
  }
}

TEST(Sweep, DeltaIsShuttleCountTimesLog) {
  const ParallelPair p;
  const auto rows = sweepFsh(p.schedule, kOp, {1.0, 0.999, 0.99});
  ASSERT_EQ(rows.size(), 3U);
  for (const auto& [f, lf] : rows) {
    EXPECT_NEAR(lf - rows[0].second, 2.0 * std::log(f), 1e-12);
  }
}

TEST(Sweep, NinetyOneShuttles) {
  const auto l = fixture::layout({{0.1, 0.2}}, {{0.3, 0.2}}, 0.25);
  Schedule s;
  for (int k = 0; k < 91; ++k) {
    s.layers.push_back({k % 2 == 0 ? shuttle(0, 0, 1, l) : shuttle(0, 1, 0, l)});
  }
  const auto rows = sweepFsh(s, kOp, {1.0, 0.99});
  EXPECT_NEAR(rows[1].second - rows[0].second, -0.914580562668632, 1e-12);
}

TEST(Sweep, ZeroShuttlesInvariant) {
  const auto s = oneLayer({OpKind::CZ, OpKind::OneQ});
  const auto rows = sweepFsh(s, kOp, {1.0, 0.999, 0.99});
  EXPECT_EQ(rows[0].second, rows[1].second);
  EXPECT_EQ(rows[0].second, rows[2].second);
}

TEST(Segments, IntersectionCases) {
  EXPECT_TRUE(segmentsIntersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  EXPECT_FALSE(segmentsIntersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_TRUE(segmentsIntersect({0, 0}, {1, 0}, {1, 0}, {2, 1})); // shared endpoint
  EXPECT_TRUE(segmentsIntersect({0, 0}, {2, 0}, {1, 0}, {3, 0})); // collinear overlap
  EXPECT_FALSE(segmentsIntersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
}
