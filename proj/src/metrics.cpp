#include "atomroute/metrics.hpp"

#include "atomroute/errors.hpp"
#include "atomroute/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace atomroute {

bool segmentsIntersect(const Point& p1, const Point& p2, const Point& q1,
                       const Point& q2) {
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
  auto onSegment = [](const Point& a, const Point& b, const Point& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
  };
  const int d1 = sign(cross(q1, q2, p1));
  const int d2 = sign(cross(q1, q2, p2));
  const int d3 = sign(cross(p1, p2, q1));
  const int d4 = sign(cross(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) {
    return true;
  }
  return (d1 == 0 && onSegment(q1, q2, p1)) || (d2 == 0 && onSegment(q1, q2, p2)) ||
         (d3 == 0 && onSegment(p1, p2, q1)) || (d4 == 0 && onSegment(p1, p2, q2));
}

OpCounts countOps(const Schedule& schedule) {
  OpCounts c;
  c.layers = schedule.layers.size();
  for (const auto& layer : schedule.layers) {
    for (const auto& op : layer) {
      switch (op.kind) {
      case OpKind::OneQ:
        ++c.oneq;
        break;
      case OpKind::CZ:
        ++c.cz;
        break;
      case OpKind::SwapMacro:
        ++c.swaps;
        break;
      case OpKind::Shuttle:
        ++c.shuttles;
        break;
      }
    }
  }
  return c;
}

namespace {

double layerDuration(const Layer& layer) {
  double t = 0.0;
  for (const auto& op : layer) {
    t = std::max(t, op.duration);
  }
  return t;
}

} // namespace

double executionTime(const Schedule& schedule) {
  double total = 0.0;
  for (const auto& layer : schedule.layers) {
    total += layerDuration(layer);
  }
  return total;
}

double logFidelity(const Schedule& schedule, const OperatingPoint& op) {
  const auto c = countOps(schedule);
  const double decoherence = executionTime(schedule) / tEff(op);
  const double gates = static_cast<double>(c.oneq) * std::log(op.f1Q) +
                       static_cast<double>(c.cz) * std::log(op.fCZ) +
                       static_cast<double>(c.swaps) *
                           (3.0 * std::log(op.fCZ) + 4.0 * std::log(op.f1Q));
  const double shuttles = static_cast<double>(c.shuttles) * std::log(op.fShuttle);
  return (gates - decoherence) + shuttles;
}

M2Result batchShuttlesM2(const Schedule& schedule, const Layout& layout) {
  struct Member {
    std::size_t layer;
    std::size_t index;
    const ScheduledOp* op;
  };
  struct Batch {
    std::vector<Member> members;
    std::size_t first = 0;
    std::size_t last = 0;
    std::set<int> atoms;
  };

  // layers in which each atom is acted on by a non-shuttle op
  std::vector<std::vector<std::size_t>> busy(static_cast<std::size_t>(layout.numQubits));
  std::vector<std::vector<std::size_t>> moved(static_cast<std::size_t>(layout.numQubits));
  std::vector<Member> shuttles;
  for (std::size_t li = 0; li < schedule.layers.size(); ++li) {
    const auto& layer = schedule.layers[li];
    for (std::size_t k = 0; k < layer.size(); ++k) {
      const auto& op = layer[k];
      if (op.kind == OpKind::Shuttle) {
        shuttles.push_back({li, k, &op});
        moved[static_cast<std::size_t>(op.atomA)].push_back(li);
        continue;
      }
      for (const int a : {op.atomA, op.atomB}) {
        if (a >= 0) {
          busy[static_cast<std::size_t>(a)].push_back(li);
        }
      }
    }
  }
  auto busyWithin = [&](int atom, std::size_t lo, std::size_t hi) {
    const auto& v = busy[static_cast<std::size_t>(atom)];
    const auto it = std::lower_bound(v.begin(), v.end(), lo);
    return it != v.end() && *it <= hi;
  };
  // shuttles of `atom` inside [lo, hi] other than the one at layer `own`
  auto movedWithin = [&](int atom, std::size_t lo, std::size_t hi, std::size_t own) {
    const auto& v = moved[static_cast<std::size_t>(atom)];
    for (auto it = std::lower_bound(v.begin(), v.end(), lo); it != v.end() && *it <= hi; ++it) {
      if (*it != own) {
        return true;
      }
    }
    return false;
  };

  M2Result result;
  std::vector<Batch> batches;
  for (const auto& s : shuttles) {
    const Point& a1 = layout.position(s.op->trapA);
    const Point& a2 = layout.position(s.op->trapB);
    std::size_t chosen = batches.size();
    for (std::size_t b = 0; b < batches.size() && chosen == batches.size(); ++b) {
      Batch& batch = batches[b];
      if (batch.atoms.count(s.op->atomA) != 0) {
        continue;
      }
      bool ok = true;
      for (const auto& m : batch.members) {
        if (segmentsIntersect(a1, a2, layout.position(m.op->trapA),
                              layout.position(m.op->trapB))) {
          ok = false;
          break;
        }
      }
      const std::size_t lo = std::min(batch.first, s.layer);
      const std::size_t hi = std::max(batch.last, s.layer);
      // batch atoms may only be touched by their own member shuttle in the window
      for (const auto& m : batch.members) {
        ok = ok && !busyWithin(m.op->atomA, lo, hi) &&
             !movedWithin(m.op->atomA, lo, hi, m.layer);
      }
      ok = ok && !busyWithin(s.op->atomA, lo, hi) &&
           !movedWithin(s.op->atomA, lo, hi, s.layer);
      if (ok) {
        chosen = b;
      }
    }
    if (chosen == batches.size()) {
      batches.emplace_back();
      batches.back().first = s.layer;
    }
    Batch& batch = batches[chosen];
    batch.members.push_back(s);
    batch.first = std::min(batch.first, s.layer);
    batch.last = std::max(batch.last, s.layer);
    batch.atoms.insert(s.op->atomA);
    result.assignment.push_back(chosen);
  }

  // Every shuttle except each batch's longest drops out of its layer's charge.
  std::set<const ScheduledOp*> absorbed;
  for (const auto& batch : batches) {
    const Member* longest = &batch.members.front();
    for (const auto& m : batch.members) {
      if (m.op->duration > longest->op->duration) {
        longest = &m;
      }
    }
    for (const auto& m : batch.members) {
      if (&m != longest) {
        absorbed.insert(m.op);
      }
    }
  }
  for (const auto& layer : schedule.layers) {
    double t = 0.0;
    for (const auto& op : layer) {
      if (absorbed.count(&op) == 0) {
        t = std::max(t, op.duration);
      }
    }
    result.execTimeUs += t;
  }
  result.batches = batches.size();
  return result;
}

std::vector<std::pair<double, double>> sweepFsh(const Schedule& schedule,
                                                const OperatingPoint& op,
                                                const std::vector<double>& values) {
  std::vector<std::pair<double, double>> rows;
  for (const double v : values) {
    if (!(v > 0.0 && v <= 1.0)) {
      throw DegenerateInput("shuttle fidelity must lie in (0, 1]");
    }
    OperatingPoint swept = op;
    swept.fShuttle = v;
    rows.emplace_back(v, logFidelity(schedule, swept));
  }
  return rows;
}

MetricsReport computeMetrics(const Schedule& schedule, const Layout& layout,
                             const OperatingPoint& op) {
  MetricsReport r;
  r.counts = countOps(schedule);
  r.execTimeUs = executionTime(schedule);
  r.logFidelity = logFidelity(schedule, op);
  r.fidelity = std::exp(r.logFidelity);
  const auto m2 = batchShuttlesM2(schedule, layout);
  r.m2ExecTimeUs = m2.execTimeUs;
  r.m2Batches = m2.batches;
  return r;
}

} // namespace atomroute
