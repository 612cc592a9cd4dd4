#include "atomroute/pipeline.hpp"

#include "atomroute/errors.hpp"
#include "atomroute/motion.hpp"

#include <chrono>
#include <stdexcept>

namespace atomroute {

CompileOptions CompileOptions::forMethod(Method m) {
  CompileOptions o;
  o.applyMethod(m);
  return o;
}

void CompileOptions::applyMethod(Method m) {
  method = m;
  const auto flags = CompileConfig::forMethod(m);
  compile.hubsEnabled = flags.hubsEnabled;
  compile.evictionEnabled = flags.evictionEnabled;
  compile.ringEnabled = flags.ringEnabled;
  hubs.ringEnabled = flags.ringEnabled;
  if (!flags.hubsEnabled) {
    hubs.nHub = 0;
  } else if (hubs.nHub == 0) {
    hubs.nHub = HubConfig{}.nHub;
  }
}

std::string toString(Outcome o) {
  switch (o) {
  case Outcome::Ok:
    return "Ok";
  case Outcome::NoValidTransport:
    return "NoValidTransport";
  case Outcome::BudgetExceeded:
    return "BudgetExceeded";
  }
  return "?";
}

Outcome outcomeFromString(const std::string& s) {
  for (const auto o : {Outcome::Ok, Outcome::NoValidTransport, Outcome::BudgetExceeded}) {
    if (toString(o) == s) {
      return o;
    }
  }
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

CompileArtifact compileCircuit(const Circuit& circuit, const CompileOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(options.compile.budgetSeconds));
  options.op.validate();

  CompileArtifact art;
  art.circuit = circuit;
  art.options = options;
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  try {
    const auto graph = interactionGraph(circuit);
    if (options.layout) {
      if (static_cast<int>(options.layout->homes.size()) != circuit.numQubits) {
        throw DegenerateInput("fixed layout has " +
                              std::to_string(options.layout->homes.size()) +
                              " homes for " + std::to_string(circuit.numQubits) + " qubits");
      }
      art.placement.coords = options.layout->homes;
      art.placement.seed = options.anneal.seed;
      if (circuit.numQubits >= 2) {
        art.placement.objectiveValue = placementObjective(graph, art.placement.coords);
      }
    } else {
      art.placement = optimizePlacement(graph, options.anneal, deadline);
    }
    PointList homes = art.placement.coords;
    if (options.layout && options.layout->rb) {
      art.radius.rb = *options.layout->rb;
      art.radius.rule = RadiusRule::Given;
      art.radius.scale = scaleFactor(art.radius.rb, options.op.rbPhys);
    } else if (homes.size() >= 2) {
      art.radius = selectRadius(homes, options.op.rbPhys);
    } else {
      // a lone qubit never interacts; any positive radius works
      art.radius.rb = 1.0;
      art.radius.scale = scaleFactor(1.0, options.op.rbPhys);
    }
    const double dMin = options.op.dMinPhys / art.radius.scale;
    if (!repairMinSeparation(homes, dMin)) {
      throw std::runtime_error("could not separate home traps to the minimum distance");
    }
    art.placement.coords = homes;

    if (options.compile.hubsEnabled && options.layout && options.layout->hubs) {
      for (const auto& p : *options.layout->hubs) {
        HubCandidate h;
        h.position = p;
        h.origin = HubOrigin::Given;
        art.hubs.hubs.push_back(h);
      }
    } else if (options.compile.hubsEnabled) {
      HubConfig hubCfg = options.hubs;
      hubCfg.ringEnabled = options.compile.ringEnabled;
      art.hubs = placeHubs(graph, homes, art.radius.rb, hubCfg);
    }
    art.layout = Layout::build(homes, art.hubs.positions(), art.radius.rb,
                               art.radius.scale, dMin);
    const auto cache = precomputeDistances(art.layout.positions(), dMin,
                                           options.cellSizeFactor * dMin);
    if (Clock::now() > deadline) {
      throw BudgetExceeded(options.compile.budgetSeconds);
    }
    art.schedule = transpile(circuit, art.layout, cache, options.compile,
                             options.op, deadline);
    art.metrics = computeMetrics(*art.schedule, art.layout, options.op);
    art.outcome = Outcome::Ok;
  } catch (const NoValidTransport& e) {
    art.outcome = Outcome::NoValidTransport;
    art.detail = e.what();
    art.failure = TransportFailure{e.qubitA, e.qubitB, e.gate, e.swapUnavailable,
                                   e.shuttleUnavailable, e.evictionUnavailable};
    art.schedule.reset();
    art.metrics.reset();
  } catch (const BudgetExceeded&) {
    art.outcome = Outcome::BudgetExceeded;
    art.detail = BudgetExceeded(options.compile.budgetSeconds).what();
    art.schedule.reset();
    art.metrics.reset();
  }
  art.compileSeconds = elapsed();
  return art;
}

} // namespace atomroute
