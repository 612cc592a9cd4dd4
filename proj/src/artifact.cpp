#include "atomroute/artifact.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace atomroute {

using nlohmann::json;

namespace {

void rejectUnknown(const json& section, const std::set<std::string>& known,
                   const std::string& where) {
  if (!section.is_object()) {
    throw std::invalid_argument("config section '" + where + "' must be an object");
  }
  for (const auto& [key, value] : section.items()) {
    if (known.count(key) == 0) {
      throw std::invalid_argument("unknown config key '" + where + "." + key + "'");
    }
  }
}

template <typename T>
void readInto(const json& section, const char* key, T& field) {
  if (section.contains(key)) {
    field = section.at(key).get<T>();
  }
}

json opToJson(const ScheduledOp& o) {
  json j{{"kind", toString(o.kind)}, {"dur", o.duration}};
  if (o.atomA >= 0) {
    j["a"] = o.atomA;
  }
  if (o.atomB >= 0) {
    j["b"] = o.atomB;
  }
  if (o.trapA >= 0) {
    j["ta"] = o.trapA;
  }
  if (o.trapB >= 0) {
    j["tb"] = o.trapB;
  }
  if (o.kind == OpKind::Shuttle) {
    j["len"] = o.pathLength;
  }
  if (o.gate >= 0) {
    j["gate"] = o.gate;
  }
  if (o.plan >= 0) {
    j["plan"] = o.plan;
  }
  return j;
}

ScheduledOp opFromJson(const json& j) {
  ScheduledOp o;
  o.kind = opKindFromString(j.at("kind").get<std::string>());
  o.duration = j.at("dur").get<double>();
  o.atomA = j.value("a", -1);
  o.atomB = j.value("b", -1);
  o.trapA = j.value("ta", -1);
  o.trapB = j.value("tb", -1);
  o.pathLength = j.value("len", 0.0);
  o.gate = j.value("gate", -1LL);
  o.plan = j.value("plan", -1LL);
  return o;
}

std::string toString(RadiusRule r) {
  switch (r) {
  case RadiusRule::ConnectedDiameter:
    return "connected-diameter";
  case RadiusRule::MstFallback:
    return "mst-fallback";
  case RadiusRule::Given:
    return "given";
  }
  return "?";
}

RadiusRule radiusRuleFromString(const std::string& s) {
  for (const auto r : {RadiusRule::ConnectedDiameter, RadiusRule::MstFallback, RadiusRule::Given}) {
    if (toString(r) == s) {
      return r;
    }
  }
  throw std::invalid_argument("unknown radius rule '" + s + "'");
}

std::string toString(HubOrigin o) {
  switch (o) {
  case HubOrigin::Midpoint:
    return "midpoint";
  case HubOrigin::Ring:
    return "ring";
  case HubOrigin::Given:
    return "given";
  }
  return "?";
}

HubOrigin hubOriginFromString(const std::string& s) {
  for (const auto o : {HubOrigin::Midpoint, HubOrigin::Ring, HubOrigin::Given}) {
    if (toString(o) == s) {
      return o;
    }
  }
  throw std::invalid_argument("unknown hub origin '" + s + "'");
}

json pointsToJson(const PointList& pts) {
  json out = json::array();
  for (const auto& p : pts) {
    out.push_back({p.x, p.y});
  }
  return out;
}

PointList pointsFromJson(const json& j) {
  PointList out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) {
      throw std::invalid_argument("points must be [x, y] pairs");
    }
    out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return out;
}

} // namespace

json optionsToJson(const CompileOptions& o) {
  json out{
      {"method", toString(o.method)},
      {"operating_point",
       {{"r_b_phys", o.op.rbPhys},
        {"d_min_phys", o.op.dMinPhys},
        {"t_1q", o.op.t1Q},
        {"t_cz", o.op.tCZ},
        {"t_act", o.op.tAct},
        {"v_sh", o.op.vShuttle},
        {"f_1q", o.op.f1Q},
        {"f_cz", o.op.fCZ},
        {"f_sh", o.op.fShuttle},
        {"t1", o.op.t1},
        {"t2", o.op.t2},
        {"alpha_g", o.op.alphaGate},
        {"alpha_s", o.op.alphaShuttle}}},
      {"anneal",
       {{"maxiter", o.anneal.maxiter},
        {"seed", o.anneal.seed},
        {"separation_penalty_weight", o.anneal.separationPenaltyWeight},
        {"moves_per_step", o.anneal.movesPerStep},
        {"interacting_pairs_only", o.anneal.interactingPairsOnly}}},
      {"hubs",
       {{"n_hub", o.hubs.nHub},
        {"ring_enabled", o.hubs.ringEnabled},
        {"long_range_factor", o.hubs.longRangeFactor},
        {"ring_radius_factor", o.hubs.ringRadiusFactor},
        {"ring_directions", o.hubs.ringDirections}}},
      {"compile",
       {{"hubs_enabled", o.compile.hubsEnabled},
        {"eviction_enabled", o.compile.evictionEnabled},
        {"ring_enabled", o.compile.ringEnabled},
        {"budget_seconds", o.compile.budgetSeconds},
        {"eviction_depth_cap", o.compile.evictionDepthCap},
        {"blockade_factor", o.compile.blockadeFactor},
        {"cell_size_factor", o.cellSizeFactor}}},
  };
  if (o.layout) {
    json layout{{"homes", pointsToJson(o.layout->homes)}};
    if (o.layout->rb) {
      layout["r_b"] = *o.layout->rb;
    }
    if (o.layout->hubs) {
      layout["hubs"] = pointsToJson(*o.layout->hubs);
    }
    out["layout"] = layout;
  }
  return out;
}

void applyOptionsJson(CompileOptions& o, const json& config) {
  rejectUnknown(config, {"method", "operating_point", "anneal", "hubs", "compile", "layout"},
                "config");
  if (config.contains("method")) {
    o.applyMethod(methodFromString(config.at("method").get<std::string>()));
  }
  if (config.contains("operating_point")) {
    const auto& s = config.at("operating_point");
    rejectUnknown(s, {"r_b_phys", "d_min_phys", "t_1q", "t_cz", "t_act", "v_sh",
                      "f_1q", "f_cz", "f_sh", "t1", "t2", "alpha_g", "alpha_s"},
                  "operating_point");
    readInto(s, "r_b_phys", o.op.rbPhys);
    readInto(s, "d_min_phys", o.op.dMinPhys);
    readInto(s, "t_1q", o.op.t1Q);
    readInto(s, "t_cz", o.op.tCZ);
    readInto(s, "t_act", o.op.tAct);
    readInto(s, "v_sh", o.op.vShuttle);
    readInto(s, "f_1q", o.op.f1Q);
    readInto(s, "f_cz", o.op.fCZ);
    readInto(s, "f_sh", o.op.fShuttle);
    readInto(s, "t1", o.op.t1);
    readInto(s, "t2", o.op.t2);
    readInto(s, "alpha_g", o.op.alphaGate);
    readInto(s, "alpha_s", o.op.alphaShuttle);
  }
  if (config.contains("anneal")) {
    const auto& s = config.at("anneal");
    rejectUnknown(s, {"maxiter", "seed", "separation_penalty_weight",
                      "moves_per_step", "interacting_pairs_only"},
                  "anneal");
    readInto(s, "maxiter", o.anneal.maxiter);
    readInto(s, "seed", o.anneal.seed);
    readInto(s, "separation_penalty_weight", o.anneal.separationPenaltyWeight);
    readInto(s, "moves_per_step", o.anneal.movesPerStep);
    readInto(s, "interacting_pairs_only", o.anneal.interactingPairsOnly);
  }
  if (config.contains("hubs")) {
    const auto& s = config.at("hubs");
    rejectUnknown(s, {"n_hub", "ring_enabled", "long_range_factor",
                      "ring_radius_factor", "ring_directions"},
                  "hubs");
    readInto(s, "n_hub", o.hubs.nHub);
    readInto(s, "ring_enabled", o.hubs.ringEnabled);
    readInto(s, "long_range_factor", o.hubs.longRangeFactor);
    readInto(s, "ring_radius_factor", o.hubs.ringRadiusFactor);
    readInto(s, "ring_directions", o.hubs.ringDirections);
    if (s.contains("ring_enabled")) {
      o.compile.ringEnabled = o.hubs.ringEnabled;
    }
  }
  if (config.contains("compile")) {
    const auto& s = config.at("compile");
    rejectUnknown(s, {"hubs_enabled", "eviction_enabled", "ring_enabled",
                      "budget_seconds", "eviction_depth_cap", "blockade_factor",
                      "cell_size_factor"},
                  "compile");
    readInto(s, "hubs_enabled", o.compile.hubsEnabled);
    readInto(s, "eviction_enabled", o.compile.evictionEnabled);
    readInto(s, "ring_enabled", o.compile.ringEnabled);
    readInto(s, "budget_seconds", o.compile.budgetSeconds);
    readInto(s, "eviction_depth_cap", o.compile.evictionDepthCap);
    readInto(s, "blockade_factor", o.compile.blockadeFactor);
    readInto(s, "cell_size_factor", o.cellSizeFactor);
    o.hubs.ringEnabled = o.compile.ringEnabled;
  }
  if (config.contains("layout")) {
    const auto& s = config.at("layout");
    rejectUnknown(s, {"homes", "r_b", "hubs"}, "layout");
    FixedLayout layout;
    layout.homes = pointsFromJson(s.at("homes"));
    if (s.contains("r_b")) {
      layout.rb = s.at("r_b").get<double>();
    }
    if (s.contains("hubs")) {
      layout.hubs = pointsFromJson(s.at("hubs"));
    }
    o.layout = std::move(layout);
  }
}

json metricsToJson(const MetricsReport& m) {
  json j{{"exec_time_us", m.execTimeUs},
         {"log_fidelity", m.logFidelity},
         {"fidelity", m.fidelity},
         {"counts",
          {{"swaps", m.counts.swaps},
           {"shuttles", m.counts.shuttles},
           {"cz", m.counts.cz},
           {"oneq", m.counts.oneq},
           {"layers", m.counts.layers}}}};
  if (m.m2ExecTimeUs) {
    j["m2_exec_time_us"] = *m.m2ExecTimeUs;
  }
  if (m.m2Batches) {
    j["m2_batches"] = *m.m2Batches;
  }
  return j;
}

json artifactToJson(const CompileArtifact& a) {
  json doc;
  doc["schema_version"] = kArtifactSchemaVersion;
  doc["circuit"] = {{"name", a.circuit.name},
                    {"num_qubits", a.circuit.numQubits},
                    {"gates", a.circuit.gates.size()},
                    {"cz", a.circuit.czCount()},
                    {"qasm", toQasm(a.circuit)}};
  doc["config"] = optionsToJson(a.options);

  json coords = json::array();
  for (const auto& p : a.placement.coords) {
    coords.push_back({p.x, p.y});
  }
  doc["placement"] = {{"coords", coords},
                      {"seed", a.placement.seed},
                      {"objective_value", a.placement.objectiveValue}};
  doc["radius"] = {{"r_b", a.radius.rb},
                   {"rule", toString(a.radius.rule)},
                   {"scale", a.radius.scale},
                   {"d_min", a.layout.dMin}};

  json hubs = json::array();
  for (const auto& h : a.hubs.hubs) {
    json jh{{"x", h.position.x},
            {"y", h.position.y},
            {"origin", toString(h.origin)},
            {"pair", {h.pair.first, h.pair.second}}};
    if (h.origin == HubOrigin::Ring) {
      jh["endpoint"] = h.endpoint;
      jh["direction"] = h.direction;
    }
    hubs.push_back(jh);
  }
  doc["hubs"] = hubs;

  json traps = json::array();
  for (const auto& t : a.layout.traps) {
    traps.push_back({{"id", t.id},
                     {"x", t.position.x},
                     {"y", t.position.y},
                     {"kind", t.kind == TrapKind::Home ? "home" : "hub"},
                     {"owner", t.owner}});
  }
  doc["traps"] = traps;

  json outcome{{"kind", toString(a.outcome)}, {"detail", a.detail}};
  if (a.failure) {
    outcome["qubits"] = {a.failure->qubitA, a.failure->qubitB};
    outcome["gate"] = a.failure->gate;
    outcome["swap_unavailable"] = a.failure->swapUnavailable;
    outcome["shuttle_unavailable"] = a.failure->shuttleUnavailable;
    outcome["eviction_unavailable"] = a.failure->evictionUnavailable;
  }
  doc["outcome"] = outcome;

  if (a.schedule) {
    json layers = json::array();
    for (const auto& layer : a.schedule->layers) {
      json jl = json::array();
      for (const auto& o : layer) {
        jl.push_back(opToJson(o));
      }
      layers.push_back(jl);
    }
    json occupancy = json::array();
    for (int atom = 0; atom < a.schedule->finalOccupancy.numAtoms(); ++atom) {
      occupancy.push_back(a.schedule->finalOccupancy.trapOf(atom));
    }
    const auto& st = a.schedule->stats;
    doc["schedule"] = {{"layers", layers},
                       {"final_occupancy", occupancy},
                       {"stats",
                        {{"decisions", st.decisions},
                         {"decisions_with_direct_shuttle", st.decisionsWithDirectShuttle},
                         {"swap_plans", st.swapPlansChosen},
                         {"shuttle_plans", st.shuttlePlansChosen}}}};
  } else {
    doc["schedule"] = nullptr;
  }
  doc["metrics"] = a.metrics ? metricsToJson(*a.metrics) : json(nullptr);
  doc["compile_seconds"] = a.compileSeconds;
  return doc;
}

CompileArtifact artifactFromJson(const json& doc) {
  if (doc.value("schema_version", 0) != kArtifactSchemaVersion) {
    throw std::invalid_argument("unsupported artifact schema version");
  }
  CompileArtifact a;
  const auto& jc = doc.at("circuit");
  a.circuit = parseQasm(jc.at("qasm").get<std::string>(), jc.at("name").get<std::string>());
  // the serialized register may be narrower than declared when trailing
  // qubits are idle; restore the declared width
  a.circuit.numQubits = jc.at("num_qubits").get<int>();

  a.options = CompileOptions{};
  applyOptionsJson(a.options, doc.at("config"));

  for (const auto& p : doc.at("placement").at("coords")) {
    a.placement.coords.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  a.placement.seed = doc.at("placement").at("seed").get<std::uint64_t>();
  a.placement.objectiveValue = doc.at("placement").at("objective_value").get<double>();

  const auto& jr = doc.at("radius");
  a.radius.rb = jr.at("r_b").get<double>();
  a.radius.scale = jr.at("scale").get<double>();
  a.radius.rule = radiusRuleFromString(jr.at("rule").get<std::string>());

  for (const auto& jh : doc.at("hubs")) {
    HubCandidate h;
    h.position = {jh.at("x").get<double>(), jh.at("y").get<double>()};
    h.origin = hubOriginFromString(jh.at("origin").get<std::string>());
    h.pair = {jh.at("pair").at(0).get<int>(), jh.at("pair").at(1).get<int>()};
    h.endpoint = jh.value("endpoint", -1);
    h.direction = jh.value("direction", -1);
    a.hubs.hubs.push_back(h);
  }

  a.layout.numQubits = a.circuit.numQubits;
  a.layout.rb = a.radius.rb;
  a.layout.scale = a.radius.scale;
  a.layout.dMin = jr.at("d_min").get<double>();
  for (const auto& jt : doc.at("traps")) {
    Trap t;
    t.id = jt.at("id").get<int>();
    t.position = {jt.at("x").get<double>(), jt.at("y").get<double>()};
    t.kind = jt.at("kind").get<std::string>() == "hub" ? TrapKind::Hub : TrapKind::Home;
    t.owner = jt.at("owner").get<int>();
    a.layout.traps.push_back(t);
  }

  const auto& jo = doc.at("outcome");
  a.outcome = outcomeFromString(jo.at("kind").get<std::string>());
  a.detail = jo.value("detail", "");
  if (jo.contains("qubits")) {
    TransportFailure f;
    f.qubitA = jo.at("qubits").at(0).get<int>();
    f.qubitB = jo.at("qubits").at(1).get<int>();
    f.gate = jo.at("gate").get<std::size_t>();
    f.swapUnavailable = jo.at("swap_unavailable").get<bool>();
    f.shuttleUnavailable = jo.at("shuttle_unavailable").get<bool>();
    f.evictionUnavailable = jo.at("eviction_unavailable").get<bool>();
    a.failure = f;
  }

  if (!doc.at("schedule").is_null()) {
    const auto& js = doc.at("schedule");
    Schedule s;
    s.config = a.options.compile;
    for (const auto& jl : js.at("layers")) {
      Layer layer;
      for (const auto& jop : jl) {
        layer.push_back(opFromJson(jop));
      }
      s.layers.push_back(std::move(layer));
    }
    s.finalOccupancy = Occupancy::fromAssignment(
        js.at("final_occupancy").get<std::vector<int>>(), a.layout.trapCount());
    const auto& st = js.at("stats");
    s.stats.decisions = st.at("decisions").get<std::size_t>();
    s.stats.decisionsWithDirectShuttle = st.at("decisions_with_direct_shuttle").get<std::size_t>();
    s.stats.swapPlansChosen = st.at("swap_plans").get<std::size_t>();
    s.stats.shuttlePlansChosen = st.at("shuttle_plans").get<std::size_t>();
    a.schedule = std::move(s);
  }
  if (!doc.at("metrics").is_null()) {
    const auto& jm = doc.at("metrics");
    MetricsReport m;
    m.execTimeUs = jm.at("exec_time_us").get<double>();
    m.logFidelity = jm.at("log_fidelity").get<double>();
    m.fidelity = jm.at("fidelity").get<double>();
    const auto& jcnt = jm.at("counts");
    m.counts.swaps = jcnt.at("swaps").get<std::size_t>();
    m.counts.shuttles = jcnt.at("shuttles").get<std::size_t>();
    m.counts.cz = jcnt.at("cz").get<std::size_t>();
    m.counts.oneq = jcnt.at("oneq").get<std::size_t>();
    m.counts.layers = jcnt.at("layers").get<std::size_t>();
    if (jm.contains("m2_exec_time_us")) {
      m.m2ExecTimeUs = jm.at("m2_exec_time_us").get<double>();
    }
    if (jm.contains("m2_batches")) {
      m.m2Batches = jm.at("m2_batches").get<std::size_t>();
    }
    a.metrics = m;
  }
  a.compileSeconds = doc.value("compile_seconds", 0.0);
  return a;
}

void writeArtifact(const CompileArtifact& artifact, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << artifactToJson(artifact).dump(1) << '\n';
}

CompileArtifact readArtifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return artifactFromJson(json::parse(in));
}

} // namespace atomroute
