// atomroute command-line driver.
//
// Exit codes: 0 ok, 1 other error, 2 parse error, 3 NoValidTransport,
// 4 BudgetExceeded, 5 artifact has no schedule, 6 schedule failed validation.

#include "atomroute/artifact.hpp"
#include "atomroute/bench.hpp"
#include "atomroute/errors.hpp"
#include "atomroute/render.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

using namespace atomroute;
using nlohmann::json;

namespace {

enum ExitCode : int {
  kOk = 0,
  kOther = 1,
  kParse = 2,
  kNoTransport = 3,
  kBudget = 4,
  kNoSchedule = 5,
  kInvalid = 6,
};

int fail(int code, const std::string& kind, const std::string& message, json extra = {}) {
  json err{{"error", kind}, {"message", message}, {"exit_code", code}};
  if (extra.is_object()) {
    err.update(extra);
  }
  std::cerr << err.dump() << '\n';
  return code;
}

struct Overrides {
  std::string configPath;
  std::string method;
  std::optional<int> nHub;
  std::optional<std::uint64_t> seed;
  std::optional<double> budgetSeconds;
  std::optional<double> fsh;
  std::optional<int> maxiter;
};

void addOverrideFlags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.configPath,
                  "JSON config (falls back to $ATOMROUTE_CONFIG)");
  cmd->add_option("--method", o.method, "proposed-ring | proposed | no-eviction | no-hub")
      ->check(CLI::IsMember({"proposed-ring", "proposed", "no-eviction", "no-hub"}));
  cmd->add_option("--n-hub", o.nHub, "hub trap budget")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.seed, "annealer seed");
  cmd->add_option("--budget-seconds", o.budgetSeconds, "compile budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fsh", o.fsh, "shuttle fidelity F_sh");
  cmd->add_option("--maxiter", o.maxiter, "annealer iterations")
      ->check(CLI::PositiveNumber);
}

json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return json::parse(in);
}

CompileOptions resolveOptions(const Overrides& o) {
  auto options = CompileOptions::forMethod(Method::ProposedRing);
  std::string configPath = o.configPath;
  if (configPath.empty()) {
    if (const char* env = std::getenv("ATOMROUTE_CONFIG"); env != nullptr) {
      configPath = env;
    }
  }
  if (!configPath.empty()) {
    applyOptionsJson(options, readJsonFile(configPath));
  }
  if (!o.method.empty()) {
    options.applyMethod(methodFromString(o.method));
  }
  if (o.nHub) {
    options.hubs.nHub = *o.nHub;
  }
  if (o.seed) {
    options.anneal.seed = *o.seed;
  }
  if (o.budgetSeconds) {
    options.compile.budgetSeconds = *o.budgetSeconds;
  }
  if (o.fsh) {
    options.op.fShuttle = *o.fsh;
  }
  if (o.maxiter) {
    options.anneal.maxiter = *o.maxiter;
  }
  options.op.validate();
  return options;
}

json summary(const CompileArtifact& art) {
  json s{{"circuit", art.circuit.name},
         {"method", toString(art.options.method)},
         {"outcome", toString(art.outcome)},
         {"compile_seconds", art.compileSeconds}};
  if (art.metrics) {
    s["metrics"] = metricsToJson(*art.metrics);
  }
  return s;
}

int runCompile(const std::string& input, const std::string& outPath, const Overrides& o) {
  const auto options = resolveOptions(o);
  const auto circuit = parseQasmFile(input);
  const auto art = compileCircuit(circuit, options);
  const std::string path =
      outPath.empty() ? circuit.name + "." + toString(options.method) + ".json" : outPath;
  writeArtifact(art, path);
  std::cout << summary(art).dump() << '\n';

  switch (art.outcome) {
  case Outcome::Ok:
    return kOk;
  case Outcome::NoValidTransport: {
    json extra{{"artifact", path}};
    if (art.failure) {
      extra["qubits"] = {art.failure->qubitA, art.failure->qubitB};
      extra["gate"] = art.failure->gate;
      extra["swap_unavailable"] = art.failure->swapUnavailable;
      extra["shuttle_unavailable"] = art.failure->shuttleUnavailable;
      extra["eviction_unavailable"] = art.failure->evictionUnavailable;
    }
    return fail(kNoTransport, "NoValidTransport", art.detail, extra);
  }
  case Outcome::BudgetExceeded:
    return fail(kBudget, "BudgetExceeded", art.detail, {{"artifact", path}});
  }
  return kOther;
}

int runBenchCmd(const std::string& manifestPath, const std::string& outDir,
                const std::string& csvPath, const Overrides& o) {
  auto manifest = loadManifest(manifestPath);
  if (!o.method.empty()) {
    manifest.methods = {methodFromString(o.method)};
  }
  if (o.budgetSeconds) {
    manifest.budgetSeconds = *o.budgetSeconds;
  }
  const auto rows = runBench(manifest, resolveOptions(o), outDir);
  const std::string path =
      csvPath.empty() ? (std::filesystem::path(outDir) / "report.csv").string() : csvPath;
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  writeBenchCsv(rows, out);
  std::cout << json{{"rows", rows.size()}, {"csv", path}}.dump() << '\n';
  return kOk;
}

CompileArtifact loadScheduled(const std::string& path) {
  auto art = readArtifact(path);
  if (!art.schedule) {
    throw MissingSchedule("artifact '" + path + "' has no schedule (outcome " +
                          toString(art.outcome) + ")");
  }
  return art;
}

int runSweep(const std::string& artifactPath, const std::vector<double>& values,
             const std::string& outPath) {
  const auto art = loadScheduled(artifactPath);
  const auto rows = sweepFsh(*art.schedule, art.options.op, values);
  std::ostringstream csv;
  csv << std::setprecision(17) << "f_sh,shuttles,log_fidelity\n";
  const auto shuttles = countOps(*art.schedule).shuttles;
  for (const auto& [f, lf] : rows) {
    csv << f << ',' << shuttles << ',' << lf << '\n';
  }
  if (outPath.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream(outPath) << csv.str();
  }
  return kOk;
}

int runRender(const std::string& artifactPath, const std::string& outPath) {
  const auto art = loadScheduled(artifactPath);
  const auto svg = renderSvg(art);
  if (outPath.empty()) {
    std::cout << svg;
  } else {
    std::ofstream(outPath) << svg;
  }
  return kOk;
}

int runValidate(const std::string& artifactPath) {
  const auto art = loadScheduled(artifactPath);
  const auto report = validateSchedule(*art.schedule, art.circuit, art.layout, art.options.op);
  if (report.ok()) {
    std::cout << json{{"ok", true}}.dump() << '\n';
    return kOk;
  }
  const auto& v = *report.violation;
  std::cout << json{{"ok", false},
                    {"violation", toString(v.kind)},
                    {"layer", v.layer},
                    {"detail", v.detail}}
                   .dump()
            << '\n';
  return fail(kInvalid, "ValidationFailed", v.detail,
              {{"violation", toString(v.kind)}, {"layer", v.layer}});
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neutral-atom layout synthesis and hub-assisted routing"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string input;
  std::string output;
  std::string csvPath;
  std::vector<double> sweepValues{1.0, 0.999, 0.99};

  auto* compile = app.add_subcommand("compile", "compile a QASM circuit to an artifact");
  compile->add_option("input", input, "OpenQASM 2.0 file")->required();
  compile->add_option("-o,--output", output, "artifact path");
  addOverrideFlags(compile, overrides);

  auto* bench = app.add_subcommand("bench", "run a manifest of circuits x methods");
  bench->add_option("manifest", input, "manifest JSON")->required();
  bench->add_option("-o,--out-dir", output, "artifact directory")->required();
  bench->add_option("--csv", csvPath, "report path (default <out-dir>/report.csv)");
  addOverrideFlags(bench, overrides);

  auto* sweep = app.add_subcommand("sweep", "log fidelity across shuttle fidelities");
  sweep->add_option("artifact", input, "artifact JSON")->required();
  sweep->add_option("--fsh", sweepValues, "F_sh values")->delimiter(',');
  sweep->add_option("-o,--output", output, "CSV path (default stdout)");

  auto* render = app.add_subcommand("render", "draw an artifact as SVG");
  render->add_option("artifact", input, "artifact JSON")->required();
  render->add_option("-o,--output", output, "SVG path (default stdout)");

  auto* validate = app.add_subcommand("validate", "replay and check an artifact's schedule");
  validate->add_option("artifact", input, "artifact JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*compile) {
      return runCompile(input, output, overrides);
    }
    if (*bench) {
      return runBenchCmd(input, output, csvPath, overrides);
    }
    if (*sweep) {
      return runSweep(input, sweepValues, output);
    }
    if (*render) {
      return runRender(input, output);
    }
    if (*validate) {
      return runValidate(input);
    }
  } catch (const UnsupportedGate& e) {
    return fail(kParse, "UnsupportedGate", e.what(), {{"line", e.line()}, {"gate", e.gate()}});
  } catch (const ParseError& e) {
    return fail(kParse, "ParseError", e.what(), {{"line", e.line()}});
  } catch (const MissingSchedule& e) {
    return fail(kNoSchedule, "MissingSchedule", e.what());
  } catch (const NoValidTransport& e) {
    return fail(kNoTransport, "NoValidTransport", e.what(),
                {{"qubits", {e.qubitA, e.qubitB}}, {"gate", e.gate}});
  } catch (const BudgetExceeded& e) {
    return fail(kBudget, "BudgetExceeded", e.what());
  } catch (const std::exception& e) {
    return fail(kOther, "Error", e.what());
  }
  return kOther;
}
