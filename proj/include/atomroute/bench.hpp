#pragma once

#include "atomroute/pipeline.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace atomroute {

struct BenchManifest {
  std::vector<std::string> circuits; // QASM paths, resolved
  std::vector<Method> methods;
  std::optional<double> budgetSeconds;
  nlohmann::json config = nlohmann::json::object();
};

/// Manifest JSON: {"circuits": [...], "methods": [...], "budget_seconds": x,
/// "config": {...}}. Relative circuit paths resolve against `baseDir`.
BenchManifest parseManifest(const nlohmann::json& doc, const std::string& baseDir);
BenchManifest loadManifest(const std::string& path);

struct BenchRow {
  std::string circuit;
  std::string method;
  int qubits = 0;
  std::size_t cz = 0;
  std::optional<MetricsReport> metrics;
  /// Outcome name, or "ParseError" when the circuit did not load.
  std::string outcome;
  double compileSeconds = 0.0;
  std::string artifactPath;
};

inline constexpr const char* kBenchCsvHeader =
    "circuit,method,qubits,cz,swaps,shuttles,layers,exec_time_us,"
    "m2_exec_time_us,log_fidelity,outcome,compile_seconds";

/// Runs every (circuit, method) pair; one failing row never stops the run.
/// Artifacts go to `outDir` as <circuit>.<method>.json when it is non-empty.
std::vector<BenchRow> runBench(const BenchManifest& manifest, const CompileOptions& base,
                               const std::string& outDir);

void writeBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out);

} // namespace atomroute
