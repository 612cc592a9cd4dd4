#include "atomroute/bench.hpp"

#include "atomroute/artifact.hpp"
#include "atomroute/errors.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace atomroute {

namespace fs = std::filesystem;

BenchManifest parseManifest(const nlohmann::json& doc, const std::string& baseDir) {
  BenchManifest m;
  for (const auto& c : doc.at("circuits")) {
    fs::path p = c.get<std::string>();
    if (p.is_relative() && !baseDir.empty()) {
      p = fs::path(baseDir) / p;
    }
    m.circuits.push_back(p.lexically_normal().string());
  }
  if (doc.contains("methods")) {
    for (const auto& s : doc.at("methods")) {
      m.methods.push_back(methodFromString(s.get<std::string>()));
    }
  } else {
    m.methods = {Method::ProposedRing, Method::Proposed, Method::NoEviction, Method::NoHub};
  }
  if (doc.contains("budget_seconds")) {
    m.budgetSeconds = doc.at("budget_seconds").get<double>();
  }
  if (doc.contains("config")) {
    m.config = doc.at("config");
  }
  return m;
}

BenchManifest loadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open manifest '" + path + "'");
  }
  return parseManifest(nlohmann::json::parse(in), fs::path(path).parent_path().string());
}

std::vector<BenchRow> runBench(const BenchManifest& manifest, const CompileOptions& base,
                               const std::string& outDir) {
  if (!outDir.empty()) {
    fs::create_directories(outDir);
  }
  std::vector<BenchRow> rows;
  for (const auto& path : manifest.circuits) {
    std::optional<Circuit> circuit;
    std::string loadError;
    try {
      circuit = parseQasmFile(path);
    } catch (const std::exception& e) {
      loadError = e.what();
    }
    for (const auto method : manifest.methods) {
      BenchRow row;
      row.circuit = circuit ? circuit->name : fs::path(path).stem().string();
      row.method = toString(method);
      if (!circuit) {
        row.outcome = "ParseError";
        rows.push_back(row);
        continue;
      }
      CompileOptions options = base;
      applyOptionsJson(options, manifest.config);
      options.applyMethod(method);
      if (manifest.budgetSeconds) {
        options.compile.budgetSeconds = *manifest.budgetSeconds;
      }
      const auto art = compileCircuit(*circuit, options);
      row.qubits = circuit->numQubits;
      row.cz = circuit->czCount();
      row.metrics = art.metrics;
      row.outcome = toString(art.outcome);
      row.compileSeconds = art.compileSeconds;
      if (!outDir.empty()) {
        row.artifactPath =
            (fs::path(outDir) / (row.circuit + "." + row.method + ".json")).string();
        writeArtifact(art, row.artifactPath);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void writeBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.circuit << ',' << r.method << ',' << r.qubits << ',' << r.cz << ',';
    if (r.metrics) {
      const auto& m = *r.metrics;
      out << m.counts.swaps << ',' << m.counts.shuttles << ',' << m.counts.layers << ','
          << m.execTimeUs << ',';
      if (m.m2ExecTimeUs) {
        out << *m.m2ExecTimeUs;
      }
      out << ',' << m.logFidelity << ',';
    } else {
      out << ",,,,,,";
    }
    out << r.outcome << ',' << r.compileSeconds << '\n';
  }
}

} // namespace atomroute
