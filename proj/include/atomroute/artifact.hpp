#pragma once

#include "atomroute/pipeline.hpp"

#include "json.hpp"

#include <string>

namespace atomroute {

inline constexpr int kArtifactSchemaVersion = 1;

nlohmann::json optionsToJson(const CompileOptions& options);

/// Overrides fields present in `config`; sections are "operating_point",
/// "anneal", "hubs" and "compile", plus an optional top-level "method".
/// Unknown keys throw std::invalid_argument.
void applyOptionsJson(CompileOptions& options, const nlohmann::json& config);

nlohmann::json artifactToJson(const CompileArtifact& artifact);
CompileArtifact artifactFromJson(const nlohmann::json& doc);

void writeArtifact(const CompileArtifact& artifact, const std::string& path);
CompileArtifact readArtifact(const std::string& path);

nlohmann::json metricsToJson(const MetricsReport& m);

} // namespace atomroute
