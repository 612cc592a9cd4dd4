#pragma once

#include "atomroute/pipeline.hpp"

#include <string>

namespace atomroute {

struct RenderOptions {
  double canvasPx = 640.0;
  double marginPx = 32.0;
};

/// SVG of the layout: home traps (circles), hubs (stars), CZ pairs (solid
/// within rb, dashed beyond), one blockade disk, a dotted d_min circle and
/// one arrow per distinct shuttle move. Throws MissingSchedule when the
/// artifact has no schedule.
std::string renderSvg(const CompileArtifact& artifact, const RenderOptions& opts = {});

} // namespace atomroute
