#include "atomroute/render.hpp"

#include "atomroute/errors.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

namespace atomroute {

namespace {

class Canvas {
public:
  explicit Canvas(const RenderOptions& o) : opts_(o) {}
  [[nodiscard]] double x(double u) const {
    return opts_.marginPx + u * (opts_.canvasPx - 2 * opts_.marginPx);
  }
  // SVG y grows downward
  [[nodiscard]] double y(double v) const {
    return opts_.canvasPx - opts_.marginPx - v * (opts_.canvasPx - 2 * opts_.marginPx);
  }
  [[nodiscard]] double len(double d) const {
    return d * (opts_.canvasPx - 2 * opts_.marginPx);
  }

private:
  RenderOptions opts_;
};

std::string starPoints(double cx, double cy, double outer) {
  std::ostringstream s;
  const double inner = outer * 0.45;
  for (int k = 0; k < 10; ++k) {
    const double r = (k % 2 == 0) ? outer : inner;
    const double a = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
    if (k > 0) {
      s << ' ';
    }
    s << cx + r * std::cos(a) << ',' << cy + r * std::sin(a);
  }
  return s.str();
}

} // namespace

std::string renderSvg(const CompileArtifact& art, const RenderOptions& opts) {
  if (!art.schedule) {
    throw MissingSchedule("artifact has no schedule (outcome " + toString(art.outcome) + ")");
  }
  const Canvas c(opts);
  const auto& layout = art.layout;
  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.canvasPx
      << "\" height=\"" << opts.canvasPx << "\" viewBox=\"0 0 " << opts.canvasPx << ' '
      << opts.canvasPx << "\">\n";
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
         "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
         "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c0392b\"/></marker></defs>\n";
  out << "<rect class=\"frame\" x=\"" << c.x(0) << "\" y=\"" << c.y(1) << "\" width=\""
      << c.len(1) << "\" height=\"" << c.len(1)
      << "\" fill=\"none\" stroke=\"#bbb\"/>\n";

  const auto graph = interactionGraph(art.circuit);
  if (!graph.weights.empty()) {
    // representative blockade disk and d_min circle on the busiest qubit
    int anchor = 0;
    std::vector<int> degree(static_cast<std::size_t>(layout.numQubits), 0);
    for (const auto& [pair, w] : graph.weights) {
      degree[static_cast<std::size_t>(pair.first)] += w;
      degree[static_cast<std::size_t>(pair.second)] += w;
    }
    for (int q = 1; q < layout.numQubits; ++q) {
      if (degree[static_cast<std::size_t>(q)] > degree[static_cast<std::size_t>(anchor)]) {
        anchor = q;
      }
    }
    const auto& p = layout.position(anchor);
    out << "<circle class=\"blockade\" cx=\"" << c.x(p.x) << "\" cy=\"" << c.y(p.y)
        << "\" r=\"" << c.len(layout.rb)
        << "\" fill=\"#3498db\" fill-opacity=\"0.12\" stroke=\"#3498db\"/>\n";
    out << "<circle class=\"dmin\" cx=\"" << c.x(p.x) << "\" cy=\"" << c.y(p.y)
        << "\" r=\"" << c.len(layout.dMin)
        << "\" fill=\"none\" stroke=\"#555\" stroke-dasharray=\"2,3\"/>\n";

    for (const auto& [pair, w] : graph.weights) {
      const auto& a = layout.position(pair.first);
      const auto& b = layout.position(pair.second);
      const bool longRange = distance(a, b) > layout.rb;
      out << "<line class=\"cz-edge " << (longRange ? "long-range" : "local")
          << "\" x1=\"" << c.x(a.x) << "\" y1=\"" << c.y(a.y) << "\" x2=\"" << c.x(b.x)
          << "\" y2=\"" << c.y(b.y) << "\" stroke=\"#7f8c8d\" stroke-width=\""
          << 1.0 + std::log2(static_cast<double>(w)) << '"'
          << (longRange ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    }
  }

  std::set<std::pair<int, int>> moves;
  for (const auto& layer : art.schedule->layers) {
    for (const auto& o : layer) {
      if (o.kind == OpKind::Shuttle && moves.insert({o.trapA, o.trapB}).second) {
        const auto& a = layout.position(o.trapA);
        const auto& b = layout.position(o.trapB);
        out << "<line class=\"shuttle\" x1=\"" << c.x(a.x) << "\" y1=\"" << c.y(a.y)
            << "\" x2=\"" << c.x(b.x) << "\" y2=\"" << c.y(b.y)
            << "\" stroke=\"#c0392b\" marker-end=\"url(#arrow)\"/>\n";
      }
    }
  }

  for (const auto& t : layout.traps) {
    const double x = c.x(t.position.x);
    const double y = c.y(t.position.y);
    if (t.kind == TrapKind::Home) {
      out << "<circle class=\"home\" cx=\"" << x << "\" cy=\"" << y
          << "\" r=\"6\" fill=\"#2c3e50\"/>\n";
      out << "<text x=\"" << x + 8 << "\" y=\"" << y - 8
          << "\" font-size=\"10\" font-family=\"sans-serif\">q" << t.owner << "</text>\n";
    } else {
      out << "<polygon class=\"hub\" points=\"" << starPoints(x, y, 9.0)
          << "\" fill=\"#f1c40f\" stroke=\"#8a6d00\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace atomroute
