#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>

#include "lastmile/cost.hpp"
#include "lastmile/io.hpp"
#include "lastmile/model.hpp"

namespace lastmile {

namespace detail {

inline constexpr std::array<const char*, 10> kRoutePalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

inline std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Route map: hub as a square, passengers as circles, parcels as
/// triangles, one polyline per non-empty route and a cost legend.
inline std::string svg_document(const RoutingPlan& plan, const Instance& inst) {
  constexpr double kSize = 600.0;
  constexpr double kMargin = 30.0;
  constexpr double kLegendWidth = 220.0;

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const Node& n : inst.nodes) {
    min_x = std::min(min_x, n.location.x);
    min_y = std::min(min_y, n.location.y);
    max_x = std::max(max_x, n.location.x);
    max_y = std::max(max_y, n.location.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = (kSize - 2 * kMargin) / span;
  // SVG y grows downward; flip so the map reads like the plane.
  auto sx = [&](double x) { return kMargin + (x - min_x) * scale; };
  auto sy = [&](double y) { return kSize - kMargin - (y - min_y) * scale; };

  std::ostringstream svg;
  svg.precision(6);
  svg << std::fixed;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + kLegendWidth
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize + kLegendWidth << ' '
      << kSize << "\">\n"
      << "<title>" << detail::xml_escape(inst.name) << "</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg << "<g id=\"routes\" fill=\"none\" stroke-width=\"2\">\n";
  const Point hub = inst.hub().location;
  int drawn = 0;
  for (std::size_t r = 0; r < plan.routes.size(); ++r) {
    const Route& route = plan.routes[r];
    if (route.stops.empty()) continue;
    const char* color = detail::kRoutePalette[r % detail::kRoutePalette.size()];
    svg << "<polyline class=\"route\" data-vehicle=\"" << route.vehicle_id
        << "\" stroke=\"" << color << "\" points=\"" << sx(hub.x) << ',' << sy(hub.y);
    for (NodeId s : route.stops) {
      const Point& p = inst.location(s);
      svg << ' ' << sx(p.x) << ',' << sy(p.y);
    }
    svg << ' ' << sx(hub.x) << ',' << sy(hub.y) << "\"/>\n";
    ++drawn;
  }
  svg << "</g>\n";

  svg << "<g id=\"nodes\" stroke=\"black\" stroke-width=\"1\">\n";
  for (const Node& n : inst.nodes) {
    const double x = sx(n.location.x);
    const double y = sy(n.location.y);
    switch (n.kind) {
      case NodeKind::Hub:
        svg << "<rect class=\"hub\" x=\"" << x - 7 << "\" y=\"" << y - 7
            << "\" width=\"14\" height=\"14\" fill=\"black\"/>\n";
        break;
      case NodeKind::PassengerFromHub:
      case NodeKind::PassengerToHub:
        svg << "<circle class=\"passenger\" cx=\"" << x << "\" cy=\"" << y
            << "\" r=\"5\" fill=\""
            << (n.kind == NodeKind::PassengerFromHub ? "#ffffff" : "#cccccc")
            << "\"/>\n";
        break;
      case NodeKind::Parcel:
        svg << "<polygon class=\"parcel\" points=\"" << x << ',' << y - 6 << ' '
            << x - 6 << ',' << y + 5 << ' ' << x + 6 << ',' << y + 5
            << "\" fill=\"#ffd700\"/>\n";
        break;
    }
  }
  svg << "</g>\n";

  svg << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = kMargin;
  svg << "<text x=\"" << kSize << "\" y=\"" << ly << "\">route costs</text>\n";
  for (std::size_t r = 0; r < plan.routes.size(); ++r) {
    const Route& route = plan.routes[r];
    if (route.stops.empty()) continue;
    ly += 18;
    const char* color = detail::kRoutePalette[r % detail::kRoutePalette.size()];
    svg << "<rect x=\"" << kSize << "\" y=\"" << ly - 10 << "\" width=\"12\" height=\"12\" fill=\""
        << color << "\"/>\n"
        << "<text x=\"" << kSize + 18 << "\" y=\"" << ly << "\">vehicle "
        << route.vehicle_id << ": " << route_cost(route, inst) << "</text>\n";
  }
  svg << "<text x=\"" << kSize << "\" y=\"" << ly + 24 << "\">routes drawn: " << drawn
      << "</text>\n";
  svg << "</g>\n</svg>\n";
  return svg.str();
}

inline void render_svg(const RoutingPlan& plan, const Instance& inst,
                       const std::filesystem::path& path) {
  write_text(path, svg_document(plan, inst));
}

}  // namespace lastmile
