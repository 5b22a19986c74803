#pragma once

// File exporters: SVG wireframes (strut styles match the blue = dashed,
// yellow = solid, red = dash-dot legend; background struts dotted) and
// Wavefront OBJ line geometry. Output is deterministic byte-for-byte.

#include <map>
#include <string>

#include "wzome/polytope.hpp"
#include "wzome/projection.hpp"
#include "wzome/zome.hpp"

namespace wz {

struct RenderStyle {
  // SVG stroke-dasharray per strut color; empty string = solid.
  std::map<char, std::string> dash = {{'B', "8 4"}, {'Y', ""}, {'R', "10 4 2 4"}};
  std::map<char, std::string> stroke = {{'B', "#1f4fd8"}, {'Y', "#c8a400"}, {'R', "#d0342c"}};
  std::string background_dash = "1 4";  // struts tagged by model_diff
  std::string background_stroke = "#999999";
  // Pseudo-3D view: rotations (degrees) about the x then y axes before
  // dropping the z coordinate.
  double tilt_x_deg = 5.0;
  double tilt_y_deg = 5.0;
  double width = 800.0;   // SVG viewport edge, content scaled to fit
  double margin = 24.0;
  double stroke_width = 1.5;
  double ball_radius = 2.5;  // 0 disables ball markers
};

// 3D model wireframe, tilted and orthographically flattened.
std::string export_svg(const ZomeModel& model, const RenderStyle& style = {});
// Already-planar drawing (Coxeter-plane projections); edges drawn solid.
std::string export_svg(const PlanarImage& image, const RenderStyle& style = {});
// Bare 3D polytope skeleton, all edges solid foreground.
std::string export_svg(const Polytope& poly, const RenderStyle& style = {});

// OBJ with `v` records and `l` (line) elements, 1-based indices.
std::string export_obj(const ZomeModel& model);
// 3D polytope skeleton (exact or float vertices).
std::string export_obj(const Polytope& poly);

}  // namespace wz
