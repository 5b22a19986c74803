#include "wzome/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wz {
namespace {

// Fixed-width decimal so output bytes do not depend on locale or platform
// default float formatting; -0 normalizes to 0.
std::string num(double x) {
  if (std::abs(x) < 5e-7) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::array<double, 3> tilt(const std::array<double, 3>& p, double ax, double ay) {
  double cx = std::cos(ax), sx = std::sin(ax);
  double cy = std::cos(ay), sy = std::sin(ay);
  std::array<double, 3> r = {p[0], cx * p[1] - sx * p[2], sx * p[1] + cx * p[2]};
  return {cy * r[0] + sy * r[2], r[1], -sy * r[0] + cy * r[2]};
}

struct Mapper {
  double sx = 1, sy = 1, ox = 0, oy = 0;
  double x(double v) const { return sx * v + ox; }
  // SVG y grows downward; flip so the drawing keeps its orientation.
  double y(double v) const { return oy - sy * v; }
};

Mapper fit(const std::vector<std::array<double, 2>>& pts, const RenderStyle& st) {
  Mapper m;
  if (pts.empty()) return m;
  double lo_x = pts[0][0], hi_x = lo_x, lo_y = pts[0][1], hi_y = lo_y;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p[0]); hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]); hi_y = std::max(hi_y, p[1]);
  }
  double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  double s = (st.width - 2 * st.margin) / span;
  m.sx = m.sy = s;
  m.ox = st.margin + (st.width - 2 * st.margin - s * (hi_x - lo_x)) / 2 - s * lo_x;
  m.oy = st.width - st.margin -
         (st.width - 2 * st.margin - s * (hi_y - lo_y)) / 2 + s * lo_y;
  return m;
}

void open_svg(std::ostringstream& out, const RenderStyle& st) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(st.width)
      << "\" height=\"" << num(st.width) << "\" viewBox=\"0 0 " << num(st.width)
      << " " << num(st.width) << "\">\n";
}

void line(std::ostringstream& out, const Mapper& m, const std::array<double, 2>& a,
          const std::array<double, 2>& b, const std::string& stroke,
          const std::string& dash, double width) {
  out << " <line x1=\"" << num(m.x(a[0])) << "\" y1=\"" << num(m.y(a[1]))
      << "\" x2=\"" << num(m.x(b[0])) << "\" y2=\"" << num(m.y(b[1]))
      << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"";
  if (!dash.empty()) out << " stroke-dasharray=\"" << dash << "\"";
  out << "/>\n";
}

}  // namespace

std::string export_svg(const ZomeModel& model, const RenderStyle& style) {
  const double ax = style.tilt_x_deg * M_PI / 180.0;
  const double ay = style.tilt_y_deg * M_PI / 180.0;
  std::vector<std::array<double, 2>> pts;
  pts.reserve(model.balls.size());
  for (const auto& b : model.balls) {
    auto t = tilt({b.at(0).to_double(), b.at(1).to_double(), b.at(2).to_double()}, ax, ay);
    pts.push_back({t[0], t[1]});
  }
  Mapper m = fit(pts, style);
  std::ostringstream out;
  open_svg(out, style);
  // Background struts first so foreground work reads on top.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& s : model.struts) {
      if (s.background != (pass == 0)) continue;
      std::string stroke = s.background ? style.background_stroke
                                        : style.stroke.at(s.color);
      std::string dash = s.background ? style.background_dash : style.dash.at(s.color);
      line(out, m, pts[s.ball_a], pts[s.ball_b], stroke, dash, style.stroke_width);
    }
  if (style.ball_radius > 0)
    for (const auto& p : pts)
      out << " <circle cx=\"" << num(m.x(p[0])) << "\" cy=\"" << num(m.y(p[1]))
          << "\" r=\"" << num(style.ball_radius) << "\" fill=\"#222222\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::string export_svg(const PlanarImage& image, const RenderStyle& style) {
  Mapper m = fit(image.points, style);
  std::ostringstream out;
  open_svg(out, style);
  for (const auto& e : image.edges)
    line(out, m, image.points[e[0]], image.points[e[1]], "#222222", "",
         style.stroke_width);
  out << "</svg>\n";
  return out.str();
}

std::string export_svg(const Polytope& poly, const RenderStyle& style) {
  if (poly.dim != 3) throw Error(Errc::geometry, "SVG export needs 3D geometry");
  const double ax = style.tilt_x_deg * M_PI / 180.0;
  const double ay = style.tilt_y_deg * M_PI / 180.0;
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < poly.vertex_count(); ++i) {
    auto v = poly.vertex_as_double(i);
    auto t = tilt({v[0], v[1], v[2]}, ax, ay);
    pts.push_back({t[0], t[1]});
  }
  Mapper m = fit(pts, style);
  std::ostringstream out;
  open_svg(out, style);
  if (poly.faces.size() > 1)
    for (const auto& e : poly.faces[1])
      line(out, m, pts[e[0]], pts[e[1]], "#222222", "", style.stroke_width);
  out << "</svg>\n";
  return out.str();
}

namespace {

std::string obj_lines(const std::vector<std::array<double, 3>>& verts,
                      const std::vector<std::array<int, 2>>& edges) {
  std::ostringstream out;
  for (const auto& v : verts)
    out << "v " << num(v[0]) << " " << num(v[1]) << " " << num(v[2]) << "\n";
  for (const auto& e : edges) out << "l " << e[0] + 1 << " " << e[1] + 1 << "\n";
  return out.str();
}

}  // namespace

std::string export_obj(const ZomeModel& model) {
  std::vector<std::array<double, 3>> verts;
  for (const auto& b : model.balls)
    verts.push_back({b.at(0).to_double(), b.at(1).to_double(), b.at(2).to_double()});
  std::vector<std::array<int, 2>> edges;
  for (const auto& s : model.struts) edges.push_back({s.ball_a, s.ball_b});
  return obj_lines(verts, edges);
}

std::string export_obj(const Polytope& poly) {
  if (poly.dim != 3) throw Error(Errc::geometry, "OBJ export needs 3D geometry");
  std::vector<std::array<double, 3>> verts;
  for (int i = 0; i < poly.vertex_count(); ++i) {
    auto v = poly.vertex_as_double(i);
    verts.push_back({v[0], v[1], v[2]});
  }
  std::vector<std::array<int, 2>> edges;
  if (poly.faces.size() > 1)
    for (const auto& e : poly.faces[1]) edges.push_back({e[0], e[1]});
  return obj_lines(verts, edges);
}

}  // namespace wz
