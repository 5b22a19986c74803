#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wzome/projection.hpp"
#include "wzome/wythoff.hpp"

using wz::Golden;
using wz::GVec;
using wz::Mode;
using wz::Polytope;

namespace {

Polytope make(const std::string& spec) {
  auto [d, rings] = wz::parse_diagram(spec);
  return wz::build_polytope(wz::simple_roots(d), rings);
}

// Multiset invariance of 2D points under rotation by angle, via nearest
// matching.
bool rotation_invariant(const std::vector<std::array<double, 2>>& pts, double angle,
                        double tol) {
  double c = std::cos(angle), s = std::sin(angle);
  for (const auto& p : pts) {
    double rx = c * p[0] - s * p[1], ry = s * p[0] + c * p[1];
    double best = 1e300;
    for (const auto& q : pts)
      best = std::min(best, std::hypot(q[0] - rx, q[1] - ry));
    if (best > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("vertex-first axis is the vertex itself") {
  auto poly = make("H3 o o x");
  CHECK(wz::element_first_axis(poly, 0, 3) == poly.vertices[3]);
}

TEST_CASE("edge-first axis is the midpoint direction") {
  auto poly = make("H3 o o x");
  auto e = poly.edges()[0];
  GVec mid = wz::gvec_add(poly.vertices[e[0]], poly.vertices[e[1]]);
  CHECK(wz::element_first_axis(poly, 1, 0) == mid);
}

TEST_CASE("central face axis is rejected") {
  Polytope p;
  p.dim = 3;
  p.vertices = {{Golden(1), Golden(0), Golden(0)}, {Golden(-1), Golden(0), Golden(0)}};
  p.faces = {{}, {{0, 1}}};
  CHECK_THROWS_AS(wz::element_first_axis(p, 1, 0), wz::Error);
  CHECK_THROWS_AS(wz::element_first_axis(p, 1, 7), wz::Error);
}

TEST_CASE("complete_basis on coordinate axis") {
  GVec axis(4, Golden(0));
  axis[3] = Golden(1);
  auto basis = wz::complete_basis(axis);
  REQUIRE(basis.mode == Mode::exact);
  REQUIRE(basis.rows.size() == 3);
  for (const auto& r : basis.rows) {
    CHECK(wz::gvec_dot(r, axis).is_zero());
    CHECK(wz::gvec_dot(r, r) == basis.norm2);
    CHECK(r[3].is_zero());  // spans e1,e2,e3
  }
}

TEST_CASE("complete_basis is exact for every 4D axis") {
  for (auto axis : {GVec{Golden(1), Golden(1), Golden(1), Golden(1)},
                    GVec{Golden::phi(), Golden(2), Golden(0), Golden(1)},
                    GVec{Golden(3), Golden(-1), Golden::phi(), Golden(7)}}) {
    auto basis = wz::complete_basis(axis);
    REQUIRE(basis.mode == Mode::exact);
    CHECK(basis.norm2 == wz::gvec_dot(axis, axis));
    for (std::size_t i = 0; i < basis.rows.size(); ++i) {
      CHECK(wz::gvec_dot(basis.rows[i], axis).is_zero());
      CHECK(wz::gvec_dot(basis.rows[i], basis.rows[i]) == basis.norm2);
      for (std::size_t j = i + 1; j < basis.rows.size(); ++j)
        CHECK(wz::gvec_dot(basis.rows[i], basis.rows[j]).is_zero());
    }
  }
}

TEST_CASE("complete_basis 3D: exact when the axis norm is a square") {
  GVec axis = {Golden(1), Golden(2), Golden(2)};  // norm 9
  auto basis = wz::complete_basis(axis);
  REQUIRE(basis.mode == Mode::exact);
  CHECK(!basis.fallback_warning);
  CHECK(basis.rows.size() == 2);
  CHECK(wz::gvec_dot(basis.rows[0], basis.rows[1]).is_zero());
  CHECK(wz::gvec_dot(basis.rows[0], basis.rows[0]) ==
        wz::gvec_dot(basis.rows[1], basis.rows[1]));
}

TEST_CASE("complete_basis 3D float fallback carries a warning") {
  GVec axis = {Golden(1), Golden(1), Golden(1)};  // norm 3, not a square
  auto basis = wz::complete_basis(axis);
  CHECK(basis.mode == Mode::floating);
  CHECK(basis.fallback_warning);
  CHECK(basis.rows_f.size() == 2);
  CHECK_THROWS_AS(wz::complete_basis(GVec(3, Golden(0))), wz::Error);
}

TEST_CASE("orthogonal projection is a similarity on squared lengths") {
  // Two segments of different lengths through a generic exact basis.
  Polytope p;
  p.dim = 4;
  p.mode = Mode::exact;
  p.vertices = {GVec(4, Golden(0)),
                {Golden(1), Golden(0), Golden(0), Golden(0)},
                {Golden(0), Golden(2), Golden::phi(), Golden(0)}};
  p.faces = {{}, {{0, 1}, {0, 2}}};
  GVec axis = {Golden(1), Golden(1), Golden(1), Golden(1)};
  auto basis = wz::complete_basis(axis);
  auto img = wz::orthogonal_project(p, basis);
  REQUIRE(img.mode == Mode::exact);
  CHECK(img.dim == 3);
  CHECK(img.faces == p.faces);
  // The squared length of each projected edge equals norm2 * (squared length
  // of the component orthogonal to the axis).
  Golden na = wz::gvec_dot(axis, axis);
  for (const auto& e : p.faces[1]) {
    GVec d = wz::gvec_sub(p.vertices[e[1]], p.vertices[e[0]]);
    Golden da = wz::gvec_dot(d, axis);
    Golden perp2 = wz::gvec_dot(d, d) - da * da / na;
    GVec di = wz::gvec_sub(img.vertices[e[1]], img.vertices[e[0]]);
    CHECK(wz::gvec_dot(di, di) == basis.norm2 * perp2);
  }
}

TEST_CASE("identity-style projection of a 3D polytope") {
  auto poly = make("H3 o o x");
  wz::ProjectionBasis basis;
  basis.rows = {{Golden(1), Golden(0), Golden(0)},
                {Golden(0), Golden(1), Golden(0)},
                {Golden(0), Golden(0), Golden(1)}};
  basis.norm2 = Golden(1);
  auto img = wz::orthogonal_project(poly, basis);
  CHECK(img.vertices == poly.vertices);
  CHECK(img.faces == poly.faces);
}

TEST_CASE("stereographic projection basics") {
  Polytope p;
  p.dim = 3;
  p.mode = Mode::exact;
  p.vertices = {{Golden(0), Golden(0), Golden(-1)},
                {Golden(1), Golden(0), Golden(0)},
                {Golden(0), Golden(1), Golden(0)}};
  p.faces = {{}, {{0, 1}, {1, 2}}};
  auto img = wz::stereographic(p, {0, 0, 1});
  REQUIRE(img.mode == Mode::floating);
  CHECK(img.dim == 2);
  // South pole maps to the origin.
  CHECK(std::hypot(img.vertices_f[0][0], img.vertices_f[0][1]) < 1e-12);
  // Equatorial points map to themselves (scale R/(R-0) = 1).
  CHECK(std::hypot(img.vertices_f[1][0] - 1.0, img.vertices_f[1][1]) < 1e-12);
  // Vertex and edge counts preserved.
  CHECK(img.vertex_count() == 3);
  CHECK(img.edges().size() == 2);
  // Pole on a vertex is rejected.
  CHECK_THROWS_AS(wz::stereographic(p, {0, 0, -1}), wz::Error);
}

TEST_CASE("stereographic rejects non-spherical input") {
  Polytope p;
  p.dim = 3;
  p.mode = Mode::exact;
  p.vertices = {{Golden(1), Golden(0), Golden(0)}, {Golden(2), Golden(0), Golden(0)}};
  p.faces = {{}, {{0, 1}}};
  CHECK_THROWS_AS(wz::stereographic(p, {0, 0, 1}), wz::Error);
}

TEST_CASE("stereographic arc sampling subdivides edges") {
  auto poly = make("B4 x o o o");  // 16-cell: 8 vertices, 24 edges
  auto img = wz::stereographic(poly, {0.3, 0.1, 0.2, 0.9}, 4);
  CHECK(img.dim == 3);
  CHECK(img.vertex_count() == 8 + 24 * 3);
  CHECK(img.edges().size() == 24 * 4);
}

TEST_CASE("coxeter plane eigenvalue matches cos(2pi/h)") {
  for (const char* spec : {"H3 xxx", "H4 xxxx", "F4 xxxx", "A3 xxx"}) {
    auto rep = wz::simple_roots(wz::parse_diagram(spec).first);
    auto info = wz::coxeter_element(rep);
    auto basis = wz::coxeter_plane_basis(info);
    CAPTURE(spec);
    REQUIRE(basis[0].size() == static_cast<std::size_t>(rep.dim));
    // The pair is orthonormal.
    double n0 = 0, n1 = 0, d01 = 0;
    for (int i = 0; i < rep.dim; ++i) {
      n0 += basis[0][i] * basis[0][i];
      n1 += basis[1][i] * basis[1][i];
      d01 += basis[0][i] * basis[1][i];
    }
    CHECK(n0 == doctest::Approx(1.0));
    CHECK(n1 == doctest::Approx(1.0));
    CHECK(std::abs(d01) < 1e-9);
  }
}

TEST_CASE("icosahedron is 10-fold symmetric on the H3 Coxeter plane") {
  auto poly = make("H3 o o x");
  auto rep = wz::simple_roots(wz::parse_diagram("H3 xxx").first);
  auto info = wz::coxeter_element(rep);
  auto img = wz::project_to_plane(poly, wz::coxeter_plane_basis(info), info.h);
  CHECK(img.h == 10);
  CHECK(img.edges.size() == 30);
  CHECK(rotation_invariant(img.points, 2 * M_PI / info.h, 1e-6));
}

TEST_CASE("24-cell is 12-fold symmetric on the F4 Coxeter plane") {
  auto poly = make("F4 x o o o");
  auto rep = wz::simple_roots(wz::parse_diagram("F4 xxxx").first);
  auto info = wz::coxeter_element(rep);
  auto img = wz::project_to_plane(poly, wz::coxeter_plane_basis(info), info.h);
  CHECK(img.h == 12);
  CHECK(rotation_invariant(img.points, 2 * M_PI / 12, 1e-6));
}

TEST_CASE("H3 parabolic plane of an H4 polytope is 10-fold symmetric") {
  auto poly = make("H4 x o o o");
  auto rep = wz::simple_roots(wz::parse_diagram("H4 xxxx").first);
  auto info = wz::parabolic_coxeter_element(rep, {0, 1, 2});
  REQUIRE(info.h == 10);
  auto img = wz::project_to_plane(poly, wz::coxeter_plane_basis(info), info.h);
  CHECK(rotation_invariant(img.points, 2 * M_PI / 10, 1e-6));
}
