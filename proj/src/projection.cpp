#include "wzome/projection.hpp"

#include <algorithm>
#include <cmath>

namespace wz {

namespace {

std::vector<int> face_ids(const Polytope& poly, int rank, int face_id) {
  if (rank == 0) {
    if (face_id < 0 || face_id >= poly.vertex_count())
      throw Error(Errc::geometry, "vertex id out of range");
    return {face_id};
  }
  if (rank >= static_cast<int>(poly.faces.size()) ||
      face_id >= static_cast<int>(poly.faces[rank].size()) || face_id < 0)
    throw Error(Errc::geometry, "no face of rank " + std::to_string(rank) +
                                    " with id " + std::to_string(face_id));
  return poly.faces[rank][face_id];
}

double dot_f(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Float orthonormal completion of axis (Gram-Schmidt over coordinate vectors).
std::vector<std::vector<double>> complement_f(std::vector<double> axis) {
  int d = static_cast<int>(axis.size());
  double n = std::sqrt(dot_f(axis, axis));
  if (n < 1e-12) throw Error(Errc::geometry, "zero projection axis");
  for (double& x : axis) x /= n;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < d && static_cast<int>(rows.size()) < d - 1; ++i) {
    std::vector<double> v(d, 0.0);
    v[i] = 1.0;
    double c = dot_f(v, axis);
    for (int j = 0; j < d; ++j) v[j] -= c * axis[j];
    for (const auto& r : rows) {
      double cr = dot_f(v, r);
      for (int j = 0; j < d; ++j) v[j] -= cr * r[j];
    }
    double vn = std::sqrt(dot_f(v, v));
    if (vn < 1e-9) continue;
    for (double& x : v) x /= vn;
    rows.push_back(std::move(v));
  }
  return rows;
}

}  // namespace

GVec element_first_axis(const Polytope& poly, int rank, int face_id) {
  if (poly.mode != Mode::exact)
    throw Error(Errc::geometry, "exact axis requested on a float polytope");
  GVec c(poly.dim, Golden(0));
  for (int v : face_ids(poly, rank, face_id)) c = gvec_add(c, poly.vertices[v]);
  if (gvec_is_zero(c))
    throw Error(Errc::geometry,
                "face centroid is the origin; supply an explicit axis instead");
  return c;
}

std::vector<double> element_first_axis_f(const Polytope& poly, int rank, int face_id) {
  std::vector<double> c(poly.dim, 0.0);
  for (int v : face_ids(poly, rank, face_id)) {
    auto x = poly.vertex_as_double(v);
    for (int j = 0; j < poly.dim; ++j) c[j] += x[j];
  }
  if (std::sqrt(dot_f(c, c)) < 1e-9)
    throw Error(Errc::geometry,
                "face centroid is the origin; supply an explicit axis instead");
  return c;
}

ProjectionBasis complete_basis(const GVec& axis) {
  if (gvec_is_zero(axis)) throw Error(Errc::geometry, "zero projection axis");
  int d = static_cast<int>(axis.size());
  Golden na = gvec_dot(axis, axis);
  ProjectionBasis basis;

  if (d == 4) {
    // Right multiplication by the conjugate quaternion sends axis to
    // (|axis|^2, 0, 0, 0); rows 2-4 of its matrix are pairwise orthogonal,
    // orthogonal to axis, and each has squared norm |axis|^2. Always exact.
    const Golden &a0 = axis[0], &a1 = axis[1], &a2 = axis[2], &a3 = axis[3];
    basis.rows = {
        {-a1, a0, -a3, a2},
        {-a2, a3, a0, -a1},
        {-a3, -a2, a1, a0},
    };
    basis.norm2 = na;
    return basis;
  }

  // Gram-Schmidt against the axis and earlier rows, denominators cleared.
  std::vector<GVec> rows;
  for (int i = 0; i < d && static_cast<int>(rows.size()) < d - 1; ++i) {
    GVec v(d, Golden(0));
    v[i] = Golden(1);
    v = gvec_sub(gvec_scale(na, v), gvec_scale(gvec_dot(v, axis), axis));
    for (const auto& r : rows) {
      Golden nr = gvec_dot(r, r);
      v = gvec_sub(gvec_scale(nr, v), gvec_scale(gvec_dot(v, r), r));
    }
    if (!gvec_is_zero(v)) rows.push_back(std::move(v));
  }
  // Rescale to the first row's squared norm where the ratio is a square.
  bool ok = true;
  Golden target = gvec_dot(rows[0], rows[0]);
  for (std::size_t i = 1; i < rows.size() && ok; ++i) {
    auto s = golden_sqrt(target / gvec_dot(rows[i], rows[i]));
    if (s)
      rows[i] = gvec_scale(*s, rows[i]);
    else
      ok = false;
  }
  if (ok) {
    basis.rows = std::move(rows);
    basis.norm2 = target;
    return basis;
  }
  basis.mode = Mode::floating;
  basis.fallback_warning = true;
  std::vector<double> axis_f(axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) axis_f[i] = axis[i].to_double();
  basis.rows_f = complement_f(axis_f);
  return basis;
}

ProjectionBasis complete_basis_f(const std::vector<double>& axis) {
  ProjectionBasis basis;
  basis.mode = Mode::floating;
  basis.rows_f = complement_f(axis);
  return basis;
}

Polytope orthogonal_project(const Polytope& poly, const ProjectionBasis& basis) {
  Polytope out;
  out.dim = basis.dim();
  out.faces = poly.faces;
  out.provenance = poly.provenance;
  if (poly.mode == Mode::exact && basis.mode == Mode::exact) {
    if (static_cast<int>(basis.rows[0].size()) != poly.dim)
      throw Error(Errc::geometry, "basis dimension mismatch");
    out.mode = Mode::exact;
    for (const auto& x : poly.vertices) {
      GVec y(out.dim);
      for (int i = 0; i < out.dim; ++i) y[i] = gvec_dot(x, basis.rows[i]);
      out.vertices.push_back(std::move(y));
    }
    out.provenance["projection_scale2"] = basis.norm2.to_string();
  } else {
    const auto rows = basis.mode == Mode::exact ? [&] {
      std::vector<std::vector<double>> r;
      Golden s2 = basis.norm2;
      double s = std::sqrt(s2.to_double());
      for (const auto& row : basis.rows) {
        std::vector<double> rf(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) rf[i] = row[i].to_double() / s;
        r.push_back(std::move(rf));
      }
      return r;
    }() : basis.rows_f;
    if (static_cast<int>(rows[0].size()) != poly.dim)
      throw Error(Errc::geometry, "basis dimension mismatch");
    out.mode = Mode::floating;
    for (int v = 0; v < poly.vertex_count(); ++v) {
      auto x = poly.vertex_as_double(v);
      std::vector<double> y(out.dim);
      for (int i = 0; i < out.dim; ++i) y[i] = dot_f(x, rows[i]);
      out.vertices_f.push_back(std::move(y));
    }
  }
  return out;
}

Polytope stereographic(const Polytope& poly, const std::vector<double>& pole,
                       int arc_samples) {
  if (static_cast<int>(pole.size()) != poly.dim)
    throw Error(Errc::geometry, "pole dimension mismatch");
  if (arc_samples < 1) arc_samples = 1;
  std::vector<double> u = pole;
  double un = std::sqrt(dot_f(u, u));
  if (un < 1e-12) throw Error(Errc::geometry, "zero pole");
  for (double& x : u) x /= un;

  int nv = static_cast<int>(poly.vertex_count());
  if (nv == 0) throw Error(Errc::geometry, "empty polytope");
  std::vector<std::vector<double>> pts(nv);
  double radius = -1;
  for (int i = 0; i < nv; ++i) {
    pts[i] = poly.vertex_as_double(i);
    double r = std::sqrt(dot_f(pts[i], pts[i]));
    if (radius < 0) radius = r;
    if (std::abs(r - radius) > 1e-6 * radius)
      throw Error(Errc::geometry, "vertices are not on a common sphere");
  }
  for (const auto& x : pts) {
    double c = dot_f(x, u);
    if (std::abs(c - radius) < 1e-9 * radius)
      throw Error(Errc::geometry, "pole coincides with a vertex");
  }

  auto rows = complement_f(u);
  auto project = [&](const std::vector<double>& x) {
    double c = dot_f(x, u);
    double f = radius / (radius - c);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = f * (dot_f(x, rows[i]));
    return y;
  };

  Polytope out;
  out.dim = poly.dim - 1;
  out.mode = Mode::floating;
  out.provenance = poly.provenance;
  for (const auto& x : pts) out.vertices_f.push_back(project(x));

  if (arc_samples == 1) {
    out.faces = poly.faces;
    return out;
  }
  // Subdivide each edge along its great-circle preimage (spherical slerp).
  out.faces.assign(2, {});
  for (const auto& e : poly.edges()) {
    const auto& a = pts[e[0]];
    const auto& b = pts[e[1]];
    double cosang = dot_f(a, b) / (radius * radius);
    cosang = std::clamp(cosang, -1.0, 1.0);
    double ang = std::acos(cosang);
    int prev = e[0];
    for (int s = 1; s < arc_samples; ++s) {
      double t = static_cast<double>(s) / arc_samples;
      double wa = std::sin((1 - t) * ang) / std::sin(ang);
      double wb = std::sin(t * ang) / std::sin(ang);
      std::vector<double> m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = wa * a[i] + wb * b[i];
      out.vertices_f.push_back(project(m));
      int id = static_cast<int>(out.vertices_f.size()) - 1;
      out.faces[1].push_back({std::min(prev, id), std::max(prev, id)});
      prev = id;
    }
    out.faces[1].push_back({std::min(prev, e[1]), std::max(prev, e[1])});
  }
  return out;
}

namespace {

// Self-contained Jacobi eigensolver for small symmetric matrices.
void jacobi_eigen(std::vector<std::vector<double>> m, std::vector<double>& eigvals,
                  std::vector<std::vector<double>>& eigvecs) {
  int n = static_cast<int>(m.size());
  eigvecs.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) eigvecs[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(m[p][q]) < 1e-15) continue;
        double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = eigvecs[k][p], vkq = eigvecs[k][q];
          eigvecs[k][p] = c * vkp - s * vkq;
          eigvecs[k][q] = s * vkp + c * vkq;
        }
      }
  }
  eigvals.resize(n);
  for (int i = 0; i < n; ++i) eigvals[i] = m[i][i];
}

}  // namespace

std::array<std::vector<double>, 2> coxeter_plane_basis(const CoxeterElementInfo& info) {
  int d = info.mode == Mode::exact ? info.matrix.rows()
                                   : static_cast<int>(info.matrix_f.size());
  if (info.h < 2) throw Error(Errc::geometry, "coxeter number must be >= 2");
  if (d == 2) return {{std::vector<double>{1, 0}, std::vector<double>{0, 1}}};
  std::vector<std::vector<double>> c(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      c[i][j] = info.mode == Mode::exact ? info.matrix.at(i, j).to_double()
                                         : info.matrix_f[i][j];
  std::vector<std::vector<double>> m(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = (c[i][j] + c[j][i]) / 2;
  std::vector<double> eigvals;
  std::vector<std::vector<double>> eigvecs;
  jacobi_eigen(m, eigvals, eigvecs);
  // The Coxeter plane is the eigenspace for cos(2pi/h). Select by closeness
  // (not "largest": eigenvalue 1 can appear when the ambient dimension
  // exceeds the rank).
  double target = std::cos(2 * 3.14159265358979323846 / info.h);
  std::vector<int> picked;
  for (int i = 0; i < d; ++i)
    if (std::abs(eigvals[i] - target) < 1e-8) picked.push_back(i);
  if (picked.size() != 2)
    throw Error(Errc::geometry, "coxeter plane eigenspace has dimension " +
                                    std::to_string(picked.size()));
  std::array<std::vector<double>, 2> basis;
  for (int k = 0; k < 2; ++k) {
    basis[k].resize(d);
    for (int i = 0; i < d; ++i) basis[k][i] = eigvecs[i][picked[k]];
  }
  // Orthonormalize (Jacobi already returns orthogonal columns; re-normalize
  // defensively).
  double n0 = std::sqrt(dot_f(basis[0], basis[0]));
  for (double& x : basis[0]) x /= n0;
  double c01 = dot_f(basis[1], basis[0]);
  for (int i = 0; i < d; ++i) basis[1][i] -= c01 * basis[0][i];
  double n1 = std::sqrt(dot_f(basis[1], basis[1]));
  for (double& x : basis[1]) x /= n1;
  return basis;
}

PlanarImage project_to_plane(const Polytope& poly,
                             const std::array<std::vector<double>, 2>& basis, int h) {
  PlanarImage img;
  img.h = h;
  for (int v = 0; v < poly.vertex_count(); ++v) {
    auto x = poly.vertex_as_double(v);
    img.points.push_back({dot_f(x, basis[0]), dot_f(x, basis[1])});
  }
  if (poly.faces.size() > 1)
    for (const auto& e : poly.edges()) img.edges.push_back({e[0], e[1]});
  return img;
}

}  // namespace wz
