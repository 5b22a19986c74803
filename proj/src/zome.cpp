#include "wzome/zome.hpp"

#include "wzome/wythoff.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace wz {

using json = nlohmann::ordered_json;

namespace {

const double kPhiF = (1.0 + std::sqrt(5.0)) / 2.0;

Golden G(long a, long b) { return Golden(Rational(a), Rational(b)); }

// 3x3 matrix applied to a vector.
GVec mat_apply3(const std::array<GVec, 3>& m, const GVec& v) {
  GVec out(3, Golden(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

// Rodrigues rotation about u through the angle with the given exact
// cos(theta) and exact sin(theta)/|u| (the catalog norms are chosen so the
// latter is rational for every axis order used here).
std::array<GVec, 3> axis_rotation(const GVec& u, const Golden& cos_t,
                                  const Golden& sin_over_len) {
  Golden n2 = gvec_dot(u, u);
  std::array<GVec, 3> m;
  Golden one_m = Golden(1) - cos_t;
  for (int i = 0; i < 3; ++i) {
    m[i] = GVec(3, Golden(0));
    m[i][i] = cos_t;
    for (int j = 0; j < 3; ++j) m[i][j] += one_m * u[i] * u[j] / n2;
  }
  // + sin(theta)/|u| * [u]x
  m[0][1] -= sin_over_len * u[2];
  m[0][2] += sin_over_len * u[1];
  m[1][0] += sin_over_len * u[2];
  m[1][2] -= sin_over_len * u[0];
  m[2][0] -= sin_over_len * u[1];
  m[2][1] += sin_over_len * u[0];
  return m;
}

std::vector<GVec> icosahedron_vertices() {
  std::vector<GVec> verts;
  for (int c = 0; c < 3; ++c)
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        GVec v(3, Golden(0));
        v[(c + 1) % 3] = Golden(s1);
        v[(c + 2) % 3] = G(0, s2);
        verts.push_back(v);
      }
  return verts;
}

bool maps_set_to_itself(const std::array<GVec, 3>& m, const std::vector<GVec>& set) {
  std::set<std::vector<std::string>> keys;
  auto key = [](const GVec& v) {
    std::vector<std::string> k;
    for (const auto& x : v) k.push_back(x.to_string());
    return k;
  };
  for (const auto& v : set) keys.insert(key(v));
  for (const auto& v : set)
    if (!keys.count(key(mat_apply3(m, v)))) return false;
  return true;
}

// Sign canonicalization: first nonzero coordinate positive.
GVec canonical_sign(GVec v) {
  for (const auto& x : v) {
    int s = x.sign();
    if (s > 0) return v;
    if (s < 0) return gvec_scale(Golden(-1), v);
  }
  return v;
}

std::string gvec_key(const GVec& v) {
  std::string k;
  for (const auto& x : v) k += x.to_string() + ";";
  return k;
}

Golden phi_pow(long k) {
  Golden p(1);
  Golden phi = Golden::phi();
  Golden inv = phi.inverse();
  for (long i = 0; i < std::labs(k); ++i) p = p * (k >= 0 ? phi : inv);
  return p;
}

}  // namespace

const StrutCatalog& StrutCatalog::standard() {
  static const StrutCatalog cat = [] {
    StrutCatalog c;
    auto add = [&](char color, std::initializer_list<Golden> rep) {
      c.lines_.push_back({color, canonical_sign(GVec(rep))});
    };
    // Blue, norm^2 = 4: coordinate axes and signed cyclic permutations of
    // (phi-1, phi, 1).
    for (int i = 0; i < 3; ++i) {
      GVec v(3, Golden(0));
      v[i] = Golden(2);
      c.lines_.push_back({'B', v});
    }
    for (int cyc = 0; cyc < 3; ++cyc)
      for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
          GVec v(3);
          v[cyc] = G(-1, 1);                       // phi - 1
          v[(cyc + 1) % 3] = s1 > 0 ? G(0, 1) : G(0, -1);
          v[(cyc + 2) % 3] = Golden(s2);
          c.lines_.push_back({'B', canonical_sign(v)});
        }
    // Yellow, norm^2 = 3: body diagonals and signed cyclic permutations of
    // (phi-1, 0, phi).
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        add('Y', {Golden(1), Golden(s1), Golden(s2)});
    for (int cyc = 0; cyc < 3; ++cyc)
      for (int s : {1, -1}) {
        GVec v(3, Golden(0));
        v[cyc] = G(-1, 1);
        v[(cyc + 2) % 3] = s > 0 ? G(0, 1) : G(0, -1);
        c.lines_.push_back({'Y', canonical_sign(v)});
      }
    // Red, norm^2 = 2 + phi: signed cyclic permutations of (0, 1, phi).
    for (int cyc = 0; cyc < 3; ++cyc)
      for (int s : {1, -1}) {
        GVec v(3, Golden(0));
        v[(cyc + 1) % 3] = Golden(1);
        v[(cyc + 2) % 3] = s > 0 ? G(0, 1) : G(0, -1);
        c.lines_.push_back({'R', canonical_sign(v)});
      }

    // Verification: counts, equal norms, pairwise non-parallel, and the
    // exact symmetry-axis property against the icosahedron vertex set.
    int nb = 0, ny = 0, nr = 0;
    auto ico = icosahedron_vertices();
    for (const auto& line : c.lines_) {
      Golden n2 = gvec_dot(line.rep, line.rep);
      std::array<GVec, 3> rot;
      switch (line.color) {
        case 'B':
          ++nb;
          if (n2 != Golden(4)) throw Error(Errc::geometry, "blue norm mismatch");
          rot = axis_rotation(line.rep, Golden(-1), Golden(0));  // pi
          break;
        case 'Y':
          ++ny;
          if (n2 != Golden(3)) throw Error(Errc::geometry, "yellow norm mismatch");
          // 2pi/3: cos = -1/2, sin/|u| = (sqrt3/2)/sqrt3 = 1/2
          rot = axis_rotation(line.rep, Golden(Rational(-1, 2), Rational(0)),
                              Golden(Rational(1, 2), Rational(0)));
          break;
        default:
          ++nr;
          if (n2 != G(2, 1)) throw Error(Errc::geometry, "red norm mismatch");
          // 2pi/5: cos = (phi-1)/2, sin/|u| = 1/2 since sin^2 = (2+phi)/4
          rot = axis_rotation(line.rep,
                              Golden(Rational(-1, 2), Rational(1, 2)),
                              Golden(Rational(1, 2), Rational(0)));
      }
      if (!maps_set_to_itself(rot, ico))
        throw Error(Errc::geometry, "catalog line fails the icosahedral axis test");
    }
    if (nb != 15 || ny != 10 || nr != 6)
      throw Error(Errc::geometry, "catalog line counts wrong");
    for (std::size_t i = 0; i < c.lines_.size(); ++i)
      for (std::size_t j = i + 1; j < c.lines_.size(); ++j)
        if (gvec_is_zero(gvec_cross3(c.lines_[i].rep, c.lines_[j].rep)))
          throw Error(Errc::geometry, "catalog lines not pairwise distinct");
    return c;
  }();
  return cat;
}

Golden StrutCatalog::color_norm2(char color) const {
  switch (color) {
    case 'B': return Golden(4);
    case 'Y': return Golden(3);
    case 'R': return G(2, 1);
  }
  throw Error(Errc::parse, std::string("unknown color '") + color + "'");
}

std::optional<ClassifyResult> classify_vector(const GVec& v, const StrutCatalog& cat) {
  if (gvec_is_zero(v)) return std::nullopt;
  for (int id = 0; id < static_cast<int>(cat.lines().size()); ++id) {
    const GVec& d = cat.lines()[id].rep;
    if (!gvec_is_zero(gvec_cross3(v, d))) continue;
    for (std::size_t i = 0; i < 3; ++i) {
      if (d[i].is_zero()) continue;
      Golden rho = v[i] / d[i];
      bool flip = rho.sign() < 0;
      return ClassifyResult{cat.lines()[id].color, id, flip ? -rho : rho, flip};
    }
  }
  return std::nullopt;
}

std::optional<PhiPower> phi_power_residue(const Golden& rho) {
  if (rho.sign() <= 0) throw Error(Errc::geometry, "phi-power residue needs rho > 0");
  // rho = q*phi^k  =>  field_norm(rho) = q^2 * (-1)^k.
  Rational nr = rho.field_norm();
  Rational anr = nr < 0 ? Rational(-nr) : nr;
  auto q = rational_sqrt(anr);
  if (!q) return std::nullopt;
  double est = std::log(rho.to_double() / q->get_d()) / std::log(kPhiF);
  long k0 = std::lround(est);
  if (std::labs(k0) > 64)
    throw Error(Errc::geometry, "phi-power exponent exceeds the +-64 bound");
  for (long k = k0 - 1; k <= k0 + 1; ++k)
    if (Golden(*q, Rational(0)) * phi_pow(k) == rho) return PhiPower{k, *q};
  return std::nullopt;
}

Certificate check_constructible(const std::vector<GVec>& vertices,
                                const std::vector<std::array<int, 2>>& edges,
                                const StrutCatalog& cat) {
  if (edges.empty()) throw Error(Errc::constructibility, "empty edge set");
  Certificate cert;
  struct Hit {
    std::array<int, 2> edge;
    ClassifyResult cls;
    long k = 0;
  };
  std::vector<Hit> hits;
  std::optional<Golden> rho_ref;
  for (const auto& e : edges) {
    GVec v = gvec_sub(vertices[e[1]], vertices[e[0]]);
    auto cls = classify_vector(v, cat);
    if (!cls) {
      cert.offenders.push_back({e, v, "no-parallel-line"});
      continue;
    }
    if (!rho_ref) rho_ref = cls->rho;
    auto res = phi_power_residue(cls->rho / *rho_ref);
    if (!res) {
      cert.offenders.push_back({e, v, "ratio-not-phi-power"});
      continue;
    }
    if (res->q != 1) {
      cert.offenders.push_back({e, v, "mixed-scale"});
      continue;
    }
    hits.push_back({e, *cls, res->k});
  }
  if (!cert.offenders.empty()) {
    cert.constructible = false;
    return cert;
  }
  cert.constructible = true;
  long kmin = hits[0].k;
  for (const auto& h : hits) kmin = std::min(kmin, h.k);
  std::map<char, std::pair<int, int>> span;  // color -> (min,max) size
  cert.model.balls = vertices;
  for (const auto& h : hits) {
    int size = static_cast<int>(h.k - kmin + 1);
    int a = std::min(h.edge[0], h.edge[1]), b = std::max(h.edge[0], h.edge[1]);
    cert.model.struts.push_back({a, b, h.cls.color, h.cls.line_id, size});
    auto it = span.find(h.cls.color);
    if (it == span.end())
      span[h.cls.color] = {size, size};
    else {
      it->second.first = std::min(it->second.first, size);
      it->second.second = std::max(it->second.second, size);
    }
  }
  std::sort(cert.model.struts.begin(), cert.model.struts.end(),
            [](const Strut& x, const Strut& y) {
              return std::tie(x.ball_a, x.ball_b, x.line_id) <
                     std::tie(y.ball_a, y.ball_b, y.line_id);
            });
  for (auto& [color, mm] : span) {
    cert.size_span[color] = mm.second - mm.first;
    if (mm.second - mm.first > 2)
      cert.warnings.push_back(std::string("color ") + color + " spans " +
                              std::to_string(mm.second - mm.first + 1) +
                              " sizes; real kits stock 3");
  }
  // Physical-buildability warning: distinct struts overlapping on one line.
  {
    std::map<std::pair<int, std::string>, std::vector<std::array<Golden, 2>>> groups;
    for (const auto& s : cert.model.struts) {
      const GVec& d = cat.lines()[s.line_id].rep;
      Golden n2 = gvec_dot(d, d);
      const GVec& p = cert.model.balls[s.ball_a];
      const GVec& q = cert.model.balls[s.ball_b];
      GVec foot = gvec_sub(p, gvec_scale(gvec_dot(p, d) / n2, d));
      Golden t1 = gvec_dot(p, d) / n2, t2 = gvec_dot(q, d) / n2;
      if (t2 < t1) std::swap(t1, t2);
      groups[{s.line_id, gvec_key(foot)}].push_back({t1, t2});
    }
    int overlaps = 0;
    for (auto& [key, iv] : groups) {
      std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
      });
      for (std::size_t i = 1; i < iv.size(); ++i)
        if (iv[i][0] < iv[i - 1][1]) ++overlaps;
    }
    if (overlaps > 0)
      cert.warnings.push_back(std::to_string(overlaps) +
                              " pairs of collinear struts overlap (hard to build physically)");
  }
  return cert;
}

std::optional<GMat> align_to_catalog(const std::vector<GVec>& vertices,
                                     const std::vector<std::array<int, 2>>& edges,
                                     const StrutCatalog& cat) {
  // Distinct direction lines, canonical representatives.
  std::vector<GVec> dirs;
  std::set<std::string> seen;
  for (const auto& e : edges) {
    GVec v = gvec_sub(vertices[e[1]], vertices[e[0]]);
    if (gvec_is_zero(v)) continue;
    GVec c = canonical_sign(v);
    // Normalize scale: divide by the first nonzero coordinate to dedup lines.
    GVec unit = c;
    for (const auto& x : c)
      if (!x.is_zero()) { unit = gvec_scale(x.inverse(), c); break; }
    if (seen.insert(gvec_key(unit)).second) dirs.push_back(c);
  }
  if (dirs.empty()) return std::nullopt;

  auto all_classify = [&](const GMat* q) {
    for (const auto& d : dirs) {
      GVec img = q ? q->apply(d) : d;
      if (!classify_vector(img, cat)) return false;
    }
    return true;
  };
  if (all_classify(nullptr)) return GMat::identity(3);

  int second = -1;
  for (int i = 1; i < static_cast<int>(dirs.size()); ++i)
    if (!gvec_is_zero(gvec_cross3(dirs[0], dirs[i]))) { second = i; break; }
  if (second < 0) return std::nullopt;  // all edges on one line; nothing sensible

  const GVec& u = dirs[0];
  const GVec& v = dirs[second];
  Golden nu = gvec_dot(u, u), nv = gvec_dot(v, v), uv = gvec_dot(u, v);
  GVec w = gvec_cross3(u, v);

  // Solve Q [u v w] = [u' v' w'] for every norm-compatible target pair.
  GMat m(3, 3);
  for (int i = 0; i < 3; ++i) {
    m.at(i, 0) = u[i];
    m.at(i, 1) = v[i];
    m.at(i, 2) = w[i];
  }
  GMat minv(3, 3);
  for (int col = 0; col < 3; ++col) {
    GVec e(3, Golden(0));
    e[col] = Golden(1);
    GVec x = solve_linear(m, e);
    for (int row = 0; row < 3; ++row) minv.at(row, col) = x[row];
  }

  for (const auto& l1 : cat.lines()) {
    auto s1 = golden_sqrt(nu / gvec_dot(l1.rep, l1.rep));
    if (!s1) continue;
    for (int sg1 : {1, -1}) {
      GVec u2 = gvec_scale(*s1 * Golden(sg1), l1.rep);
      for (const auto& l2 : cat.lines()) {
        auto s2 = golden_sqrt(nv / gvec_dot(l2.rep, l2.rep));
        if (!s2) continue;
        for (int sg2 : {1, -1}) {
          GVec v2 = gvec_scale(*s2 * Golden(sg2), l2.rep);
          if (gvec_dot(u2, v2) != uv) continue;
          GVec w2 = gvec_cross3(u2, v2);
          GMat mt(3, 3);
          for (int i = 0; i < 3; ++i) {
            mt.at(i, 0) = u2[i];
            mt.at(i, 1) = v2[i];
            mt.at(i, 2) = w2[i];
          }
          GMat q = mt * minv;
          if (!(q.transpose() * q == GMat::identity(3))) continue;
          if (all_classify(&q)) return q;
        }
      }
    }
  }
  return std::nullopt;
}

std::pair<Certificate, CollapseReport> build_model(const Polytope& poly3,
                                                   const StrutCatalog& cat) {
  if (poly3.mode != Mode::exact || poly3.dim != 3)
    throw Error(Errc::constructibility,
                "certificates need an exact 3D skeleton (use the advisory check "
                "for float input)");
  CollapseReport report;

  // Merge exactly-coincident vertices into balls.
  std::vector<GVec> balls;
  std::unordered_map<GVec, int, GVecHash> ball_of_vec;
  std::vector<int> ball_of(poly3.vertices.size());
  for (std::size_t i = 0; i < poly3.vertices.size(); ++i) {
    auto [it, fresh] =
        ball_of_vec.emplace(poly3.vertices[i], static_cast<int>(balls.size()));
    if (fresh)
      balls.push_back(poly3.vertices[i]);
    else
      ++report.merged_vertices;
    ball_of[i] = it->second;
  }

  // Drop null edges, merge duplicate struts.
  std::vector<std::array<int, 2>> pairs;
  std::set<std::array<int, 2>> pair_set;
  for (const auto& e : poly3.edges()) {
    int a = ball_of[e[0]], b = ball_of[e[1]];
    if (a == b) {
      ++report.dropped_edges;
      continue;
    }
    std::array<int, 2> key{std::min(a, b), std::max(a, b)};
    if (!pair_set.insert(key).second) {
      ++report.merged_struts;
      continue;
    }
    pairs.push_back(key);
  }

  // Canonical orientation: rotate the whole skeleton into the catalog frame
  // when an exact rotation exists (projection bases are generally tilted).
  std::string alignment = "none";
  if (auto q = align_to_catalog(balls, pairs, cat)) {
    bool identity = *q == GMat::identity(3);
    if (!identity)
      for (auto& b : balls) b = q->apply(b);
    alignment = identity ? "identity" : "rotated";
  }

  Certificate cert = check_constructible(balls, pairs, cat);
  if (!cert.constructible) return {std::move(cert), report};
  cert.model.provenance = poly3.provenance;
  cert.model.provenance["alignment"] = alignment;

  // Cells: carry 4D cells through, merging those that project onto the same
  // ball set (antipodal pairs under a cell-first projection).
  if (poly3.faces.size() == 4 && !poly3.faces[3].empty()) {
    auto adj4 = cell_adjacency(poly3);
    std::map<std::vector<int>, int> cell_index;
    std::vector<int> merged_id(poly3.faces[3].size());
    for (std::size_t c = 0; c < poly3.faces[3].size(); ++c) {
      std::set<int> bs;
      for (int v : poly3.faces[3][c]) bs.insert(ball_of[v]);
      std::vector<int> key(bs.begin(), bs.end());
      auto [it, fresh] =
          cell_index.emplace(key, static_cast<int>(cert.model.cells.size()));
      if (fresh) cert.model.cells.push_back(key);
      merged_id[c] = it->second;
    }
    cert.model.cell_adjacency.assign(cert.model.cells.size(), {});
    std::vector<std::set<int>> adj(cert.model.cells.size());
    for (std::size_t c = 0; c < adj4.size(); ++c)
      for (int nb : adj4[c])
        if (merged_id[c] != merged_id[nb]) adj[merged_id[c]].insert(merged_id[nb]);
    for (std::size_t c = 0; c < adj.size(); ++c)
      cert.model.cell_adjacency[c] = {adj[c].begin(), adj[c].end()};
    cert.model.cell_layer.assign(cert.model.cells.size(), -1);
  }
  return {std::move(cert), report};
}

Certificate advisory_check_f(const Polytope& poly3, const StrutCatalog& cat) {
  if (poly3.dim != 3) throw Error(Errc::constructibility, "advisory check needs 3D input");
  Certificate cert;
  cert.warnings.push_back("advisory: float input, result is not a certificate");
  std::vector<std::vector<double>> reps;
  for (const auto& line : cat.lines()) {
    std::vector<double> r(3);
    for (int i = 0; i < 3; ++i) r[i] = line.rep[i].to_double();
    reps.push_back(r);
  }
  double rho_ref = -1;
  bool ok = true;
  for (const auto& e : poly3.edges()) {
    auto a = poly3.vertex_as_double(e[0]);
    auto b = poly3.vertex_as_double(e[1]);
    std::vector<double> v{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (vn < 1e-9) continue;
    double best = 1e9;
    int best_id = -1;
    for (int id = 0; id < static_cast<int>(reps.size()); ++id) {
      const auto& d = reps[id];
      double dn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      double dot = std::abs(v[0] * d[0] + v[1] * d[1] + v[2] * d[2]) / (vn * dn);
      if (1 - dot < best) { best = 1 - dot; best_id = id; }
    }
    if (best > 1e-9) {
      ok = false;
      continue;
    }
    const auto& d = reps[best_id];
    double dn2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    double rho = std::abs((v[0] * d[0] + v[1] * d[1] + v[2] * d[2]) / dn2);
    if (rho_ref < 0) rho_ref = rho;
    double k = std::log(rho / rho_ref) / std::log(kPhiF);
    if (std::abs(k - std::lround(k)) > 1e-6) ok = false;
  }
  cert.constructible = ok;
  return cert;
}

std::string parts_list(const ZomeModel& model) {
  std::map<std::pair<int, int>, long> counts;  // (color order, -size) -> n
  auto order = [](char c) { return c == 'R' ? 0 : c == 'B' ? 1 : 2; };
  for (const auto& s : model.struts) ++counts[{order(s.color), -s.size_k}];
  std::ostringstream out;
  out << "Balls = " << model.balls.size() << "\n";
  const char* names = "RBY";
  for (const auto& [key, n] : counts)
    out << names[key.first] << -key.second << " = " << n << "\n";
  return out.str();
}

long total_pieces(const ZomeModel& model) {
  return static_cast<long>(model.balls.size() + model.struts.size());
}

std::vector<int> layer_decomposition(ZomeModel& model) {
  if (model.cells.empty()) throw Error(Errc::geometry, "model has no cell data");
  GVec centroid(3, Golden(0));
  for (const auto& b : model.balls) centroid = gvec_add(centroid, b);
  centroid = gvec_scale(Golden(Rational(1, static_cast<long>(model.balls.size())),
                               Rational(0)),
                        centroid);
  std::vector<Golden> dist2(model.cells.size());
  for (std::size_t c = 0; c < model.cells.size(); ++c) {
    GVec cc(3, Golden(0));
    for (int b : model.cells[c]) cc = gvec_add(cc, model.balls[b]);
    cc = gvec_scale(Golden(Rational(1, static_cast<long>(model.cells[c].size())),
                           Rational(0)),
                    cc);
    GVec d = gvec_sub(cc, centroid);
    dist2[c] = gvec_dot(d, d);
  }
  Golden best = dist2[0];
  for (const auto& d : dist2)
    if (d < best) best = d;
  model.cell_layer.assign(model.cells.size(), -1);
  std::queue<int> q;
  for (std::size_t c = 0; c < model.cells.size(); ++c)
    if (dist2[c] == best) {
      model.cell_layer[c] = 0;
      q.push(static_cast<int>(c));
    }
  while (!q.empty()) {
    int c = q.front();
    q.pop();
    for (int nb : model.cell_adjacency[c])
      if (model.cell_layer[nb] < 0) {
        model.cell_layer[nb] = model.cell_layer[c] + 1;
        q.push(nb);
      }
  }
  return model.cell_layer;
}

namespace {

struct FilterTerms {
  std::vector<std::pair<int, std::array<int, 2>>> layer;  // (bound, [lo..hi] style)
  std::optional<std::string> colors;
  struct Coord { int axis; int op; Golden c; };  // op: 0 >=, 1 >, 2 <=, 3 <, 4 ==
  std::vector<Coord> coords;
};

FilterTerms parse_filter(std::string expr) {
  FilterTerms terms;
  std::replace(expr.begin(), expr.end(), '&', '\n');
  std::istringstream in(expr);
  std::string term;
  while (std::getline(in, term)) {
    // trim
    auto a = term.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    auto b = term.find_last_not_of(" \t");
    term = term.substr(a, b - a + 1);
    if (term.rfind("layer", 0) == 0) {
      std::string rest = term.substr(5);
      auto strip = [&](const std::string& op) {
        auto p = rest.find(op);
        if (p == std::string::npos) return std::string();
        return rest.substr(p + op.size());
      };
      if (auto v = strip("<="); !v.empty())
        terms.layer.push_back({std::stoi(v), {0, std::stoi(v)}});
      else if (auto w = strip(">="); !w.empty())
        terms.layer.push_back({std::stoi(w), {std::stoi(w), 1 << 30}});
      else if (auto x = strip("=="); !x.empty())
        terms.layer.push_back({std::stoi(x), {std::stoi(x), std::stoi(x)}});
      else
        throw Error(Errc::parse, "bad layer term: " + term);
    } else if (term.rfind("color in", 0) == 0) {
      std::string letters;
      for (char ch : term.substr(8))
        if (ch != ' ') letters += ch;
      for (char ch : letters)
        if (ch != 'B' && ch != 'Y' && ch != 'R')
          throw Error(Errc::parse, std::string("unknown color '") + ch + "'");
      terms.colors = letters;
    } else if (term.rfind("orthant", 0) == 0) {
      std::string pat;
      for (char ch : term.substr(7))
        if (ch != ' ') pat += ch;
      if (pat.size() != 3) throw Error(Errc::parse, "orthant needs 3 signs");
      for (int ax = 0; ax < 3; ++ax) {
        if (pat[ax] == '+') terms.coords.push_back({ax, 0, Golden(0)});
        else if (pat[ax] == '-') terms.coords.push_back({ax, 2, Golden(0)});
        else if (pat[ax] != '*') throw Error(Errc::parse, "orthant signs are +, - or *");
      }
    } else if (term.size() > 1 && (term[0] == 'x' || term[0] == 'y' || term[0] == 'z')) {
      int ax = term[0] - 'x';
      std::string rest = term.substr(1);
      int op;
      std::size_t skip;
      if (rest.rfind(">=", 0) == 0) { op = 0; skip = 2; }
      else if (rest.rfind("<=", 0) == 0) { op = 2; skip = 2; }
      else if (rest.rfind("==", 0) == 0) { op = 4; skip = 2; }
      else if (rest.rfind(">", 0) == 0) { op = 1; skip = 1; }
      else if (rest.rfind("<", 0) == 0) { op = 3; skip = 1; }
      else throw Error(Errc::parse, "bad coordinate term: " + term);
      std::string val = rest.substr(skip);
      val.erase(std::remove(val.begin(), val.end(), ' '), val.end());
      terms.coords.push_back({ax, op, Golden::from_string(val)});
    } else {
      throw Error(Errc::parse, "unrecognized filter term: " + term);
    }
  }
  return terms;
}

bool coord_ok(const FilterTerms& t, const GVec& b) {
  for (const auto& c : t.coords) {
    int s = (b[c.axis] - c.c).sign();
    bool ok = c.op == 0 ? s >= 0 : c.op == 1 ? s > 0 : c.op == 2 ? s <= 0
              : c.op == 3 ? s < 0 : s == 0;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ZomeModel apply_filter(const ZomeModel& model, const std::string& expr) {
  FilterTerms terms = parse_filter(expr);
  if (!terms.layer.empty() &&
      (model.cell_layer.empty() ||
       std::all_of(model.cell_layer.begin(), model.cell_layer.end(),
                   [](int l) { return l < 0; })))
    throw Error(Errc::geometry, "layer filter requires layer_decomposition first");

  std::vector<bool> keep_ball(model.balls.size(), false);
  std::vector<int> kept_cells;
  if (!model.cells.empty()) {
    for (std::size_t c = 0; c < model.cells.size(); ++c) {
      bool ok = true;
      for (const auto& lt : terms.layer)
        ok = ok && model.cell_layer[c] >= lt.second[0] && model.cell_layer[c] <= lt.second[1];
      for (int b : model.cells[c]) ok = ok && coord_ok(terms, model.balls[b]);
      if (!ok) continue;
      kept_cells.push_back(static_cast<int>(c));
      for (int b : model.cells[c]) keep_ball[b] = true;
    }
  } else {
    for (std::size_t b = 0; b < model.balls.size(); ++b)
      keep_ball[b] = coord_ok(terms, model.balls[b]);
  }

  ZomeModel out;
  out.provenance = model.provenance;
  out.provenance["filter"] = expr;
  std::vector<int> remap(model.balls.size(), -1);
  for (std::size_t b = 0; b < model.balls.size(); ++b)
    if (keep_ball[b]) {
      remap[b] = static_cast<int>(out.balls.size());
      out.balls.push_back(model.balls[b]);
    }
  for (const auto& s : model.struts) {
    if (remap[s.ball_a] < 0 || remap[s.ball_b] < 0) continue;
    if (terms.colors && terms.colors->find(s.color) == std::string::npos) continue;
    Strut t = s;
    t.ball_a = remap[s.ball_a];
    t.ball_b = remap[s.ball_b];
    out.struts.push_back(t);
  }
  std::vector<int> cell_remap(model.cells.size(), -1);
  for (int c : kept_cells) {
    cell_remap[c] = static_cast<int>(out.cells.size());
    std::vector<int> ids;
    for (int b : model.cells[c]) ids.push_back(remap[b]);
    std::sort(ids.begin(), ids.end());
    out.cells.push_back(ids);
    if (!model.cell_layer.empty()) out.cell_layer.push_back(model.cell_layer[c]);
  }
  if (!model.cell_adjacency.empty()) {
    out.cell_adjacency.assign(out.cells.size(), {});
    for (int c : kept_cells)
      for (int nb : model.cell_adjacency[c])
        if (cell_remap[nb] >= 0) out.cell_adjacency[cell_remap[c]].push_back(cell_remap[nb]);
  }
  return out;
}

ZomeModel model_diff(const ZomeModel& model, const ZomeModel& sub) {
  std::unordered_set<std::string> model_balls;
  for (const auto& b : model.balls) model_balls.insert(gvec_key(b));
  for (const auto& b : sub.balls)
    if (!model_balls.count(gvec_key(b)))
      throw Error(Errc::geometry, "sub-model ball not present in model");
  std::set<std::pair<std::string, std::string>> sub_struts;
  for (const auto& s : sub.struts) {
    std::string a = gvec_key(sub.balls[s.ball_a]), b = gvec_key(sub.balls[s.ball_b]);
    sub_struts.insert({std::min(a, b), std::max(a, b)});
  }
  ZomeModel out = model;
  for (auto& s : out.struts) {
    std::string a = gvec_key(out.balls[s.ball_a]), b = gvec_key(out.balls[s.ball_b]);
    s.background = sub_struts.count({std::min(a, b), std::max(a, b)}) > 0;
  }
  return out;
}

std::vector<std::vector<int>> monochrome_paths(const ZomeModel& model, char color) {
  std::vector<std::vector<int>> adj(model.balls.size());
  std::set<std::array<int, 2>> edges;
  for (const auto& s : model.struts) {
    if (s.color != color) continue;
    adj[s.ball_a].push_back(s.ball_b);
    adj[s.ball_b].push_back(s.ball_a);
    edges.insert({std::min(s.ball_a, s.ball_b), std::max(s.ball_a, s.ball_b)});
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  std::set<std::array<int, 2>> used;
  auto take = [&](int a, int b) {
    return used.insert({std::min(a, b), std::max(a, b)}).second;
  };
  std::vector<std::vector<int>> out;
  auto walk = [&](int start, int next) {
    std::vector<int> path{start, next};
    while (adj[path.back()].size() == 2 && path.back() != start) {
      int cur = path.back(), prev = path[path.size() - 2];
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      if (!take(cur, nxt)) break;
      path.push_back(nxt);
    }
    return path;
  };
  // Open paths start at balls of degree != 2.
  for (std::size_t b = 0; b < adj.size(); ++b) {
    if (adj[b].empty() || adj[b].size() == 2) continue;
    for (int nb : adj[b])
      if (take(static_cast<int>(b), nb)) out.push_back(walk(static_cast<int>(b), nb));
  }
  // Remaining components are cycles of degree-2 balls.
  for (const auto& e : edges) {
    if (used.count(e)) continue;
    used.insert(e);
    out.push_back(walk(e[0], e[1]));
  }
  return out;
}

std::string ZomeModel::to_json() const {
  json j;
  j["schema"] = "zomemodel/1";
  json balls_j = json::array();
  for (const auto& b : balls) {
    json row = json::array();
    for (const auto& x : b) row.push_back(x.to_string());
    balls_j.push_back(row);
  }
  j["balls"] = balls_j;
  json struts_j = json::array();
  for (const auto& s : struts) {
    json rec;
    rec["a"] = s.ball_a;
    rec["b"] = s.ball_b;
    rec["color"] = std::string(1, s.color);
    rec["line"] = s.line_id;
    rec["size"] = s.size_k;
    if (s.background) rec["background"] = true;
    struts_j.push_back(rec);
  }
  j["struts"] = struts_j;
  j["cells"] = cells;
  j["cell_adjacency"] = cell_adjacency;
  j["cell_layer"] = cell_layer;
  j["provenance"] = provenance;
  return j.dump(1);
}

ZomeModel ZomeModel::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::io, std::string("bad model JSON: ") + e.what());
  }
  if (j.value("schema", "") != "zomemodel/1")
    throw Error(Errc::io, "unsupported schema: " + j.value("schema", "(none)"));
  ZomeModel m;
  for (const auto& row : j.at("balls")) {
    GVec b;
    for (const auto& x : row) b.push_back(Golden::from_string(x.get<std::string>()));
    m.balls.push_back(std::move(b));
  }
  for (const auto& rec : j.at("struts")) {
    Strut s;
    s.ball_a = rec.at("a").get<int>();
    s.ball_b = rec.at("b").get<int>();
    s.color = rec.at("color").get<std::string>().at(0);
    s.line_id = rec.at("line").get<int>();
    s.size_k = rec.at("size").get<int>();
    s.background = rec.value("background", false);
    m.struts.push_back(s);
  }
  m.cells = j.value("cells", std::vector<std::vector<int>>{});
  m.cell_adjacency = j.value("cell_adjacency", std::vector<std::vector<int>>{});
  m.cell_layer = j.value("cell_layer", std::vector<int>{});
  if (j.contains("provenance"))
    m.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
  return m;
}

std::string Certificate::to_json() const {
  json j;
  j["schema"] = "certificate/1";
  j["verdict"] = constructible ? "constructible" : "not";
  json off = json::array();
  for (const auto& o : offenders) {
    json rec;
    rec["edge"] = o.edge;
    json vec = json::array();
    for (const auto& x : o.vec) vec.push_back(x.to_string());
    rec["vector"] = vec;
    rec["reason"] = o.reason;
    off.push_back(rec);
  }
  j["offenders"] = off;
  json span = json::object();
  for (const auto& [c, s] : size_span) span[std::string(1, c)] = s;
  j["size_span"] = span;
  j["warnings"] = warnings;
  if (constructible) j["model"] = json::parse(model.to_json());
  return j.dump(1);
}

}  // namespace wz
