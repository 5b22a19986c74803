#include "wzome/wythoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace wz {

namespace {

// rhs for the seed system <p, alpha_i> = rhs_i: zero on inactive mirrors,
// equal perpendicular distance on active ones (rhs_i proportional to |a_i|).
std::optional<GVec> seed_rhs(const ReflectionRep& rep, const RingPattern& rings) {
  int n = rep.rank();
  int base = -1;
  for (int i = 0; i < n; ++i)
    if (rings.active[i]) { base = i; break; }
  if (base < 0) throw Error(Errc::parse, "no active node");
  GVec rhs(n, Golden(0));
  for (int i = 0; i < n; ++i) {
    if (!rings.active[i]) continue;
    auto r = golden_sqrt(rep.norm2[i] / rep.norm2[base]);
    if (!r) return std::nullopt;
    rhs[i] = *r;
  }
  return rhs;
}

std::string grid_key(const std::vector<double>& v) {
  std::string k;
  k.reserve(v.size() * sizeof(std::int64_t));
  for (double x : v) {
    std::int64_t g = std::llround(x * 1e8);
    if (g == 0) g = 0;  // collapse -0
    k.append(reinterpret_cast<const char*>(&g), sizeof g);
  }
  return k;
}

// Affine rank of the listed vertices, exact or float.
struct RankOracle {
  const Polytope* poly;
  int operator()(const std::vector<int>& ids, int cap) const {
    if (ids.size() < 2) return 0;
    if (poly->mode == Mode::exact) {
      std::vector<GVec> rows;
      for (std::size_t i = 1; i < ids.size(); ++i)
        rows.push_back(gvec_sub(poly->vertices[ids[i]], poly->vertices[ids[0]]));
      return gmat_rank(std::move(rows), cap);
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 1; i < ids.size(); ++i) {
      std::vector<double> r = poly->vertices_f[ids[i]];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= poly->vertices_f[ids[0]][j];
      rows.push_back(std::move(r));
    }
    int rank = 0;
    std::size_t dim = rows[0].size();
    for (std::size_t col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
      int piv = -1;
      double best = 1e-7;
      for (std::size_t r = rank; r < rows.size(); ++r)
        if (std::abs(rows[r][col]) > best) { best = std::abs(rows[r][col]); piv = static_cast<int>(r); }
      if (piv < 0) continue;
      std::swap(rows[rank], rows[piv]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(r) == rank) continue;
        double f = rows[r][col] / rows[rank][col];
        for (std::size_t j = col; j < dim; ++j) rows[r][j] -= f * rows[rank][j];
      }
      ++rank;
      if (cap >= 0 && rank >= cap) return rank;
    }
    return rank;
  }
};

// Generator-induced vertex permutations; everything above rank 0 is
// combinatorial once these are known.
std::vector<std::vector<int>> orbit_permutations_exact(const ReflectionRep& rep,
                                                       const std::vector<GVec>& verts) {
  std::unordered_map<GVec, int, GVecHash> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], static_cast<int>(i));
  std::vector<std::vector<int>> perm(rep.rank(), std::vector<int>(verts.size()));
  for (int g = 0; g < rep.rank(); ++g)
    for (std::size_t v = 0; v < verts.size(); ++v)
      perm[g][v] = index.at(rep.reflect(verts[v], g));
  return perm;
}

std::vector<std::vector<int>> orbit_permutations_float(
    const ReflectionRep& rep, const std::vector<std::vector<double>>& verts) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < verts.size(); ++i)
    index.emplace(grid_key(verts[i]), static_cast<int>(i));
  std::vector<std::vector<int>> perm(rep.rank(), std::vector<int>(verts.size()));
  for (int g = 0; g < rep.rank(); ++g)
    for (std::size_t v = 0; v < verts.size(); ++v) {
      auto it = index.find(grid_key(rep.reflect_f(verts[v], g)));
      if (it == index.end())
        throw Error(Errc::geometry, "float orbit not closed at dedup tolerance");
      perm[g][v] = it->second;
    }
  return perm;
}

// Closure of the id-set `start` under each permutation, deduplicated by
// sorted vertex-id set; deterministic BFS order.
std::vector<std::vector<int>> face_closure(const std::vector<std::vector<int>>& perms,
                                           std::vector<int> start) {
  std::sort(start.begin(), start.end());
  std::set<std::vector<int>> seen{start};
  std::vector<std::vector<int>> queue{std::move(start)};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::vector<int> cur = queue[head];
    for (const auto& perm : perms) {
      std::vector<int> img(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) img[i] = perm[cur[i]];
      std::sort(img.begin(), img.end());
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return queue;
}

// Suborbit of vertex 0 under the generators listed in `sub`.
std::vector<int> suborbit_ids(const std::vector<std::vector<int>>& perms,
                              const std::vector<int>& sub, int start) {
  std::vector<int> out{start};
  std::unordered_set<int> seen{start};
  for (std::size_t head = 0; head < out.size(); ++head)
    for (int g : sub) {
      int w = perms[g][out[head]];
      if (seen.insert(w).second) out.push_back(w);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool seed_is_exact(const ReflectionRep& rep, const RingPattern& rings) {
  return rep.mode == Mode::exact && seed_rhs(rep, rings).has_value();
}

GVec seed_point(const ReflectionRep& rep, const RingPattern& rings) {
  auto rhs = seed_rhs(rep, rings);
  if (rep.mode != Mode::exact || !rhs)
    throw Error(Errc::geometry,
                "no exact seed: active root norm ratio is not a square in Q(phi)");
  int n = rep.rank();
  GMat gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram.at(i, j) = gvec_dot(rep.roots[i], rep.roots[j]);
  GVec coeff = solve_linear(gram, *rhs);
  GVec p(rep.dim, Golden(0));
  for (int i = 0; i < n; ++i) p = gvec_add(p, gvec_scale(coeff[i], rep.roots[i]));
  // Scale so the first nonzero coordinate is 1.
  for (const auto& x : p)
    if (!x.is_zero()) return gvec_scale(x.inverse(), p);
  throw Error(Errc::geometry, "seed point vanished (inconsistent system)");
}

std::vector<double> seed_point_f(const ReflectionRep& rep, const RingPattern& rings) {
  int n = rep.rank();
  int base = -1;
  for (int i = 0; i < n; ++i)
    if (rings.active[i]) { base = i; break; }
  if (base < 0) throw Error(Errc::parse, "no active node");
  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  std::vector<double> rhs(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (rings.active[i]) rhs[i] = std::sqrt(rep.norm2_f[i] / rep.norm2_f[base]);
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < rep.dim; ++k) s += rep.roots_f[i][k] * rep.roots_f[j][k];
      gram[i][j] = s;
    }
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c; r < n; ++r)
      if (std::abs(gram[r][c]) > std::abs(gram[piv][c])) piv = r;
    std::swap(gram[c], gram[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = gram[r][c] / gram[c][c];
      for (int j = 0; j < n; ++j) gram[r][j] -= f * gram[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> p(rep.dim, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < rep.dim; ++k) p[k] += rhs[i] / gram[i][i] * rep.roots_f[i][k];
  double norm = 0;
  for (double x : p) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : p) x /= norm;
  return p;
}

std::vector<GVec> vertex_orbit(const ReflectionRep& rep, const GVec& p, long cap) {
  std::unordered_set<GVec, GVecHash> seen{p};
  std::vector<GVec> queue{p};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    GVec v = queue[head];
    for (int i = 0; i < rep.rank(); ++i) {
      GVec w = rep.reflect(v, i);
      if (seen.insert(w).second) {
        queue.push_back(std::move(w));
        if (static_cast<long>(queue.size()) > cap)
          throw Error(Errc::geometry, "vertex orbit exceeds cap");
      }
    }
  }
  return queue;
}

std::vector<std::vector<double>> vertex_orbit_f(const ReflectionRep& rep,
                                                const std::vector<double>& p, long cap) {
  std::unordered_set<std::string> seen{grid_key(p)};
  std::vector<std::vector<double>> queue{p};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto v = queue[head];
    for (int i = 0; i < rep.rank(); ++i) {
      auto w = rep.reflect_f(v, i);
      if (seen.insert(grid_key(w)).second) {
        queue.push_back(std::move(w));
        if (static_cast<long>(queue.size()) > cap)
          throw Error(Errc::geometry, "vertex orbit exceeds cap");
      }
    }
  }
  return queue;
}

Polytope build_polytope(const ReflectionRep& rep, const RingPattern& rings, long cap) {
  Polytope poly;
  poly.dim = rep.dim;
  std::vector<std::vector<int>> perms;
  if (seed_is_exact(rep, rings)) {
    poly.mode = Mode::exact;
    poly.vertices = vertex_orbit(rep, seed_point(rep, rings), cap);
    perms = orbit_permutations_exact(rep, poly.vertices);
  } else {
    poly.mode = Mode::floating;
    poly.vertices_f = vertex_orbit_f(rep, seed_point_f(rep, rings), cap);
    perms = orbit_permutations_float(rep, poly.vertices_f);
  }

  RankOracle affine_rank{&poly};
  std::vector<int> all_ids(poly.vertex_count());
  for (int i = 0; i < static_cast<int>(all_ids.size()); ++i) all_ids[i] = i;
  int n = rep.rank();
  int top = affine_rank(all_ids, -1);

  poly.faces.assign(top, {});
  for (int k = 1; k < top; ++k) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> level;
    // Every k-subset of generators; base faces are suborbits of vertex 0
    // whose affine hull has dimension exactly k.
    std::vector<int> sel(k);
    for (int i = 0; i < k; ++i) sel[i] = i;
    while (true) {
      std::vector<int> ids = suborbit_ids(perms, sel, 0);
      if (static_cast<int>(ids.size()) >= k + 1 && affine_rank(ids, k + 1) == k &&
          !seen.count(ids)) {
        for (auto& face : face_closure(perms, ids))
          if (seen.insert(face).second) level.push_back(std::move(face));
      }
      int i = k - 1;
      while (i >= 0 && sel[i] == n - k + i) --i;
      if (i < 0) break;
      ++sel[i];
      for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    }
    std::sort(level.begin(), level.end());
    poly.faces[k] = std::move(level);
  }

  std::ostringstream rings_text;
  for (bool a : rings.active) rings_text << (a ? 'x' : 'o');
  poly.provenance["diagram"] = rep.diagram.family;
  poly.provenance["rings"] = rings_text.str();
  return poly;
}

std::vector<std::vector<int>> cell_adjacency(const Polytope& poly) {
  if (poly.faces.size() != 4)
    throw Error(Errc::geometry, "cell adjacency needs a 4-dimensional polytope");
  const auto& cells = poly.faces[3];
  const auto& ridges = poly.faces[2];
  std::vector<std::vector<int>> by_vertex(poly.vertex_count());
  for (int c = 0; c < static_cast<int>(cells.size()); ++c)
    for (int v : cells[c]) by_vertex[v].push_back(c);
  std::vector<std::set<int>> adj(cells.size());
  std::vector<std::unordered_set<int>> cell_sets(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
    cell_sets[c] = {cells[c].begin(), cells[c].end()};
  for (const auto& ridge : ridges) {
    // Cells containing every vertex of the ridge.
    std::vector<int> owners;
    for (int c : by_vertex[ridge[0]]) {
      bool all = true;
      for (std::size_t i = 1; i < ridge.size() && all; ++i)
        all = cell_sets[c].count(ridge[i]) > 0;
      if (all) owners.push_back(c);
    }
    for (std::size_t i = 0; i < owners.size(); ++i)
      for (std::size_t j = i + 1; j < owners.size(); ++j) {
        adj[owners[i]].insert(owners[j]);
        adj[owners[j]].insert(owners[i]);
      }
  }
  std::vector<std::vector<int>> out(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) out[c] = {adj[c].begin(), adj[c].end()};
  return out;
}

}  // namespace wz
