#include "wzome/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace wz {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Finite-type check: the Gram matrix of unit roots, G_ij = -cos(pi/m_ij),
// must be positive definite. Leading principal minors via float Cholesky.
bool positive_definite_gram(const Diagram& d) {
  int n = d.n;
  std::vector<std::vector<double>> g(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g[i][j] = i == j ? 1.0 : -std::cos(kPi / d.m[i][j]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g[i][j];
      for (int k = 0; k < j; ++k) s -= g[i][k] * g[j][k];
      if (i == j) {
        if (s < 1e-9) return false;
        g[i][i] = std::sqrt(s);
      } else {
        g[i][j] = s / g[j][j];
      }
    }
  }
  return true;
}

std::vector<std::vector<int>> chain_matrix(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  return m;
}

Diagram family_diagram(char fam, int rank, int i2_label) {
  Diagram d;
  d.n = rank;
  switch (fam) {
    case 'A':
      if (rank < 1) throw Error(Errc::parse, "A rank must be >= 1");
      d.m = chain_matrix(rank);
      break;
    case 'B':
      if (rank < 2) throw Error(Errc::parse, "B rank must be >= 2");
      d.m = chain_matrix(rank);
      d.m[rank - 2][rank - 1] = d.m[rank - 1][rank - 2] = 4;
      break;
    case 'D':
      if (rank < 4) throw Error(Errc::parse, "D rank must be >= 4");
      d.m = chain_matrix(rank - 1);
      for (auto& row : d.m) row.push_back(2);
      d.m.push_back(std::vector<int>(rank, 2));
      d.m[rank - 1][rank - 1] = 1;
      d.m[rank - 3][rank - 1] = d.m[rank - 1][rank - 3] = 3;
      break;
    case 'E':
      if (rank < 6 || rank > 8) throw Error(Errc::parse, "E rank must be 6..8");
      d.m = chain_matrix(rank - 1);
      for (auto& row : d.m) row.push_back(2);
      d.m.push_back(std::vector<int>(rank, 2));
      d.m[rank - 1][rank - 1] = 1;
      d.m[2][rank - 1] = d.m[rank - 1][2] = 3;
      break;
    case 'F':
      if (rank != 4) throw Error(Errc::parse, "F rank must be 4");
      d.m = chain_matrix(4);
      d.m[1][2] = d.m[2][1] = 4;
      break;
    case 'H':
      if (rank != 3 && rank != 4) throw Error(Errc::parse, "H rank must be 3 or 4");
      d.m = chain_matrix(rank);
      d.m[0][1] = d.m[1][0] = 5;
      break;
    case 'I':
      if (rank != 2) throw Error(Errc::parse, "I rank must be 2: I2(p)");
      if (i2_label < 3) throw Error(Errc::parse, "I2(p) needs p >= 3");
      d.m = chain_matrix(2);
      d.m[0][1] = d.m[1][0] = i2_label;
      break;
    default:
      throw Error(Errc::parse, std::string("unknown family '") + fam + "'");
  }
  std::ostringstream name;
  if (fam == 'I')
    name << "I2(" << i2_label << ")";
  else
    name << fam << rank;
  d.family = name.str();
  return d;
}

std::vector<bool> parse_rings(const std::string& s, int n) {
  std::vector<bool> active;
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    if (c == 'x' || c == 'X')
      active.push_back(true);
    else if (c == 'o' || c == 'O')
      active.push_back(false);
    else
      throw Error(Errc::parse, std::string("bad ring mark '") + c + "' (use x/o)");
  }
  if (static_cast<int>(active.size()) != n)
    throw Error(Errc::parse, "ring pattern length " + std::to_string(active.size()) +
                                 " does not match rank " + std::to_string(n));
  if (std::none_of(active.begin(), active.end(), [](bool b) { return b; }))
    throw Error(Errc::parse, "at least one node must be active");
  return active;
}

GVec axis_vec(int dim, int i, long v) {
  GVec e(dim, Golden(0));
  e[i] = Golden(v);
  return e;
}

}  // namespace

bool Diagram::is_connected() const {
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int cnt = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (int j = 0; j < n; ++j)
      if (!seen[j] && m[i][j] >= 3) {
        seen[j] = true;
        ++cnt;
        q.push(j);
      }
  }
  return cnt == n;
}

int RingPattern::count_active() const {
  return static_cast<int>(std::count(active.begin(), active.end(), true));
}

std::pair<Diagram, RingPattern> parse_diagram(const std::string& text) {
  std::string s = text;
  // matrix form: matrix:[[1,3],[3,1]] rings:xo
  if (s.rfind("matrix:", 0) == 0) {
    auto rpos = s.find("rings:");
    if (rpos == std::string::npos) throw Error(Errc::parse, "matrix form needs rings:");
    std::string mat = s.substr(7, rpos - 7);
    std::string rings = s.substr(rpos + 6);
    Diagram d;
    std::vector<std::vector<int>> rows;
    std::vector<int> cur;
    long val = -1;
    for (char c : mat) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        val = (val < 0 ? 0 : val) * 10 + (c - '0');
      } else {
        if (val >= 0) cur.push_back(static_cast<int>(val));
        val = -1;
        if (c == ']' && !cur.empty()) {
          rows.push_back(cur);
          cur.clear();
        }
      }
    }
    if (rows.empty()) throw Error(Errc::parse, "empty matrix");
    d.n = static_cast<int>(rows.size());
    for (auto& r : rows)
      if (static_cast<int>(r.size()) != d.n) throw Error(Errc::parse, "matrix not square");
    d.m = rows;
    for (int i = 0; i < d.n; ++i) {
      if (d.m[i][i] != 1) throw Error(Errc::parse, "diagonal entries must be 1");
      for (int j = 0; j < d.n; ++j) {
        if (d.m[i][j] != d.m[j][i]) throw Error(Errc::parse, "matrix not symmetric");
        if (i != j && d.m[i][j] < 2) throw Error(Errc::parse, "off-diagonal entries must be >= 2");
      }
    }
    d.family = "matrix";
    if (!positive_definite_gram(d)) throw Error(Errc::parse, "diagram is not of finite type");
    return {d, RingPattern{parse_rings(rings, d.n)}};
  }

  std::istringstream in(s);
  std::string head;
  if (!(in >> head)) throw Error(Errc::parse, "empty diagram spec");
  char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(head[0])));
  int rank = 0, label = 0;
  if (fam == 'I') {
    if (std::sscanf(head.c_str() + 1, "2(%d)", &label) != 1)
      throw Error(Errc::parse, "I family spelled I2(p): '" + head + "'");
    rank = 2;
  } else {
    try {
      rank = std::stoi(head.substr(1));
    } catch (...) {
      throw Error(Errc::parse, "bad diagram spec '" + head + "'");
    }
  }
  Diagram d = family_diagram(fam, rank, label);
  if (!positive_definite_gram(d))
    throw Error(Errc::parse, d.family + " is not of finite type");
  std::string rest;
  std::getline(in, rest);
  return {d, RingPattern{parse_rings(rest, d.n)}};
}

std::vector<std::string> load_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path);
  std::vector<std::string> specs;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    specs.push_back(line.substr(first, last - first + 1));
  }
  return specs;
}

GVec ReflectionRep::reflect(const GVec& x, int i) const {
  Golden c = Golden(2) * gvec_dot(x, roots[i]) / norm2[i];
  return gvec_sub(x, gvec_scale(c, roots[i]));
}

std::vector<double> ReflectionRep::reflect_f(const std::vector<double>& x, int i) const {
  double d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d += x[k] * roots_f[i][k];
  double c = 2.0 * d / norm2_f[i];
  std::vector<double> r(x);
  for (std::size_t k = 0; k < x.size(); ++k) r[k] -= c * roots_f[i][k];
  return r;
}

GMat ReflectionRep::reflection_matrix(int i) const {
  GMat m = GMat::identity(dim);
  for (int col = 0; col < dim; ++col) {
    GVec e(dim, Golden(0));
    e[col] = Golden(1);
    GVec img = reflect(e, i);
    for (int row = 0; row < dim; ++row) m.at(row, col) = img[row];
  }
  return m;
}

std::vector<std::vector<double>> ReflectionRep::reflection_matrix_f(int i) const {
  std::vector<std::vector<double>> m(dim, std::vector<double>(dim, 0.0));
  for (int col = 0; col < dim; ++col) {
    std::vector<double> e(dim, 0.0);
    e[col] = 1.0;
    auto img = reflect_f(e, i);
    for (int row = 0; row < dim; ++row) m[row][col] = img[row];
  }
  return m;
}

ReflectionRep simple_roots(const Diagram& d) {
  ReflectionRep rep;
  rep.diagram = d;
  char fam = d.family.empty() ? '?' : d.family[0];
  int n = d.n;
  auto G = [](long a, long b) { return Golden(Rational(a), Rational(b)); };

  if (fam == 'A') {
    rep.dim = n + 1;
    for (int i = 0; i < n; ++i) {
      GVec r(rep.dim, Golden(0));
      r[i] = Golden(1);
      r[i + 1] = Golden(-1);
      rep.roots.push_back(r);
    }
  } else if (fam == 'B') {
    rep.dim = n;
    for (int i = 0; i + 1 < n; ++i) {
      GVec r(n, Golden(0));
      r[i] = Golden(1);
      r[i + 1] = Golden(-1);
      rep.roots.push_back(r);
    }
    rep.roots.push_back(axis_vec(n, n - 1, 1));
  } else if (fam == 'D') {
    rep.dim = n;
    for (int i = 0; i + 1 < n; ++i) {
      GVec r(n, Golden(0));
      r[i] = Golden(1);
      r[i + 1] = Golden(-1);
      rep.roots.push_back(r);
    }
    GVec r(n, Golden(0));
    r[n - 2] = Golden(1);
    r[n - 1] = Golden(1);
    rep.roots.push_back(r);
  } else if (fam == 'E') {
    // E6/E7 have no rational realization in rank dimensions, so all three
    // live inside R^8 as the leading simple roots of E8: chain roots
    // e_i - e_{i+1} and the half-integer branch root on node 3.
    rep.dim = 8;
    for (int i = 0; i + 1 < n; ++i) {
      GVec r(8, Golden(0));
      r[i] = Golden(1);
      r[i + 1] = Golden(-1);
      rep.roots.push_back(r);
    }
    GVec r(8, Golden(0));
    for (int i = 0; i < 8; ++i)
      r[i] = Golden(Rational(i < 3 ? -1 : 1, 2), Rational(0));
    rep.roots.push_back(r);
  } else if (fam == 'F') {
    rep.dim = 4;
    rep.roots = {
        {Golden(0), Golden(1), Golden(-1), Golden(0)},
        {Golden(0), Golden(0), Golden(1), Golden(-1)},
        {Golden(0), Golden(0), Golden(0), Golden(1)},
        {Golden(Rational(1, 2), Rational(0)), Golden(Rational(-1, 2), Rational(0)),
         Golden(Rational(-1, 2), Rational(0)), Golden(Rational(-1, 2), Rational(0))},
    };
  } else if (fam == 'H' && n == 3) {
    rep.dim = 3;
    rep.roots = {
        {G(2, 0), G(0, 0), G(0, 0)},
        {G(0, -1), G(-1, 1), G(-1, 0)},
        {G(0, 0), G(0, 0), G(2, 0)},
    };
  } else if (fam == 'H' && n == 4) {
    rep.dim = 4;
    rep.roots = {
        {G(2, 0), G(0, 0), G(0, 0), G(0, 0)},
        {G(0, -1), G(-1, 0), G(0, 0), G(-1, 1)},
        {G(0, 0), G(1, 0), G(-1, 1), G(0, -1)},
        {G(0, 0), G(-1, 1), G(0, -1), G(1, 0)},
    };
  } else if (fam == 'I' && d.m[0][1] == 3) {
    rep = simple_roots(family_diagram('A', 2, 0));
    rep.diagram = d;
    return rep;
  } else if (fam == 'I' && d.m[0][1] == 4) {
    rep = simple_roots(family_diagram('B', 2, 0));
    rep.diagram = d;
    return rep;
  } else if (fam == 'I' && d.m[0][1] == 5) {
    // No equal-norm golden realization exists in the plane; embed as the
    // first two H3 roots.
    auto h3 = simple_roots(family_diagram('H', 3, 0));
    rep.dim = 3;
    rep.roots = {h3.roots[0], h3.roots[1]};
  } else {
    // Float fallback: unit roots from the Cholesky factor of the Gram matrix.
    rep.mode = Mode::floating;
    rep.dim = n;
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i][j] = i == j ? 1.0 : -std::cos(kPi / d.m[i][j]);
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = g[i][j];
        for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
        if (i == j)
          l[i][i] = std::sqrt(s);
        else
          l[i][j] = s / l[j][j];
      }
    rep.roots_f = l;
    rep.norm2_f.assign(n, 1.0);
    return rep;
  }

  for (const auto& r : rep.roots) rep.norm2.push_back(gvec_dot(r, r));
  for (const auto& r : rep.roots) {
    std::vector<double> rf(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) rf[i] = r[i].to_double();
    rep.roots_f.push_back(rf);
  }
  for (const auto& x : rep.norm2) rep.norm2_f.push_back(x.to_double());
  return rep;
}

long group_order(const ReflectionRep& rep, long cap) {
  int n = rep.rank();
  if (rep.mode == Mode::exact) {
    // Generic point: distinct positive inner products with every root.
    GMat gram(n, n);
    GVec rhs(n);
    for (int i = 0; i < n; ++i) {
      rhs[i] = Golden(i + 1);
      for (int j = 0; j < n; ++j) gram.at(i, j) = gvec_dot(rep.roots[i], rep.roots[j]);
    }
    GVec coeff = solve_linear(gram, rhs);
    GVec p(rep.dim, Golden(0));
    for (int i = 0; i < n; ++i) p = gvec_add(p, gvec_scale(coeff[i], rep.roots[i]));
    std::unordered_map<GVec, int, GVecHash> seen;
    std::vector<GVec> queue{p};
    seen.emplace(p, 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      GVec v = queue[head];
      for (int i = 0; i < n; ++i) {
        GVec w = rep.reflect(v, i);
        if (seen.emplace(w, 1).second) {
          queue.push_back(w);
          if (static_cast<long>(queue.size()) > cap)
            throw Error(Errc::geometry, "group order exceeds cap");
        }
      }
    }
    return static_cast<long>(queue.size());
  }
  // Float rep: same BFS with grid deduplication at 1e-8 after unit scaling.
  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs[i] = i + 1.0;
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < rep.dim; ++k) s += rep.roots_f[i][k] * rep.roots_f[j][k];
      gram[i][j] = s;
    }
  }
  // Gaussian solve.
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
  auto key = [](const std::vector<double>& v) {
    std::string k;
    for (double x : v) {
      long long g = std::llround(x * 1e8);
      k.append(reinterpret_cast<const char*>(&g), sizeof g);
    }
    return k;
  };
  std::unordered_map<std::string, int> seen;
  std::vector<std::vector<double>> queue{p};
  seen.emplace(key(p), 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto v = queue[head];
    for (int i = 0; i < n; ++i) {
      auto w = rep.reflect_f(v, i);
      if (seen.emplace(key(w), 1).second) {
        queue.push_back(w);
        if (static_cast<long>(queue.size()) > cap)
          throw Error(Errc::geometry, "group order exceeds cap");
      }
    }
  }
  return static_cast<long>(queue.size());
}

namespace {

CoxeterElementInfo element_of(const ReflectionRep& rep, const std::vector<int>& nodes,
                              int order_cap) {
  CoxeterElementInfo info;
  info.mode = rep.mode;
  if (rep.mode == Mode::exact) {
    GMat c = GMat::identity(rep.dim);
    for (int i : nodes) c = c * rep.reflection_matrix(i);
    info.matrix = c;
    GMat p = c;
    GMat id = GMat::identity(rep.dim);
    for (int k = 1; k <= order_cap; ++k) {
      if (p == id) {
        info.h = k;
        return info;
      }
      p = p * c;
    }
    throw Error(Errc::geometry, "coxeter element order exceeds cap");
  }
  int d = rep.dim;
  std::vector<std::vector<double>> c(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) c[i][i] = 1.0;
  auto matmul = [d](const auto& x, const auto& y) {
    std::vector<std::vector<double>> r(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
  };
  for (int i : nodes) c = matmul(c, rep.reflection_matrix_f(i));
  info.matrix_f = c;
  auto p = c;
  for (int k = 1; k <= order_cap; ++k) {
    double err = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) err = std::max(err, std::abs(p[i][j] - (i == j ? 1.0 : 0.0)));
    if (err < 1e-9) {
      info.h = k;
      return info;
    }
    p = matmul(p, c);
  }
  throw Error(Errc::geometry, "coxeter element order exceeds cap");
}

}  // namespace

CoxeterElementInfo coxeter_element(const ReflectionRep& rep, int order_cap) {
  if (!rep.diagram.is_connected())
    throw Error(Errc::geometry, "coxeter element requires an irreducible diagram");
  std::vector<int> nodes(rep.rank());
  for (int i = 0; i < rep.rank(); ++i) nodes[i] = i;
  return element_of(rep, nodes, order_cap);
}

CoxeterElementInfo parabolic_coxeter_element(const ReflectionRep& rep,
                                             const std::vector<int>& nodes,
                                             int order_cap) {
  return element_of(rep, nodes, order_cap);
}

}  // namespace wz
