#pragma once

// Coxeter diagrams, simple-root realizations and group-level invariants.
//
// Node order conventions (ring patterns are positional):
//   A,B,F,H,I : linear chains numbered left to right. The highest edge label
//               sits at the left end for H (m12 = 5) and between the middle
//               nodes for F4 (m23 = 4); for B the 4-labelled edge joins the
//               last two nodes (so "Bn x o ... o" is the cross-polytope).
//   D         : nodes 1..n-1 form a chain, node n hangs off node n-2.
//   E         : nodes 1..n-1 form a chain, node n hangs off node 3.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wzome/golden.hpp"

namespace wz {

enum class Mode { exact, floating };

struct Diagram {
  int n = 0;
  std::vector<std::vector<int>> m;  // Coxeter matrix, m[i][i] = 1
  std::string family;               // "H4", "I2(7)", "matrix", ...

  bool is_connected() const;
};

struct RingPattern {
  std::vector<bool> active;  // true = seed point off that mirror
  int count_active() const;
};

// Parses "<family><rank> <rings>" (rings: x = active, o = inactive, spaces
// optional) or "matrix:[[1,3],[3,1]] rings:xo". Validates finite type.
std::pair<Diagram, RingPattern> parse_diagram(const std::string& text);

// Loads one diagram spec per line; '#' starts a comment.
std::vector<std::string> load_diagram_file(const std::string& path);

struct ReflectionRep {
  Diagram diagram;
  int dim = 0;  // ambient dimension (>= rank; A_n uses n+1 coordinates)
  Mode mode = Mode::exact;
  std::vector<GVec> roots;                     // exact mode
  std::vector<std::vector<double>> roots_f;    // float mode
  std::vector<Golden> norm2;                   // squared root norms (exact)
  std::vector<double> norm2_f;

  int rank() const { return diagram.n; }

  GVec reflect(const GVec& x, int i) const;
  std::vector<double> reflect_f(const std::vector<double>& x, int i) const;
  GMat reflection_matrix(int i) const;
  std::vector<std::vector<double>> reflection_matrix_f(int i) const;
};

// Exact simple roots for A,B,D,E,F (integer coordinates), H3/H4/I2(5)
// (golden coordinates); float Cholesky realization for other I2(p).
ReflectionRep simple_roots(const Diagram& d);

// Orbit size of a point with trivial stabilizer; must equal the classical
// group order. Throws when the orbit exceeds `cap`.
long group_order(const ReflectionRep& rep, long cap = 10000000L);

struct CoxeterElementInfo {
  Mode mode = Mode::exact;
  GMat matrix;                                // exact mode
  std::vector<std::vector<double>> matrix_f;  // float mode
  int h = 0;                                  // Coxeter number
};

// Product of the generators in node order; requires a connected diagram.
CoxeterElementInfo coxeter_element(const ReflectionRep& rep, int order_cap = 10000);

// Coxeter element of the parabolic subgroup on `nodes`, in the ambient
// representation (used for e.g. the H3 plane of an H4 polytope).
CoxeterElementInfo parabolic_coxeter_element(const ReflectionRep& rep,
                                             const std::vector<int>& nodes,
                                             int order_cap = 10000);

}  // namespace wz
