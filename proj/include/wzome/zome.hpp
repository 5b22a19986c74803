#pragma once

// Zometool layer: exact strut catalog, constructibility certificates,
// model assembly, layers, filters, paths and parts lists.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wzome/golden.hpp"
#include "wzome/polytope.hpp"

namespace wz {

struct StrutLine {
  char color;  // 'B', 'Y', 'R'
  GVec rep;    // canonical exact representative; norm^2 fixed per color
};

// The 31 icosahedral strut directions (15 blue, 10 yellow, 6 red). Every
// representative is verified at construction to be a symmetry axis of the
// icosahedron of the stated order, exactly.
class StrutCatalog {
 public:
  static const StrutCatalog& standard();
  const std::vector<StrutLine>& lines() const { return lines_; }
  Golden color_norm2(char color) const;

 private:
  std::vector<StrutLine> lines_;
};

struct ClassifyResult {
  char color;
  int line_id;
  Golden rho;  // v = rho * lines()[line_id].rep with rho > 0 (rep sign-flipped)
  bool flipped;
};

// The unique catalog line parallel to v (exact cross-product test), if any.
std::optional<ClassifyResult> classify_vector(const GVec& v, const StrutCatalog& cat);

struct PhiPower {
  long k;
  Rational q;  // rho = q * phi^k, q > 0 rational
};

// Unique (k, q) with rho = q*phi^k if one exists. Decision via the field
// norm: |N(rho)| must be a rational square; the candidate k is verified
// exactly. Throws when |k| would exceed 64 (distinct from "none").
std::optional<PhiPower> phi_power_residue(const Golden& rho);

struct Strut {
  int ball_a, ball_b;
  char color;
  int line_id;
  int size_k;               // 1-based after the global shift
  bool background = false;  // set by model_diff
};

struct ZomeModel {
  std::vector<GVec> balls;
  std::vector<Strut> struts;
  std::vector<std::vector<int>> cells;          // sorted ball-id sets
  std::vector<std::vector<int>> cell_adjacency;  // parallel to cells
  std::vector<int> cell_layer;                  // parallel to cells; -1 unset
  std::map<std::string, std::string> provenance;

  std::string to_json() const;
  static ZomeModel from_json(const std::string& text);
};

struct Offender {
  std::array<int, 2> edge;
  GVec vec;
  std::string reason;  // no-parallel-line | ratio-not-phi-power | mixed-scale
};

struct Certificate {
  bool constructible = false;
  ZomeModel model;                 // valid iff constructible
  std::vector<Offender> offenders; // nonempty iff not constructible
  std::map<char, int> size_span;   // per color: max size - min size
  std::vector<std::string> warnings;

  std::string to_json() const;
};

// Decides Zome constructibility of an exact 3D skeleton: every edge must lie
// on a catalog line and the edge scalars must agree up to powers of phi
// (rho_e / rho_ref in phi^Z). Sizes are shifted so the smallest in use is 1.
Certificate check_constructible(const std::vector<GVec>& vertices,
                                const std::vector<std::array<int, 2>>& edges,
                                const StrutCatalog& cat);

// Exact rotation mapping every edge direction into the catalog's 31 lines,
// identity preferred; nullopt when no such rotation exists.
std::optional<GMat> align_to_catalog(const std::vector<GVec>& vertices,
                                     const std::vector<std::array<int, 2>>& edges,
                                     const StrutCatalog& cat);

struct CollapseReport {
  long merged_vertices = 0;  // vertices identified into existing balls
  long dropped_edges = 0;    // edges collapsing to a point
  long merged_struts = 0;    // duplicate ball pairs removed
};

// Projected-polytope assembly: merge coincident vertices into balls, drop
// null edges, merge duplicate struts, align to the catalog, check, and carry
// cell data through (antipodal cells merging by ball set).
std::pair<Certificate, CollapseReport> build_model(const Polytope& poly3,
                                                   const StrutCatalog& cat);

// Advisory float check (tolerance 1e-9); never a proof, returned verdict is
// labeled non-certifying in the JSON.
Certificate advisory_check_f(const Polytope& poly3, const StrutCatalog& cat);

// Parts block: "Balls = N" then per (color, size) counts,
// colors R, B, Y with sizes descending.
std::string parts_list(const ZomeModel& model);
long total_pieces(const ZomeModel& model);

// Layer index per cell: 0 for the cell(s) whose centroid is nearest the
// model centroid (exact comparison), then BFS over cell adjacency.
std::vector<int> layer_decomposition(ZomeModel& model);

// Filter expression grammar (terms joined by '&'):
//   layer<=N | layer>=N | layer==N
//   color in <letters>              e.g. "color in BY"
//   x>=c | x<c | y.. | z..          half-spaces over ball coordinates, c golden
//   orthant +++                     sign pattern per coordinate (+/-/*)
// Cells are kept when all their balls satisfy the coordinate terms and the
// layer terms hold; struts are kept iff both balls survive.
ZomeModel apply_filter(const ZomeModel& model, const std::string& expr);

// Tags struts of `model` that also appear in `sub` (matched by exact endpoint
// coordinates) as background; the rest stay foreground.
ZomeModel model_diff(const ZomeModel& model, const ZomeModel& sub);

// Maximal simple paths/cycles in the one-color subgraph, following balls of
// degree 2 in that subgraph; each returned as a ball-id sequence (closed
// walks repeat the first id at the end).
std::vector<std::vector<int>> monochrome_paths(const ZomeModel& model, char color);

}  // namespace wz
