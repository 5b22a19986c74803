#pragma once

// Projections: element-first orthogonal projection, stereographic projection
// and Coxeter-plane images.

#include <array>

#include "wzome/coxeter.hpp"
#include "wzome/polytope.hpp"

namespace wz {

// Row basis of a subspace. In exact mode the rows are pairwise orthogonal
// with one shared squared norm, so projection is a similarity on the image
// (required by the Zome length system downstream).
struct ProjectionBasis {
  Mode mode = Mode::exact;
  std::vector<GVec> rows;
  std::vector<std::vector<double>> rows_f;  // orthonormal in float mode
  Golden norm2;                             // shared squared row norm (exact)
  bool fallback_warning = false;            // exact basis was not possible
  int dim() const {
    return static_cast<int>(mode == Mode::exact ? rows.size() : rows_f.size());
  }
};

struct PlanarImage {
  std::vector<std::array<double, 2>> points;
  std::vector<std::array<int, 2>> edges;
  int h = 0;  // rotational symmetry order annotation
};

// Centroid of the rank-k face face_id (rank 0 = the vertex itself).
GVec element_first_axis(const Polytope& poly, int rank, int face_id);
std::vector<double> element_first_axis_f(const Polytope& poly, int rank, int face_id);

// Basis of the orthogonal complement of `axis`. Exact (equal-norm) whenever
// possible -- always in dimension 4 via quaternion right multiplication;
// elsewhere by Gram-Schmidt + square-ratio rescale. Falls back to a float
// orthonormal basis with fallback_warning set.
ProjectionBasis complete_basis(const GVec& axis);
ProjectionBasis complete_basis_f(const std::vector<double>& axis);

// Coordinates <x, b_i> per row; faces carried over by id; coincident image
// vertices are NOT merged here (the zome module owns merging).
Polytope orthogonal_project(const Polytope& poly, const ProjectionBasis& basis);

// Stereographic projection from the pole direction u (need not be unit);
// float output in dimension d-1. arc_samples > 1 subdivides each edge along
// its great-circle preimage for rendering fidelity (faces dropped then).
Polytope stereographic(const Polytope& poly, const std::vector<double>& pole,
                       int arc_samples = 1);

// Orthonormal pair spanning the plane on which the Coxeter element acts by
// rotation through 2pi/h (eigenvalue cos(2pi/h) of (C + C^T)/2).
std::array<std::vector<double>, 2> coxeter_plane_basis(const CoxeterElementInfo& info);

PlanarImage project_to_plane(const Polytope& poly,
                             const std::array<std::vector<double>, 2>& basis, int h);

}  // namespace wz
