#pragma once

// Polytope container shared by the generator, the projections and the Zome
// layer, plus its versioned JSON form ("polytope/1").

#include <map>
#include <string>
#include <vector>

#include "wzome/coxeter.hpp"
#include "wzome/golden.hpp"

namespace wz {

struct Polytope {
  int dim = 0;  // ambient coordinate dimension
  Mode mode = Mode::exact;
  std::vector<GVec> vertices;                   // exact mode
  std::vector<std::vector<double>> vertices_f;  // float mode
  // faces[k] = the k-faces as sorted vertex-id lists; faces.size() - 1 is the
  // polytope's intrinsic top proper rank (may be < dim: A3 uses 4 coords).
  // faces[0] stays empty (vertices are implicit rank-0 faces).
  std::vector<std::vector<std::vector<int>>> faces;
  std::map<std::string, std::string> provenance;

  long vertex_count() const {
    return static_cast<long>(mode == Mode::exact ? vertices.size() : vertices_f.size());
  }
  const std::vector<std::vector<int>>& edges() const { return faces.at(1); }
  std::vector<long> f_vector() const;
  // Float view of a vertex, valid in both modes.
  std::vector<double> vertex_as_double(int i) const;

  std::string to_json() const;
  static Polytope from_json(const std::string& text);
};

// f0 - f1 + f2 (- f3) alternating sum over proper faces.
long euler_characteristic(const Polytope& p);

}  // namespace wz
