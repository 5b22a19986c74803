#include "wzome/polytope.hpp"

#include <json.hpp>

namespace wz {

using json = nlohmann::ordered_json;

std::vector<long> Polytope::f_vector() const {
  std::vector<long> f;
  f.push_back(vertex_count());
  for (int k = 1; k < static_cast<int>(faces.size()); ++k)
    f.push_back(static_cast<long>(faces[k].size()));
  return f;
}

std::vector<double> Polytope::vertex_as_double(int i) const {
  if (mode == Mode::floating) return vertices_f[i];
  std::vector<double> v(vertices[i].size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = vertices[i][j].to_double();
  return v;
}

std::string Polytope::to_json() const {
  json j;
  j["schema"] = "polytope/1";
  j["dimension"] = dim;
  j["mode"] = mode == Mode::exact ? "exact" : "float";
  json verts = json::array();
  if (mode == Mode::exact) {
    for (const auto& v : vertices) {
      json row = json::array();
      for (const auto& x : v) row.push_back(x.to_string());
      verts.push_back(row);
    }
  } else {
    for (const auto& v : vertices_f) verts.push_back(v);
  }
  j["vertices"] = verts;
  json fcs = json::object();
  for (int k = 1; k < static_cast<int>(faces.size()); ++k)
    fcs[std::to_string(k)] = faces[k];
  j["faces"] = fcs;
  j["provenance"] = provenance;
  return j.dump(1);
}

Polytope Polytope::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::io, std::string("bad polytope JSON: ") + e.what());
  }
  if (j.value("schema", "") != "polytope/1")
    throw Error(Errc::io, "unsupported schema: " + j.value("schema", "(none)"));
  Polytope p;
  p.dim = j.at("dimension").get<int>();
  p.mode = j.at("mode").get<std::string>() == "exact" ? Mode::exact : Mode::floating;
  for (const auto& row : j.at("vertices")) {
    if (p.mode == Mode::exact) {
      GVec v;
      for (const auto& x : row) v.push_back(Golden::from_string(x.get<std::string>()));
      p.vertices.push_back(std::move(v));
    } else {
      p.vertices_f.push_back(row.get<std::vector<double>>());
    }
  }
  int max_rank = 1;
  for (auto& [key, val] : j.at("faces").items()) max_rank = std::max(max_rank, std::stoi(key));
  p.faces.assign(max_rank + 1, {});
  for (auto& [key, val] : j.at("faces").items()) {
    int k = std::stoi(key);
    if (k < 1)
      throw Error(Errc::io, "face rank out of range: " + key);
    p.faces[k] = val.get<std::vector<std::vector<int>>>();
    for (const auto& face : p.faces[k])
      for (int id : face)
        if (id < 0 || id >= p.vertex_count())
          throw Error(Errc::io, "face references missing vertex " + std::to_string(id));
  }
  if (j.contains("provenance"))
    p.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
  return p;
}

long euler_characteristic(const Polytope& p) {
  long acc = p.vertex_count();
  int sign = -1;
  for (int k = 1; k < static_cast<int>(p.faces.size()); ++k) {
    acc += sign * static_cast<long>(p.faces[k].size());
    sign = -sign;
  }
  return acc;
}

}  // namespace wz
