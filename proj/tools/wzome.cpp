// wzome: build uniform polytopes from Coxeter diagrams, project them to 3D
// or to a plane, decide Zometool constructibility, and export SVG/OBJ.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wzome/coxeter.hpp"
#include "wzome/projection.hpp"
#include "wzome/render.hpp"
#include "wzome/wythoff.hpp"
#include "wzome/zome.hpp"

namespace {

using wz::Errc;
using wz::Error;

std::string resolve_out(const std::string& path) {
  const char* dir = std::getenv("WZOME_OUT");
  if (dir && *dir && !path.empty() && path.find('/') == std::string::npos)
    return std::string(dir) + "/" + path;
  return path;
}

void emit(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::string full = resolve_out(path);
  std::ofstream f(full, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot open output file: " + full);
  f << bytes;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

wz::Polytope load_polytope(const std::string& path) {
  return wz::Polytope::from_json(slurp(path));
}

// Model inputs may be bare models or certificates carrying one.
wz::ZomeModel load_model(const std::string& path) {
  std::string text = slurp(path);
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::io, "not valid JSON: " + path);
  std::string schema = j.value("schema", "");
  if (schema == "certificate/1") {
    if (!j.contains("model"))
      throw Error(Errc::io, "certificate carries no model (not constructible)");
    return wz::ZomeModel::from_json(j["model"].dump());
  }
  return wz::ZomeModel::from_json(text);
}

std::string fvector_line(const wz::Polytope& p) {
  std::ostringstream out;
  out << "f = (";
  auto f = p.f_vector();
  for (std::size_t i = 0; i < f.size(); ++i) out << (i ? ", " : "") << f[i];
  out << ")  mode = " << (p.mode == wz::Mode::exact ? "exact" : "float") << "\n";
  return out.str();
}

std::string diagram_text(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    // load_diagram_file returns a parsed pair; we need the raw line to keep a
    // single parse path, so re-read and strip comments here.
    std::string text = slurp(spec.substr(1));
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto h = line.find('#');
      if (h != std::string::npos) line = line.substr(0, h);
      auto a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      return line.substr(a, line.find_last_not_of(" \t\r") - a + 1);
    }
    throw Error(Errc::parse, "diagram file is empty: " + spec.substr(1));
  }
  return spec;
}

wz::GVec parse_golden_csv(const std::string& text) {
  wz::GVec v;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) v.push_back(wz::Golden::from_string(part));
  if (v.empty()) throw Error(Errc::parse, "empty vector: " + text);
  return v;
}

std::vector<double> parse_pole(const std::string& text, int dim) {
  std::vector<double> p(dim, 0.0);
  if (text == "north") {
    p[dim - 1] = 1.0;
  } else if (text == "south") {
    p[dim - 1] = -1.0;
  } else {
    p.clear();
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) p.push_back(std::stod(part));
    if (static_cast<int>(p.size()) != dim)
      throw Error(Errc::parse, "pole dimension mismatch");
  }
  return p;
}

int run(int argc, char** argv) {
  CLI::App app{"Wythoff construction and Zometool toolkit"};
  app.require_subcommand(1);

  // ---- generate ----------------------------------------------------------
  std::string gen_spec, gen_out;
  auto* gen = app.add_subcommand("generate", "Build a polytope from a diagram");
  gen->add_option("spec", gen_spec, "Diagram, e.g. \"H4 x o o o\" (or @file)")->required();
  gen->add_option("-o,--output", gen_out, "Output JSON path (default: stdout)");
  gen->callback([&] {
    auto [d, rings] = wz::parse_diagram(diagram_text(gen_spec));
    auto poly = wz::build_polytope(wz::simple_roots(d), rings);
    if (gen_out.empty()) {
      emit("", poly.to_json() + "\n");
    } else {
      emit(gen_out, poly.to_json() + "\n");
      std::cout << fvector_line(poly);
    }
  });

  // ---- project ------------------------------------------------------------
  std::string prj_in, prj_kind, prj_axis, prj_plane = "ambient", prj_pole = "north";
  std::string prj_out, prj_diagram;
  int prj_index = 0, prj_arc = 1;
  auto* prj = app.add_subcommand("project", "Project a polytope");
  prj->add_option("input", prj_in, "Polytope JSON")->required();
  prj->add_option("--kind", prj_kind, "vertex|edge|face|cell|basis|stereo|coxplane")
      ->required();
  prj->add_option("--cell-index", prj_index, "Element index for element-first kinds");
  prj->add_option("--axis", prj_axis, "Golden coordinates a+b*phi,... for --kind basis");
  prj->add_option("--plane", prj_plane,
                  "coxplane choice: ambient, or nodes:i,j,... for a parabolic plane");
  prj->add_option("--arc-samples", prj_arc, "Stereographic edge subdivision (default 1)");
  prj->add_option("--pole", prj_pole, "north|south or comma floats");
  prj->add_option("--diagram", prj_diagram, "Diagram override for coxplane");
  prj->add_option("-o,--output", prj_out, "Output path (default: stdout)");
  prj->callback([&] {
    auto poly = load_polytope(prj_in);
    if (prj_kind == "vertex" || prj_kind == "edge" || prj_kind == "face" ||
        prj_kind == "cell") {
      int rank = prj_kind == "vertex" ? 0 : prj_kind == "edge" ? 1
                 : prj_kind == "face" ? 2 : 3;
      wz::ProjectionBasis basis =
          poly.mode == wz::Mode::exact
              ? wz::complete_basis(wz::element_first_axis(poly, rank, prj_index))
              : wz::complete_basis_f(wz::element_first_axis_f(poly, rank, prj_index));
      emit(prj_out, wz::orthogonal_project(poly, basis).to_json() + "\n");
    } else if (prj_kind == "basis") {
      if (prj_axis.empty()) throw Error(Errc::parse, "--kind basis needs --axis");
      auto basis = wz::complete_basis(parse_golden_csv(prj_axis));
      emit(prj_out, wz::orthogonal_project(poly, basis).to_json() + "\n");
    } else if (prj_kind == "stereo") {
      auto img = wz::stereographic(poly, parse_pole(prj_pole, poly.dim), prj_arc);
      emit(prj_out, img.to_json() + "\n");
    } else if (prj_kind == "coxplane") {
      std::string spec = prj_diagram;
      if (spec.empty()) {
        auto fam = poly.provenance.find("diagram");
        auto rg = poly.provenance.find("rings");
        if (fam == poly.provenance.end() || rg == poly.provenance.end())
          throw Error(Errc::parse, "polytope has no diagram provenance; pass --diagram");
        std::ostringstream ss;
        ss << fam->second;
        for (char c : rg->second) ss << ' ' << c;
        spec = ss.str();
      }
      auto [d, rings] = wz::parse_diagram(diagram_text(spec));
      auto rep = wz::simple_roots(d);
      wz::CoxeterElementInfo info;
      if (prj_plane == "ambient") {
        info = wz::coxeter_element(rep);
      } else if (prj_plane.rfind("nodes:", 0) == 0) {
        std::vector<int> nodes;
        std::istringstream in(prj_plane.substr(6));
        std::string part;
        while (std::getline(in, part, ',')) nodes.push_back(std::stoi(part));
        info = wz::parabolic_coxeter_element(rep, nodes);
      } else {
        throw Error(Errc::parse, "--plane must be ambient or nodes:i,j,...");
      }
      auto img = wz::project_to_plane(poly, wz::coxeter_plane_basis(info), info.h);
      emit(prj_out, wz::export_svg(img));
    } else {
      throw Error(Errc::parse, "unknown projection kind: " + prj_kind);
    }
  });

  // ---- zome ---------------------------------------------------------------
  auto* zome = app.add_subcommand("zome", "Constructibility and model operations");
  zome->require_subcommand(1);

  std::string chk_in, chk_out;
  auto* chk = zome->add_subcommand("check", "Decide constructibility of a 3D polytope");
  chk->add_option("input", chk_in, "3D exact polytope JSON")->required();
  chk->add_option("-o,--output", chk_out, "Certificate JSON path");
  chk->callback([&] {
    auto [cert, report] = wz::build_model(load_polytope(chk_in),
                                          wz::StrutCatalog::standard());
    emit(chk_out, cert.to_json() + "\n");
    std::cerr << "verdict: " << (cert.constructible ? "constructible" : "not")
              << "  (merged " << report.merged_vertices << " vertices, dropped "
              << report.dropped_edges << " edges, merged " << report.merged_struts
              << " struts)\n";
  });

  std::string parts_in, parts_out;
  auto* parts = zome->add_subcommand("parts", "Print the parts list");
  parts->add_option("input", parts_in, "Model or certificate JSON")->required();
  parts->add_option("-o,--output", parts_out, "Output path (default: stdout)");
  parts->callback([&] { emit(parts_out, wz::parts_list(load_model(parts_in))); });

  std::string lay_in, lay_out;
  int lay_upto = -1;
  auto* lay = zome->add_subcommand("layers", "Layer decomposition (optionally truncated)");
  lay->add_option("input", lay_in, "Model or certificate JSON")->required();
  lay->add_option("--upto", lay_upto, "Keep layers <= N");
  lay->add_option("-o,--output", lay_out, "Output .json or .svg");
  lay->callback([&] {
    auto model = load_model(lay_in);
    wz::layer_decomposition(model);
    if (lay_upto >= 0)
      model = wz::apply_filter(model, "layer<=" + std::to_string(lay_upto));
    bool svg = lay_out.size() > 4 && lay_out.substr(lay_out.size() - 4) == ".svg";
    emit(lay_out, svg ? wz::export_svg(model) : model.to_json() + "\n");
  });

  std::string flt_in, flt_expr, flt_out;
  auto* flt = zome->add_subcommand("filter", "Keep a sub-model by expression");
  flt->add_option("input", flt_in, "Model or certificate JSON")->required();
  flt->add_option("--filter", flt_expr, "e.g. \"layer<=1 & color in BY & x>=0\"")
      ->required();
  flt->add_option("-o,--output", flt_out, "Output path");
  flt->callback([&] {
    auto model = load_model(flt_in);
    if (flt_expr.find("layer") != std::string::npos && !model.cells.empty())
      wz::layer_decomposition(model);
    emit(flt_out, wz::apply_filter(model, flt_expr).to_json() + "\n");
  });

  std::string pth_in, pth_color = "B", pth_out;
  auto* pth = zome->add_subcommand("paths", "Monochrome strut paths");
  pth->add_option("input", pth_in, "Model or certificate JSON")->required();
  pth->add_option("--color", pth_color, "B, Y or R (default B)");
  pth->add_option("-o,--output", pth_out, "Output path (default: stdout)");
  pth->callback([&] {
    if (pth_color.size() != 1) throw Error(Errc::parse, "--color takes one letter");
    auto model = load_model(pth_in);
    std::ostringstream out;
    for (const auto& path : wz::monochrome_paths(model, pth_color[0])) {
      out << pth_color;
      for (int id : path) out << ' ' << id;
      out << '\n';
    }
    emit(pth_out, out.str());
  });

  std::string dif_in, dif_sub, dif_out;
  auto* dif = zome->add_subcommand("diff", "Tag struts already present in a sub-model");
  dif->add_option("input", dif_in, "Full model JSON")->required();
  dif->add_option("sub", dif_sub, "Sub-model JSON")->required();
  dif->add_option("-o,--output", dif_out, "Output path");
  dif->callback([&] {
    emit(dif_out,
         wz::model_diff(load_model(dif_in), load_model(dif_sub)).to_json() + "\n");
  });

  // ---- export -------------------------------------------------------------
  std::string exp_in, exp_fmt = "svg", exp_out;
  double exp_tx = 5.0, exp_ty = 5.0;
  auto* exp = app.add_subcommand("export", "Render a model or 3D polytope");
  exp->add_option("input", exp_in, "Model, certificate or 3D polytope JSON")->required();
  exp->add_option("--format", exp_fmt, "svg|obj (default svg)");
  exp->add_option("--tilt-x", exp_tx, "SVG tilt about x, degrees (default 5)");
  exp->add_option("--tilt-y", exp_ty, "SVG tilt about y, degrees (default 5)");
  exp->add_option("-o,--output", exp_out, "Output path (default: stdout)");
  exp->callback([&] {
    std::string text = slurp(exp_in);
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::io, "not valid JSON: " + exp_in);
    std::string schema = j.value("schema", "");
    wz::RenderStyle style;
    style.tilt_x_deg = exp_tx;
    style.tilt_y_deg = exp_ty;
    if (exp_fmt != "svg" && exp_fmt != "obj")
      throw Error(Errc::parse, "unknown format: " + exp_fmt);
    if (schema == "polytope/1") {
      auto poly = wz::Polytope::from_json(text);
      emit(exp_out, exp_fmt == "obj" ? wz::export_obj(poly)
                                     : wz::export_svg(poly, style));
    } else {
      auto model = load_model(exp_in);
      emit(exp_out, exp_fmt == "obj" ? wz::export_obj(model)
                                     : wz::export_svg(model, style));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : static_cast<int>(Errc::parse);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
