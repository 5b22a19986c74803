#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "wzome/polytope.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = WZOME_BIN;

int run(const std::string& args) {
  int status = std::system((kBin + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::current_path() / "cli_scratch") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate: summary line, JSON output, parse failures") {
  TempDir d;
  auto hex = d / "hex.json";
  auto log = d / "gen.txt";
  CHECK(run("generate \"A2 x x\" -o " + hex + " > " + log) == 0);
  CHECK(slurp(log) == "f = (6, 6)  mode = exact\n");
  auto poly = wz::Polytope::from_json(slurp(hex));
  CHECK(poly.f_vector() == std::vector<long>{6, 6});

  CHECK(run("generate \"Z9 x\" 2> /dev/null") == 2);
  CHECK(run("generate \"A2 x\" 2> /dev/null") == 2);   // length mismatch
  CHECK(run("generate --bogus 2> /dev/null") == 2);     // CLI-level parse error
  CHECK(run("2> /dev/null") == 2);                      // missing subcommand
}

TEST_CASE("exit codes map error categories") {
  TempDir d;
  // io = 5
  CHECK(run("zome parts " + (d / "missing.json") + " 2> /dev/null") == 5);
  // geometry = 3: cell-first projection of a 2D polygon
  auto hex = d / "hex.json";
  REQUIRE(run("generate \"A2 x x\" -o " + hex + " > /dev/null") == 0);
  CHECK(run("project " + hex + " --kind cell 2> /dev/null") == 3);
  // constructibility = 4: checking a 4D skeleton directly
  auto p4 = d / "p4.json";
  REQUIRE(run("generate \"B4 x o o o\" -o " + p4 + " > /dev/null") == 0);
  CHECK(run("zome check " + p4 + " 2> /dev/null") == 4);
  // corrupt input file
  std::ofstream(d / "bad.json") << "{ not json";
  CHECK(run("zome parts " + (d / "bad.json") + " 2> /dev/null") == 5);
}

TEST_CASE("pipeline reruns are byte-identical") {
  TempDir d;
  for (int pass : {1, 2}) {
    std::string sfx = std::to_string(pass);
    REQUIRE(run("generate \"H4 x o o o\" -o " + (d / ("p" + sfx + ".json")) +
                " > /dev/null") == 0);
    REQUIRE(run("project " + (d / ("p" + sfx + ".json")) + " --kind cell -o " +
                (d / ("q" + sfx + ".json"))) == 0);
    REQUIRE(run("zome check " + (d / ("q" + sfx + ".json")) + " -o " +
                (d / ("c" + sfx + ".json")) + " 2> /dev/null") == 0);
    REQUIRE(run("zome parts " + (d / ("c" + sfx + ".json")) + " -o " +
                (d / ("t" + sfx + ".txt"))) == 0);
    REQUIRE(run("export " + (d / ("c" + sfx + ".json")) + " --format svg -o " +
                (d / ("s" + sfx + ".svg"))) == 0);
    REQUIRE(run("export " + (d / ("c" + sfx + ".json")) + " --format obj -o " +
                (d / ("o" + sfx + ".obj"))) == 0);
  }
  for (std::string f : {"p", "q", "c"})
    CHECK(slurp(d / (f + "1.json")) == slurp(d / (f + "2.json")));
  CHECK(slurp(d / "t1.txt") == slurp(d / "t2.txt"));
  CHECK(slurp(d / "s1.svg") == slurp(d / "s2.svg"));
  CHECK(slurp(d / "o1.obj") == slurp(d / "o2.obj"));
  CHECK(slurp(d / "t1.txt") ==
        "Balls = 330\nR2 = 120\nR1 = 120\nB2 = 180\nY2 = 200\n");
}

TEST_CASE("emitted polytope JSON reloads to the same document") {
  TempDir d;
  auto p = d / "ico.json";
  REQUIRE(run("generate \"H3 x o o\" -o " + p + " > /dev/null") == 0);
  std::string text = slurp(p);
  auto poly = wz::Polytope::from_json(text);
  CHECK(poly.to_json() + "\n" == text);
}

TEST_CASE("layers, filter, paths and exports run end to end") {
  TempDir d;
  REQUIRE(run("generate \"H4 x o o o\" -o " + (d / "p.json") + " > /dev/null") == 0);
  REQUIRE(run("project " + (d / "p.json") + " --kind cell -o " + (d / "q.json")) == 0);
  REQUIRE(run("zome check " + (d / "q.json") + " -o " + (d / "c.json") +
              " 2> /dev/null") == 0);
  CHECK(run("zome layers " + (d / "c.json") + " --upto 0 -o " + (d / "core.json")) == 0);
  CHECK(run("zome parts " + (d / "core.json") + " -o " + (d / "core.txt")) == 0);
  CHECK(slurp(d / "core.txt").rfind("Balls = 20\n", 0) == 0);
  CHECK(run("zome filter " + (d / "core.json") + " --filter \"color in B\" -o " +
            (d / "blue.json")) == 0);
  CHECK(run("zome paths " + (d / "blue.json") + " --color B -o " + (d / "paths.txt")) == 0);
  CHECK(!slurp(d / "paths.txt").empty());
  CHECK(run("zome diff " + (d / "c.json") + " " + (d / "core.json") + " -o " +
            (d / "diff.json")) == 0);
  CHECK(run("zome layers " + (d / "c.json") + " --upto 0 -o " + (d / "core.svg")) == 0);
  std::string svg = slurp(d / "core.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("stroke-dasharray=\"8 4\"") != std::string::npos);  // blue dashes
  std::string obj_out;
  REQUIRE(run("export " + (d / "q.json") + " --format obj -o " + (d / "q.obj")) == 0);
  CHECK(slurp(d / "q.obj").rfind("v ", 0) == 0);
}

TEST_CASE("WZOME_OUT sets the default output directory") {
  TempDir d;
  auto sub = d.path / "outdir";
  fs::create_directories(sub);
  REQUIRE(run("generate \"A2 x x\" -o " + (d / "hex.json") + " > /dev/null") == 0);
  std::string cmd = "WZOME_OUT=" + sub.string() + " " + kBin + " generate \"A2 x x\" -o hex2.json > /dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE((WIFEXITED(status) && WEXITSTATUS(status) == 0));
  CHECK(fs::exists(sub / "hex2.json"));
  CHECK(slurp(sub / "hex2.json") == slurp(d / "hex.json"));
}

TEST_CASE("coxeter-plane and stereographic projections from the CLI") {
  TempDir d;
  REQUIRE(run("generate \"F4 x o o o\" -o " + (d / "c24.json") + " > /dev/null") == 0);
  CHECK(run("project " + (d / "c24.json") + " --kind coxplane -o " + (d / "cox.svg")) == 0);
  CHECK(slurp(d / "cox.svg").rfind("<?xml", 0) == 0);
  CHECK(run("project " + (d / "c24.json") + " --kind stereo --pole north -o " +
            (d / "st.json")) == 0);
  auto st = wz::Polytope::from_json(slurp(d / "st.json"));
  CHECK(st.dim == 3);
  CHECK(st.mode == wz::Mode::floating);
  CHECK(run("project " + (d / "c24.json") + " --kind coxplane --plane nodes:0,1 -o " +
            (d / "cox2.svg")) == 0);
}
