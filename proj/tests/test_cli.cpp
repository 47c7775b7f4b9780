#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/surface.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace ftsurf;
using namespace ftsurf::testing;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + FTSURF_CLI_PATH + "\" " + args +
                          " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    root_ = fs::temp_directory_path() /
            ("ftsurf_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(root_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = root_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }

  std::string path(const std::string& name) const {
    return (root_ / name).string();
  }

 private:
  fs::path root_;
};

std::string quoted(const std::string& path) { return "\"" + path + "\""; }

std::string k4_edge_text() { return "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"; }

std::string gp93_edge_text() {
  const CubicGraph g = generalized_petersen(9, 3);
  std::ostringstream out;
  out << g.node_count() << ' ' << g.arc_count() << '\n';
  for (const auto& [u, v] : g.arcs()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

constexpr const char* kColumnHeader =
    "chi,(3,1),(2,2),(2,1).1,(2,1).2,(2,1).3,(1,1).1,(1,1).2,(1,1).3,(1,1).4,"
    "(1,2),(1,3).1,(1,3).2,(1,6)";

}  // namespace

TEST_CASE("validate reports counts and orientability") {
  const RunResult r22 = run_cli("validate " + quoted(fixture_path("x22.surf")));
  CHECK(r22.exit_code == 0);
  CHECK(r22.output == "valid, V=7 E=15 F=10 χ=2 orientable\n");
  const RunResult r31 = run_cli("validate " + quoted(fixture_path("x31.surf")));
  CHECK(r31.exit_code == 0);
  CHECK(r31.output == "valid, V=13 E=36 F=24 χ=1 non-orientable\n");
}

TEST_CASE("validate rejects bad input") {
  TempDir tmp;
  const std::string bad = tmp.write("bad.surf", "{\"faces\": [[1,2,3]]}");
  const RunResult r = run_cli("validate " + quoted(bad));
  CHECK(r.exit_code == 1);
  CHECK(r.output.substr(0, 8) == "invalid:");
  const RunResult nojson = run_cli(
      "validate " + quoted(tmp.write("garbage.surf", "not a surface")));
  CHECK(nojson.exit_code == 1);
  CHECK(nojson.output.substr(0, 8) == "invalid:");
  CHECK(run_cli("validate " + quoted(tmp.path("missing.surf"))).exit_code ==
        1);
}

TEST_CASE("analyze prints the classification summary") {
  const RunResult r = run_cli("analyze " + quoted(fixture_path("x16.surf")));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("subtype: (1,6)\n") != std::string::npos);
  CHECK(r.output.find("aut_order: 60\n") != std::string::npos);
  CHECK(r.output.find("minimal_vertices: yes\n") != std::string::npos);
  CHECK(r.output.find("face_graph_nodes: 10\n") != std::string::npos);

  const RunResult r13 = run_cli("analyze " + quoted(fixture_path("x13.surf")));
  CHECK(r13.output.find("subtype: (1,3).1\n") != std::string::npos);
  CHECK(r13.output.find("aut_order: 42\n") != std::string::npos);
  CHECK(r13.output.find("minimal_vertices: yes\n") != std::string::npos);
}

TEST_CASE("analyze states non-face-transitivity") {
  TempDir tmp;
  // Bipyramid with a stacked corner: valid but not face-transitive.
  const std::string surf = tmp.write(
      "stacked.surf",
      "{{2,3,4},{1,3,4},{1,2,5},{2,3,5},{1,3,5},{1,2,6},{1,4,6},{2,4,6}}");
  const RunResult r = run_cli("analyze " + quoted(surf));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "not face-transitive\n");
}

TEST_CASE("classify emits census records as JSON lines") {
  TempDir tmp;
  const std::string k4 = tmp.write("k4.edges", k4_edge_text());
  const RunResult r = run_cli("classify " + quoted(k4));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "{\"faces\":4,\"subtype\":\"(1,6)\",\"chi\":2,\"orientable\":true,"
        "\"aut_order\":24,\"graph_id\":\"C~\"}\n");
}

TEST_CASE("classify records skips with reasons") {
  TempDir tmp;
  const std::string gp = tmp.write("gp93.edges", gp93_edge_text());
  const RunResult r = run_cli("classify " + quoted(gp));
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].find("\"skipped\":\"not node-transitive\"") !=
        std::string::npos);

  const std::string ring = tmp.write(
      "ring8.g6", to_graph6(make_generalized_mgon_ring(8)) + "\n");
  const RunResult rr = run_cli("classify " + quoted(ring));
  CHECK(rr.exit_code == 0);
  CHECK(rr.output.find("\"skipped\":\"generalized m-gon obstruction\"") !=
        std::string::npos);

  const std::string pet = tmp.write("petersen.g6", "IheA@GUAo\n");
  const RunResult capped = run_cli("classify --max-aut 100 " + quoted(pet));
  CHECK(capped.exit_code == 0);
  CHECK(capped.output.find("\"skipped\":\"group too large\"") !=
        std::string::npos);
}

TEST_CASE("classify subtype filter") {
  TempDir tmp;
  const std::string k4 = tmp.write("k4.edges", k4_edge_text());
  const RunResult hit = run_cli("classify --subtypes \"(1,6)\" " + quoted(k4));
  CHECK(hit.exit_code == 0);
  CHECK(lines_of(hit.output).size() == 1);
  const RunResult miss =
      run_cli("classify --subtypes \"(2,2);(1,3).1\" " + quoted(k4));
  CHECK(miss.exit_code == 0);
  CHECK(miss.output.empty());
  const RunResult bad = run_cli("classify --subtypes \"(9,9)\" " + quoted(k4));
  CHECK(bad.exit_code == 1);
}

TEST_CASE("classify oracle check passes on K4") {
  TempDir tmp;
  const std::string k4 = tmp.write("k4.edges", k4_edge_text());
  const RunResult r = run_cli("classify --oracle-check " + quoted(k4));
  CHECK(r.exit_code == 0);
  const std::vector<std::string> lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].find("\"subtype\":\"(1,6)\"") != std::string::npos);
  CHECK(lines[1] == "oracle check passed");
}

TEST_CASE("classify input errors exit with 1") {
  TempDir tmp;
  CHECK(run_cli("classify " + quoted(tmp.path("missing.g6"))).exit_code == 1);
  const std::string bad = tmp.write("bad.g6", "!!!notagraph\n");
  CHECK(run_cli("classify " + quoted(bad)).exit_code == 1);
}

TEST_CASE("census of K4 alone") {
  TempDir tmp;
  const std::string g6 = tmp.write("k4.g6", "C~\n");
  const RunResult r = run_cli("census " + quoted(g6));
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "orientable");
  CHECK(lines[1] == kColumnHeader);
  CHECK(lines[2] == "2,0,0,0,0,0,0,0,0,0,0,0,0,1");
  CHECK(lines[3] == "non-orientable");
  CHECK(lines[4] == kColumnHeader);
}

TEST_CASE("census of an empty corpus") {
  TempDir tmp;
  const std::string g6 = tmp.write("empty.g6", "");
  const RunResult r = run_cli("census " + quoted(g6));
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "orientable");
  CHECK(lines[3] == kColumnHeader);
}

TEST_CASE("census counts isomorphism classes once") {
  TempDir tmp;
  // K4 twice: one surface class, so the cell still reads 1.
  const std::string g6 = tmp.write("k4twice.g6", "C~\nC~\n");
  const RunResult r = run_cli("census " + quoted(g6));
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[2] == "2,0,0,0,0,0,0,0,0,0,0,0,0,1");
}

TEST_CASE("census writes record files and logs skips") {
  TempDir tmp;
  const std::string g6 =
      tmp.write("mix.g6", "C~\nIheA@GUAo\n@@@not_a_graph\n");
  const std::string recs = tmp.path("records.jsonl");
  const RunResult r = run_cli("census --records " + quoted(recs) + " " +
                              quoted(g6));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("skip: line 3") != std::string::npos);
  const auto lines = lines_of(r.output);
  bool has_orientable_row = false, has_nonorientable_row = false;
  for (const std::string& line : lines) {
    if (line == "2,0,0,0,0,0,0,0,0,0,0,0,0,1") has_orientable_row = true;
    if (line == "1,0,0,0,0,0,0,0,0,0,0,0,0,1") has_nonorientable_row = true;
  }
  CHECK(has_orientable_row);
  CHECK(has_nonorientable_row);

  const std::string recorded = read_file(recs);
  const auto rec_lines = lines_of(recorded);
  REQUIRE(rec_lines.size() == 2);
  CHECK(rec_lines[0].find("\"faces\":4") != std::string::npos);
  CHECK(rec_lines[0].find("\"minimal_vertices\":true") != std::string::npos);
  CHECK(rec_lines[1].find("\"faces\":10") != std::string::npos);
  CHECK(rec_lines[1].find("\"aut_order\":60") != std::string::npos);
}

TEST_CASE("parallel census output matches sequential") {
  TempDir tmp;
  std::string corpus;
  for (const CubicGraph& g :
       {complete_k4(), petersen(), prism(3), prism(5), moebius_ladder(4)})
    corpus += to_graph6(g) + "\n";
  const std::string g6 = tmp.write("corpus.g6", corpus);
  const RunResult seq = run_cli("census --jobs 1 " + quoted(g6));
  const RunResult par = run_cli("census --jobs 4 " + quoted(g6));
  CHECK(seq.exit_code == 0);
  CHECK(par.exit_code == 0);
  CHECK(seq.output == par.output);

  const RunResult cls_seq = run_cli("classify --jobs 1 " + quoted(g6));
  const RunResult cls_par = run_cli("classify --jobs 4 " + quoted(g6));
  CHECK(cls_seq.output == cls_par.output);
}

TEST_CASE("oracle reports cover counts") {
  TempDir tmp;
  const std::string k4 = tmp.write("k4.edges", k4_edge_text());
  const RunResult r = run_cli("oracle " + quoted(k4));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "graph_id: C~\n"
        "cdcs_raw: 2\n"
        "cdcs_up_to_iso: 2\n"
        "vertex_faithful: 1\n"
        "surfaces: 1\n"
        "surface: faces=4 vertices=4 chi=2 orientable=yes "
        "face_transitive=yes\n");
}

TEST_CASE("oracle on the Petersen graph finds the projective plane") {
  TempDir tmp;
  const std::string pet = tmp.write("petersen.g6", "IheA@GUAo\n");
  const RunResult r = run_cli("oracle " + quoted(pet));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find(
            "surface: faces=10 vertices=6 chi=1 orientable=no "
            "face_transitive=yes") != std::string::npos);
}

TEST_CASE("oracle respects the node cap") {
  TempDir tmp;
  const std::string big = tmp.write(
      "ring6.g6", to_graph6(make_generalized_mgon_ring(6)) + "\n");
  const RunResult r = run_cli("oracle " + quoted(big));
  CHECK(r.exit_code == 2);
}
