#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ftsurf/classify.hpp"
#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/cycles.hpp"
#include "ftsurf/perm_group.hpp"
#include "ftsurf/surface.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitCapExceeded = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string strip(const std::string& line) {
  const auto begin = line.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = line.find_last_not_of(" \t\r\n");
  return line.substr(begin, end - begin + 1);
}

// Graph files hold either one "n m" edge list or one graph6/sparse6 line
// per graph. graph6 bytes start at '?' (63), so a leading digit means an
// edge list header.
std::vector<ftsurf::CubicGraph> load_graphs(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    line = strip(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) return {};
  if (std::isdigit(static_cast<unsigned char>(lines.front()[0])))
    return {ftsurf::parse_edge_list_text(text)};
  std::vector<ftsurf::CubicGraph> graphs;
  graphs.reserve(lines.size());
  for (const std::string& line : lines) {
    if (line[0] == ':')
      graphs.push_back(ftsurf::parse_sparse6(line));
    else
      graphs.push_back(ftsurf::parse_graph6(line));
  }
  return graphs;
}

struct SurfaceRecord {
  std::string surface_id;  // canonical form, the dedupe and sort key
  int faces = 0;
  int vertices = 0;
  int edges = 0;
  int chi = 0;
  bool orientable = false;
  ftsurf::Subtype subtype = ftsurf::Subtype::S31;
  std::uint64_t aut_order = 0;
  std::string graph_id;
  bool minimal = false;
};

SurfaceRecord make_record(const ftsurf::Construction& c,
                          const ftsurf::ConstructionResult& res) {
  SurfaceRecord rec;
  const ftsurf::SimplicialSurface& x = c.surface;
  rec.surface_id = ftsurf::canonical_form(x);
  rec.faces = x.face_count();
  rec.vertices = x.vertex_count();
  rec.edges = x.edge_count();
  rec.chi = ftsurf::euler_characteristic(x);
  rec.orientable = ftsurf::is_orientable(x);
  rec.subtype = c.subtype;
  rec.aut_order = res.subgroup.order();
  rec.graph_id = res.graph_id;
  rec.minimal = rec.vertices == ftsurf::min_vertex_bound(rec.chi);
  return rec;
}

std::string record_json_line(const SurfaceRecord& rec) {
  nlohmann::ordered_json j;
  j["faces"] = rec.faces;
  j["subtype"] = ftsurf::to_string(rec.subtype);
  j["chi"] = rec.chi;
  j["orientable"] = rec.orientable;
  j["aut_order"] = rec.aut_order;
  j["graph_id"] = rec.graph_id;
  return j.dump();
}

std::string full_record_json_line(const SurfaceRecord& rec) {
  nlohmann::ordered_json j;
  j["id"] = rec.surface_id;
  j["faces"] = rec.faces;
  j["vertices"] = rec.vertices;
  j["chi"] = rec.chi;
  j["orientable"] = rec.orientable;
  j["subtype"] = ftsurf::to_string(rec.subtype);
  j["aut_order"] = rec.aut_order;
  j["graph_id"] = rec.graph_id;
  j["minimal_vertices"] = rec.minimal;
  return j.dump();
}

struct GraphOutcome {
  std::string graph_id;
  std::optional<std::string> skip;
  std::vector<SurfaceRecord> records;
  bool cap_exceeded = false;
  bool oracle_mismatch = false;
  std::string oracle_note;
  std::string error;
};

struct ClassifyFlags {
  ftsurf::ClassifyOptions options;
  std::set<ftsurf::Subtype> subtype_filter;  // empty = keep all
  bool oracle_check = false;
  int jobs = 1;
};

// Canonical ids of the face-transitive surfaces found by exhaustive cycle
// double cover search; the independent reference for --oracle-check.
std::set<std::string> brute_force_surface_ids(const ftsurf::CubicGraph& g) {
  const auto covers = ftsurf::brute_force_cdcs(g, /*up_to_iso=*/true);
  std::set<std::string> ids;
  for (const ftsurf::CycleDoubleCover& cover : covers) {
    if (!ftsurf::is_vertex_faithful(g, cover)) continue;
    const ftsurf::SimplicialSurface x = ftsurf::surface_from_cdc(g, cover);
    if (!ftsurf::is_face_transitive(x)) continue;
    ids.insert(ftsurf::canonical_form(x));
  }
  return ids;
}

GraphOutcome classify_one(const ftsurf::CubicGraph& g,
                          const ClassifyFlags& flags) {
  GraphOutcome out;
  try {
    out.graph_id = ftsurf::canonical_form(g);
    const ftsurf::ClassificationReport report =
        ftsurf::classify_graph(g, flags.options);
    out.skip = report.skip_reason;
    for (const ftsurf::ConstructionResult& res : report.results)
      for (const ftsurf::Construction& c : res.surfaces)
        out.records.push_back(make_record(c, res));
    std::sort(out.records.begin(), out.records.end(),
              [](const SurfaceRecord& a, const SurfaceRecord& b) {
                return a.surface_id < b.surface_id;
              });
    if (flags.oracle_check) {
      if (out.skip == "group too large") {
        out.oracle_note = "oracle check skipped: group too large";
      } else if (g.node_count() > ftsurf::kDefaultCdcNodeCap) {
        out.oracle_note = "oracle check skipped: graph too large";
      } else {
        std::set<std::string> classified;
        for (const SurfaceRecord& rec : out.records)
          classified.insert(rec.surface_id);
        if (classified != brute_force_surface_ids(g)) {
          out.oracle_mismatch = true;
          out.oracle_note = "oracle check failed: surface sets differ";
        } else {
          out.oracle_note = "oracle check passed";
        }
      }
    }
    if (!flags.subtype_filter.empty())
      std::erase_if(out.records, [&flags](const SurfaceRecord& rec) {
        return flags.subtype_filter.count(rec.subtype) == 0;
      });
  } catch (const ftsurf::CapExceededError& e) {
    out.cap_exceeded = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

// Work-stealing over the graph list; results land in input order.
std::vector<GraphOutcome> classify_all(
    const std::vector<ftsurf::CubicGraph>& graphs, const ClassifyFlags& flags) {
  std::vector<GraphOutcome> outcomes(graphs.size());
  const int jobs = std::max(
      1, std::min(flags.jobs, static_cast<int>(graphs.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < graphs.size(); ++i)
      outcomes[i] = classify_one(graphs[i], flags);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= graphs.size()) return;
        outcomes[i] = classify_one(graphs[i], flags);
      }
    });
  }
  for (std::thread& w : workers) w.join();
  return outcomes;
}

int cmd_validate(const std::string& path) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInputError;
  }
  try {
    const ftsurf::SimplicialSurface x = ftsurf::parse_surface(*text);
    std::cout << "valid, V=" << x.vertex_count() << " E=" << x.edge_count()
              << " F=" << x.face_count()
              << " χ=" << ftsurf::euler_characteristic(x) << ' '
              << (ftsurf::is_orientable(x) ? "orientable" : "non-orientable")
              << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_analyze(const std::string& path, bool wide_pi) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInputError;
  }
  try {
    const ftsurf::SimplicialSurface x = ftsurf::parse_surface(*text);
    ftsurf::ConstructOptions opts;
    opts.wide_pi_search = wide_pi;
    ftsurf::Subtype subtype;
    try {
      subtype = ftsurf::subtype_of(x, opts);
    } catch (const ftsurf::NotFaceTransitiveError&) {
      std::cout << "not face-transitive\n";
      return kExitOk;
    }
    const ftsurf::VertexFaceType vf = ftsurf::vertex_face_type(x);
    const ftsurf::CubicGraph g = ftsurf::face_graph(x);
    const int chi = ftsurf::euler_characteristic(x);
    std::cout << "faces: " << x.face_count() << "\n"
              << "vertices: " << x.vertex_count() << "\n"
              << "edges: " << x.edge_count() << "\n"
              << "chi: " << chi << "\n"
              << "orientable: " << (ftsurf::is_orientable(x) ? "yes" : "no")
              << "\n"
              << "aut_order: " << ftsurf::lambda_image(x).order() << "\n"
              << "vf_type: (" << vf.vertex_orbits << ","
              << vf.face_stabilizer << ")\n"
              << "subtype: " << ftsurf::to_string(subtype) << "\n"
              << "face_graph_nodes: " << g.node_count() << "\n"
              << "face_graph_arcs: " << g.arc_count() << "\n"
              << "face_graph_id: " << ftsurf::canonical_form(g) << "\n"
              << "minimal_vertices: "
              << (x.vertex_count() == ftsurf::min_vertex_bound(chi) ? "yes"
                                                                    : "no")
              << "\n";
    return kExitOk;
  } catch (const ftsurf::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int parse_subtype_filter(const std::string& csv,
                         std::set<ftsurf::Subtype>& filter) {
  std::string item;
  std::istringstream in(csv);
  // Subtype names contain commas, so split on ';' as well as whitespace.
  for (std::string token; std::getline(in, token, ';');) {
    token = strip(token);
    if (token.empty()) continue;
    const auto st = ftsurf::parse_subtype(token);
    if (!st) {
      std::cerr << "error: unknown subtype '" << token << "'\n";
      return kExitInputError;
    }
    filter.insert(*st);
  }
  return kExitOk;
}

int cmd_classify(const std::string& path, const ClassifyFlags& flags) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInputError;
  }
  std::vector<ftsurf::CubicGraph> graphs;
  try {
    graphs = load_graphs(*text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  const std::vector<GraphOutcome> outcomes = classify_all(graphs, flags);
  bool cap_exceeded = false;
  bool oracle_failed = false;
  for (const GraphOutcome& out : outcomes) {
    if (!out.error.empty()) {
      std::cerr << "error: " << out.graph_id << ": " << out.error << "\n";
      cap_exceeded = cap_exceeded || out.cap_exceeded;
      continue;
    }
    if (out.skip) {
      nlohmann::ordered_json j;
      j["graph_id"] = out.graph_id;
      j["skipped"] = *out.skip;
      std::cout << j.dump() << "\n";
    } else {
      for (const SurfaceRecord& rec : out.records)
        std::cout << record_json_line(rec) << "\n";
    }
    if (!out.oracle_note.empty()) std::cerr << out.oracle_note << "\n";
    oracle_failed = oracle_failed || out.oracle_mismatch;
  }
  if (cap_exceeded) return kExitCapExceeded;
  if (oracle_failed) return kExitInputError;
  return kExitOk;
}

void write_census_block(std::ostream& os,
                        const std::vector<SurfaceRecord>& records,
                        bool orientable) {
  os << (orientable ? "orientable" : "non-orientable") << "\n";
  os << "chi";
  for (const ftsurf::Subtype st : ftsurf::all_subtypes())
    os << ',' << ftsurf::to_string(st);
  os << "\n";
  std::map<int, std::array<std::uint64_t, ftsurf::kSubtypeCount>,
           std::greater<int>>
      rows;
  for (const SurfaceRecord& rec : records) {
    if (rec.orientable != orientable) continue;
    auto [it, inserted] = rows.try_emplace(rec.chi);
    if (inserted) it->second.fill(0);
    ++it->second[static_cast<std::size_t>(ftsurf::census_column(rec.subtype))];
  }
  for (const auto& [chi, cells] : rows) {
    os << chi;
    for (const std::uint64_t count : cells) os << ',' << count;
    os << "\n";
  }
}

int cmd_census(const std::string& path, const ClassifyFlags& flags,
               const std::string& records_path) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInputError;
  }
  // Parse line by line; a bad line is logged and the run continues.
  std::vector<ftsurf::CubicGraph> graphs;
  std::istringstream in(*text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    try {
      if (line[0] == ':')
        graphs.push_back(ftsurf::parse_sparse6(line));
      else
        graphs.push_back(ftsurf::parse_graph6(line));
    } catch (const std::exception& e) {
      std::cerr << "skip: line " << lineno << ": " << e.what() << "\n";
    }
  }
  const std::vector<GraphOutcome> outcomes = classify_all(graphs, flags);
  std::set<std::string> seen;
  std::vector<SurfaceRecord> unique;
  for (const GraphOutcome& out : outcomes) {
    if (!out.error.empty()) {
      std::cerr << "skip: " << out.graph_id << ": " << out.error << "\n";
      continue;
    }
    if (out.skip) {
      std::cerr << "skip: " << out.graph_id << ": " << *out.skip << "\n";
      continue;
    }
    for (const SurfaceRecord& rec : out.records)
      if (seen.insert(rec.surface_id).second) unique.push_back(rec);
  }
  std::sort(unique.begin(), unique.end(),
            [](const SurfaceRecord& a, const SurfaceRecord& b) {
              return a.surface_id < b.surface_id;
            });
  if (!records_path.empty()) {
    std::ofstream rec_out(records_path, std::ios::binary);
    if (!rec_out) {
      std::cerr << "error: cannot write " << records_path << "\n";
      return kExitInputError;
    }
    for (const SurfaceRecord& rec : unique)
      rec_out << full_record_json_line(rec) << "\n";
  }
  write_census_block(std::cout, unique, true);
  write_census_block(std::cout, unique, false);
  return kExitOk;
}

int cmd_oracle(const std::string& path) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInputError;
  }
  std::vector<ftsurf::CubicGraph> graphs;
  try {
    graphs = load_graphs(*text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  try {
    for (const ftsurf::CubicGraph& g : graphs) {
      const auto raw = ftsurf::brute_force_cdcs(g, /*up_to_iso=*/false);
      const ftsurf::PermGroup aut = ftsurf::automorphism_group(g);
      const auto reps = ftsurf::reduce_cdcs_up_to_iso(aut, raw);
      struct OracleSurface {
        std::string id;
        int faces, vertices, chi;
        bool orientable, face_transitive;
      };
      std::vector<OracleSurface> found;
      std::size_t faithful = 0;
      std::set<std::string> ids;
      for (const ftsurf::CycleDoubleCover& cover : reps) {
        if (!ftsurf::is_vertex_faithful(g, cover)) continue;
        ++faithful;
        const ftsurf::SimplicialSurface x = ftsurf::surface_from_cdc(g, cover);
        std::string id = ftsurf::canonical_form(x);
        if (!ids.insert(id).second) continue;
        found.push_back({std::move(id), x.face_count(), x.vertex_count(),
                         ftsurf::euler_characteristic(x),
                         ftsurf::is_orientable(x),
                         ftsurf::is_face_transitive(x)});
      }
      std::sort(found.begin(), found.end(),
                [](const OracleSurface& a, const OracleSurface& b) {
                  return a.id < b.id;
                });
      std::cout << "graph_id: " << ftsurf::canonical_form(g) << "\n"
                << "cdcs_raw: " << raw.size() << "\n"
                << "cdcs_up_to_iso: " << reps.size() << "\n"
                << "vertex_faithful: " << faithful << "\n"
                << "surfaces: " << found.size() << "\n";
      for (const OracleSurface& s : found) {
        std::cout << "surface: faces=" << s.faces << " vertices=" << s.vertices
                  << " chi=" << s.chi
                  << " orientable=" << (s.orientable ? "yes" : "no")
                  << " face_transitive=" << (s.face_transitive ? "yes" : "no")
                  << "\n";
      }
    }
    return kExitOk;
  } catch (const ftsurf::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"face-transitive simplicial surface toolkit"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate = app.add_subcommand(
      "validate", "check a surface file and report its invariants");
  validate->add_option("file", validate_path, "surface file")->required();

  std::string analyze_path;
  bool analyze_wide = false;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "report symmetry data of a face-transitive surface");
  analyze->add_option("file", analyze_path, "surface file")->required();
  analyze->add_flag("--wide-pi-search", analyze_wide,
                    "search type conditions over all graph automorphisms");

  std::string classify_path;
  ClassifyFlags classify_flags;
  std::string classify_subtypes;
  CLI::App* classify = app.add_subcommand(
      "classify", "construct the face-transitive surfaces of cubic graphs");
  classify->add_option("file", classify_path, "graph file")->required();
  classify->add_option("--subtypes", classify_subtypes,
                       "semicolon-separated subtype filter, e.g. '(1,6);(2,2)'");
  classify->add_option("--max-aut", classify_flags.options.max_aut_order,
                       "skip graphs whose automorphism group is larger");
  classify->add_flag("--oracle-check", classify_flags.oracle_check,
                     "cross-check against exhaustive cover search");
  classify->add_flag("--wide-pi-search",
                     classify_flags.options.wide_pi_search,
                     "search type conditions over all graph automorphisms");
  classify->add_option("--jobs", classify_flags.jobs, "worker thread count")
      ->check(CLI::PositiveNumber);

  std::string census_path;
  std::string census_records;
  ClassifyFlags census_flags;
  std::string census_subtypes;
  CLI::App* census = app.add_subcommand(
      "census", "summarize classifications of a graph list as a table");
  census->add_option("file", census_path, "graph list file")->required();
  census->add_option("--records", census_records,
                     "also write one JSON record per surface to this file");
  census->add_option("--subtypes", census_subtypes,
                     "semicolon-separated subtype filter");
  census->add_option("--max-aut", census_flags.options.max_aut_order,
                     "skip graphs whose automorphism group is larger");
  census->add_flag("--wide-pi-search", census_flags.options.wide_pi_search,
                   "search type conditions over all graph automorphisms");
  census->add_option("--jobs", census_flags.jobs, "worker thread count")
      ->check(CLI::PositiveNumber);

  std::string oracle_path;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "exhaustively enumerate cycle double covers of small graphs");
  oracle->add_option("file", oracle_path, "graph file")->required();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return cmd_validate(validate_path);
  if (analyze->parsed()) return cmd_analyze(analyze_path, analyze_wide);
  if (classify->parsed()) {
    if (!classify_subtypes.empty()) {
      const int rc =
          parse_subtype_filter(classify_subtypes, classify_flags.subtype_filter);
      if (rc != kExitOk) return rc;
    }
    return cmd_classify(classify_path, classify_flags);
  }
  if (census->parsed()) {
    if (!census_subtypes.empty()) {
      const int rc =
          parse_subtype_filter(census_subtypes, census_flags.subtype_filter);
      if (rc != kExitOk) return rc;
    }
    return cmd_census(census_path, census_flags, census_records);
  }
  if (oracle->parsed()) return cmd_oracle(oracle_path);
  return kExitInputError;
}
