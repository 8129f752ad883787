// pmideal: command-line front end for the principal-minor-ideal toolkit.
//
// Subcommands: graphs (check/codim/enumerate/supergraphs/complement),
// pairs, dimy, census, verify. Every run writes run-manifest.json next to
// its outputs. Exit codes: 0 ok, 2 usage, 3 budget, 4 invariant violation,
// 5 verification failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmi/census.hpp"

namespace fs = std::filesystem;
using namespace pmi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;
constexpr int kExitVerifyFail = 5;

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

struct Manifest {
  std::vector<std::string> argv;
  std::string started = iso_timestamp();
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
  std::string config;  // flag snapshot, one line
  fs::path dir = ".";  // where the manifest lands (beside the outputs)

  void record(const fs::path& path, const std::string& content) {
    outputs.emplace_back(path.string(), fnv1a64_hex(content));
  }

  void write(const fs::path& dir) const {
    std::ostringstream out;
    out << "{\n  \"command\": [";
    for (std::size_t i = 0; i < argv.size(); ++i) {
      if (i) out << ", ";
      out << '"' << argv[i] << '"';
    }
    out << "],\n  \"config\": \"" << config << "\",\n";
    out << "  \"started\": \"" << started << "\",\n";
    out << "  \"finished\": \"" << iso_timestamp() << "\",\n";
    out << "  \"outputs\": [";
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (i) out << ", ";
      out << "{\"path\": \"" << outputs[i].first << "\", \"fnv1a64\": \"" << outputs[i].second
          << "\"}";
    }
    out << "]\n}\n";
    std::ofstream f(dir / "run-manifest.json");
    f << out.str();
  }
};

void write_output(Manifest& manifest, const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  manifest.record(path, content);
}

// "1-2,2-3" -> edge list; blanks allowed, empty string means no edges.
std::vector<std::pair<int, int>> parse_edges_flag(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.find_first_not_of(" \t") == std::string::npos) continue;
    const auto dash = token.find('-');
    if (dash == std::string::npos)
      throw CLI::ValidationError("--edges", "expected entries like 1-2");
    int i, j;
    try {
      i = std::stoi(token.substr(0, dash));
      j = std::stoi(token.substr(dash + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--edges", "expected entries like 1-2");
    }
    out.emplace_back(i, j);
  }
  return out;
}

SimpleGraph graph_from_flags(int n, const std::string& edges) {
  try {
    return SimpleGraph::from_edges(n, parse_edges_flag(edges));
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--edges", e.what());
  }
}

std::string describe_pair(const PermissiblePair& p) {
  std::ostringstream out;
  out << "a=" << p.clique_order << "  S: " << format_edge_list(p.s_graph)
      << "  T: " << format_edge_list(p.t_graph);
  return out.str();
}

// --- graphs ------------------------------------------------------------------

int cmd_graphs_check(Manifest&, int n, const std::string& edges) {
  const SimpleGraph g = graph_from_flags(n, edges);
  const auto witness = permissibility_witness(g);
  std::cout << "permissible: " << (witness ? "false" : "true") << '\n';
  if (witness) {
    if (witness->complete)
      std::cout << "witness: graph is complete\n";
    else
      std::cout << "witness: induced path " << witness->u << "-" << witness->v << "-"
                << witness->w << " (edge {" << witness->u << "," << witness->w
                << "} missing) among non-dominating vertices\n";
  }
  return kExitOk;
}

int cmd_graphs_codim(Manifest&, int n, const std::string& edges) {
  const SimpleGraph g = graph_from_flags(n, edges);
  if (!is_permissible(g)) {
    std::cerr << "error: graph is not permissible; codim is undefined\n";
    return kExitUsage;
  }
  const TrivialPart tp = trivial_part(g);
  const CliquePartition cp = clique_partition(g);
  const char* kind = tp.kind == TrivialPart::Kind::dominating ? "dominating"
                     : tp.kind == TrivialPart::Kind::isolated ? "isolated"
                                                              : "empty";
  std::cout << "codim: " << codim(g) << '\n'
            << "kind: " << kind << '\n'
            << "m: " << tp.m << '\n'
            << "c: " << cp.c << '\n'
            << "l: " << cp.l << '\n';
  return kExitOk;
}

int cmd_graphs_enumerate(Manifest& manifest, int n, const std::string& outdir) {
  std::vector<SimpleGraph> graphs;
  try {
    graphs = enumerate_permissible(n);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  }
  fs::create_directories(outdir);
  std::ostringstream index;
  index << "{\n  \"n\": " << n << ",\n  \"count\": " << graphs.size() << ",\n  \"graphs\": [";
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof name, "graph_%04zu.dot", k);
    write_output(manifest, fs::path(outdir) / name, to_dot(graphs[k]));
    if (k) index << ",";
    index << "\n    {\"file\": \"" << name << "\", \"edges\": \"" << format_edge_list(graphs[k])
          << "\", \"codim\": " << codim(graphs[k]) << "}";
  }
  index << "\n  ]\n}\n";
  write_output(manifest, fs::path(outdir) / "index.json", index.str());
  manifest.dir = outdir;
  std::cout << "wrote " << graphs.size() << " permissible graphs to " << outdir << '\n';
  return kExitOk;
}

int cmd_graphs_supergraphs(Manifest& manifest, int n, const std::string& edges,
                           const std::string& outdir) {
  const SimpleGraph base = graph_from_flags(n, edges);
  std::vector<SimpleGraph> out;
  try {
    out = minimal_permissible_supergraphs(base.edges(), n);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  fs::create_directories(outdir);
  std::ostringstream index;
  index << "{\n  \"n\": " << n << ",\n  \"base\": \"" << format_edge_list(base)
        << "\",\n  \"count\": " << out.size() << ",\n  \"supergraphs\": [";
  for (std::size_t k = 0; k < out.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof name, "supergraph_%03zu.dot", k);
    write_output(manifest, fs::path(outdir) / name, to_dot(out[k]));
    if (k) index << ",";
    index << "\n    {\"file\": \"" << name << "\", \"edges\": \"" << format_edge_list(out[k])
          << "\", \"codim\": " << codim(out[k]) << "}";
  }
  index << "\n  ]\n}\n";
  write_output(manifest, fs::path(outdir) / "index.json", index.str());
  manifest.dir = outdir;
  std::cout << out.size() << " minimal permissible supergraphs\n";
  for (const auto& g : out) std::cout << "  " << format_edge_list(g) << '\n';
  return kExitOk;
}

int cmd_graphs_complement(Manifest&, int n, const std::string& edges) {
  std::cout << format_edge_list(complement(graph_from_flags(n, edges))) << '\n';
  return kExitOk;
}

// --- pairs -------------------------------------------------------------------

int cmd_pairs(Manifest& manifest, int n, bool types, const std::string& outdir) {
  auto pairs = minimal_cover_pairs(n);
  for (const auto& p : pairs) validate_pair(p);  // throws logic-side errors -> exit 4

  std::map<int, int> per_a;
  for (const auto& p : pairs) ++per_a[p.clique_order];

  if (types) {
    // one representative per isomorphism type; for these pairs the type is
    // the clique order
    std::map<int, PermissiblePair> reps;
    for (const auto& p : pairs) reps.emplace(p.clique_order, p);
    std::cout << reps.size() << " isomorphism types\n";
    for (const auto& [a, p] : reps) std::cout << "  " << describe_pair(p) << '\n';
    pairs.clear();
    for (const auto& [a, p] : reps) pairs.push_back(p);
  } else {
    std::cout << pairs.size() << " labeled pairs\n";
    for (const auto& [a, cnt] : per_a) std::cout << "  a=" << a << ": " << cnt << '\n';
  }

  if (!outdir.empty()) {
    fs::create_directories(outdir);
    std::ostringstream summary;
    summary << "{\n  \"n\": " << n << ",\n  \"mode\": \"" << (types ? "types" : "labeled")
            << "\",\n  \"count\": " << pairs.size() << ",\n  \"per_a\": {";
    bool first = true;
    for (const auto& [a, cnt] : per_a) {
      if (!first) summary << ", ";
      summary << '"' << a << "\": " << cnt;
      first = false;
    }
    summary << "},\n  \"pairs\": [";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      char sname[48], tname[48];
      std::snprintf(sname, sizeof sname, "pair_%04zu_s.dot", k);
      std::snprintf(tname, sizeof tname, "pair_%04zu_t.dot", k);
      write_output(manifest, fs::path(outdir) / sname, to_dot(pairs[k].s_graph));
      write_output(manifest, fs::path(outdir) / tname, to_dot(pairs[k].t_graph));
      if (k) summary << ",";
      summary << "\n    {\"a\": " << pairs[k].clique_order << ", \"s\": \""
              << format_edge_list(pairs[k].s_graph) << "\", \"t\": \""
              << format_edge_list(pairs[k].t_graph) << "\"}";
    }
    summary << "\n  ]\n}\n";
    write_output(manifest, fs::path(outdir) / "summary.json", summary.str());
    manifest.dir = outdir;
  }
  return kExitOk;
}

// --- dimy --------------------------------------------------------------------

int cmd_dimy(Manifest&, int n) {
  int best = std::numeric_limits<int>::min();
  const PermissiblePair* argmax = nullptr;
  const auto pairs = minimal_cover_pairs(n);
  for (const auto& p : pairs) {
    const int v = 4 * (n - 2) - codim(p.s_graph) - codim(p.t_graph);
    if (v > best) {
      best = v;
      argmax = &p;
    }
  }
  const int combinatorial = best + (n - 2) * (n - 2);
  const int formula = n * n - n - 4;
  std::cout << "dim Y_{" << n << "," << n - 2 << "," << n - 2 << "}\n"
            << "combinatorial maximum: " << combinatorial << '\n'
            << "formula n^2-n-4:       " << formula << '\n';
  if (argmax) std::cout << "maximizing pair:       " << describe_pair(*argmax) << '\n';
  if (combinatorial != formula) {
    std::cerr << "error: combinatorial maximum disagrees with the closed form\n";
    return kExitInvariant;
  }
  return kExitOk;
}

// --- census ------------------------------------------------------------------

int cmd_census(Manifest& manifest, int n, const std::string& r_flag, int t, std::uint32_t q,
               const std::string& method, int jobs, const std::string& out) {
  int r = kRankAny;
  if (r_flag != "any") {
    try {
      r = std::stoi(r_flag);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--r", "expected an integer or 'any'");
    }
  }
  std::vector<CensusRecord> records;
  bool bundle_ok = true, ran_bundle = false;

  if (method == "matrix" || method == "both")
    records.push_back(count_Y_bruteforce(StratumSpec{n, r, t, q}, jobs));
  if (method == "pairs" || method == "both") {
    if (r != t && r != kRankAny) {
      std::cerr << "error: the grassmann-pairs method counts the rank r = t stratum\n";
      return kExitUsage;
    }
    records.push_back(count_H_pairs(n, t, q));
  }
  if (method == "both") {
    const std::uint64_t gl = gl_order(t, q);
    ran_bundle = true;
    bundle_ok = records[0].count == records[1].count * gl;
    std::cout << "matrix count:    " << records[0].count << '\n'
              << "pair count:      " << records[1].count << '\n'
              << "|GL(" << t << "," << q << ")|:       " << gl << '\n'
              << "bundle identity: " << (bundle_ok ? "OK" : "VIOLATED") << '\n';
  } else if (!records.empty()) {
    std::cout << "count: " << records[0].count << " (" << records[0].method << ")\n";
  }
  for (const auto& rec : records) std::cerr << rec.method << ": " << rec.elapsed_ms << " ms\n";

  if (!out.empty()) {
    // Output files are deterministic across runs and job counts: wall-clock
    // timing stays on stderr.
    std::vector<CensusRecord> clean = records;
    for (auto& rec : clean) rec.elapsed_ms = 0;
    const fs::path out_path(out);
    const fs::path dir = out_path.parent_path().empty() ? fs::path(".") : out_path.parent_path();
    fs::create_directories(dir);
    if (out_path.extension() == ".json") {
      write_output(manifest, out_path, census_records_to_json(clean));
    } else if (out_path.extension() == ".csv") {
      write_output(manifest, out_path, census_records_to_csv(clean));
    } else {
      write_output(manifest, out_path.string() + ".json", census_records_to_json(clean));
      write_output(manifest, out_path.string() + ".csv", census_records_to_csv(clean));
    }
    manifest.dir = dir;
  }
  if (ran_bundle && !bundle_ok) return kExitInvariant;
  return kExitOk;
}

// --- verify ------------------------------------------------------------------

int report_outcome(const std::string& suite, const VerifyReport& rep) {
  if (rep.ok) {
    std::cout << suite << ": PASS (" << rep.checked << " checks)\n";
    return kExitOk;
  }
  std::cout << suite << ": FAIL\n" << rep.failure << '\n';
  return kExitVerifyFail;
}

int cmd_verify(const std::string& suite, int n, std::uint32_t q, int s, int samples,
               std::uint64_t seed, int max_edges) {
  if (suite == "overlap") {
    VerifyReport rep;
    const std::vector<int> sizes = s > 0 ? std::vector<int>{s} : std::vector<int>{3, 4};
    const std::vector<std::uint32_t> primes =
        q > 0 ? std::vector<std::uint32_t>{q} : std::vector<std::uint32_t>{2, 3, 5};
    for (int width : sizes)
      for (std::uint32_t p : primes) {
        if (!verify_overlap_rule(width, p)) {
          rep.ok = false;
          rep.failure = "counterexample at s=" + std::to_string(width) +
                        ", q=" + std::to_string(p);
        }
        ++rep.checked;
      }
    return report_outcome("overlap", rep);
  }
  if (suite == "case3") return report_outcome("case3", verify_case3(q ? q : 3, 5, seed));
  if (suite == "m2") return report_outcome("m2", verify_m2_overlapping2(q ? q : 3));
  if (suite == "jacobi")
    return report_outcome("jacobi",
                          verify_jacobi_random(n ? n : 5, q ? q : 101,
                                               samples ? samples : 10000, seed));
  if (suite == "n5-example")
    return report_outcome("n5-example",
                          verify_n5_example(q ? q : 7, samples ? samples : 1000, seed));
  if (suite == "graph-permissible")
    return report_outcome("graph-permissible",
                          verify_points_permissible(n ? n : 5, q ? q : 2));
  if (suite == "var-decomp")
    return report_outcome("var-decomp",
                          verify_var_decomposition(n ? n : 5, q ? q : 2, max_edges));
  std::cerr << "error: unknown suite '" << suite << "'\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal minor ideal census and graph toolkit"};
  app.require_subcommand(1);

  Manifest manifest;
  for (int i = 0; i < argc; ++i) manifest.argv.push_back(argv[i]);
  {
    std::ostringstream cfg;
    cfg << "budget=" << default_budget();
    manifest.config = cfg.str();
  }

  int exit_code = kExitOk;
  int n = 0, t = 0, s = 0, jobs = 1, samples = 0, max_edges = 3;
  std::uint32_t q = 0;
  std::uint64_t seed = 1;
  std::string edges, outdir = "pmideal-out", out_file, r_flag = "any", method = "matrix";
  bool types = false, labeled = false;

  // graphs
  auto* graphs = app.add_subcommand("graphs", "vanishing-pattern graph operations");
  graphs->require_subcommand(1);
  auto* g_check = graphs->add_subcommand("check", "test permissibility, print a witness");
  g_check->add_option("--n", n, "vertex count")->required();
  g_check->add_option("--edges", edges, "edge list like 1-2,2-3");
  g_check->callback([&] { exit_code = cmd_graphs_check(manifest, n, edges); });

  auto* g_codim = graphs->add_subcommand("codim", "codimension of a permissible graph");
  g_codim->add_option("--n", n)->required();
  g_codim->add_option("--edges", edges);
  g_codim->callback([&] { exit_code = cmd_graphs_codim(manifest, n, edges); });

  auto* g_enum = graphs->add_subcommand("enumerate", "all permissible graphs on n vertices");
  g_enum->add_option("--n", n)->required();
  g_enum->add_option("--out", outdir, "output directory");
  g_enum->callback([&] { exit_code = cmd_graphs_enumerate(manifest, n, outdir); });

  auto* g_super = graphs->add_subcommand("supergraphs", "minimal permissible supergraphs");
  g_super->add_option("--n", n)->required();
  g_super->add_option("--edges", edges);
  g_super->add_option("--out", outdir);
  g_super->callback([&] { exit_code = cmd_graphs_supergraphs(manifest, n, edges, outdir); });

  auto* g_comp = graphs->add_subcommand("complement", "complement of a graph");
  g_comp->add_option("--n", n)->required();
  g_comp->add_option("--edges", edges);
  g_comp->callback([&] { exit_code = cmd_graphs_complement(manifest, n, edges); });

  // pairs
  auto* pairs_cmd = app.add_subcommand("pairs", "minimal covering pairs of permissible graphs");
  pairs_cmd->add_option("--n", n)->required();
  pairs_cmd->add_flag("--types", types, "collapse to isomorphism types");
  pairs_cmd->add_flag("--labeled", labeled, "list labeled pairs (default)");
  pairs_cmd->add_option("--out", out_file, "output directory for DOT/JSON");
  pairs_cmd->callback([&] { exit_code = cmd_pairs(manifest, n, types, out_file); });

  // dimy
  auto* dimy = app.add_subcommand("dimy", "dimension of the rank n-2 principal minor stratum");
  dimy->add_option("--n", n)->required()->check(CLI::Range(4, 16));
  dimy->callback([&] { exit_code = cmd_dimy(manifest, n); });

  // census
  auto* census = app.add_subcommand("census", "exact point counts over F_q");
  census->add_option("--n", n)->required();
  census->add_option("--r", r_flag, "rank filter (integer or 'any')");
  census->add_option("--t", t, "principal minor size")->required();
  census->add_option("--q", q, "field size (prime)")->required();
  census->add_option("--method", method)->check(CLI::IsMember({"matrix", "pairs", "both"}));
  census->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  census->add_option("--out", out_file, "output file (.json/.csv or basename for both)");
  census->callback(
      [&] { exit_code = cmd_census(manifest, n, r_flag, t, q, method, jobs, out_file); });

  // verify
  auto* verify = app.add_subcommand("verify", "exhaustive and sampled verifications");
  std::string suite;
  verify->add_option("suite", suite,
                     "overlap|case3|m2|jacobi|n5-example|graph-permissible|var-decomp")
      ->required();
  verify->add_option("--n", n);
  verify->add_option("--q", q);
  verify->add_option("--s", s, "matrix width for the overlap rule");
  verify->add_option("--samples", samples);
  verify->add_option("--seed", seed);
  verify->add_option("--max-edges", max_edges);
  verify->callback([&] { exit_code = cmd_verify(suite, n, q, s, samples, seed, max_edges); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (projected " << e.projected << " cells)\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  }
  manifest.write(manifest.dir);
  return exit_code;
}
