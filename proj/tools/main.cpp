#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rspr/analysis.hpp"
#include "rspr/curvature.hpp"
#include "rspr/graph.hpp"
#include "rspr/spr.hpp"
#include "rspr/tanglegram.hpp"
#include "rspr/tree.hpp"
#include "rspr/walks.hpp"

namespace {

using namespace rspr;

// Raised after a verify run that printed failing checks; maps to exit 2.
struct VerificationFailure {};

std::string join_invocation(int argc, char** argv) {
  std::string out = "rspr";
  for (int i = 1; i < argc; ++i) {
    out += ' ';
    out += argv[i];
  }
  return out;
}

WalkKind make_kind(const std::string& family, const std::string& laziness) {
  const Rat p{Rat(laziness)};
  if (p <= 0 || p > 1)
    throw std::invalid_argument("laziness must lie in (0, 1]");
  if (family == "uniform") return WalkKind::uniform(p);
  if (family == "mh") return WalkKind::mh(p);
  throw std::invalid_argument("kind must be uniform or mh");
}

PairSelection make_selection(const std::string& pairs) {
  if (pairs == "all") return PairSelection::All;
  if (pairs == "adjacent") return PairSelection::Adjacent;
  if (pairs == "sample") return PairSelection::Sampled;
  throw std::invalid_argument("pairs must be all, adjacent or sample");
}

std::vector<Tree> read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tree file: " + path);
  std::vector<Tree> trees;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    trees.push_back(parse_newick(line));
  }
  if (trees.empty()) throw std::invalid_argument("tree file is empty: " + path);
  return trees;
}

ClassTable classes_for(const RsprGraph& g, const std::string& pairs,
                       std::uint64_t seed, int samples) {
  return select_classes(g, make_selection(pairs), seed, samples);
}

ClassTable merge_tables(ClassTable a, const ClassTable& b) {
  for (std::size_t i = 0; i < b.classes.size(); ++i) {
    a.classes.push_back(b.classes[i]);
    a.distances.push_back(b.distances[i]);
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rooted subtree-prune-regraft graph toolkit"};
  app.require_subcommand(1);
  const std::string invocation = join_invocation(argc, argv);

  int n = 0;
  std::string tree_arg, trees_file, start_arg;
  std::string kind_arg = "mh", laziness_arg = "1", pairs_arg = "adjacent";
  std::string out_arg, out_stats_arg, out_hist_arg;
  std::uint64_t seed = 0;
  long steps = 0, replicates = 0, cap = 0;
  int samples = 25, threads = 0;
  bool blocks = false;

  auto* cmd_enumerate = app.add_subcommand("enumerate", "list all trees on n leaves");
  cmd_enumerate->add_option("--n", n, "leaf count")->required()->check(CLI::Range(3, 9));
  cmd_enumerate->add_option("--out", out_arg, "output file (default trees-n<n>.txt)");

  auto* cmd_graph = app.add_subcommand("graph", "build a graph and write edge list + vertex file");
  auto* graph_n = cmd_graph->add_option("--n", n, "leaf count for the full graph")->check(CLI::Range(3, 9));
  auto* graph_trees = cmd_graph->add_option("--trees", trees_file, "file of newicks, one per line");
  graph_n->excludes(graph_trees);
  cmd_graph->add_option("--out", out_arg, "output prefix (default rspr-n<n>)");

  auto* cmd_degree = app.add_subcommand("degree", "print the neighbor count of a tree");
  cmd_degree->add_option("--tree", tree_arg, "newick string")->required();
  cmd_degree->add_flag("--blocks", blocks, "also print per-source block sizes");

  auto* cmd_neighbors = app.add_subcommand("neighbors", "list all one-move neighbors of a tree");
  cmd_neighbors->add_option("--tree", tree_arg, "newick string")->required();

  auto* cmd_walk = app.add_subcommand("walk", "simulate a random walk and report visit counts");
  cmd_walk->add_option("--n", n, "leaf count")->required()->check(CLI::Range(3, 9));
  cmd_walk->add_option("--kind", kind_arg, "uniform or mh")->required();
  cmd_walk->add_option("--steps", steps, "number of transitions")->required()->check(CLI::PositiveNumber);
  cmd_walk->add_option("--seed", seed, "random seed")->required();
  cmd_walk->add_option("--laziness", laziness_arg, "move probability p/q (default 1)");
  cmd_walk->add_option("--start", start_arg, "start tree (default ladder)");
  cmd_walk->add_option("--out", out_arg, "output file (default walk-n<n>.csv)");

  auto* cmd_access = app.add_subcommand("access", "access-time experiment over pair classes");
  cmd_access->add_option("--n", n, "leaf count")->required()->check(CLI::Range(3, 9));
  cmd_access->add_option("--kind", kind_arg, "uniform or mh")->required();
  cmd_access->add_option("--replicates", replicates, "replicates per class")->required()->check(CLI::PositiveNumber);
  cmd_access->add_option("--seed", seed, "random seed")->required();
  cmd_access->add_option("--cap", cap, "step cap per replicate (default 100 * tree count)");
  cmd_access->add_option("--pairs", pairs_arg, "all, adjacent or sample (default adjacent)");
  cmd_access->add_option("--samples", samples, "class count for --pairs sample");
  cmd_access->add_option("--laziness", laziness_arg, "move probability p/q (default 1)");
  cmd_access->add_option("--threads", threads, "parallel width (default hardware)");
  cmd_access->add_option("--out-stats", out_stats_arg, "stats file (default access-stats-n<n>.csv)");
  cmd_access->add_option("--out-hist", out_hist_arg, "histogram file (default access-hist-n<n>.csv)");

  auto* cmd_curvature = app.add_subcommand("curvature", "curvature records over pair classes");
  cmd_curvature->add_option("--n", n, "leaf count")->required()->check(CLI::Range(3, 9));
  cmd_curvature->add_option("--pairs", pairs_arg, "all, adjacent or sample")->required();
  cmd_curvature->add_option("--kind", kind_arg, "walk family for the ric columns (default uniform)")->default_val("uniform");
  cmd_curvature->add_option("--seed", seed, "random seed for --pairs sample");
  cmd_curvature->add_option("--samples", samples, "class count for --pairs sample");
  cmd_curvature->add_option("--threads", threads, "parallel width (default hardware)");
  cmd_curvature->add_option("--out", out_arg, "output file (default curvature-n<n>.csv)");

  auto* cmd_classes = app.add_subcommand("classes", "pair-class table");
  cmd_classes->add_option("--n", n, "leaf count")->required()->check(CLI::Range(3, 9));
  cmd_classes->add_option("--pairs", pairs_arg, "all, adjacent or sample (default all)")->default_val("all");
  cmd_classes->add_option("--seed", seed, "random seed for --pairs sample");
  cmd_classes->add_option("--samples", samples, "class count for --pairs sample");
  cmd_classes->add_option("--out", out_arg, "output file (default classes-n<n>.csv)");

  auto* cmd_verify = app.add_subcommand("verify", "run the curvature bound checks");
  cmd_verify->add_option("--n", n, "leaf count")->required()->check(CLI::Range(3, 9));
  cmd_verify->add_option("--samples", samples, "sampled nonadjacent classes for n >= 7")->default_val(40);
  cmd_verify->add_option("--seed", seed, "random seed for the sampled classes");
  cmd_verify->add_option("--threads", threads, "parallel width (default hardware)");

  try {
    app.parse(argc, argv);

    if (cmd_enumerate->parsed()) {
      std::vector<std::string> keys;
      for_each_tree(n, [&](const Tree& t) { keys.push_back(to_newick(t)); });
      std::sort(keys.begin(), keys.end());
      const std::string path = out_arg.empty() ? "trees-n" + std::to_string(n) + ".txt" : out_arg;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open for writing: " + path);
      out << "# " << "command: " << invocation << "\n";
      for (const std::string& key : keys) out << key << "\n";
      if (!out.flush()) throw std::runtime_error("write failed: " + path);
      std::cout << keys.size() << " trees -> " << path << "\n";
    } else if (cmd_graph->parsed()) {
      if (graph_n->count() == 0 && graph_trees->count() == 0)
        throw std::invalid_argument("graph: pass --n or --trees");
      RsprGraph g = graph_trees->count() ? build_graph(read_tree_file(trees_file))
                                         : build_full_graph(n);
      std::string prefix = out_arg;
      if (prefix.empty())
        prefix = graph_trees->count() ? "rspr-subset" : "rspr-n" + std::to_string(n);
      write_edge_list(prefix + ".edges", prefix + ".vertices", g, {"command: " + invocation});
      std::cout << g.vertices.size() << " vertices, " << g.edge_count() << " edges -> "
                << prefix << ".edges\n";
    } else if (cmd_degree->parsed()) {
      const Tree t = parse_newick(tree_arg);
      std::cout << degree(t) << "\n";
      if (blocks)
        for (const NeighborBlock& block : neighbor_blocks(t))
          std::cout << "source " << block.source << " moves " << block.count << "\n";
    } else if (cmd_neighbors->parsed()) {
      const Tree t = parse_newick(tree_arg);
      for (const auto& [move, neighbor] : enumerate_neighbors(t))
        std::cout << move.source << ' ' << move.dest << ' ' << to_newick(neighbor) << "\n";
    } else if (cmd_walk->parsed()) {
      const WalkKind kind = make_kind(kind_arg, laziness_arg);
      const Tree start = start_arg.empty() ? make_ladder(n) : parse_newick(start_arg);
      if (start.n_leaves() != n) throw std::invalid_argument("start tree has wrong leaf count");
      const auto counts = simulate_walk(start, kind, steps, seed);
      const std::string path = out_arg.empty() ? "walk-n" + std::to_string(n) + ".csv" : out_arg;
      write_walk_csv(path, {counts.begin(), counts.end()},
                     {"command: " + invocation, "seed: " + std::to_string(seed)});
      std::cout << counts.size() << " states visited -> " << path << "\n";
    } else if (cmd_access->parsed()) {
      const WalkKind kind = make_kind(kind_arg, laziness_arg);
      const RsprGraph g = build_full_graph(n);
      if (cap == 0) cap = 100 * static_cast<long>(g.vertices.size());
      if (cap < 1) throw std::invalid_argument("cap must be positive");
      const ClassTable table = classes_for(g, pairs_arg, seed, samples);
      const auto stats = run_access_experiment(g, table, kind, replicates, cap, seed, threads);
      const std::vector<std::string> comments = {"command: " + invocation,
                                                 "seed: " + std::to_string(seed)};
      const std::string stats_path =
          out_stats_arg.empty() ? "access-stats-n" + std::to_string(n) + ".csv" : out_stats_arg;
      const std::string hist_path =
          out_hist_arg.empty() ? "access-hist-n" + std::to_string(n) + ".csv" : out_hist_arg;
      write_stats_csv(stats_path, stats, comments);
      write_histogram_csv(hist_path, stats, comments);
      std::cout << stats.size() << " classes -> " << stats_path << ", " << hist_path << "\n";
    } else if (cmd_curvature->parsed()) {
      const WalkKind kind = make_kind(kind_arg, "1");
      const RsprGraph g = build_full_graph(n);
      const ClassTable table = classes_for(g, pairs_arg, seed, samples);
      std::vector<CurvatureRecord> records = compute_records(g, table, threads);
      if (kind.family == WalkKind::MetropolisHastings)
        for (CurvatureRecord& r : records) r.ric = r.ric_mh;
      const std::string path =
          out_arg.empty() ? "curvature-n" + std::to_string(n) + ".csv" : out_arg;
      write_curvature_csv(path, records,
                          {"command: " + invocation, "seed: " + std::to_string(seed)});
      std::cout << records.size() << " classes -> " << path << "\n";
    } else if (cmd_classes->parsed()) {
      const RsprGraph g = build_full_graph(n);
      const ClassTable table = classes_for(g, pairs_arg, seed, samples);
      const std::string path =
          out_arg.empty() ? "classes-n" + std::to_string(n) + ".csv" : out_arg;
      write_class_csv(path, table,
                      {"command: " + invocation, "seed: " + std::to_string(seed)});
      std::cout << table.classes.size() << " classes -> " << path << "\n";
    } else if (cmd_verify->parsed()) {
      const RsprGraph g = build_full_graph(n);
      ClassTable table;
      if (n <= 6) {
        table = classes_for(g, "all", seed, samples);
      } else {
        table = merge_tables(classes_for(g, "adjacent", seed, samples),
                             classes_for(g, "sample", seed, samples));
      }
      const auto records = compute_records(g, table, threads);
      const BoundSuiteReport report = bound_suite(g, records, n <= 6);
      for (const CheckResult& check : report.checks) {
        std::cout << (check.pass ? "PASS " : "FAIL ") << check.name;
        if (!check.pass) std::cout << " (" << check.witness << ")";
        std::cout << "\n";
      }
      if (!report.all_pass()) throw VerificationFailure{};
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const VerificationFailure&) {
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
