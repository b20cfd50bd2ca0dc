#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rspr/curvature.hpp"
#include "rspr/graph.hpp"
#include "rspr/rng.hpp"
#include "rspr/spr.hpp"
#include "rspr/tanglegram.hpp"
#include "rspr/tree.hpp"
#include "rspr/walks.hpp"

using namespace rspr;

namespace {

// Brute-force orbit of an ordered pair under all simultaneous relabelings.
std::set<std::pair<std::string, std::string>> orbit(const Tree& t1, const Tree& t2) {
  const int n = t1.n_leaves();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::set<std::pair<std::string, std::string>> out;
  do {
    out.insert({to_newick(relabel(t1, perm)), to_newick(relabel(t2, perm))});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string orbit_min_key(const Tree& t1, const Tree& t2) {
  const auto all = orbit(t1, t2);
  const auto& least = *all.begin();
  return least.first + "|" + least.second;
}

}  // namespace

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(4) == 24);
  CHECK(factorial(7) == 5040);
}

TEST_CASE("the worked relabeling example lands in one class") {
  const PairClass a =
      canonical_pair(parse_newick("(((1,2),3),4);"), parse_newick("((1,2),(3,4));"));
  const PairClass b =
      canonical_pair(parse_newick("(((1,4),2),3);"), parse_newick("((1,4),(2,3));"));
  CHECK(a.canonical_key == b.canonical_key);
  CHECK(a.class_size == b.class_size);
}

TEST_CASE("diagonal pairs canonicalize both sides identically") {
  const Tree t = parse_newick("((2,4),((1,5),3));");
  const PairClass pc = canonical_pair(t, t);
  CHECK(pc.rep_newick_1 == pc.rep_newick_2);
  CHECK(pc.canonical_key == pc.rep_newick_1 + "|" + pc.rep_newick_2);
}

TEST_CASE("canonical_pair is idempotent on its representatives") {
  Rng rng(555);
  const std::vector<Tree> trees = enumerate_all_trees(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Tree& t1 = trees[rng.below(trees.size())];
    const Tree& t2 = trees[rng.below(trees.size())];
    const PairClass pc = canonical_pair(t1, t2);
    const PairClass again =
        canonical_pair(parse_newick(pc.rep_newick_1), parse_newick(pc.rep_newick_2));
    CHECK(again.canonical_key == pc.canonical_key);
    CHECK(again.rep_newick_1 == pc.rep_newick_1);
    CHECK(again.rep_newick_2 == pc.rep_newick_2);
  }
}

TEST_CASE("the witness permutation maps the input onto the representative") {
  Rng rng(556);
  const std::vector<Tree> trees = enumerate_all_trees(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Tree& t1 = trees[rng.below(trees.size())];
    const Tree& t2 = trees[rng.below(trees.size())];
    const PairClass pc = canonical_pair(t1, t2);
    CHECK(to_newick(relabel(t1, pc.witness_perm)) == pc.rep_newick_1);
    CHECK(to_newick(relabel(t2, pc.witness_perm)) == pc.rep_newick_2);
  }
}

TEST_CASE("label-set mismatch is rejected") {
  CHECK_THROWS(canonical_pair(make_ladder(4), make_ladder(5)));
}

TEST_CASE("canonical keys and class sizes match the permutation oracle at n = 4") {
  const std::vector<Tree> trees = enumerate_all_trees(4);
  std::map<std::string, long> oracle_members;
  std::map<std::string, std::size_t> oracle_orbit_size;
  std::map<std::string, long> lib_members;
  std::map<std::string, Int> lib_class_size;

  for (const Tree& t1 : trees)
    for (const Tree& t2 : trees) {
      const std::string ok = orbit_min_key(t1, t2);
      ++oracle_members[ok];
      oracle_orbit_size[ok] = orbit(t1, t2).size();

      const PairClass pc = canonical_pair(t1, t2);
      // the library key must equal the oracle key: both minimize the same
      // canonical newick order over the same permutation group
      CHECK(pc.canonical_key == ok);
      ++lib_members[pc.canonical_key];
      lib_class_size[pc.canonical_key] = pc.class_size;
    }

  CHECK(lib_members == oracle_members);
  long total = 0;
  for (const auto& [key, members] : lib_members) {
    CHECK(lib_class_size[key] == Int(oracle_orbit_size[key]));
    // every labeled variant of the pair occurs in the full pair sweep
    CHECK(members == static_cast<long>(oracle_orbit_size[key]));
    total += members;
  }
  CHECK(total == 225);
}

TEST_CASE("enumerate_classes partitions its input") {
  const std::vector<Tree> trees = enumerate_all_trees(4);
  std::vector<std::pair<Tree, Tree>> pairs;
  for (const Tree& t1 : trees)
    for (const Tree& t2 : trees) pairs.emplace_back(t1, t2);
  const auto classes = enumerate_classes(pairs);
  long members = 0;
  Int orbit_total = 0;
  for (const auto& [key, group] : classes) {
    CHECK(key == group.rep.canonical_key);
    CHECK(factorial(4) % group.rep.class_size == 0);
    members += group.members;
    orbit_total += group.rep.class_size;
  }
  CHECK(members == 225);
  CHECK(orbit_total == 225);  // the sweep covers every labeling of every class
}

TEST_CASE("distance is constant across class members") {
  const RsprGraph g = build_full_graph(5);
  Rng rng(77);
  std::vector<int> perm(5);
  const std::vector<Tree> trees = enumerate_all_trees(5);
  int checked = 0;
  while (checked < 100) {
    const Tree& t1 = trees[rng.below(trees.size())];
    const Tree& t2 = trees[rng.below(trees.size())];
    const int d = bfs_distances(g, g.find(to_newick(t1))).dist[g.find(to_newick(t2))];
    std::iota(perm.begin(), perm.end(), 1);
    for (std::size_t i = perm.size() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    const Tree r1 = relabel(t1, perm);
    const Tree r2 = relabel(t2, perm);
    const int dr = bfs_distances(g, g.find(to_newick(r1))).dist[g.find(to_newick(r2))];
    CHECK(d == dr);
    // and both land in the same class
    CHECK(canonical_pair(t1, t2).canonical_key == canonical_pair(r1, r2).canonical_key);
    ++checked;
  }
}

TEST_CASE("curvature is constant across class members") {
  const RsprGraph g = build_full_graph(4);
  Rng rng(78);
  std::vector<int> perm(4);
  const std::vector<Tree> trees = enumerate_all_trees(4);
  int checked = 0;
  while (checked < 12) {
    const Tree& t1 = trees[rng.below(trees.size())];
    const Tree& t2 = trees[rng.below(trees.size())];
    if (to_newick(t1) == to_newick(t2)) continue;
    std::iota(perm.begin(), perm.end(), 1);
    for (std::size_t i = perm.size() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    const Tree r1 = relabel(t1, perm);
    const Tree r2 = relabel(t2, perm);
    CHECK(kappa(t1, t2, WalkKind::uniform(), &g) == kappa(r1, r2, WalkKind::uniform(), &g));
    CHECK(kappa(t1, t2, WalkKind::mh(), &g) == kappa(r1, r2, WalkKind::mh(), &g));
    ++checked;
  }
}

TEST_CASE("select_classes covers the whole ordered-pair space in All mode") {
  const RsprGraph g = build_full_graph(4);
  const ClassTable table = select_classes(g, PairSelection::All);
  REQUIRE(table.classes.size() == table.distances.size());
  CHECK(std::is_sorted(table.classes.begin(), table.classes.end(),
                       [](const PairClass& a, const PairClass& b) {
                         return a.canonical_key < b.canonical_key;
                       }));
  Int covered = 0;
  bool diagonal_seen = false;
  for (std::size_t i = 0; i < table.classes.size(); ++i) {
    covered += table.classes[i].class_size;
    if (table.distances[i] == 0) {
      diagonal_seen = true;
      CHECK(table.classes[i].rep_newick_1 == table.classes[i].rep_newick_2);
    }
    // representative distance agrees with a direct graph query
    const int a = g.find(table.classes[i].rep_newick_1);
    const int b = g.find(table.classes[i].rep_newick_2);
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    CHECK(bfs_distances(g, a).dist[b] == table.distances[i]);
  }
  CHECK(covered == 225);
  CHECK(diagonal_seen);
}

TEST_CASE("select_classes Adjacent lists exactly the distance-one classes") {
  const RsprGraph g = build_full_graph(4);
  const ClassTable all = select_classes(g, PairSelection::All);
  std::set<std::string> adjacent_keys;
  for (std::size_t i = 0; i < all.classes.size(); ++i)
    if (all.distances[i] == 1) adjacent_keys.insert(all.classes[i].canonical_key);

  const ClassTable adj = select_classes(g, PairSelection::Adjacent);
  std::set<std::string> got;
  for (std::size_t i = 0; i < adj.classes.size(); ++i) {
    CHECK(adj.distances[i] == 1);
    got.insert(adj.classes[i].canonical_key);
  }
  CHECK(got == adjacent_keys);
}

TEST_CASE("select_classes Sampled draws distinct far classes deterministically") {
  const RsprGraph g = build_full_graph(5);
  const ClassTable a = select_classes(g, PairSelection::Sampled, 17, 12);
  const ClassTable b = select_classes(g, PairSelection::Sampled, 17, 12);
  REQUIRE(a.classes.size() == 12);
  std::set<std::string> keys;
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    CHECK(a.distances[i] >= 2);
    CHECK(a.classes[i].canonical_key == b.classes[i].canonical_key);
    CHECK(a.distances[i] == b.distances[i]);
    keys.insert(a.classes[i].canonical_key);
  }
  CHECK(keys.size() == 12);
}
