#include "rspr/tanglegram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rspr/rng.hpp"
#include "rspr/spr.hpp"

namespace rspr {

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

const LabelingCache::Entry& LabelingCache::lookup(const Tree& t) {
  const std::string key = to_newick(t);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  const int n = t.n_leaves();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  Entry entry;
  do {
    std::string candidate = to_newick(relabel(t, perm));
    if (entry.perms.empty() || candidate < entry.min_key) {
      entry.min_key = std::move(candidate);
      entry.perms.clear();
      entry.perms.push_back(perm);
    } else if (candidate == entry.min_key) {
      entry.perms.push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return cache_.emplace(key, std::move(entry)).first->second;
}

PairClass canonical_pair(const Tree& t1, const Tree& t2,
                         LabelingCache& cache) {
  const int n = t1.n_leaves();
  if (t2.n_leaves() != n)
    throw std::invalid_argument("canonical_pair: trees have different label sets");

  const LabelingCache::Entry& entry = cache.lookup(t1);
  PairClass out;
  out.rep_newick_1 = entry.min_key;
  // The first components tie across the coset, so the least pair is decided
  // by the second tree alone.
  long ties = 0;
  for (const std::vector<int>& perm : entry.perms) {
    std::string candidate = to_newick(relabel(t2, perm));
    if (out.rep_newick_2.empty() || candidate < out.rep_newick_2) {
      out.rep_newick_2 = std::move(candidate);
      out.witness_perm = perm;
      ties = 1;
    } else if (candidate == out.rep_newick_2) {
      ++ties;
    }
  }
  // ties counts the stabilizer of the representative pair, so the orbit has
  // n!/ties members.
  out.class_size = factorial(n) / ties;
  out.canonical_key = out.rep_newick_1 + "|" + out.rep_newick_2;
  return out;
}

PairClass canonical_pair(const Tree& t1, const Tree& t2) {
  LabelingCache cache;
  return canonical_pair(t1, t2, cache);
}

std::map<std::string, ClassGroup> enumerate_classes(
    const std::vector<std::pair<Tree, Tree>>& pairs) {
  LabelingCache cache;
  std::map<std::string, ClassGroup> out;
  for (const auto& [t1, t2] : pairs) {
    PairClass pc = canonical_pair(t1, t2, cache);
    auto it = out.find(pc.canonical_key);
    if (it == out.end()) {
      ClassGroup group;
      group.rep = std::move(pc);
      group.members = 1;
      out.emplace(group.rep.canonical_key, std::move(group));
    } else {
      ++it->second.members;
    }
  }
  return out;
}

namespace {

// Canonical labeling of each distinct shape present in the graph.  Every
// class of ordered pairs has a representative whose first component is such
// a tree, so scanning (shape representative, any second tree) covers all
// classes.
std::vector<Tree> canonical_shape_reps(const RsprGraph& g,
                                       LabelingCache& cache) {
  std::vector<Tree> reps;
  std::set<std::string> seen;
  for (int idx : shape_representatives(g)) {
    const std::string& min_key = cache.lookup(parse_newick(g.vertices[idx])).min_key;
    if (seen.insert(min_key).second) reps.push_back(parse_newick(min_key));
  }
  return reps;
}

void sort_table(ClassTable& table) {
  std::vector<int> order(table.classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return table.classes[a].canonical_key < table.classes[b].canonical_key;
  });
  ClassTable sorted;
  for (int i : order) {
    sorted.classes.push_back(std::move(table.classes[i]));
    sorted.distances.push_back(table.distances[i]);
  }
  table = std::move(sorted);
}

}  // namespace

ClassTable select_classes(const RsprGraph& g, PairSelection sel,
                          std::uint64_t seed, int sample_count) {
  LabelingCache cache;
  ClassTable table;
  std::set<std::string> seen;
  auto add = [&](PairClass pc, int dist) {
    if (seen.insert(pc.canonical_key).second) {
      table.classes.push_back(std::move(pc));
      table.distances.push_back(dist);
    }
  };

  switch (sel) {
    case PairSelection::All: {
      std::vector<Tree> trees;
      trees.reserve(g.vertices.size());
      for (const std::string& key : g.vertices) trees.push_back(parse_newick(key));
      for (const Tree& rep : canonical_shape_reps(g, cache)) {
        const int source = g.find(to_newick(rep));
        if (source < 0)
          throw std::invalid_argument("select_classes: representative missing from graph");
        const DistanceTable dist = bfs_distances(g, source);
        for (int j = 0; j < static_cast<int>(trees.size()); ++j) {
          if (dist.dist[j] < 0)
            throw std::invalid_argument("select_classes: graph is not connected");
          add(canonical_pair(rep, trees[j], cache), dist.dist[j]);
        }
      }
      break;
    }
    case PairSelection::Adjacent: {
      for (const Tree& rep : canonical_shape_reps(g, cache))
        for (const auto& [move, neighbor] : enumerate_neighbors(rep))
          add(canonical_pair(rep, neighbor, cache), 1);
      break;
    }
    case PairSelection::Sampled: {
      if (sample_count <= 0)
        throw std::invalid_argument("select_classes: sample_count must be positive");
      Rng rng = derive_rng(seed, "sampled-classes", g.n);
      const int v = static_cast<int>(g.vertices.size());
      long attempts = 0;
      const long max_attempts = 200L * sample_count;
      while (static_cast<int>(table.classes.size()) < sample_count &&
             attempts++ < max_attempts) {
        const int i = static_cast<int>(rng.below(v));
        const int j = static_cast<int>(rng.below(v));
        const DistanceTable dist = bfs_distances(g, i);
        if (dist.dist[j] < 2) continue;
        add(canonical_pair(parse_newick(g.vertices[i]), parse_newick(g.vertices[j]), cache),
            dist.dist[j]);
      }
      break;
    }
  }

  sort_table(table);
  return table;
}

}  // namespace rspr
