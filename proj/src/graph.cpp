#include "rspr/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "rspr/spr.hpp"

namespace rspr {

namespace {

Tree insert_leaf_at(const Tree& t, int v, int label) {
  Tree s = t;
  const int leaf = static_cast<int>(s.nodes.size());
  s.nodes.emplace_back();
  s.nodes[leaf].label = label;
  const int mid = static_cast<int>(s.nodes.size());
  s.nodes.emplace_back();
  s.nodes[mid].left = v;
  s.nodes[mid].right = leaf;
  const int p = s.nodes[v].parent;
  if (p < 0) {
    s.root = mid;
  } else {
    (s.nodes[p].left == v ? s.nodes[p].left : s.nodes[p].right) = mid;
    s.nodes[mid].parent = p;
  }
  rebuild(s);
  return s;
}

void expand_trees(const Tree& t, int next_label, int n,
                  const std::function<void(const Tree&)>& fn) {
  if (next_label > n) {
    fn(t);
    return;
  }
  for (std::size_t v = 0; v < t.nodes.size(); ++v)
    expand_trees(insert_leaf_at(t, static_cast<int>(v), next_label),
                 next_label + 1, n, fn);
}

}  // namespace

void for_each_tree(int n, const std::function<void(const Tree&)>& fn) {
  if (n < 3 || n > 9)
    throw std::invalid_argument("for_each_tree: supported for 3 <= n <= 9");
  const Tree seed = join(make_leaf_tree(1), make_leaf_tree(2));
  expand_trees(seed, 3, n, fn);
}

std::vector<Tree> enumerate_all_trees(int n) {
  std::vector<Tree> trees;
  trees.reserve(tree_count(n));
  for_each_tree(n, [&](const Tree& t) { trees.push_back(t); });
  return trees;
}

long tree_count(int n) {
  long count = 1;
  for (long m = 3; m <= n; ++m) count *= 2 * m - 3;
  return count;
}

RsprGraph build_graph(const std::vector<Tree>& trees) {
  if (trees.empty()) throw std::invalid_argument("build_graph: no trees");
  RsprGraph g;
  g.n = trees[0].n_leaves();
  g.vertices.reserve(trees.size());
  for (const Tree& t : trees) {
    if (t.n_leaves() != g.n)
      throw std::invalid_argument("build_graph: mixed leaf counts");
    std::string key = to_newick(t);
    if (!g.index.emplace(key, static_cast<int>(g.vertices.size())).second)
      throw std::invalid_argument("build_graph: duplicate tree " + key);
    g.vertices.push_back(std::move(key));
  }
  g.adj.resize(g.vertices.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (const auto& [move, s] : enumerate_neighbors(trees[i])) {
      const int j = g.find(to_newick(s));
      if (j >= 0 && j < static_cast<int>(i)) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    auto& row = g.adj[i];
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw std::logic_error("build_graph: duplicate neighbor of " +
                             g.vertices[i]);
  }
  return g;
}

RsprGraph build_full_graph(int n) {
  RsprGraph g = build_graph(enumerate_all_trees(n));
  if (static_cast<long>(g.vertices.size()) != tree_count(n))
    throw std::logic_error("build_full_graph: enumeration miscount");
  return g;
}

DistanceTable bfs_distances(const RsprGraph& g, int source, int cap) {
  if (source < 0 || source >= static_cast<int>(g.vertices.size()))
    throw std::invalid_argument("bfs_distances: source out of range");
  DistanceTable table;
  table.source = source;
  table.cap = cap;
  table.dist.assign(g.vertices.size(), -1);
  table.dist[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const int d = table.dist[v];
    if (cap >= 0 && d >= cap) continue;
    for (int w : g.adj[v])
      if (table.dist[w] < 0) {
        table.dist[w] = d + 1;
        queue.push_back(w);
      }
  }
  return table;
}

namespace {

int eccentricity(const RsprGraph& g, int source) {
  const DistanceTable table = bfs_distances(g, source);
  int ecc = 0;
  for (int d : table.dist) {
    if (d < 0)
      throw std::invalid_argument("diameter: graph is not connected");
    ecc = std::max(ecc, d);
  }
  return ecc;
}

}  // namespace

int diameter(const RsprGraph& g) {
  int best = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    best = std::max(best, eccentricity(g, static_cast<int>(v)));
  return best;
}

std::vector<int> shape_representatives(const RsprGraph& g) {
  std::vector<int> reps;
  std::unordered_map<std::string, int> seen;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const std::string shape = shape_string(parse_newick(g.vertices[v]));
    if (seen.emplace(shape, static_cast<int>(v)).second)
      reps.push_back(static_cast<int>(v));
  }
  return reps;
}

int full_space_diameter(const RsprGraph& g) {
  if (static_cast<long>(g.vertices.size()) != tree_count(g.n))
    throw std::invalid_argument(
        "full_space_diameter: graph does not cover the whole space");
  int best = 0;
  for (int rep : shape_representatives(g)) best = std::max(best, eccentricity(g, rep));
  return best;
}

namespace {

struct SearchSide {
  std::unordered_map<std::string, int> dist;
  std::vector<Tree> frontier;
  int depth = 0;
};

// Expands one full level; returns the best meeting length seen, or -1.
int expand_level(SearchSide& side, const SearchSide& other) {
  std::vector<Tree> next;
  int best = -1;
  for (const Tree& t : side.frontier) {
    for (const auto& [move, s] : enumerate_neighbors(t)) {
      std::string key = to_newick(s);
      if (side.dist.count(key)) continue;
      side.dist.emplace(key, side.depth + 1);
      const auto hit = other.dist.find(key);
      if (hit != other.dist.end()) {
        const int total = side.depth + 1 + hit->second;
        if (best < 0 || total < best) best = total;
      }
      next.push_back(std::move(s));
    }
  }
  side.frontier = std::move(next);
  ++side.depth;
  return best;
}

}  // namespace

std::optional<int> distance_on_the_fly(const Tree& a, const Tree& b, int cap) {
  if (cap < 0) throw std::invalid_argument("distance_on_the_fly: negative cap");
  if (leaf_labels(a) != leaf_labels(b))
    throw std::invalid_argument("distance_on_the_fly: label sets differ");
  const std::string ka = to_newick(a), kb = to_newick(b);
  if (ka == kb) return 0;

  SearchSide from, to;
  from.dist.emplace(ka, 0);
  from.frontier.push_back(a);
  to.dist.emplace(kb, 0);
  to.frontier.push_back(b);

  int best = -1;
  // Levels are complete, so once best <= depth(a)+depth(b) no shorter path
  // can still be undiscovered.
  while (from.depth + to.depth < cap && (best < 0 || best > from.depth + to.depth)) {
    SearchSide& smaller =
        from.frontier.size() <= to.frontier.size() ? from : to;
    SearchSide& larger = (&smaller == &from) ? to : from;
    if (smaller.frontier.empty()) break;
    const int met = expand_level(smaller, larger);
    if (met >= 0 && (best < 0 || met < best)) best = met;
  }
  if (best >= 0 && best <= cap) return best;
  return std::nullopt;
}

}  // namespace rspr
