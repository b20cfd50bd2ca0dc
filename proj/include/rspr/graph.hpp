#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rspr/tree.hpp"

namespace rspr {

// The neighborhood graph over a set of trees on the same taxa: vertices are
// canonical newicks, adjacency lists are sorted vertex indices. Edges only
// join trees present in the vertex set, so subset graphs are induced.
struct RsprGraph {
  int n = 0;
  std::vector<std::string> vertices;
  std::vector<std::vector<int>> adj;
  std::unordered_map<std::string, int> index;

  long edge_count() const {
    long total = 0;
    for (const auto& row : adj) total += static_cast<long>(row.size());
    return total / 2;
  }
  int find(const std::string& key) const {
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
  }
};

// All trees on taxa {1..n}, built by inserting leaf m into every edge
// (including the root edge) of every (m-1)-taxon tree. Count is the double
// factorial (2n-3)!!. Supported for 3 <= n <= 9.
void for_each_tree(int n, const std::function<void(const Tree&)>& fn);
std::vector<Tree> enumerate_all_trees(int n);
long tree_count(int n);

// Vertices keep the order of `trees`; duplicates are rejected.
RsprGraph build_graph(const std::vector<Tree>& trees);
RsprGraph build_full_graph(int n);

struct DistanceTable {
  int source = 0;
  int cap = -1;           // -1 means unbounded
  std::vector<int> dist;  // -1 where unreached within the cap
};

DistanceTable bfs_distances(const RsprGraph& g, int source, int cap = -1);

// Max pairwise distance, by BFS from every vertex. Requires connectivity.
int diameter(const RsprGraph& g);

// Diameter of a full tree-space graph, using one BFS per topology shape:
// label permutations are graph automorphisms, so eccentricity is constant
// on shape classes.
int full_space_diameter(const RsprGraph& g);

// One vertex id per unlabeled shape, in first-seen vertex order.
std::vector<int> shape_representatives(const RsprGraph& g);

// Exact distance if it is <= cap, nullopt otherwise. Bidirectional
// level-by-level search over neighborhoods; no graph required.
std::optional<int> distance_on_the_fly(const Tree& a, const Tree& b, int cap);

}  // namespace rspr
