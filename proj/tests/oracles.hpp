#pragma once

// Independent reference implementations used only by the tests. Everything
// here favours obviousness over speed and shares no code with the library:
// its own newick parser, its own canonical form (children sorted as
// strings), restriction by contraction, adjacency through the common-cluster
// characterization, Floyd-Warshall distances, negative-cycle-canceling
// transport, and Kuhn matching.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rspr/rational.hpp"
#include "rspr/transport.hpp"

namespace oracle {

// Rooted tree as a plain recursive value; label 0 marks internal nodes.
struct ONode {
  int label = 0;
  std::vector<ONode> kids;
};

ONode parse(const std::string& text);

// Canonical string with children sorted lexicographically. Equal strings
// mean equal labeled rooted topologies, independently of the library's
// min-label child ordering.
std::string canon(const ONode& node);

std::vector<int> leaves(const ONode& node);  // sorted

// Restriction to the given labels: drop other leaves, suppress unary nodes.
// keep must intersect the tree's leaf set.
ONode restrict_leaves(const ONode& node, const std::set<int>& keep);

// Leaf sets of all proper subtrees, singletons included, full set excluded.
std::set<std::vector<int>> clusters(const ONode& node);

// One-rSPR-move adjacency: S != T and some cluster C of both trees has
// T|C == S|C and T|(X\C) == S|(X\C); C is the moved subtree's leaf set.
bool adjacent(const std::string& newick1, const std::string& newick2);

// All-pairs shortest paths over an adjacency matrix; -1 when unreachable.
std::vector<std::vector<int>> floyd_warshall(const std::vector<std::vector<bool>>& adj);

// Exact minimum transport cost by canceling negative residual cycles; the
// same problem encoding as rspr::w1 but a different algorithm.
rspr::Rat min_transport_cost(const rspr::TransportProblem& p);

// Maximum bipartite matching size; edges[i] lists right-side nodes of i.
int max_bipartite_matching(const std::vector<std::vector<int>>& edges, int n_right);

}  // namespace oracle
