#pragma once

#include <string>
#include <vector>

namespace rspr {

struct Node {
  int parent = -1;
  int left = -1;    // -1 on leaves
  int right = -1;
  int label = 0;    // positive on leaves, 0 on internal nodes
  int size = 1;     // nodes in the subtree rooted here
  int nleaves = 1;  // leaves in the subtree rooted here
  int min_label = 0;
  int depth = 0;    // root sits at depth 0
};

// Rooted binary tree with distinct positive leaf labels. Children are kept
// in canonical order (the subtree containing the smaller label first), so
// the Newick serialization is a unique key for the topology. All structural
// operations return trees with caches rebuilt and children normalized.
//
// Trees drawn from the space on n taxa carry labels exactly {1..n}; that is
// enforced by parse_newick. restrict_to produces subtrees that keep their
// original labels, which is what topology comparisons need.
struct Tree {
  std::vector<Node> nodes;
  int root = -1;

  int n_leaves() const { return root < 0 ? 0 : nodes[root].nleaves; }
  bool is_leaf(int v) const { return nodes[v].left < 0; }
};

// Recomputes parent/size/nleaves/min_label/depth and swaps children into
// canonical order. Safe to call after any structural surgery.
void rebuild(Tree& t);

inline void canonicalize(Tree& t) { rebuild(t); }

// Strict grammar: binary, integer labels, optional branch lengths (parsed
// and discarded), terminating semicolon. Labels must be exactly {1..n}.
// Errors carry the character position.
Tree parse_newick(const std::string& text);

std::string to_newick(const Tree& t);

// Node ids in preorder (root first, canonical child order).
std::vector<int> preorder(const Tree& t);

int lca(const Tree& t, int u, int v);

// Leaf node id for a label; -1 when absent.
int find_leaf(const Tree& t, int label);

std::vector<int> leaf_labels(const Tree& t);  // sorted

// Induced subtree on the given leaf labels (each must occur in t, at least
// two of them); internal degree-two nodes are suppressed, labels are kept.
Tree restrict_to(const Tree& t, const std::vector<int>& labels);

// perm maps label l to perm[l-1]; requires labels {1..n} on both sides.
Tree relabel(const Tree& t, const std::vector<int>& perm);

bool same_topology(const Tree& a, const Tree& b);

// Shape with labels erased, as a nested-parenthesis key; equal strings mean
// label-permutation-equivalent topologies.
std::string shape_string(const Tree& t);

Tree make_leaf_tree(int label);
// Joins two trees under a fresh root.
Tree join(const Tree& a, const Tree& b);
Tree make_ladder(int n);
Tree make_balanced(int n);

}  // namespace rspr
