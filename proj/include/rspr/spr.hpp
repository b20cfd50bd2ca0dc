#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rspr/tree.hpp"

namespace rspr {

// One subtree-prune-regraft operation: prune the subtree rooted at `source`
// and regraft it onto the edge above `dest`. `dest == kRootEdge` regrafts
// onto the edge between the root and the implicit augmented root, making
// the pruned subtree a child of a new root. Nodes are addressed by preorder
// rank (root = 0), which depends only on the canonical topology, so a move
// means the same thing on any copy of the same tree.
constexpr int kRootEdge = -1;

struct SprMove {
  int source = -1;
  int dest = kRootEdge;
};

// Moves are enumerated in blocks, one block per source rank in preorder
// order; within a block, destination edges follow the preorder rank of
// their child endpoint, with the root edge last.
struct NeighborBlock {
  int source = -1;  // preorder rank of the pruned subtree's root
  long count = 0;
};

// Quantities describing a move, used by the degree-change identities:
//   k  leaves of the pruned subtree R
//   x  nodes of R
//   i  leaves of R's sibling subtree U
//   j  leaves of the destination subtree V, not counting leaves of R
//   a  nodes strictly between R's parent and the LCA of U and V
//   b  nodes strictly between V's root and that LCA
// The LCA of two subtrees is the LCA of their parent nodes; for the root
// edge destination it is the implicit augmented root.
struct MoveQuantities {
  long k = 0, x = 0, i = 0, j = 0, a = 0, b = 0;
};

// Number of distinct neighbors obtained by pruning the subtree whose root
// has preorder rank u: 2n-x-5 below the root's children, 2n-x-3 at them,
// 0 at the root, where x counts the nodes of the pruned subtree.
long neighbor_block_size(const Tree& t, int u);

std::vector<NeighborBlock> neighbor_blocks(const Tree& t);

// |N(T)|, by the closed form above. Requires n >= 3.
long degree(const Tree& t);

// Applies the move and returns the canonical result. Rejects moves whose
// destination lies inside the pruned subtree or is one of the four
// equivalent destinations (sibling, parent, grandparent, aunt edges).
Tree apply_spr(const Tree& t, const SprMove& move);

// All (move, neighbor) pairs in deterministic block order. Exactly
// degree(t) entries, pairwise distinct topologies.
std::vector<std::pair<SprMove, Tree>> enumerate_neighbors(const Tree& t);

// r-th neighbor, 1-based, in enumeration order; runs in O(n) plus the cost
// of applying one move.
Tree select_uniform_neighbor(const Tree& t, long r);
SprMove select_neighbor_move(const Tree& t, long r);

MoveQuantities analyze_move(const Tree& t, const SprMove& move);

// degree(t) - degree(apply_spr(t, move)), from the move quantities alone.
long predict_degree_delta(const Tree& t, const SprMove& move);

// o = deg(T) - 2kb - 2(j-1) = deg(S) - 2ka - 2(i-1): the number of moves
// available on both sides of the edge T ~ S with matching source and
// destination, i.e. paired neighbors at distance at most one.
long square_overlap(const Tree& t, const SprMove& move);

enum class Shape { Ladder, Balanced };

// Extremes of the degree over n-leaf trees: ladders attain the minimum
// 3n^2-13n+14, balanced trees the maximum 4(n-2)^2 - 2*sum floor(log2(m+1)).
long degree_extremes(int n, Shape shape);

// Canonical newicks of N(t1) applied-set intersected with N(t2), sorted.
std::vector<std::string> shared_neighbors(const Tree& t1, const Tree& t2);

std::string tree_key(const Tree& t);

}  // namespace rspr
