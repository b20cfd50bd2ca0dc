#include "rspr/spr.hpp"

#include <algorithm>
#include <stdexcept>

namespace rspr {

namespace {

struct ExcludedDest {
  int sibling = -1, parent = -1, grandparent = -1, aunt = -1;

  bool contains(int v) const {
    return v == sibling || v == parent || v == grandparent || v == aunt;
  }
};

// Destinations equivalent to not moving at all or to a move already counted
// in another block: the sibling and parent edges recreate the same tree,
// the grandparent and aunt edges duplicate moves of the aunt subtree.
ExcludedDest excluded_destinations(const Tree& t, int u) {
  ExcludedDest e;
  const int p = t.nodes[u].parent;
  e.parent = p;
  e.sibling = t.nodes[p].left == u ? t.nodes[p].right : t.nodes[p].left;
  const int g = t.nodes[p].parent;
  if (g >= 0) {
    e.grandparent = g;
    e.aunt = t.nodes[g].left == p ? t.nodes[g].right : t.nodes[g].left;
  }
  return e;
}

// The root edge coincides with the parent edge at depth 1 and with the
// grandparent edge at depth 2; it is a fresh destination only below that.
bool root_edge_allowed(const Tree& t, int u) { return t.nodes[u].depth > 2; }

bool is_ancestor(const Tree& t, int anc, int v) {
  while (v >= 0) {
    if (v == anc) return true;
    v = t.nodes[v].parent;
  }
  return false;
}

long block_size_at(const Tree& t, int id) {
  const long n = t.n_leaves();
  const Node& node = t.nodes[id];
  if (node.depth <= 0) return 0;
  const long x = node.size;
  return node.depth == 1 ? 2 * n - x - 3 : 2 * n - x - 5;
}

// Moves address nodes by preorder rank; rank 0 is always the root.
int source_node(const std::vector<int>& order, int source) {
  if (source < 0 || source >= static_cast<int>(order.size()))
    throw std::invalid_argument("spr: source rank out of range");
  if (source == 0)
    throw std::invalid_argument("spr: cannot prune the whole tree");
  return order[source];
}

int dest_node(const std::vector<int>& order, int dest) {
  if (dest < 0 || dest >= static_cast<int>(order.size()))
    throw std::invalid_argument("spr: destination rank out of range");
  if (dest == 0)
    throw std::invalid_argument("spr: root edge destinations use kRootEdge");
  return order[dest];
}

}  // namespace

long neighbor_block_size(const Tree& t, int u) {
  const std::vector<int> order = preorder(t);
  if (u < 0 || u >= static_cast<int>(order.size()))
    throw std::invalid_argument("neighbor_block_size: rank out of range");
  return block_size_at(t, order[u]);
}

std::vector<NeighborBlock> neighbor_blocks(const Tree& t) {
  const std::vector<int> order = preorder(t);
  std::vector<NeighborBlock> blocks;
  blocks.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r)
    blocks.push_back({static_cast<int>(r), block_size_at(t, order[r])});
  return blocks;
}

long degree(const Tree& t) {
  if (t.n_leaves() < 3)
    throw std::invalid_argument("degree: need at least three leaves");
  long total = 0;
  for (std::size_t u = 0; u < t.nodes.size(); ++u)
    total += block_size_at(t, static_cast<int>(u));
  return total;
}

Tree apply_spr(const Tree& t, const SprMove& move) {
  const std::vector<int> order = preorder(t);
  const int u = source_node(order, move.source);
  const int p = t.nodes[u].parent;
  const int sibling = t.nodes[p].left == u ? t.nodes[p].right : t.nodes[p].left;
  const int g = t.nodes[p].parent;

  int dest = -1;
  if (move.dest == kRootEdge) {
    if (!root_edge_allowed(t, u))
      throw std::invalid_argument(
          "spr: root edge destination is equivalent to not moving");
  } else {
    dest = dest_node(order, move.dest);
    if (is_ancestor(t, u, dest))
      throw std::invalid_argument(
          "spr: destination inside the pruned subtree");
    if (excluded_destinations(t, u).contains(dest))
      throw std::invalid_argument("spr: destination equivalent to a no-op");
  }

  Tree s = t;
  // Detach u and suppress its parent; p's node slot is recycled as the
  // node subdividing the destination edge.
  if (g < 0) {
    s.nodes[sibling].parent = -1;
    s.root = sibling;
  } else {
    (s.nodes[g].left == p ? s.nodes[g].left : s.nodes[g].right) = sibling;
    s.nodes[sibling].parent = g;
  }

  if (move.dest == kRootEdge) {
    const int old_root = s.root;
    s.nodes[p] = Node{};
    s.nodes[p].left = old_root;
    s.nodes[p].right = u;
    s.nodes[old_root].parent = p;
    s.nodes[u].parent = p;
    s.root = p;
  } else {
    const int v = dest;
    const int pv = s.nodes[v].parent;
    (s.nodes[pv].left == v ? s.nodes[pv].left : s.nodes[pv].right) = p;
    s.nodes[p] = Node{};
    s.nodes[p].parent = pv;
    s.nodes[p].left = v;
    s.nodes[p].right = u;
    s.nodes[v].parent = p;
    s.nodes[u].parent = p;
  }
  rebuild(s);
  return s;
}

namespace {

// Invokes fn(dest) over the block of u in deterministic order: destinations
// by preorder rank of their child endpoint, then the root edge.
template <typename Fn>
void for_each_destination(const Tree& t, int u, const std::vector<int>& order,
                          const std::vector<int>& rank, Fn&& fn) {
  const ExcludedDest excluded = excluded_destinations(t, u);
  const int lo = rank[u];
  const int hi = lo + t.nodes[u].size;
  for (int v : order) {
    if (v == t.root) continue;
    if (rank[v] >= lo && rank[v] < hi) continue;
    if (excluded.contains(v)) continue;
    fn(v);
  }
  if (root_edge_allowed(t, u)) fn(kRootEdge);
}

std::vector<int> preorder_rank(const Tree& t, const std::vector<int>& order) {
  std::vector<int> rank(t.nodes.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  return rank;
}

}  // namespace

std::vector<std::pair<SprMove, Tree>> enumerate_neighbors(const Tree& t) {
  if (t.n_leaves() < 3)
    throw std::invalid_argument("enumerate_neighbors: need at least three leaves");
  const std::vector<int> order = preorder(t);
  const std::vector<int> rank = preorder_rank(t, order);
  std::vector<std::pair<SprMove, Tree>> result;
  for (int u : order) {
    if (u == t.root) continue;
    for_each_destination(t, u, order, rank, [&](int dest) {
      const SprMove move{rank[u], dest == kRootEdge ? kRootEdge : rank[dest]};
      result.emplace_back(move, apply_spr(t, move));
    });
  }
  return result;
}

SprMove select_neighbor_move(const Tree& t, long r) {
  if (r < 1 || r > degree(t))
    throw std::invalid_argument("select_neighbor_move: rank out of range");
  const std::vector<int> order = preorder(t);
  const std::vector<int> rank = preorder_rank(t, order);
  long remaining = r;
  for (int u : order) {
    if (u == t.root) continue;
    const long block = block_size_at(t, u);
    if (remaining > block) {
      remaining -= block;
      continue;
    }
    SprMove found{-1, kRootEdge};
    for_each_destination(t, u, order, rank, [&](int dest) {
      if (--remaining == 0)
        found = SprMove{rank[u], dest == kRootEdge ? kRootEdge : rank[dest]};
    });
    return found;
  }
  throw std::logic_error("select_neighbor_move: block scan exhausted");
}

Tree select_uniform_neighbor(const Tree& t, long r) {
  return apply_spr(t, select_neighbor_move(t, r));
}

MoveQuantities analyze_move(const Tree& t, const SprMove& move) {
  const std::vector<int> order = preorder(t);
  const int u = source_node(order, move.source);
  const int p = t.nodes[u].parent;
  const int sibling = t.nodes[p].left == u ? t.nodes[p].right : t.nodes[p].left;

  MoveQuantities q;
  q.k = t.nodes[u].nleaves;
  q.x = t.nodes[u].size;
  q.i = t.nodes[sibling].nleaves;

  if (move.dest == kRootEdge) {
    // The destination subtree is the whole tree; the LCA of it and the
    // sibling subtree is the implicit augmented root at depth -1.
    q.j = t.n_leaves() - q.k;
    q.a = t.nodes[p].depth;
    q.b = 0;
    return q;
  }

  const int v = dest_node(order, move.dest);
  q.j = t.nodes[v].nleaves - (is_ancestor(t, v, u) ? q.k : 0);
  const int pv = t.nodes[v].parent;
  const int l = lca(t, p, pv);
  q.a = p == l ? 0 : t.nodes[p].depth - t.nodes[l].depth - 1;
  q.b = t.nodes[v].depth - t.nodes[l].depth - 1;
  return q;
}

long predict_degree_delta(const Tree& t, const SprMove& move) {
  const MoveQuantities q = analyze_move(t, move);
  return 2 * (q.k * (q.b - q.a) + q.j - q.i);
}

long square_overlap(const Tree& t, const SprMove& move) {
  const MoveQuantities q = analyze_move(t, move);
  return degree(t) - 2 * q.k * q.b - 2 * (q.j - 1);
}

long degree_extremes(int n, Shape shape) {
  if (n < 3) throw std::invalid_argument("degree_extremes: need n >= 3");
  const long ln = n;
  if (shape == Shape::Ladder) return 3 * ln * ln - 13 * ln + 14;
  long depth_sum = 0;
  for (long m = 1; m <= ln - 2; ++m) {
    long log2_floor = 0;
    while ((1L << (log2_floor + 1)) <= m + 1) ++log2_floor;
    depth_sum += log2_floor;
  }
  return 4 * (ln - 2) * (ln - 2) - 2 * depth_sum;
}

std::vector<std::string> shared_neighbors(const Tree& t1, const Tree& t2) {
  if (leaf_labels(t1) != leaf_labels(t2))
    throw std::invalid_argument("shared_neighbors: label sets differ");
  std::vector<std::string> keys1, keys2;
  for (const auto& [move, s] : enumerate_neighbors(t1)) keys1.push_back(to_newick(s));
  for (const auto& [move, s] : enumerate_neighbors(t2)) keys2.push_back(to_newick(s));
  std::sort(keys1.begin(), keys1.end());
  std::sort(keys2.begin(), keys2.end());
  std::vector<std::string> shared;
  std::set_intersection(keys1.begin(), keys1.end(), keys2.begin(), keys2.end(),
                        std::back_inserter(shared));
  return shared;
}

std::string tree_key(const Tree& t) { return to_newick(t); }

}  // namespace rspr
