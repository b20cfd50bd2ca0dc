#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

namespace oracle {

namespace {

ONode parse_node(const std::string& text, std::size_t& pos) {
  if (pos >= text.size()) throw std::runtime_error("oracle parse: truncated");
  ONode node;
  if (text[pos] == '(') {
    ++pos;
    for (;;) {
      node.kids.push_back(parse_node(text, pos));
      if (pos >= text.size()) throw std::runtime_error("oracle parse: truncated");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      throw std::runtime_error("oracle parse: expected ',' or ')'");
    }
  } else {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) throw std::runtime_error("oracle parse: expected label");
    node.label = std::stoi(text.substr(start, pos - start));
  }
  // branch lengths are tolerated and ignored, like the library
  if (pos < text.size() && text[pos] == ':') {
    ++pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
            text[pos] == '-' || text[pos] == '+' || text[pos] == 'e' || text[pos] == 'E'))
      ++pos;
  }
  return node;
}

void collect_leaves(const ONode& node, std::vector<int>& out) {
  if (node.kids.empty()) {
    out.push_back(node.label);
    return;
  }
  for (const ONode& kid : node.kids) collect_leaves(kid, out);
}

std::optional<ONode> restrict_opt(const ONode& node, const std::set<int>& keep) {
  if (node.kids.empty()) {
    if (keep.count(node.label)) return node;
    return std::nullopt;
  }
  std::vector<ONode> kept;
  for (const ONode& kid : node.kids) {
    auto r = restrict_opt(kid, keep);
    if (r) kept.push_back(std::move(*r));
  }
  if (kept.empty()) return std::nullopt;
  if (kept.size() == 1) return kept.front();
  ONode out;
  out.kids = std::move(kept);
  return out;
}

void collect_clusters(const ONode& node, std::set<std::vector<int>>& out) {
  std::vector<int> mine;
  collect_leaves(node, mine);
  std::sort(mine.begin(), mine.end());
  out.insert(mine);
  for (const ONode& kid : node.kids) collect_clusters(kid, out);
}

}  // namespace

ONode parse(const std::string& text) {
  std::size_t pos = 0;
  ONode root = parse_node(text, pos);
  if (pos < text.size() && text[pos] == ';') ++pos;
  if (pos != text.size()) throw std::runtime_error("oracle parse: trailing text");
  return root;
}

std::string canon(const ONode& node) {
  if (node.kids.empty()) return std::to_string(node.label);
  std::vector<std::string> parts;
  parts.reserve(node.kids.size());
  for (const ONode& kid : node.kids) parts.push_back(canon(kid));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += ')';
  return out;
}

std::vector<int> leaves(const ONode& node) {
  std::vector<int> out;
  collect_leaves(node, out);
  std::sort(out.begin(), out.end());
  return out;
}

ONode restrict_leaves(const ONode& node, const std::set<int>& keep) {
  auto r = restrict_opt(node, keep);
  if (!r) throw std::runtime_error("oracle restrict: nothing kept");
  return *r;
}

std::set<std::vector<int>> clusters(const ONode& node) {
  std::set<std::vector<int>> out;
  collect_clusters(node, out);
  std::vector<int> all;
  collect_leaves(node, all);
  std::sort(all.begin(), all.end());
  out.erase(all);
  return out;
}

bool adjacent(const std::string& newick1, const std::string& newick2) {
  const ONode t = parse(newick1);
  const ONode s = parse(newick2);
  if (canon(t) == canon(s)) return false;
  const std::vector<int> all = leaves(t);
  if (leaves(s) != all) throw std::runtime_error("oracle adjacent: label sets differ");

  const std::set<std::vector<int>> ct = clusters(t);
  const std::set<std::vector<int>> cs = clusters(s);
  for (const std::vector<int>& c : ct) {
    if (!cs.count(c)) continue;
    const std::set<int> inside(c.begin(), c.end());
    std::set<int> outside;
    for (int l : all)
      if (!inside.count(l)) outside.insert(l);
    if (outside.empty()) continue;
    if (canon(restrict_leaves(t, inside)) != canon(restrict_leaves(s, inside))) continue;
    if (canon(restrict_leaves(t, outside)) == canon(restrict_leaves(s, outside)))
      return true;
  }
  return false;
}

std::vector<std::vector<int>> floyd_warshall(const std::vector<std::vector<bool>>& adj) {
  const int n = static_cast<int>(adj.size());
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < n; ++j)
      if (adj[i][j]) d[i][j] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (int& v : row)
      if (v >= inf) v = -1;
  return d;
}

rspr::Rat min_transport_cost(const rspr::TransportProblem& p) {
  using rspr::Rat;
  const int ns = static_cast<int>(p.supply.size());
  const int nt = static_cast<int>(p.demand.size());

  // Northwest-corner starting flow.
  std::vector<std::vector<Rat>> flow(ns, std::vector<Rat>(nt, Rat(0)));
  {
    std::vector<Rat> s = p.supply, d = p.demand;
    int i = 0, j = 0;
    while (i < ns && j < nt) {
      const Rat amount = std::min(s[i], d[j]);
      flow[i][j] += amount;
      s[i] -= amount;
      d[j] -= amount;
      if (s[i] == 0 && i < ns)
        ++i;
      else
        ++j;
    }
  }

  // Cancel negative cycles in the residual graph: forward arcs i -> ns+j of
  // cost c(i,j), backward arcs ns+j -> i of cost -c(i,j) while flow remains.
  const int nodes = ns + nt;
  for (;;) {
    std::vector<long long> dist(nodes, 0);  // virtual zero-cost source
    std::vector<int> prev(nodes, -1);
    int touched = -1;
    for (int round = 0; round < nodes; ++round) {
      touched = -1;
      for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) {
          const long long c = p.cost[i][j];
          if (dist[i] + c < dist[ns + j]) {
            dist[ns + j] = dist[i] + c;
            prev[ns + j] = i;
            touched = ns + j;
          }
          if (flow[i][j] > 0 && dist[ns + j] - c < dist[i]) {
            dist[i] = dist[ns + j] - c;
            prev[i] = ns + j;
            touched = i;
          }
        }
      if (touched < 0) break;
    }
    if (touched < 0) break;  // no negative cycle

    // Walk prev pointers until the path revisits a node; that is the cycle.
    int node = touched;
    for (int hop = 0; hop < nodes; ++hop) node = prev[node];
    std::vector<int> cycle;
    for (int cur = node;;) {
      cycle.push_back(cur);
      cur = prev[cur];
      if (cur == node) break;
    }
    std::reverse(cycle.begin(), cycle.end());  // forward orientation

    Rat theta;
    bool first = true;
    const std::size_t len = cycle.size();
    for (std::size_t a = 0; a < len; ++a) {
      const int from = cycle[a], to = cycle[(a + 1) % len];
      if (from >= ns) {  // backward arc, bounded by existing flow
        const Rat& available = flow[to][from - ns];
        if (first || available < theta) theta = available;
        first = false;
      }
    }
    if (first || theta <= 0)
      throw std::runtime_error("oracle transport: degenerate cycle");
    for (std::size_t a = 0; a < len; ++a) {
      const int from = cycle[a], to = cycle[(a + 1) % len];
      if (from < ns)
        flow[from][to - ns] += theta;
      else
        flow[to][from - ns] -= theta;
    }
  }

  Rat cost = 0;
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) cost += flow[i][j] * p.cost[i][j];
  return cost;
}

namespace {

bool kuhn_augment(int left, const std::vector<std::vector<int>>& edges,
                  std::vector<int>& match_right, std::vector<char>& used) {
  for (int right : edges[left]) {
    if (used[right]) continue;
    used[right] = 1;
    if (match_right[right] < 0 ||
        kuhn_augment(match_right[right], edges, match_right, used)) {
      match_right[right] = left;
      return true;
    }
  }
  return false;
}

}  // namespace

int max_bipartite_matching(const std::vector<std::vector<int>>& edges, int n_right) {
  std::vector<int> match_right(n_right, -1);
  int size = 0;
  for (std::size_t left = 0; left < edges.size(); ++left) {
    std::vector<char> used(n_right, 0);
    if (kuhn_augment(static_cast<int>(left), edges, match_right, used)) ++size;
  }
  return size;
}

}  // namespace oracle
