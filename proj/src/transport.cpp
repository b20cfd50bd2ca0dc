#include "rspr/transport.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rspr {

namespace {

constexpr long long kInfCost = std::numeric_limits<long long>::max() / 4;

void validate(const TransportProblem& p) {
  if (p.supply.empty() || p.demand.empty())
    throw std::invalid_argument("w1: empty measure");
  if (p.cost.size() != p.supply.size())
    throw std::invalid_argument("w1: cost matrix row count mismatch");
  Rat total_supply = 0, total_demand = 0;
  for (const Rat& s : p.supply) {
    if (s <= 0) throw std::invalid_argument("w1: nonpositive supply mass");
    total_supply += s;
  }
  for (const Rat& d : p.demand) {
    if (d <= 0) throw std::invalid_argument("w1: nonpositive demand mass");
    total_demand += d;
  }
  if (total_supply != total_demand)
    throw std::invalid_argument("w1: unbalanced measures");
  for (const auto& row : p.cost) {
    if (row.size() != p.demand.size())
      throw std::invalid_argument("w1: cost matrix column count mismatch");
    for (int c : row)
      if (c < 0) throw std::invalid_argument("w1: negative cost");
  }
}

}  // namespace

TransportPlan w1(const TransportProblem& p) {
  validate(p);
  const int ns = static_cast<int>(p.supply.size());
  const int nt = static_cast<int>(p.demand.size());
  const int nodes = ns + nt;

  Int scale = 1;
  for (const Rat& s : p.supply) scale = lcm(scale, rat_den(s));
  for (const Rat& d : p.demand) scale = lcm(scale, rat_den(d));

  std::vector<Int> remaining_supply(ns), remaining_demand(nt);
  for (int i = 0; i < ns; ++i)
    remaining_supply[i] = rat_num(p.supply[i]) * (scale / rat_den(p.supply[i]));
  for (int j = 0; j < nt; ++j)
    remaining_demand[j] = rat_num(p.demand[j]) * (scale / rat_den(p.demand[j]));

  std::vector<std::vector<Int>> flow(ns, std::vector<Int>(nt, Int(0)));
  std::vector<long long> potential(nodes, 0);
  std::vector<long long> dist(nodes);
  std::vector<int> prev(nodes);
  std::vector<char> settled(nodes);

  Int outstanding = 0;
  for (const Int& s : remaining_supply) outstanding += s;

  while (outstanding > 0) {
    std::fill(dist.begin(), dist.end(), kInfCost);
    std::fill(prev.begin(), prev.end(), -1);
    std::fill(settled.begin(), settled.end(), 0);
    for (int i = 0; i < ns; ++i)
      if (remaining_supply[i] > 0) dist[i] = 0;

    int target = -1;
    for (;;) {
      int u = -1;
      for (int v = 0; v < nodes; ++v)
        if (!settled[v] && dist[v] < kInfCost && (u < 0 || dist[v] < dist[u]))
          u = v;
      if (u < 0) break;
      settled[u] = 1;
      if (u >= ns && remaining_demand[u - ns] > 0) {
        target = u;
        break;
      }
      if (u < ns) {
        for (int j = 0; j < nt; ++j) {
          const long long w =
              p.cost[u][j] + potential[u] - potential[ns + j];
          if (dist[u] + w < dist[ns + j]) {
            dist[ns + j] = dist[u] + w;
            prev[ns + j] = u;
          }
        }
      } else {
        const int j = u - ns;
        for (int i = 0; i < ns; ++i) {
          if (flow[i][j] == 0) continue;
          const long long w = -p.cost[i][j] + potential[u] - potential[i];
          if (dist[u] + w < dist[i]) {
            dist[i] = dist[u] + w;
            prev[i] = u;
          }
        }
      }
    }
    if (target < 0)
      throw std::logic_error("w1: no augmenting path in a balanced problem");

    const long long reached = dist[target];
    for (int v = 0; v < nodes; ++v)
      potential[v] += std::min(dist[v], reached);

    // Bottleneck along the path: the end supplies/demand and every
    // backward arc's flow.
    Int bottleneck = remaining_demand[target - ns];
    for (int v = target; prev[v] >= 0; v = prev[v]) {
      const int u = prev[v];
      if (v < ns) bottleneck = std::min(bottleneck, flow[v][u - ns]);
      if (prev[u] < 0) bottleneck = std::min(bottleneck, remaining_supply[u]);
    }
    for (int v = target; prev[v] >= 0; v = prev[v]) {
      const int u = prev[v];
      if (v >= ns)
        flow[u][v - ns] += bottleneck;
      else
        flow[v][u - ns] -= bottleneck;
    }
    int origin = target;
    while (prev[origin] >= 0) origin = prev[origin];
    remaining_supply[origin] -= bottleneck;
    remaining_demand[target - ns] -= bottleneck;
    outstanding -= bottleneck;
  }

  // Certify: exact marginals and complementary slackness under the final
  // potentials.
  for (int i = 0; i < ns; ++i) {
    Int row = 0;
    for (int j = 0; j < nt; ++j) row += flow[i][j];
    if (Rat(row, scale) != p.supply[i])
      throw std::logic_error("w1: supply marginal mismatch");
  }
  for (int j = 0; j < nt; ++j) {
    Int col = 0;
    for (int i = 0; i < ns; ++i) col += flow[i][j];
    if (Rat(col, scale) != p.demand[j])
      throw std::logic_error("w1: demand marginal mismatch");
  }
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) {
      const long long reduced = p.cost[i][j] + potential[i] - potential[ns + j];
      if (reduced < 0 || (flow[i][j] != 0 && reduced != 0))
        throw std::logic_error("w1: optimality certificate failed");
    }

  TransportPlan plan;
  Int total_cost = 0;
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) {
      if (flow[i][j] == 0) continue;
      plan.flows.push_back({i, j, Rat(flow[i][j], scale)});
      total_cost += flow[i][j] * p.cost[i][j];
    }
  plan.cost = Rat(total_cost, scale);
  return plan;
}

}  // namespace rspr
