#pragma once

#include <vector>

#include "rspr/rational.hpp"

namespace rspr {

// Balanced transportation instance: move `supply` onto `demand` (both
// strictly positive, equal totals) at integer unit costs.
struct TransportProblem {
  std::vector<Rat> supply;
  std::vector<Rat> demand;
  std::vector<std::vector<int>> cost;  // supply.size() x demand.size()
};

struct FlowEntry {
  int from = 0;
  int to = 0;
  Rat amount;
};

struct TransportPlan {
  std::vector<FlowEntry> flows;  // positive entries only
  Rat cost;
};

// Exact minimum cost: masses are scaled by the lcm of their denominators
// and the integer problem is solved by successive shortest augmenting paths
// with node potentials. The result is certified before returning: marginals
// must match exactly and the final potentials must prove optimality by
// complementary slackness.
TransportPlan w1(const TransportProblem& problem);

}  // namespace rspr
