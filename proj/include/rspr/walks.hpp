#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rspr/graph.hpp"
#include "rspr/rational.hpp"
#include "rspr/rng.hpp"
#include "rspr/tree.hpp"

namespace rspr {

struct WalkKind {
  enum Family { Uniform, MetropolisHastings };
  Family family = Uniform;
  Rat laziness = 1;  // probability of attempting a move at each step

  static WalkKind uniform(Rat p = 1) { return {Uniform, std::move(p)}; }
  static WalkKind mh(Rat p = 1) { return {MetropolisHastings, std::move(p)}; }
};

// Finitely supported probability measure over canonical newick keys. Atoms
// keep construction order (neighbor enumeration order, origin last) and
// carry strictly positive mass summing to one.
struct Measure {
  std::vector<std::pair<std::string, Rat>> atoms;

  Rat total() const;
  Rat mass(const std::string& key) const;  // zero when absent
};

// 1/deg(t) on every neighbor.
Measure uniform_step_measure(const Tree& t);

// min(1/deg(t), 1/deg(s)) on each neighbor s, remainder on t itself; the
// walk proposes a uniform neighbor and accepts with min(1, deg(t)/deg(s)).
Measure mh_step_measure(const Tree& t);

// p * base + (1-p) at the origin, merging with an existing origin atom.
Measure lazy_measure(const Measure& base, const std::string& origin, const Rat& p);

// One-step measure of the walk, laziness included.
Measure step_measure(const Tree& t, const WalkKind& kind);

// Runs `steps` transitions from `start`; returns visit counts of the states
// after each transition. Rejected MH proposals and lazy holds count as
// visits to the current state.
std::map<std::string, long> simulate_walk(const Tree& start, const WalkKind& kind,
                                          long steps, std::uint64_t seed);

// Steps until `target` is first reached, or nullopt if that takes more than
// `cap` steps.
std::optional<long> access_time(const Tree& start, const Tree& target,
                                const WalkKind& kind, std::uint64_t seed, long cap);

struct AccessHistogram {
  std::string key;
  long cap = 0;
  long replicates = 0;
  long capped = 0;
  std::map<long, long> counts;  // access time -> count, uncapped runs only
};

// Same walk laws as the tree-level stepper, but over a prebuilt graph, for
// bulk simulation. Neighbor choice uses the sorted adjacency order; the
// transition law is identical.
class GraphWalker {
 public:
  GraphWalker(const RsprGraph& g, const WalkKind& kind);

  int step(int state, Rng& rng) const;
  std::optional<long> access_time(int start, int target, Rng& rng, long cap) const;

 private:
  const RsprGraph& graph_;
  WalkKind kind_;
  std::uint64_t lazy_num_ = 1, lazy_den_ = 1;
};

}  // namespace rspr
