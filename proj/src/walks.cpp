#include "rspr/walks.hpp"

#include <limits>
#include <stdexcept>

#include "rspr/spr.hpp"

namespace rspr {

namespace {

void check_probability(const Rat& p) {
  if (p <= 0 || p > 1)
    throw std::invalid_argument("walk laziness must lie in (0, 1]");
}

// Exact Bernoulli(r) decision from one RNG stream; r must have a denominator
// that fits a machine word, which holds for all walk parameters here.
bool flip(Rng& rng, const Rat& r) {
  const Int num = rat_num(r), den = rat_den(r);
  if (den > std::numeric_limits<std::uint64_t>::max())
    throw std::invalid_argument("walk probability denominator too large");
  return rng.bernoulli(num.convert_to<std::uint64_t>(),
                       den.convert_to<std::uint64_t>());
}

}  // namespace

Rat Measure::total() const {
  Rat sum = 0;
  for (const auto& [key, mass] : atoms) sum += mass;
  return sum;
}

Rat Measure::mass(const std::string& key) const {
  for (const auto& [k, m] : atoms)
    if (k == key) return m;
  return 0;
}

Measure uniform_step_measure(const Tree& t) {
  const long deg = degree(t);
  Measure m;
  m.atoms.reserve(deg);
  const Rat each = Rat(1, deg);
  for (const auto& [move, s] : enumerate_neighbors(t))
    m.atoms.emplace_back(to_newick(s), each);
  return m;
}

Measure mh_step_measure(const Tree& t) {
  const long deg = degree(t);
  Measure m;
  m.atoms.reserve(deg + 1);
  Rat moved = 0;
  for (const auto& [move, s] : enumerate_neighbors(t)) {
    const Rat mass = Rat(1, std::max(deg, degree(s)));
    m.atoms.emplace_back(to_newick(s), mass);
    moved += mass;
  }
  if (moved < 1) m.atoms.emplace_back(to_newick(t), 1 - moved);
  return m;
}

Measure lazy_measure(const Measure& base, const std::string& origin, const Rat& p) {
  check_probability(p);
  if (p == 1) return base;
  Measure m;
  m.atoms.reserve(base.atoms.size() + 1);
  bool merged = false;
  for (const auto& [key, mass] : base.atoms) {
    Rat scaled = p * mass;
    if (key == origin) {
      scaled += 1 - p;
      merged = true;
    }
    m.atoms.emplace_back(key, std::move(scaled));
  }
  if (!merged) m.atoms.emplace_back(origin, 1 - p);
  return m;
}

Measure step_measure(const Tree& t, const WalkKind& kind) {
  Measure base = kind.family == WalkKind::Uniform ? uniform_step_measure(t)
                                                  : mh_step_measure(t);
  return lazy_measure(base, to_newick(t), kind.laziness);
}

namespace {

// One tree-level transition; proposes via select_uniform_neighbor so no
// neighborhood is ever materialized.
Tree tree_step(const Tree& cur, const WalkKind& kind, Rng& rng) {
  if (kind.laziness != 1 && !flip(rng, kind.laziness)) return cur;
  const long deg = degree(cur);
  Tree proposal = select_uniform_neighbor(cur, 1 + static_cast<long>(rng.below(deg)));
  if (kind.family == WalkKind::MetropolisHastings) {
    const long deg_to = degree(proposal);
    if (static_cast<long>(rng.below(deg_to)) >= deg) return cur;
  }
  return proposal;
}

}  // namespace

std::map<std::string, long> simulate_walk(const Tree& start, const WalkKind& kind,
                                          long steps, std::uint64_t seed) {
  check_probability(kind.laziness);
  if (steps < 0) throw std::invalid_argument("simulate_walk: negative steps");
  Rng rng(seed);
  std::map<std::string, long> visits;
  Tree cur = start;
  canonicalize(cur);
  for (long s = 0; s < steps; ++s) {
    cur = tree_step(cur, kind, rng);
    ++visits[to_newick(cur)];
  }
  return visits;
}

std::optional<long> access_time(const Tree& start, const Tree& target,
                                const WalkKind& kind, std::uint64_t seed, long cap) {
  check_probability(kind.laziness);
  const std::string goal = to_newick(target);
  if (to_newick(start) == goal)
    throw std::invalid_argument("access_time: start equals target");
  Rng rng(seed);
  Tree cur = start;
  for (long s = 1; s <= cap; ++s) {
    cur = tree_step(cur, kind, rng);
    if (to_newick(cur) == goal) return s;
  }
  return std::nullopt;
}

GraphWalker::GraphWalker(const RsprGraph& g, const WalkKind& kind)
    : graph_(g), kind_(kind) {
  check_probability(kind.laziness);
  const Int num = rat_num(kind.laziness), den = rat_den(kind.laziness);
  lazy_num_ = num.convert_to<std::uint64_t>();
  lazy_den_ = den.convert_to<std::uint64_t>();
}

int GraphWalker::step(int state, Rng& rng) const {
  if (lazy_num_ != lazy_den_ && !rng.bernoulli(lazy_num_, lazy_den_)) return state;
  const auto& row = graph_.adj[state];
  const int proposal = row[rng.below(row.size())];
  if (kind_.family == WalkKind::MetropolisHastings) {
    const std::size_t deg_to = graph_.adj[proposal].size();
    if (rng.below(deg_to) >= row.size()) return state;
  }
  return proposal;
}

std::optional<long> GraphWalker::access_time(int start, int target, Rng& rng,
                                             long cap) const {
  if (start == target)
    throw std::invalid_argument("access_time: start equals target");
  int cur = start;
  for (long s = 1; s <= cap; ++s) {
    cur = step(cur, rng);
    if (cur == target) return s;
  }
  return std::nullopt;
}

}  // namespace rspr
