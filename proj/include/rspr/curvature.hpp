#pragma once

#include <string>
#include <vector>

#include "rspr/graph.hpp"
#include "rspr/rational.hpp"
#include "rspr/tanglegram.hpp"
#include "rspr/transport.hpp"
#include "rspr/tree.hpp"
#include "rspr/walks.hpp"

namespace rspr {

// Pairwise distances between the supports of two step measures, a matrix of
// atoms(a) x atoms(b). Every entry is at most cap = d(x,y)+2, since support
// points sit within one move of the endpoints; exceeding cap is an internal
// error. With a graph the distances come from capped breadth-first search,
// otherwise from bidirectional on-the-fly search.
std::vector<std::vector<int>> support_distances(const Measure& a, const Measure& b,
                                                int cap, const RsprGraph* g);

// Graph distance between two trees; uses the graph when given, otherwise
// bidirectional search. Throws if either tree is missing from the graph.
int tree_distance(const Tree& t1, const Tree& t2, const RsprGraph* g);

// Coarse curvature 1 - W1(m1, m2)/d of the walk's one-step measures.
// Throws for equal trees (d = 0).
Rat kappa(const Tree& t1, const Tree& t2, const WalkKind& kind,
          const RsprGraph* g = nullptr);

// Curvature of the p-lazy variant of the walk; p = 1 recovers kappa.
Rat kappa_lazy(const Tree& t1, const Tree& t2, const Rat& p, const WalkKind& kind,
               const RsprGraph* g = nullptr);

// Asymptotic curvature lim_{p->0} kappa_p/p, computed exactly: the ratio is
// evaluated at p = 1/8, 1/16, ... until two consecutive values agree (the
// ratio is constant for small p). Failure to stabilize within ten halvings
// signals a solver bug and throws. p_used reports the stabilizing p.
Rat ric(const Tree& t1, const Tree& t2, const WalkKind& kind,
        const RsprGraph* g = nullptr, Rat* p_used = nullptr);

struct CurvatureRecord {
  std::string class_key;
  std::string rep_newick_1;
  std::string rep_newick_2;
  int distance = 0;
  long deg1 = 0;
  long deg2 = 0;
  Rat kappa;
  Rat kappa_mh;
  Rat ric;
  Rat ric_mh;
  Rat p_used;  // finer of the two stabilizing laziness values
  Int class_size;
};

CurvatureRecord compute_record(const RsprGraph& g, const PairClass& pc, int distance);

// Records for every class of the table at distance >= 1, in table order,
// computed in parallel. threads <= 0 selects the hardware width.
std::vector<CurvatureRecord> compute_records(const RsprGraph& g, const ClassTable& table,
                                             int threads = 0);

// Curvature bound verification over a set of computed records.
struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // failure details, empty when passing
};

struct BoundSuiteReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// exhaustive: the records cover every class of the graph (then the maximum
// curvature location is pinned to diameter-1 exactly; otherwise it may sit
// at the diameter as well, and the sign check applies only to the records).
BoundSuiteReport bound_suite(const RsprGraph& g,
                             const std::vector<CurvatureRecord>& records,
                             bool exhaustive);

// A ladder on n leaves, and the same ladder with the subtree holding its
// lowest k leaves pruned and regrafted on the root edge (one move apart).
std::pair<Tree, Tree> ladder_root_move_pair(int n, int k);

// The adjacent pair driving the negative-curvature construction: a ladder
// with its lowest floor(n/2) leaves moved as a unit to the root edge.
// Curvature is negative for all n >= 7.
std::pair<Tree, Tree> negative_witness_pair(int n);

}  // namespace rspr
