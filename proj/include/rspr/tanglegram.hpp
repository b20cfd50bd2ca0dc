#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rspr/graph.hpp"
#include "rspr/rational.hpp"
#include "rspr/tree.hpp"

namespace rspr {

// Equivalence class of an ordered tree pair under simultaneous leaf
// relabeling.  Curvature, distance and access-time behaviour are invariant
// across the class, so all expensive work is done once per class.
struct PairClass {
  // "<newick1>|<newick2>" of the canonical representative pair: the
  // lexicographically least (newick(s(t1)), newick(s(t2))) over all label
  // permutations s.
  std::string canonical_key;
  std::string rep_newick_1;
  std::string rep_newick_2;
  // witness_perm[l-1] is the canonical label for original label l; applying
  // it to the input pair yields the representative pair.
  std::vector<int> witness_perm;
  // Orbit size under all n! simultaneous relabelings; divides n!.
  Int class_size;
};

// Memo of optimal labelings per tree.  For each distinct tree it stores the
// least newick reachable by relabeling together with every permutation that
// attains it (a coset of the tree's automorphism group, at most 2^(n/2)
// elements).  canonical_pair then only scans that coset for the second tree
// instead of all n! permutations.
class LabelingCache {
 public:
  struct Entry {
    std::string min_key;
    std::vector<std::vector<int>> perms;  // lexicographically sorted
  };

  const Entry& lookup(const Tree& t);

 private:
  std::unordered_map<std::string, Entry> cache_;
};

PairClass canonical_pair(const Tree& t1, const Tree& t2, LabelingCache& cache);
PairClass canonical_pair(const Tree& t1, const Tree& t2);

// Partition of an explicit pair sequence.  members counts how many input
// pairs fell into the class; the sum over the map equals the input size.
struct ClassGroup {
  PairClass rep;
  long members = 0;
};

std::map<std::string, ClassGroup> enumerate_classes(
    const std::vector<std::pair<Tree, Tree>>& pairs);

// Class tables driving the curvature and access-time pipelines.
enum class PairSelection { All, Adjacent, Sampled };

struct ClassTable {
  std::vector<PairClass> classes;  // sorted by canonical_key
  std::vector<int> distances;     // graph distance of each representative pair
};

// All: every class of ordered vertex pairs, including the diagonal (d = 0).
// Adjacent: every class of ordered pairs one move apart.
// Sampled: up to sample_count distinct classes of uniformly sampled vertex
// pairs at distance >= 2, deterministic for a fixed seed.
ClassTable select_classes(const RsprGraph& g, PairSelection sel,
                          std::uint64_t seed = 0, int sample_count = 0);

Int factorial(int n);

}  // namespace rspr
