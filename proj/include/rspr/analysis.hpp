#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rspr/curvature.hpp"
#include "rspr/graph.hpp"
#include "rspr/rational.hpp"
#include "rspr/tanglegram.hpp"
#include "rspr/walks.hpp"

namespace rspr {

// Per-class access-time summary. kappa is the coarse curvature of the
// simulated walk family (laziness 1) between the class representatives.
struct ClassStats {
  std::string class_key;
  int distance = 0;
  long deg1 = 0;
  long deg2 = 0;
  Rat kappa;
  Rat mat;         // mean access time over uncapped replicates
  long delta1 = 0;
  AccessHistogram histogram;
};

// Sum step*count / sum count over uncapped runs. Throws when every run
// was capped.
Rat mean_access_time(const AccessHistogram& h);

// Scans bin pairs (t, t+1) upward from t = 1 and returns
// count(t) - count(t+1) at the first t whose successor bin is nonzero and
// strictly below the cap. Throws when no such pair exists.
long delta1(const AccessHistogram& h);

// Runs `replicates` access-time replicates from rep1 to rep2 for every class
// of the table at distance >= 1. Each class draws from an RNG substream
// derived from (seed, class_key), making results independent of thread
// scheduling. Output is in table order (sorted by class key).
std::vector<ClassStats> run_access_experiment(const RsprGraph& g, const ClassTable& table,
                                              const WalkKind& kind, long replicates,
                                              long cap, std::uint64_t seed,
                                              int threads = 0);

// CSV fields containing commas or quotes are quoted with doubled inner
// quotes; every writer prepends the given '#' comment lines verbatim.
std::string csv_quote(const std::string& field);

void write_curvature_csv(const std::string& path,
                         const std::vector<CurvatureRecord>& records,
                         const std::vector<std::string>& comments);

void write_stats_csv(const std::string& path, const std::vector<ClassStats>& stats,
                     const std::vector<std::string>& comments);

void write_histogram_csv(const std::string& path, const std::vector<ClassStats>& stats,
                         const std::vector<std::string>& comments);

void write_class_csv(const std::string& path, const ClassTable& table,
                     const std::vector<std::string>& comments);

// Header "n m_vertices m_edges", then each undirected edge once as "i j"
// with i < j; the sidecar maps each index to its canonical newick.
void write_edge_list(const std::string& edges_path, const std::string& vertices_path,
                     const RsprGraph& g, const std::vector<std::string>& comments);

void write_walk_csv(const std::string& path,
                    const std::vector<std::pair<std::string, long>>& counts,
                    const std::vector<std::string>& comments);

// Writes curvature.csv and stats.csv (format "csv") or report.json
// (format "json") under dir; returns the paths written. Output is byte
// stable for identical inputs.
std::vector<std::string> emit_report(const std::string& dir,
                                     const std::vector<CurvatureRecord>& records,
                                     const std::vector<ClassStats>& stats,
                                     const std::string& format,
                                     const std::vector<std::string>& comments);

}  // namespace rspr
