#include "rspr/analysis.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rspr/parallel.hpp"
#include "rspr/rng.hpp"
#include "rspr/spr.hpp"

namespace rspr {

Rat mean_access_time(const AccessHistogram& h) {
  Int total = 0, weighted = 0;
  for (const auto& [step, count] : h.counts) {
    total += count;
    weighted += Int(step) * count;
  }
  if (total == 0)
    throw std::invalid_argument("mean_access_time: every replicate was capped");
  return Rat(weighted, total);
}

long delta1(const AccessHistogram& h) {
  if (h.counts.empty())
    throw std::invalid_argument("delta1: empty histogram");
  auto count_at = [&](long t) {
    auto it = h.counts.find(t);
    return it == h.counts.end() ? 0L : it->second;
  };
  const long last = h.counts.rbegin()->first;
  for (long t = 1; t + 1 < h.cap && t <= last; ++t)
    if (count_at(t + 1) > 0) return count_at(t) - count_at(t + 1);
  throw std::invalid_argument("delta1: no consecutive nonzero successor below cap");
}

std::vector<ClassStats> run_access_experiment(const RsprGraph& g, const ClassTable& table,
                                              const WalkKind& kind, long replicates,
                                              long cap, std::uint64_t seed, int threads) {
  if (replicates < 1) throw std::invalid_argument("run_access_experiment: no replicates");
  if (cap < 1) throw std::invalid_argument("run_access_experiment: cap must be positive");

  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(table.classes.size()); ++i)
    if (table.distances[i] >= 1) keep.push_back(i);

  const GraphWalker walker(g, kind);
  WalkKind kappa_kind = kind;
  kappa_kind.laziness = 1;

  std::vector<ClassStats> stats(keep.size());
  parallel_for(keep.size(), threads, [&](std::size_t slot) {
    const PairClass& pc = table.classes[keep[slot]];
    const int start = g.find(pc.rep_newick_1);
    const int target = g.find(pc.rep_newick_2);
    if (start < 0 || target < 0)
      throw std::invalid_argument("run_access_experiment: class representative missing from graph");

    ClassStats& cs = stats[slot];
    cs.class_key = pc.canonical_key;
    cs.distance = table.distances[keep[slot]];
    const Tree t1 = parse_newick(pc.rep_newick_1);
    const Tree t2 = parse_newick(pc.rep_newick_2);
    cs.deg1 = degree(t1);
    cs.deg2 = degree(t2);
    cs.kappa = kappa(t1, t2, kappa_kind, &g);

    cs.histogram.key = pc.canonical_key;
    cs.histogram.cap = cap;
    cs.histogram.replicates = replicates;
    Rng rng = derive_rng(seed, pc.canonical_key, 0);
    for (long rep = 0; rep < replicates; ++rep) {
      const auto steps = walker.access_time(start, target, rng, cap);
      if (steps)
        ++cs.histogram.counts[*steps];
      else
        ++cs.histogram.capped;
    }
    cs.mat = mean_access_time(cs.histogram);
    cs.delta1 = delta1(cs.histogram);
  });
  return stats;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void write_comments(std::ofstream& out, const std::vector<std::string>& comments) {
  for (const std::string& line : comments) out << "# " << line << "\n";
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void write_curvature_csv(const std::string& path,
                         const std::vector<CurvatureRecord>& records,
                         const std::vector<std::string>& comments) {
  std::ofstream out = open_out(path);
  write_comments(out, comments);
  out << "class_key,representative_newick_1,representative_newick_2,distance,"
         "deg1,deg2,kappa_num,kappa_den,kappa_mh_num,kappa_mh_den,"
         "ric_num,ric_den,class_size\n";
  for (const CurvatureRecord& r : records) {
    out << csv_quote(r.class_key) << ',' << csv_quote(r.rep_newick_1) << ','
        << csv_quote(r.rep_newick_2) << ',' << r.distance << ',' << r.deg1 << ','
        << r.deg2 << ',' << rat_num(r.kappa) << ',' << rat_den(r.kappa) << ','
        << rat_num(r.kappa_mh) << ',' << rat_den(r.kappa_mh) << ','
        << rat_num(r.ric) << ',' << rat_den(r.ric) << ',' << r.class_size << "\n";
  }
  finish(out, path);
}

void write_stats_csv(const std::string& path, const std::vector<ClassStats>& stats,
                     const std::vector<std::string>& comments) {
  std::ofstream out = open_out(path);
  write_comments(out, comments);
  out << "class_key,distance,deg1,deg2,kappa_num,kappa_den,mat,delta1,"
         "replicates,capped_fraction\n";
  for (const ClassStats& s : stats) {
    const Rat capped_fraction = make_rat(s.histogram.capped, s.histogram.replicates);
    out << csv_quote(s.class_key) << ',' << s.distance << ',' << s.deg1 << ','
        << s.deg2 << ',' << rat_num(s.kappa) << ',' << rat_den(s.kappa) << ','
        << rat_str(s.mat) << ',' << s.delta1 << ',' << s.histogram.replicates << ','
        << rat_str(capped_fraction) << "\n";
  }
  finish(out, path);
}

void write_histogram_csv(const std::string& path, const std::vector<ClassStats>& stats,
                         const std::vector<std::string>& comments) {
  std::ofstream out = open_out(path);
  write_comments(out, comments);
  out << "class_key,distance,deg1,deg2,step,count,replicates,capped\n";
  for (const ClassStats& s : stats)
    for (const auto& [step, count] : s.histogram.counts)
      out << csv_quote(s.class_key) << ',' << s.distance << ',' << s.deg1 << ','
          << s.deg2 << ',' << step << ',' << count << ','
          << s.histogram.replicates << ',' << s.histogram.capped << "\n";
  finish(out, path);
}

void write_class_csv(const std::string& path, const ClassTable& table,
                     const std::vector<std::string>& comments) {
  std::ofstream out = open_out(path);
  write_comments(out, comments);
  out << "canonical_key,rep_newick_1,rep_newick_2,distance,class_size\n";
  for (std::size_t i = 0; i < table.classes.size(); ++i) {
    const PairClass& pc = table.classes[i];
    out << csv_quote(pc.canonical_key) << ',' << csv_quote(pc.rep_newick_1) << ','
        << csv_quote(pc.rep_newick_2) << ',' << table.distances[i] << ','
        << pc.class_size << "\n";
  }
  finish(out, path);
}

void write_edge_list(const std::string& edges_path, const std::string& vertices_path,
                     const RsprGraph& g, const std::vector<std::string>& comments) {
  {
    std::ofstream out = open_out(edges_path);
    write_comments(out, comments);
    out << g.n << ' ' << g.vertices.size() << ' ' << g.edge_count() << "\n";
    for (int i = 0; i < static_cast<int>(g.adj.size()); ++i)
      for (int j : g.adj[i])
        if (i < j) out << i << ' ' << j << "\n";
    finish(out, edges_path);
  }
  {
    std::ofstream out = open_out(vertices_path);
    write_comments(out, comments);
    for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i)
      out << i << ' ' << g.vertices[i] << "\n";
    finish(out, vertices_path);
  }
}

void write_walk_csv(const std::string& path,
                    const std::vector<std::pair<std::string, long>>& counts,
                    const std::vector<std::string>& comments) {
  std::ofstream out = open_out(path);
  write_comments(out, comments);
  out << "tree,count\n";
  for (const auto& [key, count] : counts)
    out << csv_quote(key) << ',' << count << "\n";
  finish(out, path);
}

std::vector<std::string> emit_report(const std::string& dir,
                                     const std::vector<CurvatureRecord>& records,
                                     const std::vector<ClassStats>& stats,
                                     const std::string& format,
                                     const std::vector<std::string>& comments) {
  std::vector<std::string> written;
  if (format == "csv") {
    const std::string curvature_path = dir + "/curvature.csv";
    const std::string stats_path = dir + "/stats.csv";
    write_curvature_csv(curvature_path, records, comments);
    write_stats_csv(stats_path, stats, comments);
    written = {curvature_path, stats_path};
  } else if (format == "json") {
    const std::string path = dir + "/report.json";
    std::ofstream out = open_out(path);
    out << "{\n  \"records\": [";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const CurvatureRecord& r = records[i];
      out << (i ? ",\n    " : "\n    ") << "{\"class_key\": \""
          << json_escape(r.class_key) << "\", \"distance\": " << r.distance
          << ", \"deg1\": " << r.deg1 << ", \"deg2\": " << r.deg2
          << ", \"kappa\": \"" << rat_str(r.kappa) << "\", \"kappa_mh\": \""
          << rat_str(r.kappa_mh) << "\", \"ric\": \"" << rat_str(r.ric)
          << "\", \"ric_mh\": \"" << rat_str(r.ric_mh) << "\", \"p_used\": \""
          << rat_str(r.p_used) << "\", \"class_size\": \"" << r.class_size
          << "\"}";
    }
    out << "\n  ],\n  \"stats\": [";
    for (std::size_t i = 0; i < stats.size(); ++i) {
      const ClassStats& s = stats[i];
      out << (i ? ",\n    " : "\n    ") << "{\"class_key\": \""
          << json_escape(s.class_key) << "\", \"distance\": " << s.distance
          << ", \"deg1\": " << s.deg1 << ", \"deg2\": " << s.deg2
          << ", \"kappa\": \"" << rat_str(s.kappa) << "\", \"mat\": \""
          << rat_str(s.mat) << "\", \"delta1\": " << s.delta1
          << ", \"replicates\": " << s.histogram.replicates
          << ", \"capped\": " << s.histogram.capped << "}";
    }
    out << "\n  ]\n}\n";
    finish(out, path);
    written = {path};
  } else {
    throw std::invalid_argument("emit_report: format must be csv or json");
  }
  return written;
}

}  // namespace rspr
