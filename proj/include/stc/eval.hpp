#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "stc/community.hpp"
#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"
#include "stc/wedges.hpp"

namespace stc {

struct LabelStats {
  double violated_fraction = 0.0;  // violations / wedge_count (0 when no wedges)
  double strong_fraction = 0.0;    // strong / edges (0 when edgeless)
  double mean_components = 1.0;    // mean strong components per community
  std::uint64_t violations = 0;
  std::uint64_t wedge_count = 0;
  std::size_t strong_edges = 0;
  std::size_t edges = 0;
};

/// Labeling quality summary. The labeling need not be feasible:
/// mean_components measures exactly how fragmented communities are.
inline LabelStats label_stats(const Graph& g, const CommunitySet& communities,
                              const Labeling& labeling) {
  LabelStats stats;
  stats.violations = violation_count(g, labeling);
  stats.wedge_count = wedge_count(g);
  stats.strong_edges = labeling.strong_count();
  stats.edges = g.edge_count();
  stats.violated_fraction =
      stats.wedge_count == 0
          ? 0.0
          : static_cast<double>(stats.violations) / static_cast<double>(stats.wedge_count);
  stats.strong_fraction =
      stats.edges == 0 ? 0.0
                       : static_cast<double>(stats.strong_edges) /
                             static_cast<double>(stats.edges);
  if (!communities.empty()) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < communities.size(); ++i) {
      total += induced_strong_components(g, labeling, communities.community(i));
    }
    stats.mean_components =
        static_cast<double>(total) / static_cast<double>(communities.size());
  }
  return stats;
}

struct CommunitySplit {
  CommunitySet train;
  CommunitySet test;
};

/// Seeded shuffle sending floor(k/2) communities to the test side and the
/// rest to train. Relative input order is preserved within each side.
inline CommunitySplit split_communities(const CommunitySet& communities, const Graph& g,
                                        std::uint64_t seed) {
  if (communities.size() < 2) {
    throw ContractError("splitting requires at least 2 communities");
  }
  std::vector<std::size_t> order(communities.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  const std::size_t test_count = communities.size() / 2;
  std::vector<std::size_t> test_idx(order.begin(), order.begin() + test_count);
  std::vector<std::size_t> train_idx(order.begin() + test_count, order.end());
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());

  auto gather = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<VertexId>> sets;
    sets.reserve(idx.size());
    for (std::size_t i : idx) sets.push_back(communities.community(i));
    return CommunitySet::from_sets(std::move(sets), g);
  };
  return {gather(train_idx), gather(test_idx)};
}

struct PRReport {
  std::size_t weak_edges = 0;
  std::size_t strong_edges = 0;
  std::size_t inter_edges = 0;  // endpoints in different test communities, none shared
  std::size_t intra_edges = 0;  // both endpoints inside a single test community
  std::size_t weak_inter = 0;
  std::size_t strong_intra = 0;
  bool restricted = false;
  // Empty when the denominator is zero: undefined, deliberately not 0.
  std::optional<double> precision_weak;
  std::optional<double> recall_weak;
  std::optional<double> precision_strong;
  std::optional<double> recall_strong;
};

/// Precision/recall of weak edges against inter-community edges and of
/// strong edges against intra-community edges, relative to the test
/// communities. With restrict_denominators the weak/strong precision
/// denominators drop edges touched by no test community; by default such
/// edges still count, mirroring division by plain |W| and |S|.
inline PRReport pr_report(const Graph& g, const CommunitySet& test, const Labeling& labeling,
                          bool restrict_denominators = false) {
  std::vector<std::vector<std::uint32_t>> member_of(g.vertex_count());
  for (std::size_t i = 0; i < test.size(); ++i) {
    for (VertexId v : test.community(i)) {
      member_of[v].push_back(static_cast<std::uint32_t>(i));
    }
  }
  auto share_community = [&](VertexId u, VertexId v) {
    const auto& a = member_of[u];
    const auto& b = member_of[v];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return true;
      a[i] < b[j] ? ++i : ++j;
    }
    return false;
  };

  PRReport report;
  report.restricted = restrict_denominators;
  std::size_t weak_covered = 0, strong_covered = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const bool strong = labeling.is_strong(e);
    strong ? ++report.strong_edges : ++report.weak_edges;
    const bool intra = share_community(ed.u, ed.v);
    const bool inter =
        !intra && !member_of[ed.u].empty() && !member_of[ed.v].empty();
    if (intra) {
      ++report.intra_edges;
      if (strong) ++report.strong_intra;
    } else if (inter) {
      ++report.inter_edges;
      if (!strong) ++report.weak_inter;
    }
    if (intra || inter) {
      strong ? ++strong_covered : ++weak_covered;
    }
  }

  const std::size_t weak_den = restrict_denominators ? weak_covered : report.weak_edges;
  const std::size_t strong_den =
      restrict_denominators ? strong_covered : report.strong_edges;
  auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  report.precision_weak = ratio(report.weak_inter, weak_den);
  report.recall_weak = ratio(report.weak_inter, report.inter_edges);
  report.precision_strong = ratio(report.strong_intra, strong_den);
  report.recall_strong = ratio(report.strong_intra, report.intra_edges);
  return report;
}

inline std::string format_metric(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

inline std::string format_metric(const std::optional<double>& value) {
  return value ? format_metric(*value) : "undefined";
}

/// key=value lines, one metric per line, prefixed (e.g. "greedy.b=0.5").
inline std::string label_stats_kv(const std::string& prefix, const LabelStats& stats) {
  std::string out;
  out += prefix + "b=" + format_metric(stats.violated_fraction) + "\n";
  out += prefix + "s=" + format_metric(stats.strong_fraction) + "\n";
  out += prefix + "c=" + format_metric(stats.mean_components) + "\n";
  out += prefix + "violations=" + std::to_string(stats.violations) + "\n";
  out += prefix + "wedges=" + std::to_string(stats.wedge_count) + "\n";
  out += prefix + "strong=" + std::to_string(stats.strong_edges) + "\n";
  out += prefix + "edges=" + std::to_string(stats.edges) + "\n";
  return out;
}

inline std::string pr_report_kv(const std::string& prefix, const PRReport& report) {
  std::string out;
  out += prefix + "P_W=" + format_metric(report.precision_weak) + "\n";
  out += prefix + "R_W=" + format_metric(report.recall_weak) + "\n";
  out += prefix + "P_S=" + format_metric(report.precision_strong) + "\n";
  out += prefix + "R_S=" + format_metric(report.recall_strong) + "\n";
  out += prefix + "weak=" + std::to_string(report.weak_edges) + "\n";
  out += prefix + "strong=" + std::to_string(report.strong_edges) + "\n";
  out += prefix + "inter=" + std::to_string(report.inter_edges) + "\n";
  out += prefix + "intra=" + std::to_string(report.intra_edges) + "\n";
  return out;
}

}  // namespace stc
