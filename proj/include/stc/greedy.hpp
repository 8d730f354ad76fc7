#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <queue>
#include <vector>

#include "stc/community.hpp"
#include "stc/connectivity.hpp"
#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"
#include "stc/wedges.hpp"

namespace stc {

struct Demotion {
  EdgeId edge;
  std::uint64_t gain;  // violated-wedge count at decision time
  bool demoted;        // false = kept strong, connectivity refused
};

struct GreedyResult {
  Labeling labeling;
  std::uint64_t violations = 0;
  std::uint64_t satisfied = 0;    // wedge_count - violations
  std::uint64_t wedge_count = 0;  // total open triangles of the graph
  std::vector<Demotion> demotions;
  std::size_t blocked_count = 0;  // positive-gain demotions refused by connectivity
};

struct GreedyOptions {
  /// 0: ties among equal gains go to the lowest edge id. Nonzero:
  /// edge priority is a seeded deterministic shuffle instead.
  std::uint64_t tie_break_seed = 0;
  /// Also demote zero-gain edges when connectivity allows, matching the
  /// unconditional-argmax loop. Off by default: edges inducing no
  /// violations stay strong.
  bool demote_zero_gain = false;
  ConnectivityOracle::Backend backend = ConnectivityOracle::Backend::spanning_forest;
};

namespace detail {

inline std::vector<std::uint64_t> edge_priority_ranks(std::size_t edge_count,
                                                      std::uint64_t seed) {
  std::vector<std::uint64_t> rank(edge_count);
  for (std::size_t e = 0; e < edge_count; ++e) rank[e] = e;
  if (seed != 0) {
    std::vector<EdgeId> order(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e) order[e] = static_cast<EdgeId>(e);
    Rng rng(seed);
    rng.shuffle(order);
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;
  }
  return rank;
}

struct QueueEntry {
  std::uint64_t gain;
  std::uint64_t rank;
  EdgeId edge;
  bool operator<(const QueueEntry& o) const {
    if (gain != o.gain) return gain < o.gain;  // max-heap on gain
    return rank > o.rank;                      // then min rank
  }
};

}  // namespace detail

/// Greedy labeling: start with every edge strong, repeatedly take the
/// candidate edge removing the most violations and demote it to weak if
/// every community stays connected, otherwise keep it strong; each edge
/// is considered once. Gains only shrink as edges are demoted, so a
/// lazy binary heap re-validates popped entries instead of decreasing
/// keys. Zero-gain edges are left strong unless demote_zero_gain is set,
/// in which case the loop continues through them exactly like the
/// unconditional argmax.
inline GreedyResult greedy_labeling(const Graph& g, const CommunitySet& communities,
                                    const GreedyOptions& options = {}) {
  WedgeIndex index = WedgeIndex::build(g);
  ConnectivityOracle oracle(g, communities, Labeling::all_strong(g.edge_count()),
                            options.backend);

  const auto rank = detail::edge_priority_ranks(g.edge_count(), options.tie_break_seed);
  std::priority_queue<detail::QueueEntry> heap;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    heap.push({index.violated_count(e), rank[e], e});
  }

  GreedyResult result;
  result.wedge_count = index.size();
  std::vector<char> pending(g.edge_count(), 1);
  while (!heap.empty()) {
    const auto entry = heap.top();
    heap.pop();
    if (!pending[entry.edge]) continue;
    const std::uint64_t current = index.violated_count(entry.edge);
    assert(entry.gain >= current);
    if (entry.gain != current) {
      heap.push({current, entry.rank, entry.edge});
      continue;
    }
    if (current == 0 && !options.demote_zero_gain) break;
    pending[entry.edge] = 0;
    const bool feasible = oracle.is_deletion_feasible(entry.edge);
    if (feasible) {
      oracle.erase(entry.edge);
      const std::uint64_t gain = index.demote(entry.edge);
      assert(gain == current);
      (void)gain;
    } else if (current > 0 || options.demote_zero_gain) {
      ++result.blocked_count;
    }
    result.demotions.push_back({entry.edge, current, feasible});
  }

  result.labeling = index.labeling();
  result.violations = index.total_violations();
  result.satisfied = result.wedge_count - result.violations;
  return result;
}

/// Continues from a feasible labeling and demotes every remaining strong
/// edge whose removal keeps all communities connected, in descending
/// priority order. Violations can only go down. Deletions only tighten
/// connectivity, so a single sweep leaves an inclusion-minimal strong
/// set with respect to the connectivity constraints.
inline GreedyResult minimize_strong_post_pass(const Graph& g, const CommunitySet& communities,
                                              const GreedyResult& base,
                                              const GreedyOptions& options = {}) {
  WedgeIndex index = WedgeIndex::build(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!base.labeling.is_strong(e)) index.demote(e);
  }
  ConnectivityOracle oracle(g, communities, base.labeling, options.backend);

  const auto rank = detail::edge_priority_ranks(g.edge_count(), options.tie_break_seed);
  std::vector<EdgeId> order = base.labeling.strong_edges();
  std::sort(order.begin(), order.end(),
            [&](EdgeId a, EdgeId b) { return rank[a] > rank[b]; });

  GreedyResult result = base;
  for (EdgeId e : order) {
    if (!oracle.is_deletion_feasible(e)) continue;
    oracle.erase(e);
    const std::uint64_t gain = index.demote(e);
    result.demotions.push_back({e, gain, true});
  }
  result.labeling = index.labeling();
  result.violations = index.total_violations();
  result.satisfied = result.wedge_count - result.violations;
  return result;
}

/// Greedy-vs-optimum ratio report. The bound is 1/(k+1) in general and
/// 1/2 when there is at most one community or all communities are
/// pairwise edge-disjoint; the comparison is done in exact integer
/// arithmetic. opt_tri = 0 makes the bound vacuous and the ratio 1.
struct RatioReport {
  double ratio = 1.0;
  std::uint64_t bound_num = 1;
  std::uint64_t bound_den = 1;
  bool meets_bound = true;
  std::uint64_t greedy_satisfied = 0;
  std::uint64_t opt_satisfied = 0;
  std::size_t community_count = 0;
  bool edge_disjoint = false;
};

inline RatioReport approximation_certificate(const Graph& g, const CommunitySet& communities,
                                             const GreedyResult& result,
                                             std::uint64_t opt_satisfied) {
  RatioReport report;
  report.greedy_satisfied = result.satisfied;
  report.opt_satisfied = opt_satisfied;
  report.community_count = communities.size();
  report.edge_disjoint = CommunityEdges::build(g, communities).pairwise_edge_disjoint();
  report.bound_num = 1;
  report.bound_den = communities.size() + 1;
  if (communities.size() <= 1 || report.edge_disjoint) {
    report.bound_den = std::min<std::uint64_t>(report.bound_den, 2);
  }
  if (opt_satisfied == 0) {
    report.ratio = 1.0;
    report.meets_bound = true;
  } else {
    report.ratio = static_cast<double>(result.satisfied) / static_cast<double>(opt_satisfied);
    report.meets_bound =
        result.satisfied * report.bound_den >= opt_satisfied * report.bound_num;
  }
  return report;
}

}  // namespace stc
