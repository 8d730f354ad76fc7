#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "stc/community.hpp"
#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/greedy.hpp"
#include "stc/labeling.hpp"
#include "stc/wedges.hpp"

namespace stc {

struct ExactOptions {
  /// Refuse instances with more edges than this; the search is exponential.
  std::size_t cap_m = 22;
  /// Count distinct optimal strong sets. Disabling lets the search stop at
  /// the first provable optimum and prune ties, which is much faster.
  bool count_optima = true;
  /// Counting stops (and reports saturation) at this many ties.
  std::uint64_t optima_cap = std::uint64_t{1} << 16;
};

struct ExactSolution {
  Labeling labeling;
  std::uint64_t violations = 0;
  std::uint64_t satisfied = 0;
  std::uint64_t wedge_count = 0;
  std::uint64_t optima_count = 0;  // 0 when counting is disabled
  bool optima_saturated = false;
  std::size_t forced_strong = 0;  // edges fixed strong by the bridge rule
};

namespace detail {

/// Branch-and-bound over strong/weak assignments. Edges that bridge some
/// community's full induced subgraph are fixed strong up front. The
/// partial violation count (wedges with both edges already strong) is a
/// monotone lower bound; weak assignments are checked against an
/// optimistic connectivity test that treats undecided edges as strong,
/// which is exact by the time a leaf is reached.
class ExactSearch {
 public:
  enum State : char { kUndecided = 0, kStrong = 1, kWeak = 2 };

  ExactSearch(const Graph& g, const CommunitySet& cs, const ExactOptions& options)
      : g_(g), cs_(cs), options_(options), incidence_(CommunityEdges::build(g, cs)) {
    const WedgeIndex index = WedgeIndex::build(g);
    wedge_total_ = index.size();
    partners_.resize(g.edge_count());
    for (const Wedge& w : index.wedges()) {
      partners_[w.edge_a].push_back(w.edge_b);
      partners_[w.edge_b].push_back(w.edge_a);
    }

    parts_.resize(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      Part& part = parts_[i];
      part.members = cs.community(i);
      part.adj.resize(part.members.size());
      for (EdgeId e : incidence_.edges_of[i]) {
        const Edge& ed = g.edge(e);
        const auto lu = part.local(ed.u);
        const auto lv = part.local(ed.v);
        part.adj[lu].push_back({lv, e});
        part.adj[lv].push_back({lu, e});
      }
    }

    state_.assign(g.edge_count(), kUndecided);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (EdgeId e : induced_bridges(g, cs.community(i))) {
        if (state_[e] == kUndecided) {
          state_[e] = kStrong;
          ++forced_strong_;
        }
      }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (state_[e] != kStrong) continue;
      for (EdgeId f : partners_[e]) {
        if (f < e && state_[f] == kStrong) ++partial_;
      }
    }

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (state_[e] == kUndecided) order_.push_back(e);
    }
    std::sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) {
      if (partners_[a].size() != partners_[b].size()) {
        return partners_[a].size() > partners_[b].size();
      }
      return a < b;
    });
  }

  void run() {
    if (!options_.count_optima) {
      const GreedyResult seed = greedy_labeling(g_, cs_);
      best_ = seed.violations;
      incumbent_ = seed.labeling.strong_edges();
      have_incumbent_ = true;
      if (best_ == 0) return;
    }
    dfs(0);
  }

  std::uint64_t wedge_total() const { return wedge_total_; }
  std::uint64_t best() const { return best_; }
  const std::vector<EdgeId>& incumbent() const { return incumbent_; }
  std::uint64_t optima_count() const { return count_; }
  bool saturated() const { return saturated_; }
  std::size_t forced_strong() const { return forced_strong_; }

 private:
  struct Part {
    std::vector<VertexId> members;  // sorted
    std::vector<std::vector<std::pair<std::uint32_t, EdgeId>>> adj;
    mutable std::vector<std::uint32_t> queue;
    mutable std::vector<char> seen;

    std::uint32_t local(VertexId v) const {
      return static_cast<std::uint32_t>(
          std::lower_bound(members.begin(), members.end(), v) - members.begin());
    }
  };

  bool part_connected(const Part& part) const {
    if (part.members.size() <= 1) return true;
    part.seen.assign(part.members.size(), 0);
    part.queue.clear();
    part.queue.push_back(0);
    part.seen[0] = 1;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < part.queue.size(); ++head) {
      for (const auto& [to, via] : part.adj[part.queue[head]]) {
        if (state_[via] == kWeak || part.seen[to]) continue;
        part.seen[to] = 1;
        ++reached;
        part.queue.push_back(to);
      }
    }
    return reached == part.members.size();
  }

  void record_leaf() {
    if (!have_incumbent_ || partial_ < best_) {
      best_ = partial_;
      have_incumbent_ = true;
      incumbent_ = snapshot();
      count_ = 1;
      saturated_ = false;
      if (!options_.count_optima && best_ == 0) stop_ = true;
      return;
    }
    if (partial_ == best_ && options_.count_optima && !saturated_) {
      ++count_;
      if (count_ >= options_.optima_cap) saturated_ = true;
      std::vector<EdgeId> candidate = snapshot();
      if (std::lexicographical_compare(candidate.begin(), candidate.end(),
                                       incumbent_.begin(), incumbent_.end())) {
        incumbent_ = std::move(candidate);
      }
    }
  }

  std::vector<EdgeId> snapshot() const {
    std::vector<EdgeId> strong;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      if (state_[e] == kStrong) strong.push_back(e);
    }
    return strong;
  }

  bool pruned() const {
    if (!have_incumbent_) return false;
    if (options_.count_optima && !saturated_) return partial_ > best_;
    return partial_ >= best_;
  }

  void dfs(std::size_t pos) {
    if (stop_ || pruned()) return;
    if (pos == order_.size()) {
      record_leaf();
      return;
    }
    const EdgeId e = order_[pos];
    std::uint64_t delta = 0;
    bool open_partner = false;
    for (EdgeId f : partners_[e]) {
      delta += state_[f] == kStrong;
      open_partner |= state_[f] == kUndecided;
    }
    // When strong is free and no partner is still open, strong dominates
    // weak: it can never cost violations and only helps connectivity.
    // Valid only when optima are not being counted.
    const bool strong_only = !options_.count_optima && delta == 0 && !open_partner;
    if (delta == 0) {
      descend_strong(pos, e, delta);
      if (!strong_only) descend_weak(pos, e);
    } else {
      descend_weak(pos, e);
      descend_strong(pos, e, delta);
    }
  }

  void descend_strong(std::size_t pos, EdgeId e, std::uint64_t delta) {
    state_[e] = kStrong;
    partial_ += delta;
    dfs(pos + 1);
    partial_ -= delta;
    state_[e] = kUndecided;
  }

  void descend_weak(std::size_t pos, EdgeId e) {
    state_[e] = kWeak;
    bool feasible = true;
    for (std::uint32_t i : incidence_.communities_of[e]) {
      if (!part_connected(parts_[i])) {
        feasible = false;
        break;
      }
    }
    if (feasible) dfs(pos + 1);
    state_[e] = kUndecided;
  }

  const Graph& g_;
  const CommunitySet& cs_;
  ExactOptions options_;
  CommunityEdges incidence_;
  std::vector<std::vector<EdgeId>> partners_;
  std::vector<Part> parts_;
  std::vector<char> state_;
  std::vector<EdgeId> order_;
  std::uint64_t wedge_total_ = 0;
  std::uint64_t partial_ = 0;
  std::uint64_t best_ = std::numeric_limits<std::uint64_t>::max();
  bool have_incumbent_ = false;
  bool stop_ = false;
  std::vector<EdgeId> incumbent_;
  std::uint64_t count_ = 0;
  bool saturated_ = false;
  std::size_t forced_strong_ = 0;
};

}  // namespace detail

/// Globally optimal labeling by exhaustive search with bridge forcing and
/// branch-and-bound pruning. The reported labeling is deterministic: with
/// counting enabled it is the lexicographically smallest optimal strong
/// set seen before saturation; without counting it is the first optimum
/// the search proves.
inline ExactSolution exact_solve(const Graph& g, const CommunitySet& communities,
                                 const ExactOptions& options = {}) {
  if (g.edge_count() > options.cap_m) {
    throw SizeCapError("exact solver capped at " + std::to_string(options.cap_m) +
                       " edges, got " + std::to_string(g.edge_count()));
  }
  detail::ExactSearch search(g, communities, options);
  search.run();
  ExactSolution out;
  out.wedge_count = search.wedge_total();
  out.violations = search.best();
  out.satisfied = out.wedge_count - out.violations;
  out.labeling = Labeling::from_strong_set(g.edge_count(), search.incumbent());
  out.optima_count = options.count_optima ? search.optima_count() : 0;
  out.optima_saturated = options.count_optima && search.saturated();
  out.forced_strong = search.forced_strong();
  return out;
}

struct CheckReport {
  bool pass = true;
  std::uint64_t trials = 0;
  std::string detail;  // first counterexample, empty when pass
};

/// Samples nested strong sets S' <= S and an edge e outside S, and checks
/// that e's marginal violation increase under S' never exceeds the one
/// under S (violations are supermodular in the strong set).
inline CheckReport check_supermodularity(const Graph& g, std::uint64_t trials,
                                         std::uint64_t seed) {
  CheckReport report;
  if (g.edge_count() == 0) return report;
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Labeling big = Labeling::all_weak(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng.chance(1, 2)) big.set_strong(e, true);
    }
    const EdgeId extra = static_cast<EdgeId>(rng.below(g.edge_count()));
    big.set_strong(extra, false);
    Labeling small = big;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (small.is_strong(e) && rng.chance(1, 2)) small.set_strong(e, false);
    }

    const std::uint64_t small_before = violation_count(g, small);
    const std::uint64_t big_before = violation_count(g, big);
    small.set_strong(extra, true);
    big.set_strong(extra, true);
    const std::uint64_t small_gain = violation_count(g, small) - small_before;
    const std::uint64_t big_gain = violation_count(g, big) - big_before;
    ++report.trials;
    if (small_gain > big_gain) {
      report.pass = false;
      report.detail = "trial " + std::to_string(t) + ": edge " + std::to_string(extra) +
                      " gains " + std::to_string(small_gain) + " under the subset but " +
                      std::to_string(big_gain) + " under the superset";
      return report;
    }
  }
  return report;
}

/// Samples nested strong sets and checks viol(S') <= viol(S).
inline CheckReport check_monotonicity(const Graph& g, std::uint64_t trials,
                                      std::uint64_t seed) {
  CheckReport report;
  if (g.edge_count() == 0) return report;
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Labeling big = Labeling::all_weak(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng.chance(1, 2)) big.set_strong(e, true);
    }
    Labeling small = big;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (small.is_strong(e) && rng.chance(1, 2)) small.set_strong(e, false);
    }
    ++report.trials;
    if (violation_count(g, small) > violation_count(g, big)) {
      report.pass = false;
      report.detail = "trial " + std::to_string(t) + ": removing strong edges raised viol";
      return report;
    }
  }
  return report;
}

namespace detail {

inline std::vector<EdgeId> community_edge_list(const Graph& g,
                                               const std::vector<VertexId>& members) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : members) in[v] = 1;
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).u] && in[g.edge(e).v]) edges.push_back(e);
  }
  return edges;
}

/// Independence bitmap of the deletable-set family: bit w of the returned
/// vector says whether removing exactly the edges selected by mask w
/// keeps the members connected.
inline std::vector<char> deletable_family(const Graph& g, const std::vector<VertexId>& members,
                                          const std::vector<EdgeId>& edges) {
  std::vector<std::uint32_t> pos(g.edge_count(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) pos[edges[i]] = static_cast<std::uint32_t>(i);
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : members) in[v] = 1;
  std::vector<char> independent(std::size_t{1} << edges.size(), 0);
  for (std::uint32_t mask = 0; mask < independent.size(); ++mask) {
    const auto ok = [&](EdgeId e) {
      if (!in[g.edge(e).u] || !in[g.edge(e).v]) return true;  // outside E(C)
      return ((mask >> pos[e]) & 1u) == 0;
    };
    independent[mask] =
        members.empty() || induced_components(g, members, ok) == 1;
  }
  return independent;
}

inline bool family_is_matroid(const std::vector<char>& indep, std::size_t ground,
                              std::string* detail) {
  const std::uint32_t all = static_cast<std::uint32_t>(indep.size());
  if (!indep[0]) {
    if (detail) *detail = "empty set is not independent";
    return false;
  }
  for (std::uint32_t mask = 0; mask < all; ++mask) {
    if (!indep[mask]) continue;
    for (std::size_t b = 0; b < ground; ++b) {
      if ((mask >> b) & 1u) {
        if (!indep[mask ^ (1u << b)]) {
          if (detail) {
            *detail = "downward closure fails at mask " + std::to_string(mask);
          }
          return false;
        }
      }
    }
  }
  for (std::uint32_t a = 0; a < all; ++a) {
    if (!indep[a]) continue;
    const int ca = std::popcount(a);
    for (std::uint32_t b = 0; b < all; ++b) {
      if (!indep[b] || std::popcount(b) <= ca) continue;
      bool extended = false;
      std::uint32_t candidates = b & ~a;
      while (candidates) {
        const std::uint32_t bit = candidates & (~candidates + 1);
        candidates ^= bit;
        if (indep[a | bit]) {
          extended = true;
          break;
        }
      }
      if (!extended) {
        if (detail) {
          *detail = "exchange fails for masks " + std::to_string(a) + " and " +
                    std::to_string(b);
        }
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Exhaustively verifies that the family of edge sets whose removal keeps
/// the community connected satisfies the matroid axioms (downward closure
/// and exchange). Capped at 9 community edges.
inline CheckReport check_matroid(const Graph& g, const std::vector<VertexId>& members) {
  std::vector<VertexId> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const std::vector<EdgeId> edges = detail::community_edge_list(g, sorted);
  if (edges.size() > 9) {
    throw SizeCapError("matroid check capped at 9 community edges, got " +
                       std::to_string(edges.size()));
  }
  if (!sorted.empty() &&
      induced_components(g, sorted, [](EdgeId) { return true; }) != 1) {
    throw FeasibilityError("matroid check requires a connected community", 0);
  }
  CheckReport report;
  report.trials = std::uint64_t{1} << edges.size();
  const auto family = detail::deletable_family(g, sorted, edges);
  report.pass = detail::family_is_matroid(family, edges.size(), &report.detail);
  return report;
}

/// For two edge-disjoint communities, verifies that the jointly deletable
/// sets are exactly the unions of per-community deletable sets and that
/// the joint family itself satisfies the matroid axioms (the direct-sum
/// property; intersections of arbitrary matroids would not be matroids).
inline CheckReport check_direct_sum(const Graph& g, const std::vector<VertexId>& members_a,
                                    const std::vector<VertexId>& members_b) {
  std::vector<VertexId> a = members_a;
  std::vector<VertexId> b = members_b;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto edges_a = detail::community_edge_list(g, a);
  const auto edges_b = detail::community_edge_list(g, b);
  for (EdgeId e : edges_a) {
    if (std::binary_search(edges_b.begin(), edges_b.end(), e)) {
      throw ContractError("direct-sum check requires edge-disjoint communities");
    }
  }
  if (edges_a.size() + edges_b.size() > 10) {
    throw SizeCapError("direct-sum check capped at 10 combined edges");
  }

  const auto family_a = detail::deletable_family(g, a, edges_a);
  const auto family_b = detail::deletable_family(g, b, edges_b);

  std::vector<EdgeId> ground = edges_a;
  ground.insert(ground.end(), edges_b.begin(), edges_b.end());
  const std::size_t na = edges_a.size();
  std::vector<char> joint(std::size_t{1} << ground.size(), 0);
  CheckReport report;
  report.trials = joint.size();
  for (std::uint32_t mask = 0; mask < joint.size(); ++mask) {
    const std::uint32_t ma = mask & ((1u << na) - 1u);
    const std::uint32_t mb = mask >> na;
    joint[mask] = family_a[ma] && family_b[mb];

    // Definitional cross-check against a single connectivity recount.
    std::vector<char> weak(g.edge_count(), 0);
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if ((mask >> i) & 1u) weak[ground[i]] = 1;
    }
    const auto ok = [&](EdgeId e) { return !weak[e]; };
    const bool direct = (a.empty() || induced_components(g, a, ok) == 1) &&
                        (b.empty() || induced_components(g, b, ok) == 1);
    if (direct != static_cast<bool>(joint[mask])) {
      report.pass = false;
      report.detail = "joint family disagrees with per-community split at mask " +
                      std::to_string(mask);
      return report;
    }
  }
  report.pass = detail::family_is_matroid(joint, ground.size(), &report.detail);
  return report;
}

}  // namespace stc
