#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "stc/community.hpp"
#include "stc/connectivity.hpp"
#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"
#include "stc/wedges.hpp"

namespace stc {

/// Derived graph whose nodes are the edges of G and whose links are the
/// open triangles: a labeling has zero violations exactly when its weak
/// set is a vertex cover of this graph.
struct WedgeGraph {
  std::size_t node_count = 0;                    // == G's edge count
  std::vector<std::pair<EdgeId, EdgeId>> links;  // (e, f) with e < f, sorted

  static WedgeGraph build(const Graph& g) {
    WedgeGraph wg;
    wg.node_count = g.edge_count();
    const WedgeIndex index = WedgeIndex::build(g);
    wg.links.reserve(index.wedges().size());
    for (const Wedge& w : index.wedges()) {
      wg.links.push_back({std::min(w.edge_a, w.edge_b), std::max(w.edge_a, w.edge_b)});
    }
    // Two edges share at most one endpoint, so each unordered pair maps
    // to at most one wedge and no deduplication is needed.
    std::sort(wg.links.begin(), wg.links.end());
    return wg;
  }

  std::size_t active_node_count() const {
    std::vector<char> seen(node_count, 0);
    std::size_t n = 0;
    for (const auto& [a, b] : links) {
      if (!seen[a]) seen[a] = 1, ++n;
      if (!seen[b]) seen[b] = 1, ++n;
    }
    return n;
  }
};

namespace detail {

/// Exact minimum vertex cover by branching: for an uncovered link, either
/// its max-degree endpoint joins the cover, or all of that endpoint's
/// uncovered neighbors do. A greedy matching both seeds the incumbent and
/// prunes as a lower bound.
class VertexCoverSearch {
 public:
  explicit VertexCoverSearch(const WedgeGraph& wg) : wg_(wg), incident_(wg.node_count) {
    for (std::uint32_t l = 0; l < wg_.links.size(); ++l) {
      incident_[wg_.links[l].first].push_back(l);
      incident_[wg_.links[l].second].push_back(l);
    }
  }

  std::vector<EdgeId> solve(std::vector<EdgeId> seed_cover) {
    best_size_ = seed_cover.size();
    best_ = std::move(seed_cover);
    in_cover_.assign(wg_.node_count, 0);
    chosen_.clear();
    branch();
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  bool link_covered(std::uint32_t l) const {
    return in_cover_[wg_.links[l].first] || in_cover_[wg_.links[l].second];
  }

  std::size_t matching_lower_bound() const {
    std::vector<char> used(wg_.node_count, 0);
    std::size_t size = 0;
    for (std::uint32_t l = 0; l < wg_.links.size(); ++l) {
      if (link_covered(l)) continue;
      const auto [a, b] = wg_.links[l];
      if (!used[a] && !used[b]) {
        used[a] = used[b] = 1;
        ++size;
      }
    }
    return size;
  }

  std::size_t uncovered_degree(EdgeId v) const {
    std::size_t d = 0;
    for (std::uint32_t l : incident_[v]) d += !link_covered(l);
    return d;
  }

  void take(EdgeId v) {
    in_cover_[v] = 1;
    chosen_.push_back(v);
  }
  void release(std::size_t mark) {
    while (chosen_.size() > mark) {
      in_cover_[chosen_.back()] = 0;
      chosen_.pop_back();
    }
  }

  void branch() {
    const std::size_t lower = matching_lower_bound();
    if (chosen_.size() + lower >= best_size_) return;
    if (lower == 0) {
      best_size_ = chosen_.size();
      best_ = chosen_;
      return;
    }
    EdgeId pivot = kNoEdge;
    std::size_t pivot_degree = 0;
    for (const auto& [a, b] : wg_.links) {
      if (in_cover_[a] || in_cover_[b]) continue;
      for (EdgeId v : {a, b}) {
        const std::size_t d = uncovered_degree(v);
        if (d > pivot_degree || (d == pivot_degree && v < pivot)) {
          pivot = v;
          pivot_degree = d;
        }
      }
    }
    assert(pivot != kNoEdge);

    std::size_t mark = chosen_.size();
    take(pivot);
    branch();
    release(mark);

    // Pivot stays out: every uncovered link at pivot needs its other end.
    std::vector<EdgeId> forced;
    for (std::uint32_t l : incident_[pivot]) {
      if (link_covered(l)) continue;
      const auto [a, b] = wg_.links[l];
      forced.push_back(a == pivot ? b : a);
    }
    std::sort(forced.begin(), forced.end());
    forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
    if (chosen_.size() + forced.size() < best_size_) {
      mark = chosen_.size();
      for (EdgeId v : forced) take(v);
      branch();
      release(mark);
    }
  }

  const WedgeGraph& wg_;
  std::vector<std::vector<std::uint32_t>> incident_;
  std::vector<char> in_cover_;
  std::vector<EdgeId> chosen_;
  std::vector<EdgeId> best_;
  std::size_t best_size_ = 0;
};

/// Both endpoints of a maximal matching, scanning links in sorted order.
inline std::vector<EdgeId> matching_cover(const WedgeGraph& wg) {
  std::vector<char> used(wg.node_count, 0);
  std::vector<EdgeId> cover;
  for (const auto& [a, b] : wg.links) {
    if (!used[a] && !used[b]) {
      used[a] = used[b] = 1;
      cover.push_back(a);
      cover.push_back(b);
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

}  // namespace detail

enum class ZeroViolationMode { exact, matching };

struct ZeroViolationOptions {
  ZeroViolationMode mode = ZeroViolationMode::exact;
  /// Exact mode is refused unless the graph has at most this many edges
  /// or the wedge graph has at most this many non-isolated nodes.
  std::size_t exact_edge_cap = 30;
  std::size_t exact_node_cap = 30;
};

/// Zero-violation baseline: maximizes strong edges subject to viol = 0,
/// ignoring communities. The weak set is a vertex cover of the wedge
/// graph: minimum cover in exact mode, both endpoints of a maximal
/// matching (a 2-approximation) in matching mode.
inline Labeling baseline_sintos(const Graph& g, const ZeroViolationOptions& options = {}) {
  const WedgeGraph wg = WedgeGraph::build(g);
  std::vector<EdgeId> cover = detail::matching_cover(wg);
  if (options.mode == ZeroViolationMode::exact) {
    if (g.edge_count() > options.exact_edge_cap &&
        wg.active_node_count() > options.exact_node_cap) {
      throw SizeCapError("exact zero-violation labeling needs <= " +
                         std::to_string(options.exact_edge_cap) + " edges or <= " +
                         std::to_string(options.exact_node_cap) +
                         " wedge-graph nodes; use matching mode");
    }
    cover = detail::VertexCoverSearch(wg).solve(std::move(cover));
  }
  Labeling labeling = Labeling::all_strong(g.edge_count());
  for (EdgeId e : cover) labeling.set_strong(e, false);
  return labeling;
}

struct CommunityConnectorResult {
  Labeling labeling;
  std::vector<EdgeId> selected;  // greedy insertion order, pre-pruning
  std::size_t pruned = 0;        // selected edges removed by the minimality sweep
};

/// Community-connector baseline: ignores wedges entirely and greedily
/// picks edges until every community is connected, minimizing the
/// potential sum over communities of (component count - 1). Each pick
/// maximally decreases the potential, ties to the lowest edge id. A
/// reverse-order sweep then drops every edge whose removal keeps all
/// communities connected, leaving an inclusion-minimal strong set.
inline CommunityConnectorResult baseline_angluin_trace(const Graph& g,
                                                       const CommunitySet& communities) {
  const CommunityEdges incidence = CommunityEdges::build(g, communities);

  struct Dsu {
    std::vector<std::uint32_t> parent;
    std::uint32_t find(std::uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
      a = find(a);
      b = find(b);
      if (a == b) return false;
      parent[std::max(a, b)] = std::min(a, b);
      return true;
    }
  };
  std::vector<Dsu> forest(communities.size());
  std::uint64_t potential = 0;
  for (std::size_t i = 0; i < communities.size(); ++i) {
    const std::size_t n = communities.community(i).size();
    forest[i].parent.resize(n);
    std::iota(forest[i].parent.begin(), forest[i].parent.end(), 0);
    potential += n == 0 ? 0 : n - 1;
  }
  auto local = [&](std::size_t i, VertexId v) -> std::uint32_t {
    const auto& members = communities.community(i);
    return static_cast<std::uint32_t>(
        std::lower_bound(members.begin(), members.end(), v) - members.begin());
  };
  auto gain_of = [&](EdgeId e) -> std::uint64_t {
    std::uint64_t gain = 0;
    const Edge& ed = g.edge(e);
    for (std::uint32_t i : incidence.communities_of[e]) {
      gain += forest[i].find(local(i, ed.u)) != forest[i].find(local(i, ed.v));
    }
    return gain;
  };

  struct Entry {
    std::uint64_t gain;
    EdgeId edge;
    bool operator<(const Entry& o) const {
      if (gain != o.gain) return gain < o.gain;
      return edge > o.edge;
    }
  };
  std::priority_queue<Entry> heap;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const std::size_t g0 = incidence.communities_of[e].size();
    if (g0 > 0) heap.push({g0, e});
  }

  CommunityConnectorResult result;
  while (potential > 0) {
    if (heap.empty()) {
      // Unreachable for a feasible community set: while any community is
      // split, one of its edges still merges two components.
      throw ContractError("community connector ran out of merging edges");
    }
    const Entry top = heap.top();
    heap.pop();
    const std::uint64_t current = gain_of(top.edge);
    assert(current <= top.gain);
    if (current != top.gain) {
      if (current > 0) heap.push({current, top.edge});
      continue;
    }
    const Edge& ed = g.edge(top.edge);
    for (std::uint32_t i : incidence.communities_of[top.edge]) {
      forest[i].unite(local(i, ed.u), local(i, ed.v));
    }
    potential -= current;
    result.selected.push_back(top.edge);
  }

  result.labeling = Labeling::from_strong_set(g.edge_count(), result.selected);
  ConnectivityOracle oracle(g, communities, result.labeling);
  for (auto it = result.selected.rbegin(); it != result.selected.rend(); ++it) {
    if (oracle.is_deletion_feasible(*it)) {
      oracle.erase(*it);
      result.labeling.set_strong(*it, false);
      ++result.pruned;
    }
  }
  return result;
}

inline Labeling baseline_angluin(const Graph& g, const CommunitySet& communities) {
  return baseline_angluin_trace(g, communities).labeling;
}

}  // namespace stc
