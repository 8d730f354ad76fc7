#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stc/community.hpp"
#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"

namespace stc {

/// Decremental per-community connectivity: answers whether a strong edge
/// can be turned weak without disconnecting any community's strong
/// subgraph, and commits such deletions.
///
/// Two backends share the interface. rebuild_scan re-walks the
/// community's current strong subgraph on every query; spanning_forest
/// keeps a spanning tree per community and only searches for a
/// replacement edge when a tree edge is deleted. Both give identical
/// answers (feasibility depends only on the edge set); the differential
/// tests pin them against each other and against from-scratch recounts.
///
/// Queries are side-effect free: a replacement found during
/// is_deletion_feasible is cached, not committed, and the following
/// erase() of the same edge reuses it.
class ConnectivityOracle {
 public:
  enum class Backend { rebuild_scan, spanning_forest };

  ConnectivityOracle(const Graph& g, const CommunitySet& cs, const Labeling& initial,
                     Backend backend = Backend::spanning_forest)
      : graph_(&g), backend_(backend), labeling_(initial), incidence_(CommunityEdges::build(g, cs)) {
    parts_.resize(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      Part& part = parts_[i];
      part.members = cs.community(i);
      part.local.reserve(part.members.size() * 2);
      for (std::uint32_t l = 0; l < part.members.size(); ++l) {
        part.local.emplace(part.members[l], l);
      }
      part.adj.resize(part.members.size());
      for (EdgeId e : incidence_.edges_of[i]) {
        if (!initial.is_strong(e)) continue;
        const Edge& ed = g.edge(e);
        part.adj[part.local.at(ed.u)].push_back({part.local.at(ed.v), e});
        part.adj[part.local.at(ed.v)].push_back({part.local.at(ed.u), e});
      }
      part.mark.assign(part.members.size(), 0);
      if (part.members.empty()) continue;
      // Initial spanning tree by BFS; doubles as the feasibility check.
      const std::size_t reached = part.bfs_tree(&part.tree);
      if (reached != part.members.size()) {
        throw FeasibilityError(
            "community " + std::to_string(i) + " is not connected under the initial labeling", i);
      }
      if (backend_ != Backend::spanning_forest) part.tree.clear();
    }
  }

  const Graph& graph() const { return *graph_; }
  const Labeling& labeling() const { return labeling_; }
  bool is_strong(EdgeId e) const { return labeling_.is_strong(e); }

  /// Community indices whose induced edge set contains e.
  const std::vector<std::uint32_t>& memberships(EdgeId e) const {
    return incidence_.communities_of[e];
  }

  /// True iff every community containing e stays connected when e turns
  /// weak. Read-only; e must currently be strong.
  bool is_deletion_feasible(EdgeId e) const {
    if (!labeling_.is_strong(e)) {
      throw ContractError("is_deletion_feasible: edge " + std::to_string(e) + " is weak");
    }
    cache_edge_ = e;
    cache_feasible_ = true;
    cache_replacements_.clear();
    for (std::uint32_t i : memberships(e)) {
      Part& part = parts_[i];
      const Edge& ed = graph_->edge(e);
      if (backend_ == Backend::rebuild_scan) {
        if (!part.connects_without(ed.u, ed.v, e)) {
          cache_feasible_ = false;
          return false;
        }
      } else {
        if (!part.tree.count(e)) continue;
        const EdgeId replacement = part.find_replacement(ed.u, e);
        if (replacement == kNoEdge) {
          cache_feasible_ = false;
          return false;
        }
        cache_replacements_.push_back({i, replacement});
      }
    }
    return true;
  }

  /// Commits the deletion of strong edge e. The deletion must be
  /// feasible; the check from a directly preceding is_deletion_feasible
  /// call is reused.
  void erase(EdgeId e) {
    if (cache_edge_ != e) is_deletion_feasible(e);
    if (!cache_feasible_) {
      throw ContractError("erase: deleting edge " + std::to_string(e) +
                          " would disconnect a community");
    }
    for (std::uint32_t i : memberships(e)) {
      Part& part = parts_[i];
      if (backend_ == Backend::spanning_forest && part.tree.count(e)) {
        EdgeId replacement = kNoEdge;
        for (const auto& [ci, f] : cache_replacements_) {
          if (ci == i) {
            replacement = f;
            break;
          }
        }
        part.tree.erase(e);
        part.tree.insert(replacement);
      }
      part.remove_edge(graph_->edge(e), e);
    }
    labeling_.set_strong(e, false);
    cache_edge_ = kNoEdge;
  }

 private:
  struct Part {
    std::vector<VertexId> members;
    std::unordered_map<VertexId, std::uint32_t> local;
    std::vector<std::vector<std::pair<std::uint32_t, EdgeId>>> adj;  // current strong edges
    std::unordered_set<EdgeId> tree;

    // BFS scratch, timestamped so it never needs clearing.
    mutable std::vector<std::uint32_t> mark;
    mutable std::uint32_t stamp = 0;
    mutable std::vector<std::uint32_t> queue;

    std::size_t bfs_tree(std::unordered_set<EdgeId>* tree_out) {
      ++stamp;
      queue.clear();
      queue.push_back(0);
      mark[0] = stamp;
      std::size_t reached = 1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t a = queue[head];
        for (const auto& [b, f] : adj[a]) {
          if (mark[b] == stamp) continue;
          mark[b] = stamp;
          ++reached;
          if (tree_out) tree_out->insert(f);
          queue.push_back(b);
        }
      }
      return reached;
    }

    bool connects_without(VertexId gu, VertexId gv, EdgeId skip) const {
      const std::uint32_t target = local.at(gv);
      ++stamp;
      queue.clear();
      queue.push_back(local.at(gu));
      mark[queue[0]] = stamp;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t a = queue[head];
        if (a == target) return true;
        for (const auto& [b, f] : adj[a]) {
          if (f == skip || mark[b] == stamp) continue;
          mark[b] = stamp;
          queue.push_back(b);
        }
      }
      return false;
    }

    /// Collects the tree side containing gu after conceptually cutting
    /// tree edge `cut`, then scans that side's strong edges for one
    /// crossing back. Returns the replacement or kNoEdge.
    EdgeId find_replacement(VertexId gu, EdgeId cut) const {
      ++stamp;
      queue.clear();
      queue.push_back(local.at(gu));
      mark[queue[0]] = stamp;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t a = queue[head];
        for (const auto& [b, f] : adj[a]) {
          if (f == cut || !tree.count(f) || mark[b] == stamp) continue;
          mark[b] = stamp;
          queue.push_back(b);
        }
      }
      for (const std::uint32_t a : queue) {
        for (const auto& [b, f] : adj[a]) {
          if (f != cut && mark[b] != stamp) return f;
        }
      }
      return kNoEdge;
    }

    void remove_edge(const Edge& ed, EdgeId e) {
      for (const std::uint32_t a : {local.at(ed.u), local.at(ed.v)}) {
        auto& list = adj[a];
        for (std::size_t idx = 0; idx < list.size(); ++idx) {
          if (list[idx].second == e) {
            list[idx] = list.back();
            list.pop_back();
            break;
          }
        }
      }
    }
  };

  const Graph* graph_;
  Backend backend_;
  Labeling labeling_;
  CommunityEdges incidence_;
  mutable std::vector<Part> parts_;

  // One-shot feasibility cache so feasible-then-erase runs one search.
  mutable EdgeId cache_edge_ = kNoEdge;
  mutable bool cache_feasible_ = false;
  mutable std::vector<std::pair<std::uint32_t, EdgeId>> cache_replacements_;
};

}  // namespace stc
