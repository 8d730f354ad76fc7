#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"

namespace stc {

/// The vertex sets whose strong-edge subgraphs must stay connected.
/// Feasibility (each (C, E(C)) connected) is checked on construction, so
/// every CommunitySet in circulation admits at least the all-strong
/// labeling.
class CommunitySet {
 public:
  CommunitySet() = default;

  /// Validates and adopts the given sets. Members are sorted and
  /// deduplicated. Throws FeasibilityError naming the first community
  /// whose full induced subgraph is disconnected.
  static CommunitySet from_sets(std::vector<std::vector<VertexId>> sets, const Graph& g) {
    CommunitySet cs;
    cs.communities_ = std::move(sets);
    for (std::size_t i = 0; i < cs.communities_.size(); ++i) {
      auto& c = cs.communities_[i];
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      for (VertexId v : c) {
        if (v >= g.vertex_count()) {
          throw ContractError("community member out of range");
        }
      }
      if (!c.empty() &&
          induced_components(g, c, [](EdgeId) { return true; }) != 1) {
        throw FeasibilityError(
            "community " + std::to_string(i) + " is not connected in the input graph", i);
      }
    }
    return cs;
  }

  std::size_t size() const { return communities_.size(); }
  bool empty() const { return communities_.empty(); }
  const std::vector<VertexId>& community(std::size_t i) const { return communities_[i]; }
  const std::vector<std::vector<VertexId>>& communities() const { return communities_; }

  std::size_t dropped_small() const { return dropped_small_; }
  void set_dropped_small(std::size_t n) { dropped_small_ = n; }

 private:
  std::vector<std::vector<VertexId>> communities_;
  std::size_t dropped_small_ = 0;
};

/// Restricts `members` to the subset inducing the largest connected
/// component of (C, E(C)); ties go to the component containing the
/// smallest vertex id.
inline std::vector<VertexId> largest_connected_subset(const Graph& g,
                                                      std::vector<VertexId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.size() <= 1) return members;
  std::vector<std::uint32_t> labels;
  const std::size_t count = induced_components(g, members, [](EdgeId) { return true; }, &labels);
  if (count == 1) return members;
  std::vector<std::size_t> sizes(count, 0);
  for (std::uint32_t label : labels) ++sizes[label];
  // Component labels are assigned in discovery order over sorted members,
  // so among equal-sized components the smallest label contains the
  // smallest vertex id.
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (sizes[i] > sizes[best]) best = i;
  }
  std::vector<VertexId> result;
  result.reserve(sizes[best]);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (labels[i] == best) result.push_back(members[i]);
  }
  return result;
}

/// Parses a community file: one community per line, whitespace-separated
/// vertex tokens, '#' comments. With restrict_to_lcc on, each community
/// is replaced by its largest-connected-component subset and communities
/// of size < 2 after restriction are dropped (count recorded); unknown
/// tokens are dropped as well. With the flag off, unknown tokens and
/// disconnected communities are errors.
inline CommunitySet load_communities(std::string_view text, const Graph& g,
                                     bool restrict_to_lcc) {
  std::vector<std::vector<VertexId>> sets;
  std::size_t dropped_small = 0;
  detail::for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
    std::vector<VertexId> members;
    for (std::string_view token : detail::split_tokens(line)) {
      const auto id = g.id_of(token);
      if (!id) {
        if (restrict_to_lcc) continue;
        throw ParseError("community line " + std::to_string(line_no) + ": unknown vertex '" +
                             std::string(token) + "'",
                         line_no);
      }
      members.push_back(*id);
    }
    if (restrict_to_lcc) {
      members = largest_connected_subset(g, members);
      if (members.size() < 2) {
        ++dropped_small;
        return;
      }
    }
    sets.push_back(std::move(members));
  });
  CommunitySet cs = CommunitySet::from_sets(std::move(sets), g);
  cs.set_dropped_small(dropped_small);
  return cs;
}

inline std::string serialize_communities(const Graph& g, const CommunitySet& cs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs.community(i);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j) out << ' ';
      out << g.name(c[j]);
    }
    out << '\n';
  }
  return out.str();
}

/// Number of connected components of (C, S(C)): the community's vertices
/// with only its induced strong edges. Singletons count as one component.
inline std::size_t induced_strong_components(const Graph& g, const Labeling& labeling,
                                             const std::vector<VertexId>& community) {
  return induced_components(g, community, [&](EdgeId e) { return labeling.is_strong(e); });
}

/// Edge/community incidence computed once: which edges each community
/// induces and, per edge, which communities contain it.
struct CommunityEdges {
  std::vector<std::vector<EdgeId>> edges_of;        // per community, sorted
  std::vector<std::vector<std::uint32_t>> communities_of;  // per edge, sorted

  static CommunityEdges build(const Graph& g, const CommunitySet& cs) {
    CommunityEdges ce;
    ce.edges_of.resize(cs.size());
    ce.communities_of.resize(g.edge_count());
    std::vector<char> in_community(g.vertex_count(), 0);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto& c = cs.community(i);
      for (VertexId v : c) in_community[v] = 1;
      for (VertexId v : c) {
        for (const auto& [w, e] : g.neighbors(v)) {
          if (v < w && in_community[w]) {
            ce.edges_of[i].push_back(e);
            ce.communities_of[e].push_back(static_cast<std::uint32_t>(i));
          }
        }
      }
      std::sort(ce.edges_of[i].begin(), ce.edges_of[i].end());
      for (VertexId v : c) in_community[v] = 0;
    }
    return ce;
  }

  /// True when no edge lies inside two different communities.
  bool pairwise_edge_disjoint() const {
    for (const auto& list : communities_of) {
      if (list.size() > 1) return false;
    }
    return true;
  }
};

}  // namespace stc
