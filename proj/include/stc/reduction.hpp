#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stc/community.hpp"
#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"
#include "stc/wedges.hpp"

namespace stc {

/// Instance mapping a clique-cover question (source, k) to a labeling
/// question on a larger graph: the expanded graph has a zero-violation
/// feasible labeling if and only if the source's vertices can be
/// partitioned into at most k cliques.
///
/// Layout: vertices [0, n) mirror the source, [n, 2n) are per-vertex
/// copies, [2n, 2n+k) are hubs forming a clique; every copy i is adjacent
/// to its original and to all hubs, every original to all hubs. The
/// source is normalized to contain an isolated vertex (one is appended
/// and k incremented when missing), which the correspondence requires.
struct Gadget {
  Graph graph;             // the expanded graph
  CommunitySet community;  // single community spanning every vertex
  Graph source;            // normalized source graph
  std::size_t n = 0;       // normalized source vertex count
  std::size_t k = 0;       // normalized clique budget
  bool singleton_added = false;

  VertexId original(std::size_t i) const { return static_cast<VertexId>(i); }
  VertexId copy(std::size_t i) const { return static_cast<VertexId>(n + i); }
  VertexId hub(std::size_t j) const { return static_cast<VertexId>(2 * n + j); }

  static std::size_t expected_edge_count(std::size_t source_edges, std::size_t n,
                                         std::size_t k) {
    return source_edges + n + 2 * n * k + k * (k - 1) / 2;
  }
};

inline Gadget build_gadget(const Graph& g, std::size_t k) {
  if (k < 1) throw ContractError("clique budget must be at least 1");

  bool has_isolated = false;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.neighbors(v).empty()) {
      has_isolated = true;
      break;
    }
  }

  Gadget gadget;
  gadget.singleton_added = !has_isolated;
  gadget.n = g.vertex_count() + (has_isolated ? 0 : 1);
  gadget.k = k + (has_isolated ? 0 : 1);

  std::vector<std::pair<VertexId, VertexId>> source_pairs;
  source_pairs.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    source_pairs.push_back({g.edge(e).u, g.edge(e).v});
  }
  std::vector<std::string> source_names;
  if (g.has_names()) {
    std::unordered_set<std::string> taken;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      source_names.push_back(g.name(v));
      taken.insert(source_names.back());
    }
    if (!has_isolated) {
      std::string fresh = "aux";
      while (taken.count(fresh)) fresh += "_";
      source_names.push_back(fresh);
    }
  }
  gadget.source = Graph::from_edges(gadget.n, source_pairs, std::move(source_names));

  const std::size_t n = gadget.n;
  std::vector<std::pair<VertexId, VertexId>> pairs = source_pairs;
  for (std::size_t i = 0; i < n; ++i) {
    pairs.push_back({gadget.original(i), gadget.copy(i)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < gadget.k; ++j) {
      pairs.push_back({gadget.original(i), gadget.hub(j)});
      pairs.push_back({gadget.copy(i), gadget.hub(j)});
    }
  }
  for (std::size_t j = 0; j + 1 < gadget.k; ++j) {
    for (std::size_t l = j + 1; l < gadget.k; ++l) {
      pairs.push_back({gadget.hub(j), gadget.hub(l)});
    }
  }

  std::vector<std::string> names;
  names.reserve(2 * n + gadget.k);
  for (std::size_t i = 0; i < n; ++i) names.push_back("v:" + gadget.source.name(i));
  for (std::size_t i = 0; i < n; ++i) names.push_back("u:" + gadget.source.name(i));
  for (std::size_t j = 0; j < gadget.k; ++j) names.push_back("x:" + std::to_string(j));

  gadget.graph = Graph::from_edges(2 * n + gadget.k, pairs, std::move(names));
  std::vector<VertexId> everyone(gadget.graph.vertex_count());
  for (VertexId v = 0; v < gadget.graph.vertex_count(); ++v) everyone[v] = v;
  gadget.community = CommunitySet::from_sets({everyone}, gadget.graph);
  return gadget;
}

namespace detail {

inline EdgeId gadget_edge(const Gadget& gadget, VertexId u, VertexId v) {
  const auto e = gadget.graph.find_edge(u, v);
  if (!e) throw ContractError("gadget is missing a construction edge");
  return *e;
}

}  // namespace detail

/// Strong set realizing a clique partition: for each source vertex in
/// part j, its copy edge and its link to hub j are strong, and hubs are
/// tied together by a star at hub 0. The result keeps the whole-graph
/// community connected with zero violations.
inline Labeling cover_to_labeling(const Gadget& gadget,
                                  const std::vector<std::vector<VertexId>>& parts) {
  if (parts.size() > gadget.k) {
    throw ContractError("cover uses more than " + std::to_string(gadget.k) + " parts");
  }
  std::vector<char> seen(gadget.n, 0);
  for (const auto& part : parts) {
    for (VertexId v : part) {
      if (v >= gadget.n) throw ContractError("cover names an unknown vertex");
      if (seen[v]) throw ContractError("cover repeats a vertex");
      seen[v] = 1;
    }
    for (std::size_t a = 0; a < part.size(); ++a) {
      for (std::size_t b = a + 1; b < part.size(); ++b) {
        if (!gadget.source.find_edge(part[a], part[b])) {
          throw ContractError("cover part is not a clique");
        }
      }
    }
  }
  for (std::size_t i = 0; i < gadget.n; ++i) {
    if (!seen[i]) throw ContractError("cover misses a vertex");
  }

  Labeling labeling = Labeling::all_weak(gadget.graph.edge_count());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (VertexId i : parts[j]) {
      labeling.set_strong(detail::gadget_edge(gadget, gadget.original(i), gadget.copy(i)),
                          true);
      labeling.set_strong(detail::gadget_edge(gadget, gadget.original(i), gadget.hub(j)),
                          true);
    }
  }
  for (std::size_t j = 1; j < gadget.k; ++j) {
    labeling.set_strong(detail::gadget_edge(gadget, gadget.hub(0), gadget.hub(j)), true);
  }
  return labeling;
}

/// Extracts a clique partition of the source from any zero-violation
/// feasible labeling of the gadget. Vertices whose copy is tied to hub j
/// or who are tied to hub j directly land in part j, with earlier parts
/// subtracted so the parts are disjoint. A failure of the clique or
/// coverage property is a contract violation: the construction guarantees
/// both, so a failure means the inputs were not what they claimed.
inline std::vector<std::vector<VertexId>> labeling_to_cover(const Gadget& gadget,
                                                            const Labeling& labeling) {
  if (violation_count(gadget.graph, labeling) != 0) {
    throw ContractError("cover extraction requires a zero-violation labeling");
  }
  if (induced_strong_components(gadget.graph, labeling, gadget.community.community(0)) !=
      1) {
    throw ContractError("cover extraction requires a connected community");
  }

  const std::size_t n = gadget.n;
  std::vector<char> copy_hub_tied(n, 0);  // in Y: some (copy, hub) edge is strong
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < gadget.k; ++j) {
      if (labeling.is_strong(detail::gadget_edge(gadget, gadget.copy(i), gadget.hub(j)))) {
        copy_hub_tied[i] = 1;
        break;
      }
    }
  }

  std::vector<char> assigned(n, 0);
  std::vector<std::vector<VertexId>> parts;
  for (std::size_t j = 0; j < gadget.k; ++j) {
    std::vector<VertexId> part;
    for (std::size_t i = 0; i < n; ++i) {
      if (assigned[i]) continue;
      const bool in_a =
          copy_hub_tied[i] &&
          labeling.is_strong(detail::gadget_edge(gadget, gadget.copy(i), gadget.hub(j)));
      const bool in_b =
          !copy_hub_tied[i] &&
          labeling.is_strong(detail::gadget_edge(gadget, gadget.original(i), gadget.hub(j)));
      if (in_a || in_b) {
        part.push_back(static_cast<VertexId>(i));
        assigned[i] = 1;
      }
    }
    if (!part.empty()) parts.push_back(std::move(part));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!assigned[i]) {
      throw ContractError("cover extraction left vertex " + gadget.source.name(i) +
                          " unassigned; zero-violation invariant broken");
    }
  }
  for (const auto& part : parts) {
    for (std::size_t a = 0; a < part.size(); ++a) {
      for (std::size_t b = a + 1; b < part.size(); ++b) {
        if (!gadget.source.find_edge(part[a], part[b])) {
          throw ContractError("cover extraction produced a non-clique part; "
                              "zero-violation invariant broken");
        }
      }
    }
  }
  return parts;
}

}  // namespace stc
