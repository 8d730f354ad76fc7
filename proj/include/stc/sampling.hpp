#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "stc/community.hpp"
#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"

namespace stc {

/// Uniform simple graph with exactly edge_count distinct edges.
/// edge_count must not exceed n*(n-1)/2.
inline Graph random_graph(Rng& rng, std::size_t vertex_count, std::size_t edge_count) {
  const std::size_t all_pairs =
      vertex_count < 2 ? 0 : vertex_count * (vertex_count - 1) / 2;
  if (edge_count > all_pairs) {
    throw ContractError("requested more edges than distinct vertex pairs");
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(all_pairs);
  for (VertexId u = 0; u + 1 < vertex_count; ++u) {
    for (VertexId v = u + 1; v < vertex_count; ++v) pairs.push_back({u, v});
  }
  rng.shuffle(pairs);
  pairs.resize(edge_count);
  std::sort(pairs.begin(), pairs.end());
  return Graph::from_edges(vertex_count, pairs);
}

/// Resamples until the whole graph is one connected component.
/// Requires edge_count >= vertex_count - 1.
inline Graph random_connected_graph(Rng& rng, std::size_t vertex_count,
                                    std::size_t edge_count) {
  if (vertex_count > 0 && edge_count + 1 < vertex_count) {
    throw ContractError("too few edges for a connected graph");
  }
  for (;;) {
    Graph g = random_graph(rng, vertex_count, edge_count);
    std::vector<VertexId> all(vertex_count);
    for (VertexId v = 0; v < vertex_count; ++v) all[v] = v;
    if (vertex_count == 0 || induced_components(g, all, [](EdgeId) { return true; }) == 1) {
      return g;
    }
  }
}

/// Connected vertex subset of the given size, grown one frontier vertex at
/// a time from a random seed vertex, so the induced subgraph is connected
/// by construction. Returns fewer vertices when the seed's component is
/// smaller than asked.
inline std::vector<VertexId> random_connected_subset(Rng& rng, const Graph& g,
                                                     std::size_t size) {
  std::vector<VertexId> members;
  if (g.vertex_count() == 0 || size == 0) return members;
  std::vector<char> in(g.vertex_count(), 0);
  std::vector<VertexId> frontier;
  const VertexId seed = static_cast<VertexId>(rng.below(g.vertex_count()));
  members.push_back(seed);
  in[seed] = 1;
  auto extend = [&](VertexId v) {
    for (const auto& [w, e] : g.neighbors(v)) {
      (void)e;
      if (!in[w] && std::find(frontier.begin(), frontier.end(), w) == frontier.end()) {
        frontier.push_back(w);
      }
    }
  };
  extend(seed);
  while (members.size() < size && !frontier.empty()) {
    const std::size_t pick = rng.below(frontier.size());
    const VertexId v = frontier[pick];
    frontier[pick] = frontier.back();
    frontier.pop_back();
    members.push_back(v);
    in[v] = 1;
    extend(v);
    frontier.erase(std::remove_if(frontier.begin(), frontier.end(),
                                  [&](VertexId w) { return in[w]; }),
                   frontier.end());
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// k communities, each a connected subset of 2..max_size vertices.
inline CommunitySet random_feasible_communities(Rng& rng, const Graph& g, std::size_t k,
                                                std::size_t max_size) {
  if (k > 0 && g.edge_count() == 0) {
    throw ContractError("no connected subsets of size 2 exist in an edgeless graph");
  }
  std::vector<std::vector<VertexId>> sets;
  while (sets.size() < k) {
    const std::size_t want = 2 + rng.below(max_size > 2 ? max_size - 1 : 1);
    auto members = random_connected_subset(rng, g, want);
    if (members.size() >= 2) sets.push_back(std::move(members));
  }
  return CommunitySet::from_sets(sets, g);
}

/// Independent fair coin per edge.
inline Labeling random_labeling(Rng& rng, const Graph& g) {
  Labeling labeling = Labeling::all_weak(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (rng.chance(1, 2)) labeling.set_strong(e, true);
  }
  return labeling;
}

}  // namespace stc
