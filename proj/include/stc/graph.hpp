#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stc/core.hpp"

namespace stc {

struct Edge {
  VertexId u;  // u < v
  VertexId v;
};

/// Immutable undirected simple graph. Vertices carry dense ids 0..n-1,
/// edges carry stable ids 0..m-1 in insertion order. Vertices may
/// optionally be backed by external string tokens (kept in
/// first-appearance order by the edge-list loader).
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from raw endpoint pairs. Self-loops and duplicate
  /// (unordered) pairs are dropped, with counts recorded. Pass a name
  /// table to attach external tokens; leave it empty for anonymous
  /// vertices, which then print as their decimal id.
  static Graph from_edges(std::size_t vertex_count,
                          const std::vector<std::pair<VertexId, VertexId>>& pairs,
                          std::vector<std::string> names = {}) {
    if (!names.empty() && names.size() != vertex_count) {
      throw ContractError("name table size does not match vertex count");
    }
    Graph g;
    g.n_ = vertex_count;
    g.adj_.resize(vertex_count);
    g.names_ = std::move(names);
    for (std::size_t i = 0; i < g.names_.size(); ++i) {
      g.name_to_id_.emplace(g.names_[i], static_cast<VertexId>(i));
    }
    std::unordered_map<std::uint64_t, bool> seen;
    seen.reserve(pairs.size() * 2);
    for (const auto& [a, b] : pairs) {
      if (a >= vertex_count || b >= vertex_count) {
        throw ContractError("edge endpoint out of range");
      }
      if (a == b) {
        ++g.dropped_self_loops_;
        continue;
      }
      const VertexId u = std::min(a, b);
      const VertexId v = std::max(a, b);
      const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
      if (!seen.emplace(key, true).second) {
        ++g.dropped_duplicates_;
        continue;
      }
      const EdgeId id = static_cast<EdgeId>(g.edges_.size());
      g.edges_.push_back(Edge{u, v});
      g.adj_[u].push_back({v, id});
      g.adj_[v].push_back({u, id});
    }
    for (auto& list : g.adj_) {
      std::sort(list.begin(), list.end());
    }
    return g;
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Sorted (neighbor, edge id) pairs of v.
  const std::vector<std::pair<VertexId, EdgeId>>& neighbors(VertexId v) const {
    return adj_[v];
  }

  std::size_t degree(VertexId v) const { return adj_[v].size(); }

  bool has_edge(VertexId u, VertexId v) const {
    return find_edge(u, v).has_value();
  }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
    if (u >= n_ || v >= n_ || u == v) return std::nullopt;
    const auto& list = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const VertexId target = adj_[u].size() <= adj_[v].size() ? v : u;
    auto it = std::lower_bound(
        list.begin(), list.end(), target,
        [](const std::pair<VertexId, EdgeId>& p, VertexId w) { return p.first < w; });
    if (it != list.end() && it->first == target) return it->second;
    return std::nullopt;
  }

  /// The vertex on edge e that is not v.
  VertexId other_endpoint(EdgeId e, VertexId v) const {
    const Edge& ed = edges_[e];
    return ed.u == v ? ed.v : ed.u;
  }

  bool has_names() const { return !names_.empty(); }

  std::string name(VertexId v) const {
    return names_.empty() ? std::to_string(v) : names_[v];
  }

  std::optional<VertexId> id_of(std::string_view token) const {
    auto it = name_to_id_.find(std::string(token));
    if (it == name_to_id_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t dropped_duplicates() const { return dropped_duplicates_; }
  std::size_t dropped_self_loops() const { return dropped_self_loops_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> name_to_id_;
  std::size_t dropped_duplicates_ = 0;
  std::size_t dropped_self_loops_ = 0;
};

namespace detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

/// Calls fn(line, line_number) for every non-comment, non-empty line.
template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    fn(line, line_no);
    if (end == text.size()) break;
  }
}

}  // namespace detail

/// Parses an edge-list: one edge per line, two whitespace-separated
/// vertex tokens, '#' comments. Tokens are mapped to dense ids in
/// first-appearance order; duplicate edges and self-loops are dropped
/// silently (counts are recorded on the graph).
inline Graph load_graph(std::string_view text) {
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> ids;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.emplace(std::string(token), static_cast<VertexId>(names.size()));
    if (inserted) names.emplace_back(token);
    return it->second;
  };
  detail::for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto tokens = detail::split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected 2 tokens, got " +
                           std::to_string(tokens.size()),
                       line_no);
    }
    const VertexId u = intern(tokens[0]);  // sequenced: tokens intern left to right
    const VertexId v = intern(tokens[1]);
    pairs.emplace_back(u, v);
  });
  const std::size_t vertex_count = names.size();
  return Graph::from_edges(vertex_count, pairs, std::move(names));
}

/// Writes the graph back out in the edge-list format, edges in id order.
inline std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) {
    out << g.name(e.u) << ' ' << g.name(e.v) << '\n';
  }
  return out.str();
}

/// Connected component labels (0-based, in order of first discovery) for
/// the subgraph induced by `vertices`, keeping only edges accepted by
/// `edge_ok`. Returns the number of components; `labels[i]` corresponds
/// to vertices[i].
template <typename EdgePred>
std::size_t induced_components(const Graph& g, const std::vector<VertexId>& vertices,
                               EdgePred&& edge_ok, std::vector<std::uint32_t>* labels = nullptr) {
  std::unordered_map<VertexId, std::uint32_t> index;
  index.reserve(vertices.size() * 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index.emplace(vertices[i], static_cast<std::uint32_t>(i));
  }
  std::vector<std::uint32_t> comp(vertices.size(), static_cast<std::uint32_t>(-1));
  std::size_t count = 0;
  std::vector<VertexId> stack;
  for (std::size_t start = 0; start < vertices.size(); ++start) {
    if (comp[start] != static_cast<std::uint32_t>(-1)) continue;
    const auto label = static_cast<std::uint32_t>(count++);
    comp[start] = label;
    stack.push_back(vertices[start]);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& [w, e] : g.neighbors(v)) {
        auto it = index.find(w);
        if (it == index.end()) continue;
        if (comp[it->second] != static_cast<std::uint32_t>(-1)) continue;
        if (!edge_ok(e)) continue;
        comp[it->second] = label;
        stack.push_back(w);
      }
    }
  }
  if (labels) *labels = std::move(comp);
  return count;
}

/// Bridges of the subgraph induced by `vertices` (all induced edges
/// kept). Standard low-link search, iterative.
inline std::vector<EdgeId> induced_bridges(const Graph& g, const std::vector<VertexId>& vertices) {
  std::unordered_map<VertexId, std::uint32_t> index;
  index.reserve(vertices.size() * 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index.emplace(vertices[i], static_cast<std::uint32_t>(i));
  }
  const std::size_t n = vertices.size();
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<EdgeId> parent_edge(n, kNoEdge);
  std::vector<EdgeId> bridges;
  std::uint32_t timer = 0;

  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (disc[root] != 0) continue;
    disc[root] = low[root] = ++timer;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const VertexId v = vertices[f.v];
      const auto& nbrs = g.neighbors(v);
      if (f.next < nbrs.size()) {
        const auto [w, e] = nbrs[f.next++];
        auto it = index.find(w);
        if (it == index.end()) continue;
        const std::uint32_t wi = it->second;
        if (e == parent_edge[f.v]) continue;
        if (disc[wi] != 0) {
          low[f.v] = std::min(low[f.v], disc[wi]);
        } else {
          disc[wi] = low[wi] = ++timer;
          parent_edge[wi] = e;
          stack.push_back({wi, 0});
        }
      } else {
        const std::uint32_t vi = f.v;
        stack.pop_back();
        if (!stack.empty()) {
          const std::uint32_t pi = stack.back().v;
          low[pi] = std::min(low[pi], low[vi]);
          if (low[vi] > disc[pi]) bridges.push_back(parent_edge[vi]);
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

}  // namespace stc
