#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "stc/core.hpp"
#include "stc/graph.hpp"
#include "stc/labeling.hpp"

namespace stc {

/// An open triangle: center v adjacent to both tips, tips not adjacent.
struct Wedge {
  VertexId center;
  VertexId tip_a;  // tip_a < tip_b
  VertexId tip_b;
  EdgeId edge_a;  // (tip_a, center)
  EdgeId edge_b;  // (tip_b, center)
};

/// Stateless violation count: open triangles whose two edges are both
/// strong. This is the reference recount the incremental counters are
/// tested against, so it deliberately walks neighborhoods instead of any
/// precomputed wedge list.
inline std::uint64_t violation_count(const Graph& g, const Labeling& labeling) {
  std::uint64_t total = 0;
  std::vector<VertexId> strong_nbrs;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    strong_nbrs.clear();
    for (const auto& [w, e] : g.neighbors(v)) {
      if (labeling.is_strong(e)) strong_nbrs.push_back(w);
    }
    for (std::size_t i = 0; i < strong_nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < strong_nbrs.size(); ++j) {
        if (!g.has_edge(strong_nbrs[i], strong_nbrs[j])) ++total;
      }
    }
  }
  return total;
}

/// Total number of open triangles.
inline std::uint64_t wedge_count(const Graph& g) {
  return violation_count(g, Labeling::all_strong(g.edge_count()));
}

/// Open triangles not violated by the labeling.
inline std::uint64_t satisfied_count(const Graph& g, const Labeling& labeling) {
  return wedge_count(g) - violation_count(g, labeling);
}

/// Enumerated open triangles plus per-edge counters of currently
/// violated wedges, updated incrementally as edges are demoted to weak.
/// Starts with every edge strong, so total_violations() begins at the
/// wedge count and only decreases.
class WedgeIndex {
 public:
  /// Enumerates all open triangles of g. Each vertex contributes the
  /// non-adjacent pairs of its neighborhood, so the order is
  /// (center, tip_a, tip_b) lexicographic and the cost is O(sum deg^2)
  /// adjacency probes. Vertex ranges are processed in parallel when the
  /// graph is large enough for that to pay.
  static WedgeIndex build(const Graph& g) {
    WedgeIndex index;
    index.graph_ = &g;
    index.labeling_ = Labeling::all_strong(g.edge_count());

    std::uint64_t work = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      work += static_cast<std::uint64_t>(g.degree(v)) * g.degree(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    const bool parallel = hw > 1 && work > (1u << 20) && g.vertex_count() > 1;
    if (!parallel) {
      enumerate_range(g, 0, static_cast<VertexId>(g.vertex_count()), &index.wedges_);
    } else {
      const unsigned threads = std::min<unsigned>(hw, 8);
      std::vector<std::vector<Wedge>> parts(threads);
      std::vector<std::thread> workers;
      // Split vertices into contiguous ranges of roughly equal deg^2 mass.
      std::vector<VertexId> cuts{0};
      std::uint64_t acc = 0;
      const std::uint64_t per = work / threads + 1;
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        acc += static_cast<std::uint64_t>(g.degree(v)) * g.degree(v);
        if (acc >= per * cuts.size() && cuts.size() < threads) {
          cuts.push_back(v + 1);
        }
      }
      while (cuts.size() <= threads) cuts.push_back(static_cast<VertexId>(g.vertex_count()));
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back(
            [&, t] { enumerate_range(g, cuts[t], cuts[t + 1], &parts[t]); });
      }
      for (auto& w : workers) w.join();
      for (auto& part : parts) {
        index.wedges_.insert(index.wedges_.end(), part.begin(), part.end());
      }
    }

    // CSR from edge id to the wedges containing it.
    index.edge_offsets_.assign(g.edge_count() + 1, 0);
    for (const Wedge& w : index.wedges_) {
      ++index.edge_offsets_[w.edge_a + 1];
      ++index.edge_offsets_[w.edge_b + 1];
    }
    for (std::size_t e = 1; e < index.edge_offsets_.size(); ++e) {
      index.edge_offsets_[e] += index.edge_offsets_[e - 1];
    }
    index.edge_wedges_.resize(index.edge_offsets_.back());
    std::vector<std::uint32_t> cursor(index.edge_offsets_.begin(), index.edge_offsets_.end() - 1);
    for (std::uint32_t wi = 0; wi < index.wedges_.size(); ++wi) {
      index.edge_wedges_[cursor[index.wedges_[wi].edge_a]++] = wi;
      index.edge_wedges_[cursor[index.wedges_[wi].edge_b]++] = wi;
    }

    index.violated_per_edge_.assign(g.edge_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      index.violated_per_edge_[e] = index.edge_offsets_[e + 1] - index.edge_offsets_[e];
    }
    index.total_violations_ = index.wedges_.size();
    return index;
  }

  const Graph& graph() const { return *graph_; }
  const std::vector<Wedge>& wedges() const { return wedges_; }
  std::uint64_t size() const { return wedges_.size(); }

  std::span<const std::uint32_t> wedges_of_edge(EdgeId e) const {
    return {edge_wedges_.data() + edge_offsets_[e],
            edge_wedges_.data() + edge_offsets_[e + 1]};
  }

  const Labeling& labeling() const { return labeling_; }
  std::uint64_t total_violations() const { return total_violations_; }
  std::uint64_t violated_count(EdgeId e) const { return violated_per_edge_[e]; }

  /// Demotes a strong edge to weak. Every wedge that paired e with a
  /// still-strong sister stops being violated: the sister's counter and
  /// the total drop accordingly. Returns the demotion gain, i.e. the
  /// number of violations removed (= e's counter before the call).
  std::uint64_t demote(EdgeId e) {
    if (!labeling_.is_strong(e)) {
      throw ContractError("demote: edge " + std::to_string(e) + " is already weak");
    }
    const std::uint64_t gain = violated_per_edge_[e];
    for (std::uint32_t wi : wedges_of_edge(e)) {
      const Wedge& w = wedges_[wi];
      const EdgeId sister = w.edge_a == e ? w.edge_b : w.edge_a;
      if (labeling_.is_strong(sister)) {
        --violated_per_edge_[sister];
      }
    }
    violated_per_edge_[e] = 0;
    total_violations_ -= gain;
    labeling_.set_strong(e, false);
    return gain;
  }

 private:
  static void enumerate_range(const Graph& g, VertexId begin, VertexId end,
                              std::vector<Wedge>* out) {
    for (VertexId v = begin; v < end; ++v) {
      const auto& nbrs = g.neighbors(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
          if (!g.has_edge(nbrs[i].first, nbrs[j].first)) {
            out->push_back(Wedge{v, nbrs[i].first, nbrs[j].first, nbrs[i].second, nbrs[j].second});
          }
        }
      }
    }
  }

  const Graph* graph_ = nullptr;
  std::vector<Wedge> wedges_;
  std::vector<std::uint32_t> edge_offsets_;
  std::vector<std::uint32_t> edge_wedges_;
  Labeling labeling_;
  std::vector<std::uint64_t> violated_per_edge_;
  std::uint64_t total_violations_ = 0;
};

/// Violations added by turning weak edge e strong under `labeling`:
/// the wedges pairing e with an already-strong sister. Exactly
/// violation_count(S + e) - violation_count(S).
inline std::uint64_t marginal_violations(const WedgeIndex& index, const Labeling& labeling,
                                         EdgeId e) {
  if (labeling.is_strong(e)) {
    throw ContractError("marginal_violations: edge " + std::to_string(e) + " is already strong");
  }
  std::uint64_t count = 0;
  for (std::uint32_t wi : index.wedges_of_edge(e)) {
    const Wedge& w = index.wedges()[wi];
    const EdgeId sister = w.edge_a == e ? w.edge_b : w.edge_a;
    if (labeling.is_strong(sister)) ++count;
  }
  return count;
}

}  // namespace stc
