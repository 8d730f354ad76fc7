#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stc/core.hpp"
#include "stc/graph.hpp"

namespace stc {

/// Strong/weak assignment over the edges of one graph, stored as the
/// strong set. Value type; the weak set is always the complement.
class Labeling {
 public:
  Labeling() = default;

  static Labeling all_strong(std::size_t edge_count) {
    Labeling l;
    l.strong_.assign(edge_count, 1);
    l.strong_count_ = edge_count;
    return l;
  }

  static Labeling all_weak(std::size_t edge_count) {
    Labeling l;
    l.strong_.assign(edge_count, 0);
    l.strong_count_ = 0;
    return l;
  }

  static Labeling from_strong_set(std::size_t edge_count, const std::vector<EdgeId>& strong) {
    Labeling l = all_weak(edge_count);
    for (EdgeId e : strong) l.set_strong(e, true);
    return l;
  }

  std::size_t edge_count() const { return strong_.size(); }
  std::size_t strong_count() const { return strong_count_; }
  std::size_t weak_count() const { return strong_.size() - strong_count_; }

  bool is_strong(EdgeId e) const { return strong_[e] != 0; }

  void set_strong(EdgeId e, bool strong) {
    if (strong_[e] == static_cast<char>(strong)) return;
    strong_[e] = static_cast<char>(strong);
    strong_count_ += strong ? 1 : -1;
  }

  std::vector<EdgeId> strong_edges() const {
    std::vector<EdgeId> out;
    out.reserve(strong_count_);
    for (EdgeId e = 0; e < strong_.size(); ++e) {
      if (strong_[e]) out.push_back(e);
    }
    return out;
  }

  bool operator==(const Labeling& other) const { return strong_ == other.strong_; }

 private:
  std::vector<char> strong_;
  std::size_t strong_count_ = 0;
};

/// One line per edge, in edge-id (input) order:
/// token_u <TAB> token_v <TAB> strong|weak
inline std::string write_labeling_tsv(const Graph& g, const Labeling& labeling) {
  std::ostringstream out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out << g.name(ed.u) << '\t' << g.name(ed.v) << '\t'
        << (labeling.is_strong(e) ? "strong" : "weak") << '\n';
  }
  return out.str();
}

/// Reads a labeling file back against its graph. Every edge must appear
/// exactly once; vertex tokens are resolved through the graph's name
/// table (or decimal ids for anonymous graphs).
inline Labeling read_labeling_tsv(const Graph& g, std::string_view text) {
  Labeling labeling = Labeling::all_weak(g.edge_count());
  std::vector<char> seen(g.edge_count(), 0);
  std::size_t lines = 0;
  detail::for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto tokens = detail::split_tokens(line);
    if (tokens.size() != 3) {
      throw ParseError("labeling line " + std::to_string(line_no) + ": expected 3 fields",
                       line_no);
    }
    auto resolve = [&](std::string_view token) -> VertexId {
      if (g.has_names()) {
        if (auto id = g.id_of(token)) return *id;
      } else {
        VertexId v = 0;
        bool ok = !token.empty();
        for (char c : token) {
          if (c < '0' || c > '9') {
            ok = false;
            break;
          }
          v = v * 10 + static_cast<VertexId>(c - '0');
        }
        if (ok && v < g.vertex_count()) return v;
      }
      throw ParseError("labeling line " + std::to_string(line_no) + ": unknown vertex '" +
                           std::string(token) + "'",
                       line_no);
    };
    const VertexId u = resolve(tokens[0]);
    const VertexId v = resolve(tokens[1]);
    const auto edge = g.find_edge(u, v);
    if (!edge) {
      throw ParseError("labeling line " + std::to_string(line_no) + ": no such edge", line_no);
    }
    if (seen[*edge]) {
      throw ParseError("labeling line " + std::to_string(line_no) + ": duplicate edge", line_no);
    }
    seen[*edge] = 1;
    ++lines;
    if (tokens[2] == "strong") {
      labeling.set_strong(*edge, true);
    } else if (tokens[2] == "weak") {
      // already weak
    } else {
      throw ParseError("labeling line " + std::to_string(line_no) +
                           ": label must be 'strong' or 'weak'",
                       line_no);
    }
  });
  if (lines != g.edge_count()) {
    throw ParseError("labeling file covers " + std::to_string(lines) + " of " +
                         std::to_string(g.edge_count()) + " edges",
                     0);
  }
  return labeling;
}

}  // namespace stc
