#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "stc/sampling.hpp"
#include "support/brute.hpp"
#include "support/convert.hpp"

namespace {

TEST_CASE("random_graph draws exactly m distinct edges") {
  stc::Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.below(11);
    const stc::Graph g = stc::random_graph(rng, 5, m);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == m);
    std::set<std::pair<stc::VertexId, stc::VertexId>> seen;
    for (const stc::Edge& e : g.edges()) {
      CHECK(e.u < e.v);
      CHECK(e.v < 5);
      CHECK(seen.insert({e.u, e.v}).second);
    }
  }
  CHECK_THROWS_AS(stc::random_graph(rng, 5, 11), stc::ContractError);
}

TEST_CASE("sampling is reproducible from the seed") {
  stc::Rng a(42), b(42);
  const stc::Graph ga = stc::random_graph(a, 7, 10);
  const stc::Graph gb = stc::random_graph(b, 7, 10);
  REQUIRE(ga.edge_count() == gb.edge_count());
  for (stc::EdgeId e = 0; e < ga.edge_count(); ++e) {
    CHECK(ga.edge(e).u == gb.edge(e).u);
    CHECK(ga.edge(e).v == gb.edge(e).v);
  }
  const stc::Labeling la = stc::random_labeling(a, ga);
  const stc::Labeling lb = stc::random_labeling(b, gb);
  CHECK(convert::strong_mask(la) == convert::strong_mask(lb));
}

TEST_CASE("random_connected_graph is connected and respects bounds") {
  stc::Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 6 + rng.below(10);
    const stc::Graph g = stc::random_connected_graph(rng, 7, m);
    CHECK(g.edge_count() == m);
    CHECK(brute::graph_connected(convert::from_stc(g)));
  }
  CHECK_THROWS_AS(stc::random_connected_graph(rng, 7, 5), stc::ContractError);
}

TEST_CASE("random_connected_subset induces a connected subgraph") {
  stc::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const stc::Graph g = stc::random_connected_graph(rng, 8, 8 + rng.below(8));
    const std::size_t want = 2 + rng.below(6);
    const auto members = stc::random_connected_subset(rng, g, want);
    CHECK(members.size() <= want);
    CHECK(!members.empty());
    std::vector<stc::VertexId> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(brute::members_connected(convert::from_stc(g), ~std::uint64_t{0},
                                   convert::member_mask(members)));
  }
}

TEST_CASE("random_feasible_communities returns k connected communities") {
  stc::Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const stc::Graph g = stc::random_connected_graph(rng, 8, 9 + rng.below(6));
    const std::size_t k = 1 + rng.below(3);
    const stc::CommunitySet cs = stc::random_feasible_communities(rng, g, k, 5);
    REQUIRE(cs.size() == k);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(cs.community(i).size() >= 2);
      CHECK(cs.community(i).size() <= 5);
    }
  }
  const stc::Graph edgeless = stc::Graph::from_edges(4, {});
  CHECK_THROWS_AS(stc::random_feasible_communities(rng, edgeless, 1, 3),
                  stc::ContractError);
}

TEST_CASE("the generator's primitives behave") {
  stc::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rng.below(7) < 7);
  }
  std::vector<int> values = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> shuffled = values;
  rng.shuffle(shuffled);
  std::vector<int> sorted = shuffled;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == values);

  stc::Rng x(9), y(9);
  for (int i = 0; i < 100; ++i) {
    CHECK(x.raw() == y.raw());
  }
}

}  // namespace
