#include <catch2/catch_amalgamated.hpp>

#include "stc/greedy.hpp"
#include "stc/sampling.hpp"
#include "support/brute.hpp"
#include "support/convert.hpp"

namespace {

std::size_t demoted_count(const stc::GreedyResult& r) {
  std::size_t count = 0;
  for (const auto& d : r.demotions) count += d.demoted ? 1 : 0;
  return count;
}

TEST_CASE("a path whose ends must stay joined keeps both violating edges") {
  const stc::Graph g = stc::Graph::from_edges(3, {{0, 1}, {1, 2}});
  const stc::CommunitySet cs = stc::CommunitySet::from_sets({{0, 1, 2}}, g);
  const stc::GreedyResult r = stc::greedy_labeling(g, cs);
  CHECK(r.wedge_count == 1);
  CHECK(r.violations == 1);
  CHECK(r.satisfied == 0);
  CHECK(r.blocked_count == 2);
  CHECK(demoted_count(r) == 0);
  CHECK(r.labeling.is_strong(0));
  CHECK(r.labeling.is_strong(1));
}

TEST_CASE("a star with one protected spoke sheds the other two") {
  // Hub 0 with leaves 1,2,3; only the 0-1 spoke is inside a community.
  const stc::Graph g = stc::Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const stc::CommunitySet cs = stc::CommunitySet::from_sets({{0, 1}}, g);
  const stc::GreedyResult r = stc::greedy_labeling(g, cs);
  CHECK(r.wedge_count == 3);
  CHECK(r.violations == 0);
  CHECK(r.satisfied == 3);
  CHECK(r.blocked_count == 1);
  CHECK(demoted_count(r) == 2);
  CHECK(r.labeling.is_strong(0));
  CHECK_FALSE(r.labeling.is_strong(1));
  CHECK_FALSE(r.labeling.is_strong(2));
}

TEST_CASE("zero-gain edges stay strong unless the flag says otherwise") {
  const stc::Graph g = stc::Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const stc::CommunitySet cs = stc::CommunitySet::from_sets({{0, 1, 2}}, g);

  const stc::GreedyResult keep = stc::greedy_labeling(g, cs);
  CHECK(demoted_count(keep) == 0);
  CHECK(keep.blocked_count == 0);
  CHECK(keep.violations == 0);

  stc::GreedyOptions options;
  options.demote_zero_gain = true;
  const stc::GreedyResult shed = stc::greedy_labeling(g, cs, options);
  CHECK(demoted_count(shed) == 1);
  CHECK(shed.blocked_count == 2);
  CHECK_FALSE(shed.labeling.is_strong(0));
  CHECK(shed.labeling.is_strong(1));
  CHECK(shed.labeling.is_strong(2));
}

TEST_CASE("the strong-minimization pass drops exactly the removable triangle edge") {
  const stc::Graph g = stc::Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const stc::CommunitySet cs = stc::CommunitySet::from_sets({{0, 1, 2}}, g);
  const stc::GreedyResult base = stc::greedy_labeling(g, cs);
  const stc::GreedyResult slim = stc::minimize_strong_post_pass(g, cs, base);
  CHECK(demoted_count(slim) == 1);
  CHECK(slim.violations == 0);
  // Seed 0 sweeps highest edge id first.
  CHECK_FALSE(slim.labeling.is_strong(2));
  CHECK(slim.labeling.is_strong(0));
  CHECK(slim.labeling.is_strong(1));
}

TEST_CASE("identical seeds reproduce the labeling, any seed stays feasible") {
  stc::Rng rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    const stc::Graph g = stc::random_connected_graph(rng, 7, 8 + rng.below(5));
    const stc::CommunitySet cs = stc::random_feasible_communities(rng, g, 2, 5);
    const brute::SmallGraph sg = convert::from_stc(g);
    const auto masks = convert::community_masks(cs);
    for (std::uint64_t seed : {std::uint64_t{0}, std::uint64_t{9}}) {
      stc::GreedyOptions options;
      options.tie_break_seed = seed;
      const stc::GreedyResult a = stc::greedy_labeling(g, cs, options);
      const stc::GreedyResult b = stc::greedy_labeling(g, cs, options);
      CHECK(convert::strong_mask(a.labeling) == convert::strong_mask(b.labeling));
      CHECK(brute::feasible(sg, convert::strong_mask(a.labeling), masks));
      CHECK(a.violations ==
            brute::violations(sg, convert::strong_mask(a.labeling)));
      CHECK(a.satisfied + a.violations == a.wedge_count);
    }
  }
}

TEST_CASE("both connectivity backends produce the same greedy run") {
  stc::Rng rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    const stc::Graph g = stc::random_connected_graph(rng, 7, 8 + rng.below(5));
    const stc::CommunitySet cs = stc::random_feasible_communities(rng, g, 2, 6);
    stc::GreedyOptions forest;
    forest.backend = stc::ConnectivityOracle::Backend::spanning_forest;
    stc::GreedyOptions rebuild;
    rebuild.backend = stc::ConnectivityOracle::Backend::rebuild_scan;
    const stc::GreedyResult a = stc::greedy_labeling(g, cs, forest);
    const stc::GreedyResult b = stc::greedy_labeling(g, cs, rebuild);
    CHECK(convert::strong_mask(a.labeling) == convert::strong_mask(b.labeling));
    CHECK(a.violations == b.violations);
  }
}

TEST_CASE("greedy meets the k-plus-one bound against full enumeration") {
  stc::Rng rng(8080);
  int instances = 0;
  while (instances < 40) {
    const stc::Graph g = stc::random_graph(rng, 6, 4 + rng.below(8));
    if (g.edge_count() == 0) continue;
    stc::CommunitySet cs;
    try {
      cs = stc::random_feasible_communities(rng, g, 2, 4);
    } catch (const stc::ContractError&) {
      continue;
    }
    const brute::SmallGraph sg = convert::from_stc(g);
    const brute::Optimum opt = brute::optimum(sg, convert::community_masks(cs));
    REQUIRE(opt.feasible_exists);
    const stc::GreedyResult r = stc::greedy_labeling(g, cs);
    const stc::RatioReport cert =
        stc::approximation_certificate(g, cs, r, opt.max_satisfied);
    CHECK(r.satisfied * 3 >= opt.max_satisfied);
    CHECK(cert.meets_bound);
    CHECK(cert.bound_den == (cert.edge_disjoint ? 2 : 3));
    ++instances;
  }
}

}  // namespace
