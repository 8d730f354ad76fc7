// Acceptance suite: one line of output per criterion, nonzero exit when
// any of them fails. Each criterion re-derives its expected values from
// first principles (bitmask enumeration, exhaustive search) rather than
// from the structures under test.

#include <sys/wait.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "stc/stc.hpp"
#include "support/brute.hpp"
#include "support/convert.hpp"
#include "support/enumerate.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& message) {
    if (pass) {
      pass = false;
      detail = message;
    }
  }
};

// ---------------------------------------------------------------- 1 ----
// Every connected graph up to isomorphism with n <= 6, whole vertex set
// as the single community: greedy keeps at least half of the optimum's
// satisfied wedges and never breaks feasibility.
Outcome criterion1() {
  Outcome outcome;
  const std::vector<std::size_t> expected_counts = {1, 1, 2, 6, 21, 112};
  std::size_t total = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto graphs = enumerate::connected_graphs(n);
    if (graphs.size() != expected_counts[static_cast<std::size_t>(n - 1)]) {
      outcome.fail("n=" + std::to_string(n) + " enumerated " +
                   std::to_string(graphs.size()) + " graphs, expected " +
                   std::to_string(expected_counts[static_cast<std::size_t>(n - 1)]));
      return outcome;
    }
    for (const brute::SmallGraph& sg : graphs) {
      ++total;
      const stc::Graph g = convert::to_stc(sg);
      std::vector<stc::VertexId> everyone(g.vertex_count());
      for (stc::VertexId v = 0; v < g.vertex_count(); ++v) everyone[v] = v;
      const stc::CommunitySet cs = stc::CommunitySet::from_sets({everyone}, g);
      const std::uint64_t all = g.vertex_count() >= 64
                                    ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << g.vertex_count()) - 1;

      stc::GreedyResult greedy;
      try {
        greedy = stc::greedy_labeling(g, cs);
      } catch (const stc::FeasibilityError& e) {
        outcome.fail("greedy infeasible on instance " + std::to_string(total) + ": " +
                     e.what());
        continue;
      }
      if (!brute::members_connected(sg, convert::strong_mask(greedy.labeling), all)) {
        outcome.fail("greedy output disconnects instance " + std::to_string(total));
        continue;
      }
      stc::ExactOptions options;
      options.count_optima = false;
      const stc::ExactSolution best = stc::exact_solve(g, cs, options);
      if (2 * greedy.satisfied < best.satisfied) {
        outcome.fail("half-bound missed on instance " + std::to_string(total) + ": greedy " +
                     std::to_string(greedy.satisfied) + " vs optimum " +
                     std::to_string(best.satisfied));
      }
    }
  }
  if (total != 143) outcome.fail("expected 143 instances, saw " + std::to_string(total));
  return outcome;
}

// ---------------------------------------------------------------- 2 ----
// 500 seeded random instances with two communities: greedy keeps at
// least a third of the optimum, or half when the communities share no
// edge.
Outcome criterion2() {
  Outcome outcome;
  stc::Rng rng(0xACC2);
  int instances = 0;
  while (instances < 500) {
    const std::size_t n = 4 + rng.below(4);  // 4..7
    const std::size_t max_m = std::min<std::size_t>(14, n * (n - 1) / 2);
    const stc::Graph g = stc::random_graph(rng, n, 1 + rng.below(max_m));
    stc::CommunitySet cs;
    try {
      cs = stc::random_feasible_communities(rng, g, 2, n);
    } catch (const stc::ContractError&) {
      continue;
    }
    ++instances;
    const brute::SmallGraph sg = convert::from_stc(g);
    const auto masks = convert::community_masks(cs);

    const stc::GreedyResult greedy = stc::greedy_labeling(g, cs);
    if (!brute::feasible(sg, convert::strong_mask(greedy.labeling), masks)) {
      outcome.fail("greedy output infeasible on instance " + std::to_string(instances));
      continue;
    }
    stc::ExactOptions options;
    options.count_optima = false;
    const stc::ExactSolution best = stc::exact_solve(g, cs, options);
    const bool disjoint = stc::CommunityEdges::build(g, cs).pairwise_edge_disjoint();
    if (3 * greedy.satisfied < best.satisfied) {
      outcome.fail("third-bound missed on instance " + std::to_string(instances));
    } else if (disjoint && 2 * greedy.satisfied < best.satisfied) {
      outcome.fail("half-bound missed on edge-disjoint instance " +
                   std::to_string(instances));
    }
  }
  return outcome;
}

// ---------------------------------------------------------------- 3 ----
// The closed-form marginal equals the stateless recount difference on
// 1000 seeded (graph, labeling, edge) samples.
Outcome criterion3() {
  Outcome outcome;
  stc::Rng rng(0xACC3);
  for (int sample = 0; sample < 1000; ++sample) {
    const stc::Graph g = stc::random_graph(rng, 7, 1 + rng.below(14));
    const brute::SmallGraph sg = convert::from_stc(g);
    const stc::WedgeIndex index = stc::WedgeIndex::build(g);
    stc::Labeling labeling = stc::random_labeling(rng, g);
    const stc::EdgeId e = static_cast<stc::EdgeId>(rng.below(g.edge_count()));
    labeling.set_strong(e, false);

    stc::Labeling with_e = labeling;
    with_e.set_strong(e, true);
    const std::uint64_t expected =
        brute::violations(sg, convert::strong_mask(with_e)) -
        brute::violations(sg, convert::strong_mask(labeling));
    if (stc::marginal_violations(index, labeling, e) != expected) {
      outcome.fail("marginal mismatch at sample " + std::to_string(sample));
    }
  }
  return outcome;
}

// ---------------------------------------------------------------- 4 ----
// Replaying every demotion of a full run on the karate fixture keeps the
// incremental violation total equal to the stateless recount.
Outcome criterion4() {
  Outcome outcome;
  const stc::Graph g = stc::karate_graph();
  const stc::CommunitySet cs = stc::karate_factions(g);
  const stc::GreedyResult result = stc::greedy_labeling(g, cs);

  stc::WedgeIndex index = stc::WedgeIndex::build(g);
  if (index.total_violations() != stc::violation_count(g, index.labeling())) {
    outcome.fail("initial totals disagree");
  }
  std::size_t replayed = 0;
  for (const stc::Demotion& d : result.demotions) {
    if (!d.demoted) continue;
    index.demote(d.edge);
    ++replayed;
    if (index.total_violations() != stc::violation_count(g, index.labeling())) {
      outcome.fail("totals diverged after demoting edge " + std::to_string(d.edge));
      break;
    }
  }
  if (replayed == 0) outcome.fail("greedy demoted nothing on the karate fixture");
  return outcome;
}

// ---------------------------------------------------------------- 5 ----
// Supermodularity and monotonicity of the violation count over 1000
// seeded nested labeling pairs each.
Outcome criterion5() {
  Outcome outcome;
  stc::Rng rng(0xACC5);
  std::uint64_t super_trials = 0, mono_trials = 0;
  while (super_trials < 1000) {
    const stc::Graph g = stc::random_graph(rng, 8, 3 + rng.below(11));
    const std::uint64_t batch = std::min<std::uint64_t>(1000 - super_trials, 25);
    const stc::CheckReport r = stc::check_supermodularity(g, batch, rng.raw());
    super_trials += r.trials;
    if (!r.pass) {
      outcome.fail("supermodularity: " + r.detail);
      break;
    }
  }
  while (mono_trials < 1000) {
    const stc::Graph g = stc::random_graph(rng, 8, 3 + rng.below(11));
    const std::uint64_t batch = std::min<std::uint64_t>(1000 - mono_trials, 25);
    const stc::CheckReport r = stc::check_monotonicity(g, batch, rng.raw());
    mono_trials += r.trials;
    if (!r.pass) {
      outcome.fail("monotonicity: " + r.detail);
      break;
    }
  }
  return outcome;
}

// ---------------------------------------------------------------- 6 ----
// Deletable-set families of sampled communities satisfy the matroid
// axioms exhaustively; edge-disjoint pairs satisfy the direct-sum law.
Outcome criterion6() {
  Outcome outcome;
  stc::Rng rng(0xACC6);
  std::size_t communities_checked = 0;
  for (int i = 0; i < 100; ++i) {
    const stc::Graph g = stc::random_connected_graph(rng, 6, 5 + rng.below(5));
    for (int draw = 0; draw < 3; ++draw) {
      const auto members = stc::random_connected_subset(rng, g, 2 + rng.below(5));
      if (members.size() < 2) continue;
      const stc::CheckReport r = stc::check_matroid(g, members);
      ++communities_checked;
      if (!r.pass) {
        outcome.fail("matroid axioms failed: " + r.detail);
        return outcome;
      }
    }
  }
  if (communities_checked < 100) {
    outcome.fail("only " + std::to_string(communities_checked) + " communities sampled");
  }

  std::size_t pairs_checked = 0;
  std::size_t attempts = 0;
  while (pairs_checked < 100 && attempts < 10000) {
    ++attempts;
    const stc::Graph g = stc::random_connected_graph(rng, 8, 7 + rng.below(3));
    const auto a = stc::random_connected_subset(rng, g, 3);
    if (a.size() < 2) continue;
    std::vector<char> in_a(g.vertex_count(), 0);
    for (stc::VertexId v : a) in_a[v] = 1;
    std::vector<stc::VertexId> b;
    for (stc::VertexId v = 0; v < g.vertex_count() && b.size() < 3; ++v) {
      if (in_a[v]) continue;
      bool joins = b.empty();
      for (stc::VertexId w : b) {
        if (g.find_edge(v, w)) joins = true;
      }
      if (joins) b.push_back(v);
    }
    if (b.size() < 2) continue;
    try {
      const stc::CheckReport r = stc::check_direct_sum(g, a, b);
      if (!r.pass) {
        outcome.fail("direct-sum failed: " + r.detail);
        return outcome;
      }
      ++pairs_checked;
    } catch (const stc::ContractError&) {
      continue;  // shares an edge; sample another pair
    } catch (const stc::FeasibilityError&) {
      continue;  // grew a disconnected second set; sample another pair
    }
  }
  if (pairs_checked < 100) {
    outcome.fail("only " + std::to_string(pairs_checked) + " edge-disjoint pairs checked");
  }
  return outcome;
}

// ---------------------------------------------------------------- 7 ----
// The expanded instance has a zero-violation labeling exactly when the
// source has a clique cover within budget: verified on 200 seeded
// sources plus the five-cycle and triangle fixtures.
Outcome criterion7() {
  Outcome outcome;
  stc::ExactOptions options;
  options.count_optima = false;
  options.cap_m = 80;

  const auto verify = [&](const stc::Graph& source, std::size_t budget,
                          const std::string& label) {
    const brute::SmallGraph ssg = convert::from_stc(source);
    const bool coverable = brute::clique_cover_exists(ssg, budget);
    const stc::Gadget gadget = stc::build_gadget(source, budget);
    const stc::ExactSolution best =
        stc::exact_solve(gadget.graph, gadget.community, options);
    if ((best.violations == 0) != coverable) {
      outcome.fail(label + ": cover " + (coverable ? "exists" : "missing") +
                   " but optimum violations = " + std::to_string(best.violations));
      return;
    }
    if (best.violations == 0) {
      // The witness labeling must round-trip into a valid cover.
      const auto parts = stc::labeling_to_cover(gadget, best.labeling);
      if (parts.size() > gadget.k) outcome.fail(label + ": recovered cover too large");
    }
  };

  // Five-cycle plus its lone vertex: four cliques needed, budget two.
  verify(stc::Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}), 2,
         "five-cycle fixture");
  if (!outcome.pass) return outcome;
  // Triangle: one clique, budget one (normalization adds the lone vertex).
  verify(stc::Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), 1, "triangle fixture");
  if (!outcome.pass) return outcome;

  stc::Rng rng(0xACC7);
  for (int sample = 0; sample < 200; ++sample) {
    const std::size_t n = 1 + rng.below(5);
    const std::size_t max_m = n * (n - 1) / 2;
    const stc::Graph source =
        stc::random_graph(rng, n, max_m == 0 ? 0 : rng.below(max_m + 1));
    const std::size_t budget = 1 + rng.below(3);
    verify(source, budget, "sample " + std::to_string(sample));
    if (!outcome.pass) return outcome;
  }
  return outcome;
}

// ---------------------------------------------------------------- 8 ----
// Karate fixture: greedy connects both factions, the zero-violation
// baseline fragments them, the connector matches connectivity but not
// violations, and greedy finishes fast.
Outcome criterion8(double* greedy_seconds) {
  Outcome outcome;
  const stc::Graph g = stc::karate_graph();
  const stc::CommunitySet cs = stc::karate_factions(g);

  const auto start = std::chrono::steady_clock::now();
  const stc::GreedyResult greedy = stc::greedy_labeling(g, cs);
  *greedy_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (stc::induced_strong_components(g, greedy.labeling, cs.community(i)) != 1) {
      outcome.fail("greedy leaves faction " + std::to_string(i) + " disconnected");
    }
  }

  stc::ZeroViolationOptions zv;
  zv.mode = stc::ZeroViolationMode::matching;  // the fixture is past the exact caps
  const stc::Labeling sintos = stc::baseline_sintos(g, zv);
  const stc::LabelStats sintos_stats = stc::label_stats(g, cs, sintos);
  if (sintos_stats.violations != 0) outcome.fail("zero-violation baseline violated");
  if (!(sintos_stats.mean_components > 1.0)) {
    outcome.fail("zero-violation baseline did not fragment the factions");
  }

  const stc::Labeling angluin = stc::baseline_angluin(g, cs);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (stc::induced_strong_components(g, angluin, cs.community(i)) != 1) {
      outcome.fail("connector leaves faction " + std::to_string(i) + " disconnected");
    }
  }
  if (stc::violation_count(g, angluin) < greedy.violations) {
    outcome.fail("connector beat greedy on violations");
  }
  if (*greedy_seconds >= 1.0) {
    outcome.fail("greedy took " + std::to_string(*greedy_seconds) + "s");
  }
  return outcome;
}

// ---------------------------------------------------------------- 9 ----
// Baseline guarantees on 200 seeded graphs: the zero-violation baseline
// delivers, matching mode stays within twice the exact minimum, and the
// connector is feasible and inclusion-minimal.
Outcome criterion9() {
  Outcome outcome;
  stc::Rng rng(0xACC9);
  for (int sample = 0; sample < 200; ++sample) {
    const std::size_t n = 5 + rng.below(6);  // 5..10
    const std::size_t max_m = std::min<std::size_t>(20, n * (n - 1) / 2);
    const std::size_t m = (n - 1) + rng.below(max_m - (n - 1) + 1);
    const stc::Graph g = stc::random_connected_graph(rng, n, m);
    const brute::SmallGraph sg = convert::from_stc(g);

    const stc::Labeling exact = stc::baseline_sintos(g);
    if (stc::violation_count(g, exact) != 0) {
      outcome.fail("exact mode left violations at sample " + std::to_string(sample));
      return outcome;
    }
    stc::ZeroViolationOptions zv;
    zv.mode = stc::ZeroViolationMode::matching;
    const stc::Labeling matched = stc::baseline_sintos(g, zv);
    if (stc::violation_count(g, matched) != 0) {
      outcome.fail("matching mode left violations at sample " + std::to_string(sample));
      return outcome;
    }
    const std::size_t exact_weak = g.edge_count() - exact.strong_count();
    const std::size_t matched_weak = g.edge_count() - matched.strong_count();
    if (matched_weak > 2 * exact_weak) {
      outcome.fail("matching exceeded twice the exact minimum at sample " +
                   std::to_string(sample));
      return outcome;
    }

    stc::CommunitySet cs;
    try {
      cs = stc::random_feasible_communities(rng, g, 1 + rng.below(3), 5);
    } catch (const stc::ContractError&) {
      continue;
    }
    const auto masks = convert::community_masks(cs);
    const stc::Labeling connector = stc::baseline_angluin(g, cs);
    const std::uint64_t strong = convert::strong_mask(connector);
    if (!brute::feasible(sg, strong, masks)) {
      outcome.fail("connector infeasible at sample " + std::to_string(sample));
      return outcome;
    }
    for (stc::EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!connector.is_strong(e)) continue;
      if (brute::feasible(sg, strong & ~(std::uint64_t{1} << e), masks)) {
        outcome.fail("connector kept a removable edge at sample " +
                     std::to_string(sample));
        return outcome;
      }
    }
  }
  return outcome;
}

// --------------------------------------------------------------- 10 ----
// Two CLI eval runs with identical seeds write byte-identical reports.
Outcome criterion10() {
  Outcome outcome;
  const fs::path dir = fs::temp_directory_path() / "stc_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto run = [&](const fs::path& report, const fs::path& json) {
    const std::string cmd = std::string(STC_CLI_PATH) +
                            " eval --karate --seed 7 --split-seed 3 --mode matching" +
                            " --report " + report.string() + " --json " + json.string() +
                            " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const fs::path r1 = dir / "first.report", j1 = dir / "first.json";
  const fs::path r2 = dir / "second.report", j2 = dir / "second.json";
  if (!run(r1, j1) || !run(r2, j2)) {
    outcome.fail("eval invocation failed");
    return outcome;
  }
  const std::string first = slurp(r1);
  if (first.empty()) outcome.fail("empty report");
  if (first != slurp(r2)) outcome.fail("reports differ between runs");
  if (slurp(j1) != slurp(j2)) outcome.fail("json reports differ between runs");
  return outcome;
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int number, const Outcome& outcome, double seconds,
                          double limit) {
    const bool timed_out = limit > 0 && seconds >= limit;
    const bool pass = outcome.pass && !timed_out;
    std::printf("criterion %d: %s (%.1fs)", number, pass ? "PASS" : "FAIL", seconds);
    if (!outcome.pass) std::printf(" %s", outcome.detail.c_str());
    if (timed_out) std::printf(" over the %.0fs budget", limit);
    std::printf("\n");
    std::fflush(stdout);
    if (!pass) ++failures;
  };
  const auto timed = [&](int number, const std::function<Outcome()>& run, double limit) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(number, outcome, seconds, limit);
  };

  timed(1, criterion1, 60.0);
  timed(2, criterion2, 120.0);
  timed(3, criterion3, 0.0);
  timed(4, criterion4, 0.0);
  timed(5, criterion5, 0.0);
  timed(6, criterion6, 0.0);
  timed(7, criterion7, 300.0);
  double greedy_seconds = 0.0;
  timed(8, [&] { return criterion8(&greedy_seconds); }, 0.0);
  timed(9, criterion9, 0.0);
  timed(10, criterion10, 0.0);

  return failures == 0 ? 0 : 1;
}
