#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stc/stc.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw stc::ParseError("cannot read " + path, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw stc::ParseError("cannot write " + path, 0);
  out << content;
}

struct Options {
  std::string graph_path;
  std::string communities_path;
  std::string output_path;
  std::string report_path;
  std::string json_path;
  std::string communities_out;
  bool karate = false;
  bool minimize_strong = false;
  bool demote_zero_gain = false;
  bool no_restrict_lcc = false;
  bool restricted_denominators = false;
  bool no_count_optima = false;
  std::uint64_t seed = 0;
  std::uint64_t split_seed = 1;
  std::size_t cap_m = 22;
  std::size_t clique_budget = 0;
  std::uint64_t trials = 1000;
  std::string mode = "exact";
  std::string backend = "forest";
};

stc::Graph load_graph_input(const Options& opt) {
  if (opt.karate) return stc::karate_graph();
  if (opt.graph_path.empty()) {
    throw stc::ParseError("no input graph: pass --graph FILE or --karate", 0);
  }
  return stc::load_graph(read_file(opt.graph_path));
}

stc::CommunitySet load_communities_input(const Options& opt, const stc::Graph& g,
                                         bool required) {
  if (opt.karate) return stc::karate_factions(g);
  if (opt.communities_path.empty()) {
    if (required) {
      throw stc::ParseError("no communities: pass --communities FILE or --karate", 0);
    }
    return stc::CommunitySet();
  }
  return stc::load_communities(read_file(opt.communities_path), g, !opt.no_restrict_lcc);
}

stc::ConnectivityOracle::Backend backend_of(const Options& opt) {
  return opt.backend == "rebuild" ? stc::ConnectivityOracle::Backend::rebuild_scan
                                  : stc::ConnectivityOracle::Backend::spanning_forest;
}

// Labeling goes to --output or stdout; the stats report goes to --report,
// falling back to stderr when the labeling already occupies stdout.
void emit_labeling_and_stats(const Options& opt, const stc::Graph& g,
                             const stc::CommunitySet& cs, const stc::Labeling& labeling,
                             const std::string& extra_kv) {
  const std::string tsv = stc::write_labeling_tsv(g, labeling);
  const bool labeling_on_stdout = opt.output_path.empty();
  if (labeling_on_stdout) {
    std::cout << tsv;
  } else {
    write_file(opt.output_path, tsv);
  }
  const std::string kv = stc::label_stats_kv("", stc::label_stats(g, cs, labeling)) + extra_kv;
  if (!opt.report_path.empty()) {
    write_file(opt.report_path, kv);
  } else if (labeling_on_stdout) {
    std::cerr << kv;
  } else {
    std::cout << kv;
  }
}

int run_label(const Options& opt) {
  const stc::Graph g = load_graph_input(opt);
  const stc::CommunitySet cs = load_communities_input(opt, g, true);
  stc::GreedyOptions greedy_options;
  greedy_options.tie_break_seed = opt.seed;
  greedy_options.demote_zero_gain = opt.demote_zero_gain;
  greedy_options.backend = backend_of(opt);
  stc::GreedyResult result = stc::greedy_labeling(g, cs, greedy_options);
  if (opt.minimize_strong) {
    result = stc::minimize_strong_post_pass(g, cs, result, greedy_options);
  }
  const std::string extra = "blocked=" + std::to_string(result.blocked_count) + "\n";
  emit_labeling_and_stats(opt, g, cs, result.labeling, extra);
  return 0;
}

int run_baseline_angluin(const Options& opt) {
  const stc::Graph g = load_graph_input(opt);
  const stc::CommunitySet cs = load_communities_input(opt, g, true);
  const stc::CommunityConnectorResult result = stc::baseline_angluin_trace(g, cs);
  const std::string extra = "pruned=" + std::to_string(result.pruned) + "\n";
  emit_labeling_and_stats(opt, g, cs, result.labeling, extra);
  return 0;
}

int run_baseline_sintos(const Options& opt) {
  const stc::Graph g = load_graph_input(opt);
  const stc::CommunitySet cs = load_communities_input(opt, g, false);
  stc::ZeroViolationOptions zv;
  zv.mode = opt.mode == "matching" ? stc::ZeroViolationMode::matching
                                   : stc::ZeroViolationMode::exact;
  const stc::Labeling labeling = stc::baseline_sintos(g, zv);
  emit_labeling_and_stats(opt, g, cs, labeling, "");
  return 0;
}

int run_oracle(const Options& opt) {
  const stc::Graph g = load_graph_input(opt);
  const stc::CommunitySet cs = load_communities_input(opt, g, true);
  stc::ExactOptions exact_options;
  exact_options.cap_m = opt.cap_m;
  exact_options.count_optima = !opt.no_count_optima;
  const stc::ExactSolution solution = stc::exact_solve(g, cs, exact_options);
  std::string kv;
  kv += "violations=" + std::to_string(solution.violations) + "\n";
  kv += "satisfied=" + std::to_string(solution.satisfied) + "\n";
  kv += "wedges=" + std::to_string(solution.wedge_count) + "\n";
  kv += "optima_count=" + std::to_string(solution.optima_count) + "\n";
  kv += std::string("optima_saturated=") + (solution.optima_saturated ? "1" : "0") + "\n";
  kv += "forced_strong=" + std::to_string(solution.forced_strong) + "\n";
  if (!opt.output_path.empty()) {
    write_file(opt.output_path, stc::write_labeling_tsv(g, solution.labeling));
  }
  if (!opt.report_path.empty()) {
    write_file(opt.report_path, kv);
  } else {
    std::cout << kv;
  }
  return 0;
}

int run_reduce(const Options& opt) {
  const stc::Graph g = load_graph_input(opt);
  const stc::Gadget gadget = stc::build_gadget(g, opt.clique_budget);
  const std::string edges = stc::serialize_edge_list(gadget.graph);
  const bool edges_on_stdout = opt.output_path.empty();
  if (edges_on_stdout) {
    std::cout << edges;
  } else {
    write_file(opt.output_path, edges);
  }
  if (!opt.communities_out.empty()) {
    write_file(opt.communities_out, stc::serialize_communities(gadget.graph, gadget.community));
  }
  std::string kv;
  kv += "vertices=" + std::to_string(gadget.graph.vertex_count()) + "\n";
  kv += "edges=" + std::to_string(gadget.graph.edge_count()) + "\n";
  kv += "k=" + std::to_string(gadget.k) + "\n";
  kv += std::string("singleton_added=") + (gadget.singleton_added ? "1" : "0") + "\n";
  (edges_on_stdout ? std::cerr : std::cout) << kv;
  return 0;
}

nlohmann::json metric_json(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

int run_eval(const Options& opt) {
  const stc::Graph g = load_graph_input(opt);
  const stc::CommunitySet cs = load_communities_input(opt, g, true);
  const stc::CommunitySplit split = stc::split_communities(cs, g, opt.split_seed);

  stc::GreedyOptions greedy_options;
  greedy_options.tie_break_seed = opt.seed;
  greedy_options.demote_zero_gain = opt.demote_zero_gain;
  greedy_options.backend = backend_of(opt);
  stc::GreedyResult greedy = stc::greedy_labeling(g, split.train, greedy_options);
  if (opt.minimize_strong) {
    greedy = stc::minimize_strong_post_pass(g, split.train, greedy, greedy_options);
  }
  const stc::Labeling angluin = stc::baseline_angluin(g, split.train);
  stc::ZeroViolationOptions zv;
  zv.mode = opt.mode == "matching" ? stc::ZeroViolationMode::matching
                                   : stc::ZeroViolationMode::exact;
  stc::Labeling sintos;
  std::string sintos_note;
  try {
    sintos = stc::baseline_sintos(g, zv);
  } catch (const stc::SizeCapError&) {
    zv.mode = stc::ZeroViolationMode::matching;
    sintos = stc::baseline_sintos(g, zv);
    sintos_note = "sintos.fallback=matching\n";
  }

  std::string text;
  text += "command=eval\n";
  text += "seed=" + std::to_string(opt.seed) + "\n";
  text += "split_seed=" + std::to_string(opt.split_seed) + "\n";
  text += "train_communities=" + std::to_string(split.train.size()) + "\n";
  text += "test_communities=" + std::to_string(split.test.size()) + "\n";
  text += sintos_note;

  nlohmann::json doc;
  doc["seed"] = opt.seed;
  doc["split_seed"] = opt.split_seed;
  doc["train_communities"] = split.train.size();
  doc["test_communities"] = split.test.size();

  const std::vector<std::pair<std::string, const stc::Labeling*>> methods = {
      {"greedy", &greedy.labeling}, {"angluin", &angluin}, {"sintos", &sintos}};
  for (const auto& [name, labeling] : methods) {
    const stc::LabelStats stats = stc::label_stats(g, split.train, *labeling);
    const stc::PRReport pr =
        stc::pr_report(g, split.test, *labeling, opt.restricted_denominators);
    text += stc::label_stats_kv(name + ".", stats);
    text += stc::pr_report_kv(name + ".", pr);

    nlohmann::json m;
    m["b"] = stats.violated_fraction;
    m["s"] = stats.strong_fraction;
    m["c"] = stats.mean_components;
    m["P_W"] = metric_json(pr.precision_weak);
    m["R_W"] = metric_json(pr.recall_weak);
    m["P_S"] = metric_json(pr.precision_strong);
    m["R_S"] = metric_json(pr.recall_strong);
    m["sizes"] = {{"weak", pr.weak_edges},
                  {"strong", pr.strong_edges},
                  {"inter", pr.inter_edges},
                  {"intra", pr.intra_edges}};
    doc["methods"][name] = m;
  }

  if (!opt.report_path.empty()) {
    write_file(opt.report_path, text);
  } else {
    std::cout << text;
  }
  if (!opt.json_path.empty()) {
    write_file(opt.json_path, doc.dump(2) + "\n");
  }
  return 0;
}

int run_check(const Options& opt) {
  stc::Rng rng(opt.seed != 0 ? opt.seed : 0x5caff01dULL);
  bool all_pass = true;
  const auto report = [&](const std::string& name, bool pass, const std::string& detail,
                          const std::string& scope) {
    std::cout << name << ": " << (pass ? "pass" : "FAIL") << " (" << scope << ")";
    if (!pass && !detail.empty()) std::cout << " " << detail;
    std::cout << "\n";
    all_pass = all_pass && pass;
  };

  {
    std::uint64_t done = 0;
    bool pass = true;
    std::string detail;
    while (done < opt.trials && pass) {
      const stc::Graph g = stc::random_graph(rng, 8, 12);
      const std::uint64_t batch = std::min<std::uint64_t>(opt.trials - done, 25);
      const stc::CheckReport r = stc::check_supermodularity(g, batch, rng.raw());
      pass = r.pass;
      detail = r.detail;
      done += r.trials;
    }
    report("supermodularity", pass, detail, std::to_string(done) + " trials");
  }
  {
    std::uint64_t done = 0;
    bool pass = true;
    std::string detail;
    while (done < opt.trials && pass) {
      const stc::Graph g = stc::random_graph(rng, 8, 12);
      const std::uint64_t batch = std::min<std::uint64_t>(opt.trials - done, 25);
      const stc::CheckReport r = stc::check_monotonicity(g, batch, rng.raw());
      pass = r.pass;
      detail = r.detail;
      done += r.trials;
    }
    report("monotonicity", pass, detail, std::to_string(done) + " trials");
  }
  {
    bool pass = true;
    std::string detail;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < 100 && pass; ++i) {
      const stc::Graph g = stc::random_connected_graph(rng, 5, 6);
      const auto members = stc::random_connected_subset(rng, g, 2 + rng.below(3));
      if (members.size() < 2) continue;
      const stc::CheckReport r = stc::check_matroid(g, members);
      pass = r.pass;
      detail = r.detail;
      ++checked;
    }
    report("matroid", pass, detail, std::to_string(checked) + " communities");
  }
  {
    bool pass = true;
    std::string detail;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < 100 && pass; ++i) {
      const stc::Graph g = stc::random_connected_graph(rng, 8, 9);
      const auto a = stc::random_connected_subset(rng, g, 3);
      std::vector<stc::VertexId> rest;
      for (stc::VertexId v = 0; v < g.vertex_count(); ++v) {
        if (std::find(a.begin(), a.end(), v) == a.end()) rest.push_back(v);
      }
      std::vector<stc::VertexId> b;
      for (stc::VertexId v : rest) {
        bool adjacent_to_b = b.empty();
        for (stc::VertexId w : b) {
          if (g.find_edge(v, w)) adjacent_to_b = true;
        }
        if (adjacent_to_b && b.size() < 3) b.push_back(v);
      }
      if (b.size() < 2) continue;
      try {
        const stc::CheckReport r = stc::check_direct_sum(g, a, b);
        pass = r.pass;
        detail = r.detail;
        ++checked;
      } catch (const stc::ContractError&) {
        continue;  // sampled pair shares edges; try another
      } catch (const stc::SizeCapError&) {
        continue;
      }
    }
    report("direct-sum", pass, detail, std::to_string(checked) + " pairs");
  }
  {
    const stc::Graph g = stc::karate_graph();
    const stc::CommunitySet cs = stc::karate_factions(g);
    const stc::GreedyResult result = stc::greedy_labeling(g, cs);
    stc::WedgeIndex index = stc::WedgeIndex::build(g);
    bool pass = true;
    std::string detail;
    for (const stc::Demotion& d : result.demotions) {
      if (!d.demoted) continue;
      index.demote(d.edge);
      if (index.total_violations() != stc::violation_count(g, index.labeling())) {
        pass = false;
        detail = "incremental count diverged at edge " + std::to_string(d.edge);
        break;
      }
    }
    report("counter-consistency", pass, detail,
           std::to_string(result.demotions.size()) + " demotions");
  }
  {
    bool pass = true;
    std::string detail;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < 50 && pass; ++i) {
      const std::size_t n = 4 + rng.below(3);
      const std::size_t max_m = n * (n - 1) / 2;
      const stc::Graph g = stc::random_connected_graph(rng, n, std::min(max_m, n + rng.below(4)));
      const std::size_t k = rng.below(3);
      const stc::CommunitySet cs =
          k == 0 ? stc::CommunitySet()
                 : stc::random_feasible_communities(rng, g, k, n);
      const stc::GreedyResult greedy = stc::greedy_labeling(g, cs);
      stc::ExactOptions exact_options;
      exact_options.count_optima = false;
      const stc::ExactSolution opt_solution = stc::exact_solve(g, cs, exact_options);
      const stc::RatioReport ratio =
          stc::approximation_certificate(g, cs, greedy, opt_solution.satisfied);
      if (!ratio.meets_bound) {
        pass = false;
        detail = "ratio " + stc::format_metric(ratio.ratio) + " below bound at instance " +
                 std::to_string(i);
      }
      ++checked;
    }
    report("ratio-bounds", pass, detail, std::to_string(checked) + " instances");
  }

  return all_pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Label social-graph edges strong or weak: minimize open triangles with "
               "two strong edges while keeping every community connected by strong edges"};
  app.require_subcommand(1);

  Options opt;
  const auto add_io = [&](CLI::App* cmd, bool with_communities) {
    CLI::Option* graph_opt = cmd->add_option(
        "--graph,-g", opt.graph_path, "edge list file (token pairs, one per line)");
    if (with_communities) {
      cmd->add_option("--communities,-c", opt.communities_path,
                      "community file (one member list per line)");
      cmd->add_flag("--no-restrict-lcc", opt.no_restrict_lcc,
                    "fail on disconnected communities instead of trimming them to "
                    "their largest connected chunk");
    }
    cmd->add_flag("--karate", opt.karate, "use the embedded karate-club fixture")
        ->excludes(graph_opt);
  };
  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "tie-break seed (0 = lowest edge id wins)")
        ->envname("STC_SEED");
  };

  CLI::App* label = app.add_subcommand("label", "greedy strong/weak labeling");
  add_io(label, true);
  add_seed(label);
  label->add_option("--output,-o", opt.output_path, "labeling TSV destination");
  label->add_option("--report", opt.report_path, "stats destination");
  label->add_flag("--minimize-strong", opt.minimize_strong,
                  "demote every strong edge not needed for connectivity");
  label->add_flag("--demote-zero-gain", opt.demote_zero_gain,
                  "also demote edges that induce no violations");
  label->add_option("--backend", opt.backend, "connectivity backend")
      ->check(CLI::IsMember({"forest", "rebuild"}));

  CLI::App* angluin = app.add_subcommand("baseline-angluin",
                                         "community connector baseline (ignores wedges)");
  add_io(angluin, true);
  angluin->add_option("--output,-o", opt.output_path, "labeling TSV destination");
  angluin->add_option("--report", opt.report_path, "stats destination");

  CLI::App* sintos = app.add_subcommand(
      "baseline-sintos", "zero-violation baseline (ignores communities)");
  add_io(sintos, true);
  sintos->add_option("--output,-o", opt.output_path, "labeling TSV destination");
  sintos->add_option("--report", opt.report_path, "stats destination");
  sintos->add_option("--mode", opt.mode, "exact minimum weak set or matching 2-approximation")
      ->check(CLI::IsMember({"exact", "matching"}));

  CLI::App* eval = app.add_subcommand(
      "eval", "train/test split evaluation of greedy and both baselines");
  add_io(eval, true);
  add_seed(eval);
  eval->add_option("--split-seed", opt.split_seed, "community split seed");
  eval->add_option("--report", opt.report_path, "report destination");
  eval->add_option("--json", opt.json_path, "machine-readable report destination");
  eval->add_flag("--minimize-strong", opt.minimize_strong,
                 "apply the strong-minimization post-pass to greedy");
  eval->add_flag("--demote-zero-gain", opt.demote_zero_gain,
                 "greedy also demotes zero-gain edges");
  eval->add_flag("--restricted-denominators", opt.restricted_denominators,
                 "precision denominators skip edges touching no test community");
  eval->add_option("--mode", opt.mode, "zero-violation baseline mode")
      ->check(CLI::IsMember({"exact", "matching"}));
  eval->add_option("--backend", opt.backend, "connectivity backend")
      ->check(CLI::IsMember({"forest", "rebuild"}));

  CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
  add_io(oracle, true);
  oracle->add_option("--cap-m", opt.cap_m, "edge-count cap for the exact search")
      ->envname("STC_CAP_M");
  oracle->add_flag("--no-count-optima", opt.no_count_optima,
                   "stop at the first proven optimum instead of counting ties");
  oracle->add_option("--output,-o", opt.output_path, "optimal labeling TSV destination");
  oracle->add_option("--report", opt.report_path, "report destination");

  CLI::App* reduce = app.add_subcommand(
      "reduce", "build the clique-cover hardness instance for a graph");
  add_io(reduce, false);
  reduce->add_option("-k,--budget", opt.clique_budget, "clique budget (>= 1)")->required();
  reduce->add_option("--output,-o", opt.output_path, "gadget edge list destination");
  reduce->add_option("--communities-out", opt.communities_out,
                     "gadget community file destination");

  CLI::App* check = app.add_subcommand("check", "run the property suite");
  add_seed(check);
  check->add_option("--trials", opt.trials, "sample count for the randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(label)) return run_label(opt);
    if (app.got_subcommand(angluin)) return run_baseline_angluin(opt);
    if (app.got_subcommand(sintos)) return run_baseline_sintos(opt);
    if (app.got_subcommand(eval)) return run_eval(opt);
    if (app.got_subcommand(oracle)) return run_oracle(opt);
    if (app.got_subcommand(reduce)) return run_reduce(opt);
    if (app.got_subcommand(check)) return run_check(opt);
  } catch (const stc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const stc::FeasibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const stc::SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
