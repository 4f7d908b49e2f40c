// Copyright 2026 The unicolor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, experiment, verify and repro subcommands.
// Exit codes: 0 success, 1 assertion failure, 2 usage error.

#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "unicolor/unicolor.hpp"

namespace unicolor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void emit(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw UsageError(unicolor::detail::concat("cannot write '", path, "'"));
  }
  f << body;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// uniform:<c> | random | colors:<c0,c1,...>
inline Configuration parse_initial(const std::string& spec, const DirectedGraph& g, Color k, std::uint64_t seed) {
  if (spec == "random") {
    RandomStream rng = RandomStream::named(seed, "init");
    return Configuration::random(g.size(), k, rng);
  }
  if (spec.rfind("uniform:", 0) == 0) {
    return Configuration::uniform(g.size(), static_cast<Color>(std::stoul(spec.substr(8))), k);
  }
  if (spec.rfind("colors:", 0) == 0) {
    std::vector<Color> colors;
    std::istringstream in(spec.substr(7));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      colors.push_back(static_cast<Color>(std::stoul(tok)));
    }
    Configuration c(std::move(colors), k);
    c.require_matches(g);
    return c;
  }
  throw UsageError(unicolor::detail::concat("invalid --init '", spec, "' (expected uniform:<c>|random|colors:<list>)"));
}

inline std::string summary_of(const ExecutionTrace& t, const DirectedGraph& g) {
  std::ostringstream s;
  s << "terminated=" << (t.terminated ? "yes" : "no") << " legitimate=" << (is_legitimate(g, t.final_config) ? "yes" : "no")
    << " moves=" << t.total_moves << " steps=" << t.total_steps << " final=";
  const auto colors = t.final_config.colors();
  for (std::size_t i = 0; i < colors.size(); ++i) {
    s << (i ? "," : "") << colors[i];
  }
  return s.str();
}

}  // namespace detail

inline int main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-stabilizing unidirectional coloring: simulator, experiments, verifier"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one execution and emit its trace");
  std::string graph_spec;
  std::string algo_name = "det";
  Color k = 0;
  std::string sched_spec = "lc1";
  std::uint64_t seed = 0;
  std::size_t max_steps = 0;
  std::string init_spec = "uniform:0";
  std::string trace_mode = "moves";
  run_cmd->add_option("--graph", graph_spec, "ring:<n> | chain:<n> | clique:<n> | random:<n>:<deg>:<seed> | file:<path>")
      ->required();
  run_cmd->add_option("--algo", algo_name, "det | prob")->check(CLI::IsMember({"det", "prob"}));
  run_cmd->add_option("--k", k, "Palette size")->required();
  run_cmd->add_option("--sched", sched_spec, "sync | dist | lc1 | lcmax | script:<file>");
  run_cmd->add_option("--seed", seed, "Random seed");
  run_cmd->add_option("--max-steps", max_steps, "Scheduler round cap (0 = default)");
  run_cmd->add_option("--init", init_spec, "uniform:<c> | random | colors:<c0,c1,...>");
  run_cmd->add_option("--trace", trace_mode, "moves | full")->check(CLI::IsMember({"moves", "full"}));
  run_cmd->add_option("--out", out_path, "Write the trace here");
  run_cmd->add_option("--format", format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Batch of seeded runs with bound comparison");
  std::string config_path;
  std::string exp_graph;
  std::string exp_algo;
  Color exp_k = 0;
  std::string exp_sched;
  std::size_t trials = 0;
  std::uint64_t exp_seed = 0;
  bool exp_seed_set = false;
  std::string initial_dist;
  std::size_t exp_max_steps = 0;
  std::size_t jobs = 0;
  std::vector<Color> sweep_k;
  exp_cmd->add_option("--config", config_path, "JSON experiment config");
  exp_cmd->add_option("--graph", exp_graph, "Graph spec");
  exp_cmd->add_option("--algo", exp_algo, "det | prob")->check(CLI::IsMember({"det", "prob"}));
  exp_cmd->add_option("--k", exp_k, "Palette size");
  exp_cmd->add_option("--sched", exp_sched, "Scheduler spec");
  exp_cmd->add_option("--trials", trials, "Number of trials");
  auto* seed_opt = exp_cmd->add_option("--seed", exp_seed, "Seed base");
  exp_cmd->add_option("--initial", initial_dist, "uniform | random | worst");
  exp_cmd->add_option("--max-steps", exp_max_steps, "Per-trial round cap (0 = default)");
  exp_cmd->add_option("--jobs", jobs, "Worker threads");
  exp_cmd->add_option("--sweep", sweep_k, "Palette sizes to sweep")->delimiter(',');
  exp_cmd->add_option("--out", out_path, "Write the report here");
  exp_cmd->add_option("--format", format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustive small-instance verification");
  std::string v_graph;
  std::string v_algo = "det";
  Color v_k = 0;
  std::string policy_class = "lc1";
  std::size_t max_depth = 0;
  std::uint64_t cap = kDefaultEnumerationCap;
  bool expect_diverge = false;
  verify_cmd->add_option("--graph", v_graph, "Graph spec")->required();
  verify_cmd->add_option("--algo", v_algo, "det | prob")->check(CLI::IsMember({"det", "prob"}));
  verify_cmd->add_option("--k", v_k, "Palette size")->required();
  verify_cmd->add_option("--policy-class", policy_class, "lc1 | dist")->check(CLI::IsMember({"lc1", "dist"}));
  verify_cmd->add_option("--max-depth", max_depth, "Move bound per execution (0 = none)");
  verify_cmd->add_option("--cap", cap, "Enumeration cap on k^n");
  verify_cmd->add_flag("--expect-diverge", expect_diverge, "Succeed only if a divergence is found");
  verify_cmd->add_option("--out", out_path, "Write the report here");

  // repro
  auto* repro_cmd = app.add_subcommand("repro", "Named lower-bound and impossibility reproductions");
  repro_cmd->require_subcommand(1);
  std::size_t rn = 0;
  std::size_t rsteps = 200;
  Color rk = 0;
  std::size_t laps = 3;
  std::size_t delta = 0;
  auto* sync_cmd = repro_cmd->add_subcommand("sync-ring", "Synchronous divergence on a uniform ring");
  sync_cmd->add_option("--n", rn, "Ring size")->required();
  sync_cmd->add_option("--steps", rsteps, "Rounds to run");
  sync_cmd->add_option("--k", rk, "Palette size (default n)");
  sync_cmd->add_option("--out", out_path, "Write the report here");
  auto* chain_cmd = repro_cmd->add_subcommand("chain", "Worst-case chain schedule");
  chain_cmd->add_option("--n", rn, "Chain length")->required();
  chain_cmd->add_option("--out", out_path, "Write the report here");
  auto* chase_cmd = repro_cmd->add_subcommand("ring-chase", "Rotation-periodic chase with k = n-1");
  chase_cmd->add_option("--n", rn, "Ring size")->required();
  chase_cmd->add_option("--laps", laps, "Laps to run");
  chase_cmd->add_option("--out", out_path, "Write the report here");
  auto* clique_cmd = repro_cmd->add_subcommand("clique-bound", "Pigeonhole bound on a bidirectional clique");
  clique_cmd->add_option("--delta", delta, "Degree")->required();
  clique_cmd->add_option("--out", out_path, "Write the report here");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  exp_seed_set = seed_opt->count() > 0;

  // Setup failures (bad graph specs, unreadable files, invalid parameters)
  // are usage errors; failures during execution are assertion failures.
  bool setup = true;
  try {
    if (run_cmd->parsed()) {
      const auto g = graph_from_spec(graph_spec);
      const auto spec = AlgorithmSpec::parse(algo_name, k);
      auto policy = policy_from_spec(sched_spec);
      const auto initial = detail::parse_initial(init_spec, g, k, seed);
      spec.require_fits(g);
      setup = false;
      const auto trace = run(g, spec, std::move(policy), initial, max_steps, seed,
                             trace_mode == "full" ? TraceMode::Full : TraceMode::Moves);
      std::string body;
      if (format == "tsv") {
        std::ostringstream s;
        write_tsv(s, trace);
        body = s.str();
      } else {
        auto j = to_json(trace, g);
        j["algo"] = algo_name;
        j["sched"] = sched_spec;
        j["seed"] = seed;
        body = detail::dump(j);
      }
      if (!out_path.empty()) {
        detail::emit(out_path, body, out);
      }
      out << detail::summary_of(trace, g) << "\n";
      return kExitOk;
    }

    if (exp_cmd->parsed()) {
      ExperimentConfig config;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
          throw UsageError(unicolor::detail::concat("cannot open config '", config_path, "'"));
        }
        config = experiment_config_from_json(nlohmann::json::parse(f));
      }
      if (!exp_graph.empty()) config.graph = exp_graph;
      if (!exp_algo.empty()) config.algo = exp_algo == "det" ? AlgorithmKind::Deterministic : AlgorithmKind::Probabilistic;
      if (exp_k != 0) config.k = exp_k;
      if (!exp_sched.empty()) config.scheduler = exp_sched;
      if (trials != 0) config.trials = trials;
      if (exp_seed_set) config.seed_base = exp_seed;
      if (!initial_dist.empty()) config.initial = initial_distribution_from_string(initial_dist);
      if (exp_max_steps != 0) config.max_steps = exp_max_steps;
      if (jobs != 0) config.jobs = jobs;

      std::vector<ExperimentReport> reports;
      if (sweep_k.empty()) {
        const auto g = graph_from_spec(config.graph);
        validate(config, g);
        setup = false;
        reports.push_back(run_experiment(config, g));
      } else {
        const auto g = graph_from_spec(config.graph);
        for (Color kv : sweep_k) {
          ExperimentConfig probe = config;
          probe.k = kv;
          validate(probe, g);
        }
        setup = false;
        reports = sweep(config, sweep_k);
      }

      std::string body;
      std::ostringstream s;
      if (format == "tsv") {
        if (reports.size() == 1) {
          write_trials_tsv(s, reports.front());
        } else {
          write_sweep_tsv(s, reports);
        }
        body = s.str();
      } else if (reports.size() == 1) {
        body = detail::dump(to_json(reports.front()));
      } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) {
          arr.push_back(to_json(r));
        }
        body = detail::dump({{"sweep", arr}});
      }
      if (!out_path.empty()) {
        detail::emit(out_path, body, out);
      }

      bool ok = true;
      for (const auto& r : reports) {
        out << "k=" << r.config.k << " trials=" << r.trials.size() << " converged=" << r.converged
            << " mean_moves=" << r.mean_moves << " stddev=" << r.stddev_moves;
        if (r.bound) {
          out << " bound=" << to_string(*r.bound) << " bound_satisfied=" << (r.bound_satisfied ? "yes" : "no");
        }
        out << "\n";
        ok = ok && !r.partial_failure() && r.bound_satisfied;
      }
      return ok ? kExitOk : kExitAssertion;
    }

    if (verify_cmd->parsed()) {
      const auto g = graph_from_spec(v_graph);
      const auto pc = policy_class_from_string(policy_class);
      const auto v_spec = AlgorithmSpec::parse(v_algo, v_k);
      v_spec.require_fits(g);
      ConfigurationCodec(g.size(), v_k, cap);
      setup = false;
      VerificationReport report;
      if (v_algo == "det") {
        report = verify_deterministic(g, v_k, pc, max_depth, cap);
      } else {
        if (pc != PolicyClass::AllLocallyCentralSingle) {
          throw UsageError("probabilistic verification supports only --policy-class lc1");
        }
        report = verify_probabilistic_support(g, v_k, max_depth, cap);
      }
      if (!out_path.empty()) {
        detail::emit(out_path, detail::dump(to_json(report)), out);
      }
      out << "all_converge=" << (report.all_converge ? "true" : "false")
          << " worst_case_moves=" << report.worst_case_moves
          << " configurations=" << report.configurations_checked;
      if (!report.divergence_kind.empty()) {
        out << " divergence=" << report.divergence_kind;
      }
      out << "\n";
      const bool ok = expect_diverge ? !report.all_converge : report.all_converge;
      return ok ? kExitOk : kExitAssertion;
    }

    if (repro_cmd->parsed()) {
      // Repro functions only throw on invalid parameters; failed assertions
      // come back in the report.
      ReproReport report;
      if (sync_cmd->parsed()) {
        report = repro_sync_ring(rn, rsteps, rk);
      } else if (chain_cmd->parsed()) {
        report = repro_chain_worst_case(rn);
      } else if (chase_cmd->parsed()) {
        report = repro_ring_chase(rn, laps);
      } else {
        report = repro_clique_state_bound(delta);
      }
      if (!out_path.empty()) {
        detail::emit(out_path, detail::dump(to_json(report)), out);
      }
      out << report.summary << "\n";
      for (const auto& f : report.failures) {
        err << "  " << f << "\n";
      }
      return report.passed ? kExitOk : kExitAssertion;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return setup ? kExitUsage : kExitAssertion;
  }
  return kExitUsage;
}

}  // namespace unicolor::cli
