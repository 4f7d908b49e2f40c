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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "unicolor/algorithm.hpp"
#include "unicolor/coloring.hpp"
#include "unicolor/engine.hpp"
#include "unicolor/error.hpp"
#include "unicolor/graph.hpp"
#include "unicolor/rng.hpp"
#include "unicolor/scheduler.hpp"

namespace unicolor {

enum class InitialDistribution { UniformZero, RandomEachTrial, Worst };

inline std::string_view to_string(InitialDistribution d) {
  switch (d) {
    case InitialDistribution::UniformZero: return "uniform";
    case InitialDistribution::RandomEachTrial: return "random";
    case InitialDistribution::Worst: return "worst";
  }
  return "?";
}

inline InitialDistribution initial_distribution_from_string(std::string_view s) {
  if (s == "uniform") return InitialDistribution::UniformZero;
  if (s == "random") return InitialDistribution::RandomEachTrial;
  if (s == "worst") return InitialDistribution::Worst;
  throw Error(detail::concat("unknown initial distribution '", s, "' (expected uniform|random|worst)"));
}

// Number of standard errors allowed above the bound by the one-sided check.
inline constexpr double kBoundSigmas = 3.0;

struct ExperimentConfig {
  std::string graph = "ring:20";
  AlgorithmKind algo = AlgorithmKind::Probabilistic;
  Color k = 3;
  // Scheduler spec as accepted by policy_from_spec; ignored when `script` is set.
  std::string scheduler = "lc1";
  std::optional<Script> script;
  std::size_t trials = 1;
  // Trial t runs with seed derive_seed(seed_base, t).
  std::uint64_t seed_base = 0;
  // UniformZero starts every trial with all colors 0, Worst starts each trial
  // uniform at a random color, RandomEachTrial draws every color independently.
  InitialDistribution initial = InitialDistribution::RandomEachTrial;
  std::size_t max_steps = 0;
  std::size_t jobs = 1;
};

struct TrialResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t moves = 0;
  std::size_t steps = 0;
  bool converged = false;
  std::string error;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n = 0;
  std::size_t max_degree = 0;
  std::vector<TrialResult> trials;
  std::size_t converged = 0;
  std::size_t failed = 0;
  // Statistics over converged trials.
  double mean_moves = 0;
  double stddev_moves = 0;
  double standard_error = 0;
  std::size_t min_moves = 0;
  std::size_t max_moves = 0;
  std::optional<Rational> bound;
  bool bound_satisfied = true;
  bool mean_below_bound = true;

  bool partial_failure() const { return failed > 0 || converged < trials.size(); }
};

inline void validate(const ExperimentConfig& config, const DirectedGraph& g) {
  if (config.trials < 1) {
    throw Error("experiment needs trials >= 1");
  }
  const auto spec = config.algo == AlgorithmKind::Deterministic ? AlgorithmSpec::deterministic(config.k)
                                                               : AlgorithmSpec::probabilistic(config.k);
  spec.require_fits(g);
}

inline TrialResult run_trial(const DirectedGraph& g, const AlgorithmSpec& spec, const SchedulerPolicy& policy,
                             const ExperimentConfig& config, std::size_t index) {
  TrialResult r;
  r.index = index;
  r.seed = derive_seed(config.seed_base, index);
  try {
    RandomStream init_rng = RandomStream::named(r.seed, "init");
    Configuration initial = [&] {
      switch (config.initial) {
        case InitialDistribution::UniformZero:
          return Configuration::uniform(g.size(), 0, spec.k);
        case InitialDistribution::Worst:
          return Configuration::uniform(g.size(), static_cast<Color>(init_rng.uniform_index(spec.k)), spec.k);
        case InitialDistribution::RandomEachTrial:
          break;
      }
      return Configuration::random(g.size(), spec.k, init_rng);
    }();
    const auto trace = run(g, spec, policy, initial, config.max_steps, r.seed);
    r.moves = trace.total_moves;
    r.steps = trace.total_steps;
    r.converged = trace.terminated;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

// Runs `config.trials` independent executions on `g`, `config.jobs` at a time.
// Results are keyed by trial index, so the report does not depend on jobs.
inline ExperimentReport run_experiment(const ExperimentConfig& config, const DirectedGraph& g) {
  validate(config, g);
  const auto spec = AlgorithmSpec{config.algo, config.k};
  const SchedulerPolicy policy =
      config.script ? SchedulerPolicy::scripted(*config.script) : policy_from_spec(config.scheduler);

  ExperimentReport report;
  report.config = config;
  report.n = g.size();
  report.max_degree = g.max_degree();
  report.trials.resize(config.trials);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < config.trials; t = next++) {
      report.trials[t] = run_trial(g, spec, policy, config, t);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, config.trials);
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }

  double sum = 0;
  bool first = true;
  for (const auto& t : report.trials) {
    if (!t.error.empty()) {
      ++report.failed;
      continue;
    }
    if (!t.converged) {
      continue;
    }
    ++report.converged;
    sum += static_cast<double>(t.moves);
    report.min_moves = first ? t.moves : std::min(report.min_moves, t.moves);
    report.max_moves = first ? t.moves : std::max(report.max_moves, t.moves);
    first = false;
  }
  if (report.converged > 0) {
    report.mean_moves = sum / static_cast<double>(report.converged);
  }
  if (report.converged > 1) {
    double ss = 0;
    for (const auto& t : report.trials) {
      if (t.error.empty() && t.converged) {
        const double d = static_cast<double>(t.moves) - report.mean_moves;
        ss += d * d;
      }
    }
    report.stddev_moves = std::sqrt(ss / static_cast<double>(report.converged - 1));
    report.standard_error = report.stddev_moves / std::sqrt(static_cast<double>(report.converged));
  }

  if (config.algo == AlgorithmKind::Probabilistic) {
    report.bound = expected_total_steps_bound(g.size(), g.max_degree(), config.k);
    const double b = to_double(*report.bound);
    report.mean_below_bound = report.mean_moves <= b;
    report.bound_satisfied = report.converged > 0 && report.mean_moves <= b + kBoundSigmas * report.standard_error;
  }
  return report;
}

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, graph_from_spec(config.graph));
}

// One report per palette size. Every k is validated before any trial runs.
inline std::vector<ExperimentReport> sweep(const ExperimentConfig& config, const std::vector<Color>& k_values) {
  const DirectedGraph g = graph_from_spec(config.graph);
  if (k_values.empty()) {
    throw Error("sweep needs at least one k");
  }
  for (Color k : k_values) {
    ExperimentConfig c = config;
    c.k = k;
    validate(c, g);
  }
  std::vector<ExperimentReport> out;
  for (Color k : k_values) {
    ExperimentConfig c = config;
    c.k = k;
    out.push_back(run_experiment(c, g));
  }
  return out;
}

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.graph = j.value("graph", c.graph);
  c.algo = j.value("algo", std::string("prob")) == "det" ? AlgorithmKind::Deterministic : AlgorithmKind::Probabilistic;
  if (j.contains("algo") && j["algo"] != "det" && j["algo"] != "prob") {
    throw Error("config: algo must be det or prob");
  }
  c.k = j.value("k", c.k);
  c.scheduler = j.value("sched", c.scheduler);
  c.trials = j.value("trials", c.trials);
  c.seed_base = j.value("seed", c.seed_base);
  c.initial = initial_distribution_from_string(j.value("initial", std::string("random")));
  c.max_steps = j.value("max_steps", c.max_steps);
  c.jobs = j.value("jobs", c.jobs);
  return c;
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  return {
      {"graph", c.graph},
      {"algo", to_string(c.algo)},
      {"k", c.k},
      {"sched", c.script ? std::string("script") : c.scheduler},
      {"trials", c.trials},
      {"seed", c.seed_base},
      {"initial", to_string(c.initial)},
      {"max_steps", c.max_steps},
  };
}

inline nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.trials) {
    nlohmann::json jt{{"trial", t.index}, {"seed", t.seed}, {"moves", t.moves}, {"steps", t.steps},
                      {"converged", t.converged}};
    if (!t.error.empty()) {
      jt["error"] = t.error;
    }
    trials.push_back(std::move(jt));
  }
  nlohmann::json j{
      {"config", to_json(r.config)},
      {"n", r.n},
      {"max_degree", r.max_degree},
      {"converged", r.converged},
      {"failed", r.failed},
      {"partial_failure", r.partial_failure()},
      {"mean_moves", r.mean_moves},
      {"stddev_moves", r.stddev_moves},
      {"standard_error", r.standard_error},
      {"min_moves", r.min_moves},
      {"max_moves", r.max_moves},
      {"trials", trials},
  };
  if (r.bound) {
    j["bound"] = to_string(*r.bound);
    j["bound_value"] = to_double(*r.bound);
    j["bound_satisfied"] = r.bound_satisfied;
    j["mean_below_bound"] = r.mean_below_bound;
  }
  return j;
}

inline void write_trials_tsv(std::ostream& out, const ExperimentReport& r) {
  out << "trial\tseed\tmoves\tsteps\tconverged\n";
  for (const auto& t : r.trials) {
    out << t.index << '\t' << t.seed << '\t' << t.moves << '\t' << t.steps << '\t' << (t.converged ? 1 : 0) << '\n';
  }
}

inline void write_sweep_tsv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << "k\tmean_moves\tstandard_error\tbound\n";
  for (const auto& r : reports) {
    out << r.config.k << '\t' << r.mean_moves << '\t' << r.standard_error << '\t'
        << (r.bound ? to_string(*r.bound) : std::string("-")) << '\n';
  }
}

}  // namespace unicolor
