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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unicolor/algorithm.hpp"
#include "unicolor/coloring.hpp"
#include "unicolor/error.hpp"
#include "unicolor/graph.hpp"
#include "unicolor/rng.hpp"
#include "unicolor/scheduler.hpp"

namespace unicolor {

enum class TraceMode { Moves, Full };

struct TraceStep {
  ActivationSet activated;
  std::vector<Move> moves;
  // Configuration after the step; only filled in TraceMode::Full.
  std::vector<Color> after;
};

struct ExecutionTrace {
  Configuration initial;
  Configuration final_config;
  std::vector<TraceStep> steps;
  bool terminated = false;
  std::size_t total_moves = 0;
  std::size_t total_steps = 0;
};

class ExecutionError : public Error {
 public:
  ExecutionError(std::size_t step, const std::string& what)
      : Error(detail::concat("step ", step, ": ", what)), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Round cap used when the caller passes max_steps = 0: 10 n^2 for the
// deterministic rule, ceil(100 n (k-1)/(k-Delta)) for the probabilistic one.
inline std::size_t default_max_steps(const DirectedGraph& g, const AlgorithmSpec& algo) {
  const std::size_t n = g.size();
  if (algo.kind == AlgorithmKind::Deterministic || g.max_degree() == 0) {
    return 10 * n * n;
  }
  const Rational bound = 100 * expected_total_steps_bound(n, g.max_degree(), algo.k);
  const auto num = bound.numerator();
  const auto den = bound.denominator();
  return static_cast<std::size_t>((num + den - 1) / den);
}

// Executes until no process is enabled or `max_steps` scheduler rounds have
// run. Every process activated in a round computes its move against the
// configuration at the start of that round; the moves are then applied
// together.
inline ExecutionTrace run(const DirectedGraph& g, const AlgorithmSpec& algo, SchedulerPolicy policy,
                          const Configuration& initial, std::size_t max_steps, std::uint64_t seed,
                          TraceMode mode = TraceMode::Moves) {
  initial.require_matches(g);
  if (initial.palette() != algo.k) {
    throw ConfigurationError(detail::concat("configuration palette ", initial.palette(),
                                            " does not match algorithm k=", algo.k));
  }
  algo.require_fits(g);
  if (max_steps == 0) {
    max_steps = default_max_steps(g, algo);
  }

  RandomStream sched_rng = RandomStream::named(seed, "sched");
  RandomStream algo_rng = RandomStream::named(seed, "algo");
  ExecutionTrace trace{initial, initial, {}, false, 0, 0};
  Configuration& cur = trace.final_config;

  while (true) {
    if (is_terminal(g, cur)) {
      trace.terminated = true;
      break;
    }
    if (trace.total_steps >= max_steps) {
      break;
    }
    const std::size_t step = trace.total_steps;
    std::optional<ActivationSet> selected;
    TraceStep record;
    try {
      selected = policy.select(g, cur, sched_rng);
      if (!selected) {
        break;
      }
      for (ProcessId i : *selected) {
        record.moves.push_back(apply_rule(algo, g, cur, i, algo_rng));
      }
    } catch (const ScriptViolation&) {
      throw;
    } catch (const Error& e) {
      throw ExecutionError(step, e.what());
    }
    for (const Move& m : record.moves) {
      cur.set(m.process, m.new_color);
    }
    record.activated = std::move(*selected);
    if (mode == TraceMode::Full) {
      record.after.assign(cur.colors().begin(), cur.colors().end());
    }
    trace.total_moves += record.moves.size();
    ++trace.total_steps;
    trace.steps.push_back(std::move(record));
  }
  return trace;
}

inline ExecutionTrace run_uniform(const DirectedGraph& g, const AlgorithmSpec& algo, SchedulerPolicy policy,
                                  Color color0, std::size_t max_steps, std::uint64_t seed,
                                  TraceMode mode = TraceMode::Moves) {
  return run(g, algo, std::move(policy), Configuration::uniform(g.size(), color0, algo.k), max_steps, seed,
             mode);
}

// Applies the recorded moves to the initial configuration.
inline Configuration replay(const ExecutionTrace& trace) {
  Configuration c = trace.initial;
  for (const auto& step : trace.steps) {
    for (const Move& m : step.moves) {
      if (c[m.process] != m.old_color) {
        throw Error(detail::concat("trace replay: process ", m.process, " expected color ", m.old_color,
                                   ", found ", c[m.process]));
      }
      c.set(m.process, m.new_color);
    }
  }
  return c;
}

inline nlohmann::json to_json(const Configuration& c) {
  return nlohmann::json(std::vector<Color>(c.colors().begin(), c.colors().end()));
}

inline nlohmann::json to_json(const ExecutionTrace& t, const DirectedGraph& g) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps) {
    nlohmann::json moves = nlohmann::json::array();
    for (const Move& m : s.moves) {
      moves.push_back({m.process, m.old_color, m.new_color});
    }
    nlohmann::json js{{"activated", s.activated}, {"moves", moves}};
    if (!s.after.empty()) {
      js["config"] = s.after;
    }
    steps.push_back(std::move(js));
  }
  return {
      {"n", g.size()},
      {"k", t.initial.palette()},
      {"initial", to_json(t.initial)},
      {"final", to_json(t.final_config)},
      {"terminated", t.terminated},
      {"legitimate", is_legitimate(g, t.final_config)},
      {"total_moves", t.total_moves},
      {"total_steps", t.total_steps},
      {"steps", steps},
  };
}

// One move per line: step, process, old color, new color.
inline void write_tsv(std::ostream& out, const ExecutionTrace& t) {
  out << "step\tprocess\told\tnew\n";
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    for (const Move& m : t.steps[s].moves) {
      out << s << '\t' << m.process << '\t' << m.old_color << '\t' << m.new_color << '\n';
    }
  }
}

}  // namespace unicolor
