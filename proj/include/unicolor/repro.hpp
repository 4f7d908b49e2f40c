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

// Self-asserting reproductions of the lower-bound and impossibility
// constructions. Each one is a short composition of the engine, the scheduler
// scripts and the verifier.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unicolor/algorithm.hpp"
#include "unicolor/coloring.hpp"
#include "unicolor/engine.hpp"
#include "unicolor/graph.hpp"
#include "unicolor/scheduler.hpp"
#include "unicolor/verify.hpp"

namespace unicolor {

struct ReproReport {
  std::string scenario;
  bool passed = true;
  std::string summary;
  std::vector<std::string> failures;
  nlohmann::json details = nlohmann::json::object();

  void fail(std::string what) {
    passed = false;
    failures.push_back(std::move(what));
  }
};

inline nlohmann::json to_json(const ReproReport& r) {
  return {{"scenario", r.scenario},
          {"passed", r.passed},
          {"summary", r.summary},
          {"failures", r.failures},
          {"details", r.details}};
}

// Synchronous scheduler from a uniform ring: every round moves every process
// to the same next color, so the configuration stays uniform forever.
inline ReproReport repro_sync_ring(std::size_t n, std::size_t steps, Color k = 0) {
  ReproReport r;
  r.scenario = "sync-ring";
  if (k == 0) {
    k = static_cast<Color>(n);
  }
  const auto g = gen_ring(n);
  const auto trace = run_uniform(g, AlgorithmSpec::ring_deterministic(k), SchedulerPolicy::synchronous(), 0, steps,
                                 0, TraceMode::Full);
  if (trace.total_steps != steps) {
    r.fail(detail::concat("ran ", trace.total_steps, " rounds, expected ", steps));
  }
  if (trace.terminated) {
    r.fail("execution terminated");
  }
  std::size_t uniform = 0;
  std::vector<Color> colors;
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const Configuration c(trace.steps[s].after, k);
    const Color expected = static_cast<Color>((s + 1) % k);
    if (!c.is_uniform() || c[0] != expected) {
      if (r.failures.size() < 8) {
        r.fail(detail::concat("step ", s, ": configuration not uniform at color ", expected));
      }
      continue;
    }
    if (is_terminal(g, c)) {
      r.fail(detail::concat("step ", s, ": configuration is terminal"));
      continue;
    }
    ++uniform;
    colors.push_back(c[0]);
  }
  r.details = {{"n", n}, {"k", k}, {"steps", steps}, {"uniform_configurations", uniform}, {"colors", colors}};
  r.summary = detail::concat("steps=", trace.total_steps, " uniform=", uniform, " expected=", steps,
                             r.passed ? " OK" : " FAIL");
  return r;
}

// Uniform chain with k = n under the chain schedule: n(n-1)/2 effective
// moves, ending legitimate and terminal.
inline ReproReport repro_chain_worst_case(std::size_t n) {
  ReproReport r;
  r.scenario = "chain";
  const auto g = gen_chain(n);
  const auto script = chain_schedule(n);
  const std::size_t expected = n * (n - 1) / 2;
  const auto k = static_cast<Color>(n);
  try {
    const auto trace = run_uniform(g, AlgorithmSpec::deterministic(k), SchedulerPolicy::scripted(script), 0,
                                   script.size(), 0);
    if (trace.total_steps != script.size()) {
      r.fail(detail::concat("replayed ", trace.total_steps, " of ", script.size(), " scripted activations"));
    }
    if (trace.total_moves != expected) {
      r.fail(detail::concat("moves=", trace.total_moves, " expected=", expected));
    }
    if (!trace.terminated) {
      r.fail("final configuration is not terminal");
    }
    if (!is_legitimate(g, trace.final_config)) {
      r.fail("final configuration is not legitimate");
    }
    r.details = {{"n", n},
                 {"k", k},
                 {"moves", trace.total_moves},
                 {"expected", expected},
                 {"final", to_json(trace.final_config)},
                 {"terminated", trace.terminated}};
    r.summary = detail::concat("moves=", trace.total_moves, " expected=", expected, r.passed ? " OK" : " FAIL");
  } catch (const ScriptViolation& e) {
    r.fail(e.what());
    r.summary = detail::concat("script violation: ", e.what());
  }
  return r;
}

// Ring initial configuration (0, 0, 1, 2, ..., n-2).
inline Configuration ring_chase_initial(std::size_t n, Color k) {
  std::vector<Color> colors(n);
  for (std::size_t i = 1; i < n; ++i) {
    colors[i] = static_cast<Color>(i - 1);
  }
  return Configuration(std::move(colors), k);
}

// With k = n-1 the chase never ends: every n-1 activations the ring returns
// to a rotation of its initial configuration. With k = n the same chase
// terminates in a legitimate configuration.
inline ReproReport repro_ring_chase(std::size_t n, std::size_t laps) {
  ReproReport r;
  r.scenario = "ring-chase";
  if (n < 3) {
    throw Error("ring-chase needs n >= 3");
  }
  const auto g = gen_ring(n);
  const auto k = static_cast<Color>(n - 1);
  const auto initial = ring_chase_initial(n, k);
  const std::size_t lap = n - 1;

  const auto script = ring_chase_schedule(g, initial, laps * lap);
  if (script.size() != laps * lap) {
    r.fail(detail::concat("chase stopped after ", script.size(), " activations, expected ", laps * lap));
  }
  const auto trace = run(g, AlgorithmSpec::ring_deterministic(k), SchedulerPolicy::scripted(script), initial,
                         script.size(), 0, TraceMode::Full);
  std::vector<std::size_t> offsets;
  for (std::size_t l = 1; l <= laps && l * lap <= trace.steps.size(); ++l) {
    const auto& after = trace.steps[l * lap - 1].after;
    const auto offset = rotation_offset(initial.colors(), after);
    if (!offset) {
      r.fail(detail::concat("lap ", l, ": configuration is not a rotation of the initial one"));
    } else {
      offsets.push_back(*offset);
    }
  }
  if (trace.terminated) {
    r.fail("chase with k = n-1 terminated");
  }

  const auto kn = static_cast<Color>(n);
  const auto contrast_initial = ring_chase_initial(n, kn);
  const auto contrast_script = ring_chase_schedule(g, contrast_initial, 10 * n * n);
  const auto contrast = run(g, AlgorithmSpec::ring_deterministic(kn), SchedulerPolicy::scripted(contrast_script),
                            contrast_initial, contrast_script.size(), 0);
  if (!contrast.terminated || !is_legitimate(g, contrast.final_config)) {
    r.fail("chase with k = n did not terminate legitimately");
  }

  r.details = {{"n", n},
               {"k", k},
               {"laps", laps},
               {"activations", trace.total_steps},
               {"rotation_offsets", offsets},
               {"contrast_k", kn},
               {"contrast_moves", contrast.total_moves},
               {"contrast_terminated", contrast.terminated}};
  r.summary = detail::concat("activations=", trace.total_steps, " rotations=", offsets.size(), "/", laps,
                             " contrast_k=", kn, " contrast_moves=", contrast.total_moves,
                             " contrast_terminated=", contrast.terminated ? "yes" : "no", r.passed ? " OK" : " FAIL");
  return r;
}

// Bidirectional clique of delta+1 processes: no legitimate configuration with
// delta colors; with delta+1 colors some exist and the probabilistic rule
// reaches one from everywhere.
inline ReproReport repro_clique_state_bound(std::size_t delta) {
  ReproReport r;
  r.scenario = "clique-bound";
  if (delta < 1) {
    throw Error("clique-bound needs delta >= 1");
  }
  const auto g = gen_clique_bidirectional(delta + 1);
  const auto too_few = static_cast<Color>(delta);
  const auto enough = static_cast<Color>(delta + 1);
  const std::size_t legit_too_few = count_legitimate(g, too_few);
  const std::size_t legit_enough = count_legitimate(g, enough);
  if (legit_too_few != 0) {
    r.fail(detail::concat(legit_too_few, " legitimate configurations with k=", too_few));
  }
  if (legit_enough == 0) {
    r.fail(detail::concat("no legitimate configuration with k=", enough));
  }
  const auto support = verify_probabilistic_support(g, enough);
  if (!support.all_converge) {
    r.fail("probabilistic support check failed with k = delta+1");
  }
  r.details = {{"delta", delta},
               {"n", g.size()},
               {"legitimate_with_k_delta", legit_too_few},
               {"legitimate_with_k_delta_plus_1", legit_enough},
               {"probabilistic_support", support.all_converge}};
  r.summary = detail::concat("k=", too_few, " legitimate=", legit_too_few, " k=", enough,
                             " legitimate=", legit_enough, r.passed ? " OK" : " FAIL");
  return r;
}

}  // namespace unicolor
