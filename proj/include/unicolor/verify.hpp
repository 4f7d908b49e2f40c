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

// Exhaustive verification over every configuration of a small instance.
//
// Configurations are packed as base-k integers (process 0 is the least
// significant digit), so the whole state space is the index range [0, k^n).
// The deterministic verifier runs a memoized DFS over the configuration graph
// whose edges are the scheduler choices of a policy class; a back edge is a
// divergence cycle, and on an acyclic graph the memo holds the exact longest
// move count to termination. The probabilistic verifier only checks the
// structural support of probability-1 convergence: every configuration must
// reach a terminal one through some sequence of scheduler choices and random
// outcomes.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unicolor/algorithm.hpp"
#include "unicolor/coloring.hpp"
#include "unicolor/engine.hpp"
#include "unicolor/error.hpp"
#include "unicolor/graph.hpp"
#include "unicolor/scheduler.hpp"

namespace unicolor {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

class EnumerationCapExceeded : public Error {
 public:
  EnumerationCapExceeded(std::uint64_t required, std::uint64_t allowed)
      : Error(detail::concat("state space needs ", required, " configurations, cap is ", allowed)),
        required_(required),
        allowed_(allowed) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t allowed() const { return allowed_; }

 private:
  std::uint64_t required_;
  std::uint64_t allowed_;
};

enum class PolicyClass { AllLocallyCentralSingle, AllDistributedSubsets };

inline std::string_view to_string(PolicyClass pc) {
  return pc == PolicyClass::AllLocallyCentralSingle ? "lc1" : "dist";
}

inline PolicyClass policy_class_from_string(std::string_view s) {
  if (s == "lc1") return PolicyClass::AllLocallyCentralSingle;
  if (s == "dist") return PolicyClass::AllDistributedSubsets;
  throw Error(detail::concat("unknown policy class '", s, "' (expected lc1|dist)"));
}

// Initial configuration plus the activation sets applied to it.
struct ScheduleWitness {
  std::vector<Color> initial;
  std::vector<ActivationSet> schedule;
  std::size_t moves = 0;
  // For divergence witnesses: the configuration reached after
  // schedule[0, cycle_start) recurs after the full schedule.
  std::optional<std::size_t> cycle_start;
};

struct VerificationReport {
  std::size_t n = 0;
  std::size_t arcs = 0;
  std::size_t max_degree = 0;
  AlgorithmKind algo = AlgorithmKind::Deterministic;
  Color k = 0;
  PolicyClass policy_class = PolicyClass::AllLocallyCentralSingle;
  std::uint64_t configurations_checked = 0;
  bool all_converge = false;
  // Deterministic: exact longest move count to termination. Probabilistic:
  // the largest over configurations of the fewest moves to a terminal one.
  std::size_t worst_case_moves = 0;
  std::size_t terminal_count = 0;
  std::size_t legitimate_count = 0;
  bool terminal_equals_legitimate = false;
  // "cycle", "depth" or "stuck" when all_converge is false.
  std::string divergence_kind;
  std::optional<ScheduleWitness> witness_divergence;
  std::optional<ScheduleWitness> worst_case_witness;
};

// Base-k packing of configurations.
class ConfigurationCodec {
 public:
  ConfigurationCodec(std::size_t n, Color k, std::uint64_t cap) : n_(n), k_(k) {
    if (k == 0) {
      throw Error("palette size must be positive");
    }
    std::uint64_t total = 1;
    bool overflow = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (total > std::numeric_limits<std::uint64_t>::max() / k) {
        overflow = true;
        break;
      }
      total *= k;
    }
    if (overflow || total > cap) {
      throw EnumerationCapExceeded(overflow ? std::numeric_limits<std::uint64_t>::max() : total, cap);
    }
    total_ = total;
  }

  std::uint64_t total() const { return total_; }

  std::uint64_t encode(std::span<const Color> colors) const {
    std::uint64_t code = 0;
    for (std::size_t i = n_; i-- > 0;) {
      code = code * k_ + colors[i];
    }
    return code;
  }

  Configuration decode(std::uint64_t code) const {
    std::vector<Color> colors(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      colors[i] = static_cast<Color>(code % k_);
      code /= k_;
    }
    return Configuration(std::move(colors), k_);
  }

 private:
  std::size_t n_;
  Color k_;
  std::uint64_t total_ = 0;
};

inline std::size_t count_legitimate(const DirectedGraph& g, Color k, std::uint64_t cap = kDefaultEnumerationCap) {
  const ConfigurationCodec codec(g.size(), k, cap);
  std::size_t count = 0;
  for (std::uint64_t code = 0; code < codec.total(); ++code) {
    count += is_legitimate(g, codec.decode(code)) ? 1 : 0;
  }
  return count;
}

namespace detail {

struct Transition {
  ActivationSet activated;
  std::uint64_t target = 0;
  std::size_t moves = 0;
};

// Every scheduler choice of the class, applied with the deterministic rule
// against the pre-step configuration.
inline std::vector<Transition> deterministic_transitions(const DirectedGraph& g, const ConfigurationCodec& codec,
                                                         const Configuration& c, PolicyClass pc) {
  const auto live = enabled_processes(g, c);
  std::vector<Move> planned;
  planned.reserve(live.size());
  for (ProcessId i : live) {
    planned.push_back(det_command(g, c, i));
  }
  std::vector<Transition> out;
  if (pc == PolicyClass::AllLocallyCentralSingle) {
    for (const Move& m : planned) {
      Configuration next = c;
      next.set(m.process, m.new_color);
      out.push_back({{m.process}, codec.encode(next.colors()), 1});
    }
    return out;
  }
  if (live.size() >= 63) {
    throw Error("too many enabled processes for subset enumeration");
  }
  const std::uint64_t subsets = std::uint64_t{1} << live.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    Configuration next = c;
    Transition t;
    for (std::size_t b = 0; b < live.size(); ++b) {
      if (mask & (std::uint64_t{1} << b)) {
        next.set(planned[b].process, planned[b].new_color);
        t.activated.push_back(planned[b].process);
      }
    }
    t.moves = t.activated.size();
    t.target = codec.encode(next.colors());
    out.push_back(std::move(t));
  }
  return out;
}

inline void fill_graph_summary(VerificationReport& r, const DirectedGraph& g) {
  r.n = g.size();
  r.arcs = g.arcs().size();
  r.max_degree = g.max_degree();
}

}  // namespace detail

// Decides, by enumeration, whether the deterministic rule converges from every
// configuration under every schedule of `pc`. `max_depth` bounds the move count
// of any execution (0 means unbounded).
inline VerificationReport verify_deterministic(const DirectedGraph& g, Color k, PolicyClass pc,
                                               std::size_t max_depth = 0,
                                               std::uint64_t cap = kDefaultEnumerationCap) {
  AlgorithmSpec::deterministic(k);
  const ConfigurationCodec codec(g.size(), k, cap);
  const std::uint64_t total = codec.total();

  VerificationReport report;
  detail::fill_graph_summary(report, g);
  report.algo = AlgorithmKind::Deterministic;
  report.k = k;
  report.policy_class = pc;
  report.configurations_checked = total;

  enum : std::uint8_t { kUnseen = 0, kOnStack = 1, kDone = 2 };
  std::vector<std::uint8_t> mark(total, kUnseen);
  std::vector<std::uint32_t> longest(total, 0);

  struct Frame {
    std::uint64_t code;
    std::vector<detail::Transition> edges;
    std::size_t next = 0;
  };

  for (std::uint64_t root = 0; root < total; ++root) {
    if (mark[root] != kUnseen) {
      continue;
    }
    std::vector<Frame> stack;
    auto push = [&](std::uint64_t code) {
      mark[code] = kOnStack;
      stack.push_back({code, detail::deterministic_transitions(g, codec, codec.decode(code), pc), 0});
    };
    push(root);
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next < top.edges.size()) {
        const auto& edge = top.edges[top.next];
        if (mark[edge.target] == kOnStack) {
          ScheduleWitness w;
          const auto init = codec.decode(root);
          w.initial.assign(init.colors().begin(), init.colors().end());
          for (const Frame& f : stack) {
            w.schedule.push_back(f.edges[f.next].activated);
            w.moves += f.edges[f.next].moves;
          }
          for (std::size_t d = 0; d < stack.size(); ++d) {
            if (stack[d].code == edge.target) {
              w.cycle_start = d;
              break;
            }
          }
          report.all_converge = false;
          report.divergence_kind = "cycle";
          report.witness_divergence = std::move(w);
          return report;
        }
        if (mark[edge.target] == kUnseen) {
          push(edge.target);
        } else {
          ++top.next;
        }
        continue;
      }
      std::uint32_t best = 0;
      for (const auto& edge : top.edges) {
        best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(edge.moves) + longest[edge.target]);
      }
      longest[top.code] = best;
      mark[top.code] = kDone;
      stack.pop_back();
      if (!stack.empty()) {
        ++stack.back().next;
      }
    }
  }

  std::uint64_t worst_code = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    if (longest[code] > longest[worst_code]) {
      worst_code = code;
    }
  }
  report.worst_case_moves = longest[worst_code];

  ScheduleWitness w;
  {
    const auto init = codec.decode(worst_code);
    w.initial.assign(init.colors().begin(), init.colors().end());
    std::uint64_t code = worst_code;
    while (longest[code] > 0) {
      const auto edges = detail::deterministic_transitions(g, codec, codec.decode(code), pc);
      const auto it = std::find_if(edges.begin(), edges.end(), [&](const detail::Transition& e) {
        return e.moves + longest[e.target] == longest[code];
      });
      w.schedule.push_back(it->activated);
      w.moves += it->moves;
      code = it->target;
    }
  }
  report.worst_case_witness = w;

  for (std::uint64_t code = 0; code < total; ++code) {
    const auto c = codec.decode(code);
    const bool terminal = is_terminal(g, c);
    const bool legit = is_legitimate(g, c);
    report.terminal_count += terminal ? 1 : 0;
    report.legitimate_count += legit ? 1 : 0;
  }
  report.terminal_equals_legitimate = report.terminal_count == report.legitimate_count;

  if (max_depth != 0 && report.worst_case_moves > max_depth) {
    report.all_converge = false;
    report.divergence_kind = "depth";
    report.witness_divergence = std::move(w);
    return report;
  }
  report.all_converge = true;
  return report;
}

// Structural check for probability-1 convergence of the probabilistic rule
// under locally central single activations.
inline VerificationReport verify_probabilistic_support(const DirectedGraph& g, Color k, std::size_t max_depth = 0,
                                                       std::uint64_t cap = kDefaultEnumerationCap) {
  const auto spec = AlgorithmSpec::probabilistic(k);
  spec.require_fits(g);
  const ConfigurationCodec codec(g.size(), k, cap);
  const std::uint64_t total = codec.total();

  VerificationReport report;
  detail::fill_graph_summary(report, g);
  report.algo = AlgorithmKind::Probabilistic;
  report.k = k;
  report.policy_class = PolicyClass::AllLocallyCentralSingle;
  report.configurations_checked = total;

  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> distance(total, kUnreached);
  bool agree = true;
  for (std::uint64_t code = 0; code < total; ++code) {
    const auto c = codec.decode(code);
    const bool terminal = is_terminal(g, c);
    const bool legit = is_legitimate(g, c);
    report.terminal_count += terminal ? 1 : 0;
    report.legitimate_count += legit ? 1 : 0;
    agree = agree && (terminal == legit);
    if (terminal) {
      distance[code] = 0;
    }
  }
  report.terminal_equals_legitimate = agree;

  // Relax distance[c] = 1 + min over successors until a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t code = 0; code < total; ++code) {
      if (distance[code] == 0) {
        continue;
      }
      const auto c = codec.decode(code);
      std::uint32_t best = distance[code];
      for (ProcessId i : enabled_processes(g, c)) {
        for (Color col : candidate_colors(g, c, i)) {
          Configuration next = c;
          next.set(i, col);
          const std::uint32_t d = distance[codec.encode(next.colors())];
          if (d != kUnreached && d + 1 < best) {
            best = d + 1;
          }
        }
      }
      if (best < distance[code]) {
        distance[code] = best;
        changed = true;
      }
    }
  }

  auto witness_at = [&](std::uint64_t code) {
    const auto c = codec.decode(code);
    return ScheduleWitness{{c.colors().begin(), c.colors().end()}, {}, 0, std::nullopt};
  };
  std::uint64_t worst_code = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    if (distance[code] == kUnreached) {
      report.all_converge = false;
      report.divergence_kind = "stuck";
      report.witness_divergence = witness_at(code);
      return report;
    }
    if (distance[code] > distance[worst_code]) {
      worst_code = code;
    }
  }
  report.worst_case_moves = distance[worst_code];
  if (!agree) {
    for (std::uint64_t code = 0; code < total; ++code) {
      const auto c = codec.decode(code);
      if (is_terminal(g, c) != is_legitimate(g, c)) {
        report.all_converge = false;
        report.divergence_kind = "terminal-not-legitimate";
        report.witness_divergence = witness_at(code);
        return report;
      }
    }
  }
  if (max_depth != 0 && report.worst_case_moves > max_depth) {
    report.all_converge = false;
    report.divergence_kind = "depth";
    report.witness_divergence = witness_at(worst_code);
    return report;
  }
  report.all_converge = true;
  return report;
}

// Replays a divergence witness through the engine and checks that the
// configuration at cycle_start recurs at the end.
inline bool witness_replay_cycles(const DirectedGraph& g, Color k, const ScheduleWitness& w) {
  if (!w.cycle_start || w.schedule.empty()) {
    return false;
  }
  auto policy = SchedulerPolicy::scripted(Script{w.schedule}, false);
  const auto trace = run(g, AlgorithmSpec::deterministic(k), std::move(policy), Configuration(w.initial, k),
                         w.schedule.size(), 0, TraceMode::Full);
  if (trace.total_steps != w.schedule.size()) {
    return false;
  }
  const std::size_t start = *w.cycle_start;
  const std::vector<Color>& end = trace.steps.back().after;
  const std::vector<Color> at_start =
      start == 0 ? w.initial : trace.steps[start - 1].after;
  return end == at_start;
}

inline nlohmann::json to_json(const ScheduleWitness& w) {
  nlohmann::json j{{"initial", w.initial}, {"schedule", w.schedule}, {"moves", w.moves}};
  if (w.cycle_start) {
    j["cycle_start"] = *w.cycle_start;
  }
  return j;
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j{
      {"graph", {{"n", r.n}, {"arcs", r.arcs}, {"max_degree", r.max_degree}}},
      {"algo", to_string(r.algo)},
      {"k", r.k},
      {"policy_class", to_string(r.policy_class)},
      {"configurations_checked", r.configurations_checked},
      {"all_converge", r.all_converge},
      {"worst_case_moves", r.worst_case_moves},
      {"terminal_count", r.terminal_count},
      {"legitimate_count", r.legitimate_count},
      {"terminal_equals_legitimate", r.terminal_equals_legitimate},
  };
  if (!r.divergence_kind.empty()) {
    j["divergence_kind"] = r.divergence_kind;
  }
  j["witness_divergence"] = r.witness_divergence ? to_json(*r.witness_divergence) : nlohmann::json();
  if (r.worst_case_witness) {
    j["worst_case_witness"] = to_json(*r.worst_case_witness);
  }
  return j;
}

}  // namespace unicolor
