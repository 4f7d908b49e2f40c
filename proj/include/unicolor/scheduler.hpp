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
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "unicolor/algorithm.hpp"
#include "unicolor/coloring.hpp"
#include "unicolor/error.hpp"
#include "unicolor/graph.hpp"
#include "unicolor/rng.hpp"

namespace unicolor {

// Processes fired together in one scheduler round, sorted ascending.
using ActivationSet = std::vector<ProcessId>;

struct Script {
  std::vector<ActivationSet> steps;

  std::size_t size() const { return steps.size(); }
  friend bool operator==(const Script&, const Script&) = default;
};

class SchedulerError : public Error {
 public:
  using Error::Error;
};

class ScriptViolation : public SchedulerError {
 public:
  ScriptViolation(std::size_t step, const std::string& what)
      : SchedulerError(detail::concat("script step ", step, ": ", what)), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class AmbiguousChase : public SchedulerError {
 public:
  using SchedulerError::SchedulerError;
};

enum class SchedulerKind {
  Synchronous,
  DistributedRandomSubset,
  LocallyCentralSingle,
  LocallyCentralMaximal,
  Scripted,
};

inline std::string_view to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Synchronous: return "sync";
    case SchedulerKind::DistributedRandomSubset: return "dist";
    case SchedulerKind::LocallyCentralSingle: return "lc1";
    case SchedulerKind::LocallyCentralMaximal: return "lcmax";
    case SchedulerKind::Scripted: return "script";
  }
  return "?";
}

inline bool is_independent(const DirectedGraph& g, const ActivationSet& set) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (g.are_neighbors(set[a], set[b])) {
        return false;
      }
    }
  }
  return true;
}

// Decides which enabled processes fire in each round. Everything except the
// script cursor lives in the random stream the caller passes in.
class SchedulerPolicy {
 public:
  static SchedulerPolicy synchronous() { return SchedulerPolicy(SchedulerKind::Synchronous); }
  static SchedulerPolicy distributed() { return SchedulerPolicy(SchedulerKind::DistributedRandomSubset); }
  static SchedulerPolicy locally_central_single() {
    return SchedulerPolicy(SchedulerKind::LocallyCentralSingle);
  }
  static SchedulerPolicy locally_central_maximal() {
    return SchedulerPolicy(SchedulerKind::LocallyCentralMaximal);
  }

  // With `require_locally_central` a step activating two neighbors is a
  // violation; divergence witnesses under the distributed scheduler replay
  // with it off.
  static SchedulerPolicy scripted(Script script, bool require_locally_central = true) {
    SchedulerPolicy p(SchedulerKind::Scripted);
    p.script_ = std::move(script);
    p.require_locally_central_ = require_locally_central;
    return p;
  }

  SchedulerKind kind() const { return kind_; }
  bool is_locally_central() const {
    return kind_ == SchedulerKind::LocallyCentralSingle || kind_ == SchedulerKind::LocallyCentralMaximal ||
           (kind_ == SchedulerKind::Scripted && require_locally_central_);
  }
  const Script& script() const { return script_; }
  std::size_t cursor() const { return cursor_; }

  // Next activation set, or nullopt once a script is exhausted. The caller
  // guarantees at least one process is enabled.
  std::optional<ActivationSet> select(const DirectedGraph& g, const Configuration& c, RandomStream& rng) {
    if (kind_ == SchedulerKind::Scripted) {
      return next_scripted(g, c);
    }
    const auto live = enabled_processes(g, c);
    if (live.empty()) {
      throw SchedulerError("select called on a terminal configuration");
    }
    switch (kind_) {
      case SchedulerKind::Synchronous:
        return live;
      case SchedulerKind::DistributedRandomSubset: {
        ActivationSet out;
        while (out.empty()) {
          for (ProcessId i : live) {
            if (rng.coin()) {
              out.push_back(i);
            }
          }
        }
        return out;
      }
      case SchedulerKind::LocallyCentralSingle:
        return ActivationSet{live[rng.uniform_index(live.size())]};
      case SchedulerKind::LocallyCentralMaximal: {
        auto order = live;
        rng.shuffle(order);
        ActivationSet out;
        for (ProcessId i : order) {
          const bool clash = std::any_of(out.begin(), out.end(), [&](ProcessId j) { return g.are_neighbors(i, j); });
          if (!clash) {
            out.push_back(i);
          }
        }
        std::sort(out.begin(), out.end());
        return out;
      }
      case SchedulerKind::Scripted:
        break;
    }
    throw SchedulerError("unreachable scheduler kind");
  }

 private:
  explicit SchedulerPolicy(SchedulerKind kind) : kind_(kind) {}

  std::optional<ActivationSet> next_scripted(const DirectedGraph& g, const Configuration& c) {
    if (cursor_ >= script_.steps.size()) {
      return std::nullopt;
    }
    const std::size_t step = cursor_++;
    ActivationSet set = script_.steps[step];
    std::sort(set.begin(), set.end());
    if (set.empty()) {
      throw ScriptViolation(step, "empty activation set");
    }
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
      throw ScriptViolation(step, "process listed twice");
    }
    for (ProcessId i : set) {
      if (i >= g.size()) {
        throw ScriptViolation(step, detail::concat("process ", i, " does not exist"));
      }
      if (!enabled(g, c, i)) {
        throw ScriptViolation(step, detail::concat("process ", i, " is not enabled"));
      }
    }
    if (require_locally_central_ && !is_independent(g, set)) {
      throw ScriptViolation(step, "activates two neighboring processes");
    }
    return set;
  }

  SchedulerKind kind_;
  Script script_;
  std::size_t cursor_ = 0;
  bool require_locally_central_ = true;
};

// Worst-case chain schedule over gen_chain ids (p_i is id i-1):
// for j = n-1 down to 1, activate p_1, ..., p_j.
inline Script chain_schedule(std::size_t n) {
  if (n < 2) {
    throw SchedulerError("chain_schedule needs n >= 2");
  }
  Script s;
  s.steps.reserve(n * (n - 1) / 2);
  for (std::size_t j = n - 1; j >= 1; --j) {
    for (std::size_t i = 1; i <= j; ++i) {
      s.steps.push_back({static_cast<ProcessId>(i - 1)});
    }
  }
  return s;
}

// Chase on a ring: always activate the single process whose color equals its
// predecessor's. The script is generated against the evolving configuration
// under the deterministic rule; it stops when nothing is enabled or after
// `max_steps` activations.
inline Script ring_chase_schedule(const DirectedGraph& g, const Configuration& initial,
                                  std::size_t max_steps) {
  if (g.size() < 3) {
    throw SchedulerError("ring_chase_schedule needs n >= 3");
  }
  initial.require_matches(g);
  Configuration c = initial;
  Script s;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const auto live = enabled_processes(g, c);
    if (live.empty()) {
      break;
    }
    if (live.size() > 1) {
      throw AmbiguousChase(detail::concat("chase step ", step, ": ", live.size(), " processes enabled"));
    }
    const Move m = det_command(g, c, live.front());
    c.set(m.process, m.new_color);
    s.steps.push_back({live.front()});
  }
  return s;
}

// One line per step: space-separated process ids. `#` starts a comment.
inline Script parse_script(std::istream& in) {
  Script s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    ActivationSet set;
    long long v = 0;
    while (fields >> v) {
      if (v < 0) {
        throw SchedulerError(detail::concat("script line ", line_no, ": negative process id"));
      }
      set.push_back(static_cast<ProcessId>(v));
    }
    if (!fields.eof()) {
      throw SchedulerError(detail::concat("script line ", line_no, ": expected process ids"));
    }
    if (!set.empty()) {
      s.steps.push_back(std::move(set));
    }
  }
  return s;
}

inline Script load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchedulerError(detail::concat("cannot open script file '", path, "'"));
  }
  return parse_script(in);
}

inline void write_script(std::ostream& out, const Script& s) {
  for (const auto& set : s.steps) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      out << (j ? " " : "") << set[j];
    }
    out << '\n';
  }
}

// sync | dist | lc1 | lcmax | script:<file>
inline SchedulerPolicy policy_from_spec(std::string_view spec) {
  if (spec == "sync") return SchedulerPolicy::synchronous();
  if (spec == "dist") return SchedulerPolicy::distributed();
  if (spec == "lc1") return SchedulerPolicy::locally_central_single();
  if (spec == "lcmax") return SchedulerPolicy::locally_central_maximal();
  if (spec.substr(0, 7) == "script:") {
    return SchedulerPolicy::scripted(load_script(std::string(spec.substr(7))));
  }
  throw SchedulerError(detail::concat("unknown scheduler '", spec, "' (expected sync|dist|lc1|lcmax|script:<file>)"));
}

}  // namespace unicolor
