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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "unicolor/coloring.hpp"
#include "unicolor/error.hpp"
#include "unicolor/graph.hpp"
#include "unicolor/rng.hpp"

namespace unicolor {

using Rational = boost::rational<std::int64_t>;

enum class AlgorithmKind { Deterministic, Probabilistic };

inline std::string_view to_string(AlgorithmKind kind) {
  return kind == AlgorithmKind::Deterministic ? "det" : "prob";
}

class AlgorithmError : public Error {
 public:
  using Error::Error;
};

// Which local rule every process runs, and with how many colors.
struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Deterministic;
  Color k = 2;

  static AlgorithmSpec deterministic(Color k) {
    if (k < 2) {
      throw AlgorithmError(detail::concat("deterministic algorithm needs k >= 2, got ", k));
    }
    return {AlgorithmKind::Deterministic, k};
  }

  // The single-predecessor ring rule (c.i := c.i + 1 mod k) is exactly the
  // general deterministic rule restricted to graphs with one predecessor.
  static AlgorithmSpec ring_deterministic(Color k) { return deterministic(k); }

  static AlgorithmSpec probabilistic(Color k) {
    if (k < 1) {
      throw AlgorithmError("probabilistic algorithm needs k >= 1");
    }
    return {AlgorithmKind::Probabilistic, k};
  }

  static AlgorithmSpec parse(std::string_view name, Color k) {
    if (name == "det") {
      return deterministic(k);
    }
    if (name == "prob") {
      return probabilistic(k);
    }
    throw AlgorithmError(detail::concat("unknown algorithm '", name, "' (expected det|prob)"));
  }

  // Run-setup check. The probabilistic rule needs k > Delta.
  void require_fits(const DirectedGraph& g) const {
    if (kind == AlgorithmKind::Probabilistic && k <= g.max_degree()) {
      throw AlgorithmError(detail::concat("probabilistic algorithm needs k > Delta; k=", k,
                                          ", Delta=", g.max_degree()));
    }
  }
};

struct Move {
  ProcessId process = 0;
  Color old_color = 0;
  Color new_color = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

// Colors currently held by the predecessors of i, as a membership mask.
inline std::vector<bool> predecessor_colors(const DirectedGraph& g, const Configuration& c,
                                            ProcessId i) {
  std::vector<bool> used(c.palette(), false);
  for (ProcessId p : g.preds(i)) {
    used[c[p]] = true;
  }
  return used;
}

namespace detail {

inline void require_enabled(const DirectedGraph& g, const Configuration& c, ProcessId i) {
  if (!enabled(g, c, i)) {
    throw AlgorithmError(concat("process ", i, " is not enabled"));
  }
}

}  // namespace detail

// Deterministic rule: starting after c.i, advance cyclically to the first
// color no predecessor holds. The whole inner loop is one move.
inline Move det_command(const DirectedGraph& g, const Configuration& c, ProcessId i) {
  detail::require_enabled(g, c, i);
  const Color k = c.palette();
  const auto used = predecessor_colors(g, c, i);
  Color next = c[i];
  for (Color step = 1; step < k; ++step) {
    next = (next + 1) % k;
    if (!used[next]) {
      return {i, c[i], next};
    }
  }
  throw AlgorithmError(detail::concat("non-terminating command: every one of the ", k,
                                      " colors is held by a predecessor of process ", i));
}

// {0..k-1} minus the predecessor colors, ascending.
inline std::vector<Color> candidate_colors(const DirectedGraph& g, const Configuration& c,
                                           ProcessId i) {
  const auto used = predecessor_colors(g, c, i);
  std::vector<Color> out;
  for (Color col = 0; col < c.palette(); ++col) {
    if (!used[col]) {
      out.push_back(col);
    }
  }
  return out;
}

// Probabilistic rule: uniform draw from candidate_colors by index.
inline Move prob_command(const DirectedGraph& g, const Configuration& c, ProcessId i,
                         RandomStream& rng) {
  detail::require_enabled(g, c, i);
  const auto candidates = candidate_colors(g, c, i);
  if (candidates.empty()) {
    throw AlgorithmError(detail::concat("empty candidate set for process ", i));
  }
  return {i, c[i], candidates[rng.uniform_index(candidates.size())]};
}

inline Move apply_rule(const AlgorithmSpec& spec, const DirectedGraph& g, const Configuration& c,
                       ProcessId i, RandomStream& rng) {
  return spec.kind == AlgorithmKind::Deterministic ? det_command(g, c, i) : prob_command(g, c, i, rng);
}

// --- Closed-form bounds for the probabilistic rule (exact rationals) ---

namespace detail {

inline void require_palette_above(std::size_t degree, Color k, std::string_view what) {
  if (k <= degree) {
    throw AlgorithmError(concat(what, " needs k > ", degree, ", got k=", k));
  }
}

inline void require_bound_domain(std::size_t max_degree, Color k, std::string_view what) {
  if (max_degree < 1) {
    throw AlgorithmError(concat(what, " needs Delta >= 1"));
  }
  require_palette_above(max_degree, k, what);
}

}  // namespace detail

// Expected number of conflicts one recoloring of i creates downstream:
// (delta.i - delta_in.i) / (k - delta_in.i).
inline Rational expected_new_conflicts(const DirectedGraph& g, ProcessId i, Color k) {
  const auto din = static_cast<std::int64_t>(g.in_degree(i));
  detail::require_palette_above(g.in_degree(i), k, "expected_new_conflicts");
  return Rational(static_cast<std::int64_t>(g.degree(i)) - din, static_cast<std::int64_t>(k) - din);
}

// Per-move upper bound M = (Delta - 1) / (k - 1).
inline Rational conflict_bound(std::size_t max_degree, Color k) {
  detail::require_bound_domain(max_degree, k, "conflict_bound");
  return Rational(static_cast<std::int64_t>(max_degree) - 1, static_cast<std::int64_t>(k) - 1);
}

// 1 / (1 - M) = (k - 1) / (k - Delta).
inline Rational expected_steps_per_conflict(std::size_t max_degree, Color k) {
  detail::require_bound_domain(max_degree, k, "expected_steps_per_conflict");
  return Rational(static_cast<std::int64_t>(k) - 1,
                  static_cast<std::int64_t>(k) - static_cast<std::int64_t>(max_degree));
}

// n (k - 1) / (k - Delta).
inline Rational expected_total_steps_bound(std::size_t n, std::size_t max_degree, Color k) {
  if (n < 1) {
    throw AlgorithmError("expected_total_steps_bound needs n >= 1");
  }
  return static_cast<std::int64_t>(n) * expected_steps_per_conflict(max_degree, k);
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) {
    return std::to_string(r.numerator());
  }
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace unicolor
