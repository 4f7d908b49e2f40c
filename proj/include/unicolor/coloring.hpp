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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "unicolor/error.hpp"
#include "unicolor/graph.hpp"

namespace unicolor {

using Color = std::uint32_t;

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// A color for every process, drawn from the palette {0, ..., k-1}.
class Configuration {
 public:
  Configuration(std::vector<Color> colors, Color k) : colors_(std::move(colors)), k_(k) {
    if (k_ == 0) {
      throw ConfigurationError("palette size k must be at least 1");
    }
    for (std::size_t i = 0; i < colors_.size(); ++i) {
      check_color(colors_[i], i);
    }
  }

  static Configuration uniform(std::size_t n, Color color, Color k) {
    return Configuration(std::vector<Color>(n, color), k);
  }

  static Configuration random(std::size_t n, Color k, RandomStream& rng) {
    std::vector<Color> colors(n);
    for (auto& c : colors) {
      c = static_cast<Color>(rng.uniform_index(k));
    }
    return Configuration(std::move(colors), k);
  }

  std::size_t size() const { return colors_.size(); }
  Color palette() const { return k_; }
  std::span<const Color> colors() const { return colors_; }

  Color operator[](ProcessId i) const { return colors_.at(i); }

  void set(ProcessId i, Color c) {
    check_color(c, i);
    colors_.at(i) = c;
  }

  void require_matches(const DirectedGraph& g) const {
    if (colors_.size() != g.size()) {
      throw ConfigurationError(detail::concat("configuration has ", colors_.size(),
                                              " colors but the graph has ", g.size(), " processes"));
    }
  }

  bool is_uniform() const {
    return std::adjacent_find(colors_.begin(), colors_.end(), std::not_equal_to<>()) == colors_.end();
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  void check_color(Color c, std::size_t i) const {
    if (c >= k_) {
      throw ConfigurationError(detail::concat("color ", c, " of process ", i,
                                              " is outside the palette of size ", k_));
    }
  }

  std::vector<Color> colors_;
  Color k_;
};

// `process` shares its color with its predecessor `offending_predecessor`.
struct Conflict {
  ProcessId process = 0;
  ProcessId offending_predecessor = 0;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

// Guard shared by both algorithms: some predecessor has my color.
inline bool enabled(const DirectedGraph& g, const Configuration& c, ProcessId i) {
  const Color mine = c[i];
  const auto preds = g.preds(i);
  return std::any_of(preds.begin(), preds.end(), [&](ProcessId p) { return c[p] == mine; });
}

inline std::vector<ProcessId> enabled_processes(const DirectedGraph& g, const Configuration& c) {
  std::vector<ProcessId> out;
  for (ProcessId i = 0; i < g.size(); ++i) {
    if (enabled(g, c, i)) {
      out.push_back(i);
    }
  }
  return out;
}

inline bool is_terminal(const DirectedGraph& g, const Configuration& c) {
  for (ProcessId i = 0; i < g.size(); ++i) {
    if (enabled(g, c, i)) {
      return false;
    }
  }
  return true;
}

inline std::vector<Conflict> conflicts(const DirectedGraph& g, const Configuration& c) {
  std::vector<Conflict> out;
  for (ProcessId i = 0; i < g.size(); ++i) {
    for (ProcessId p : g.preds(i)) {
      if (c[p] == c[i]) {
        out.push_back({i, p});
      }
    }
  }
  return out;
}

// Unidirectional coloring predicate: the endpoints of every arc differ.
inline bool is_legitimate(const DirectedGraph& g, const Configuration& c) {
  const auto arcs = g.arcs();
  return std::none_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return c[a.from] == c[a.to]; });
}

// For each color, the processes currently holding it.
inline std::vector<std::vector<ProcessId>> color_table(const Configuration& c) {
  std::vector<std::vector<ProcessId>> table(c.palette());
  for (ProcessId i = 0; i < c.size(); ++i) {
    table[c[i]].push_back(i);
  }
  return table;
}

// Smallest r such that b[j] == a[(j + r) mod n] for every j, if any.
inline std::optional<std::size_t> rotation_offset(std::span<const Color> a, std::span<const Color> b) {
  const std::size_t n = a.size();
  if (n != b.size()) {
    return std::nullopt;
  }
  for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
    bool match = true;
    for (std::size_t j = 0; j < n && match; ++j) {
      match = b[j] == a[(j + r) % n];
    }
    if (match) {
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace unicolor
