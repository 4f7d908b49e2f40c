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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unicolor/error.hpp"
#include "unicolor/rng.hpp"

namespace unicolor {

using ProcessId = std::uint32_t;

// An arc (from, to) means `to` reads the variables of `from`: `from` is a
// predecessor of `to`.
struct Arc {
  ProcessId from = 0;
  ProcessId to = 0;

  auto operator<=>(const Arc&) const = default;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

// Immutable directed communication graph with precomputed predecessor,
// successor and neighbor sets (all sorted ascending).
class DirectedGraph {
 public:
  DirectedGraph(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
    if (n_ == 0) {
      throw GraphError("graph must have at least one process");
    }
    preds_.resize(n_);
    succs_.resize(n_);
    neighbors_.resize(n_);
    std::set<Arc> seen;
    for (const Arc& a : arcs_) {
      if (a.from >= n_ || a.to >= n_) {
        throw GraphError(detail::concat("arc (", a.from, ", ", a.to,
                                        ") has an endpoint out of range for n=", n_));
      }
      if (a.from == a.to) {
        throw GraphError(detail::concat("arc (", a.from, ", ", a.to, ") is a self-loop"));
      }
      if (!seen.insert(a).second) {
        throw GraphError(detail::concat("arc (", a.from, ", ", a.to, ") is duplicated"));
      }
      succs_[a.from].push_back(a.to);
      preds_[a.to].push_back(a.from);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      std::sort(preds_[i].begin(), preds_[i].end());
      std::sort(succs_[i].begin(), succs_[i].end());
      std::set_union(preds_[i].begin(), preds_[i].end(), succs_[i].begin(), succs_[i].end(),
                     std::back_inserter(neighbors_[i]));
      max_in_ = std::max(max_in_, preds_[i].size());
      max_out_ = std::max(max_out_, succs_[i].size());
      max_degree_ = std::max(max_degree_, neighbors_[i].size());
    }
  }

  std::size_t size() const { return n_; }
  std::span<const Arc> arcs() const { return arcs_; }

  std::span<const ProcessId> preds(ProcessId i) const { return preds_.at(i); }
  std::span<const ProcessId> succs(ProcessId i) const { return succs_.at(i); }
  std::span<const ProcessId> neighbors(ProcessId i) const { return neighbors_.at(i); }

  std::size_t in_degree(ProcessId i) const { return preds_.at(i).size(); }
  std::size_t out_degree(ProcessId i) const { return succs_.at(i).size(); }
  std::size_t degree(ProcessId i) const { return neighbors_.at(i).size(); }

  std::size_t max_in_degree() const { return max_in_; }
  std::size_t max_out_degree() const { return max_out_; }
  std::size_t max_degree() const { return max_degree_; }

  bool has_arc(ProcessId from, ProcessId to) const {
    const auto& s = succs_.at(from);
    return std::binary_search(s.begin(), s.end(), to);
  }

  bool are_neighbors(ProcessId a, ProcessId b) const {
    const auto& s = neighbors_.at(a);
    return std::binary_search(s.begin(), s.end(), b);
  }

 private:
  std::size_t n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ProcessId>> preds_;
  std::vector<std::vector<ProcessId>> succs_;
  std::vector<std::vector<ProcessId>> neighbors_;
  std::size_t max_in_ = 0;
  std::size_t max_out_ = 0;
  std::size_t max_degree_ = 0;
};

inline DirectedGraph build_graph(std::size_t n, std::vector<Arc> arcs) {
  return DirectedGraph(n, std::move(arcs));
}

namespace detail {

inline void require_at_least_two(std::size_t n, std::string_view what) {
  if (n < 2) {
    throw GraphError(concat(what, " needs n >= 2, got n=", n));
  }
}

}  // namespace detail

// Unidirectional ring: p_i reads p_{i-1 mod n}.
inline DirectedGraph gen_ring(std::size_t n) {
  detail::require_at_least_two(n, "ring");
  std::vector<Arc> arcs;
  arcs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    arcs.push_back({static_cast<ProcessId>(i), static_cast<ProcessId>((i + 1) % n)});
  }
  return DirectedGraph(n, std::move(arcs));
}

// Chain ordered from the sink (id 0) to the source (id n-1). Id i reads id
// i+1, so information flows from the source toward the sink.
inline DirectedGraph gen_chain(std::size_t n) {
  detail::require_at_least_two(n, "chain");
  std::vector<Arc> arcs;
  arcs.reserve(n - 1);
  for (std::size_t i = n - 1; i >= 1; --i) {
    arcs.push_back({static_cast<ProcessId>(i), static_cast<ProcessId>(i - 1)});
  }
  return DirectedGraph(n, std::move(arcs));
}

inline DirectedGraph gen_clique_bidirectional(std::size_t n) {
  detail::require_at_least_two(n, "clique");
  std::vector<Arc> arcs;
  arcs.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        arcs.push_back({static_cast<ProcessId>(i), static_cast<ProcessId>(j)});
      }
    }
  }
  return DirectedGraph(n, std::move(arcs));
}

// Random digraph whose combined degree |N.i| never exceeds `max_degree`.
// Ordered pairs are visited in a seeded random order and kept whenever both
// endpoints stay within the bound.
inline DirectedGraph gen_random_bounded(std::size_t n, std::size_t max_degree,
                                        std::uint64_t seed) {
  detail::require_at_least_two(n, "random graph");
  if (max_degree == 0) {
    throw GraphError("random graph needs max_degree >= 1");
  }
  std::vector<Arc> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        pairs.push_back({static_cast<ProcessId>(i), static_cast<ProcessId>(j)});
      }
    }
  }
  RandomStream rng(seed);
  rng.shuffle(pairs);

  std::vector<std::set<ProcessId>> nbrs(n);
  std::vector<Arc> arcs;
  for (const Arc& a : pairs) {
    const bool linked = nbrs[a.from].count(a.to) != 0;
    if (!linked && (nbrs[a.from].size() >= max_degree || nbrs[a.to].size() >= max_degree)) {
      continue;
    }
    nbrs[a.from].insert(a.to);
    nbrs[a.to].insert(a.from);
    arcs.push_back(a);
  }
  return DirectedGraph(n, std::move(arcs));
}

// Text format: first non-comment line holds n, then one `i j` arc per line.
// Everything after `#` on a line is ignored.
inline DirectedGraph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_n = false;
  std::size_t n = 0;
  std::vector<Arc> arcs;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::vector<long long> values;
    long long v = 0;
    while (fields >> v) {
      values.push_back(v);
    }
    if (!fields.eof()) {
      throw GraphError(detail::concat("line ", line_no, ": expected integers"));
    }
    if (values.empty()) {
      continue;
    }
    if (!have_n) {
      if (values.size() != 1 || values[0] < 1) {
        throw GraphError(detail::concat("line ", line_no, ": expected a positive process count"));
      }
      n = static_cast<std::size_t>(values[0]);
      have_n = true;
      continue;
    }
    if (values.size() != 2 || values[0] < 0 || values[1] < 0) {
      throw GraphError(detail::concat("line ", line_no, ": expected `i j`"));
    }
    arcs.push_back({static_cast<ProcessId>(values[0]), static_cast<ProcessId>(values[1])});
  }
  if (!have_n) {
    throw GraphError("graph file is empty");
  }
  return DirectedGraph(n, std::move(arcs));
}

inline DirectedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw GraphError(detail::concat("cannot open graph file '", path, "'"));
  }
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const DirectedGraph& g) {
  out << g.size() << '\n';
  for (const Arc& a : g.arcs()) {
    out << a.from << ' ' << a.to << '\n';
  }
}

// Graph spec mini-language: ring:<n>, chain:<n>, clique:<n>,
// random:<n>:<max_degree>:<seed>, file:<path>.
inline DirectedGraph graph_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw GraphError(detail::concat("invalid graph spec '", spec, "'"));
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string rest(spec.substr(colon + 1));
  if (kind == "file") {
    return load_graph(rest);
  }

  std::vector<std::uint64_t> nums;
  std::istringstream fields(rest);
  std::string tok;
  while (std::getline(fields, tok, ':')) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw GraphError(detail::concat("invalid number in graph spec '", spec, "'"));
    }
    nums.push_back(std::stoull(tok));
  }
  auto expect = [&](std::size_t count) {
    if (nums.size() != count) {
      throw GraphError(detail::concat("graph spec '", spec, "' expects ", count, " parameter(s)"));
    }
  };
  if (kind == "ring") {
    expect(1);
    return gen_ring(nums[0]);
  }
  if (kind == "chain") {
    expect(1);
    return gen_chain(nums[0]);
  }
  if (kind == "clique") {
    expect(1);
    return gen_clique_bidirectional(nums[0]);
  }
  if (kind == "random") {
    expect(3);
    return gen_random_bounded(nums[0], nums[1], nums[2]);
  }
  throw GraphError(detail::concat("unknown graph kind '", kind, "'"));
}

}  // namespace unicolor
