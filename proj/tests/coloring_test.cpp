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

#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unicolor/coloring.hpp"

namespace unicolor {
namespace {

oracle::ArcList arc_list(const DirectedGraph& g) {
  oracle::ArcList out;
  for (const Arc& a : g.arcs()) out.emplace_back(a.from, a.to);
  return out;
}

TEST(ConfigurationTest, ValidatesPalette) {
  EXPECT_THROW(Configuration({0, 3}, 3), ConfigurationError);
  EXPECT_THROW(Configuration({0}, 0), ConfigurationError);
  Configuration c({0, 1, 2}, 3);
  EXPECT_THROW(c.set(1, 3), ConfigurationError);
  c.set(1, 0);
  EXPECT_EQ(c[1], 0u);
  EXPECT_THROW(c.require_matches(gen_ring(4)), ConfigurationError);
}

TEST(EnabledTest, ThreeRingOneConflict) {
  const auto g = gen_ring(3);
  const Configuration c({0, 0, 1}, 3);
  // Oracle: evaluate the guard on each process against its listed predecessor.
  const auto preds = oracle::predecessor_lists(3, arc_list(g));
  std::vector<ProcessId> expected;
  for (unsigned i = 0; i < 3; ++i) {
    if (oracle::guard(preds, {0, 0, 1}, i)) expected.push_back(i);
  }
  EXPECT_EQ(expected, std::vector<ProcessId>{1});
  EXPECT_EQ(enabled_processes(g, c), expected);
}

TEST(EnabledTest, DistinctColorsDisableEverything) {
  const auto g = gen_clique_bidirectional(4);
  const Configuration c({3, 0, 2, 1}, 4);
  EXPECT_TRUE(enabled_processes(g, c).empty());
  EXPECT_TRUE(is_terminal(g, c));
}

TEST(EnabledTest, UniformRingEnablesAll) {
  for (std::size_t n = 2; n < 9; ++n) {
    EXPECT_EQ(enabled_processes(gen_ring(n), Configuration::uniform(n, 1, 3)).size(), n);
  }
}

TEST(ConflictsTest, UniformChainConflictsAllButSource) {
  for (std::size_t n = 2; n < 10; ++n) {
    const auto g = gen_chain(n);
    const auto cs = conflicts(g, Configuration::uniform(n, 0, 2));
    std::set<ProcessId> procs;
    for (const auto& c : cs) procs.insert(c.process);
    EXPECT_EQ(procs.size(), n - 1);
    EXPECT_EQ(procs.count(static_cast<ProcessId>(n - 1)), 0u);
  }
}

TEST(ConflictsTest, LegitimateHasNone) {
  EXPECT_TRUE(conflicts(gen_ring(3), Configuration({0, 1, 2}, 3)).empty());
}

TEST(ConflictsTest, UniformThreeRing) {
  const auto cs = conflicts(gen_ring(3), Configuration::uniform(3, 0, 3));
  EXPECT_EQ(cs.size(), 3u);
}

TEST(ConflictsTest, TwoSameColoredPredecessorsGiveTwoEntries) {
  const auto g = build_graph(3, {{0, 2}, {1, 2}});
  const auto cs = conflicts(g, Configuration({1, 1, 1}, 2));
  EXPECT_EQ(cs, (std::vector<Conflict>{{2, 0}, {2, 1}}));
}

TEST(LegitimacyTest, Examples) {
  EXPECT_TRUE(is_legitimate(gen_ring(3), Configuration({0, 1, 2}, 3)));
  // arcs (0,1),(1,2),(2,0); arc (2,0) joins two 0s.
  EXPECT_FALSE(is_legitimate(gen_ring(3), Configuration({0, 1, 0}, 3)));
  EXPECT_FALSE(is_legitimate(build_graph(2, {{0, 1}, {1, 0}}), Configuration({1, 1}, 2)));
}

TEST(LegitimacyTest, MatchesOracleEverywhereOnSmallGraphs) {
  const std::vector<DirectedGraph> graphs{gen_ring(4), gen_chain(4), gen_clique_bidirectional(3),
                                          gen_random_bounded(4, 2, 5)};
  for (const auto& g : graphs) {
    const auto arcs = arc_list(g);
    for (const auto& colors : oracle::all_configurations(g.size(), 3)) {
      const Configuration c(std::vector<Color>(colors.begin(), colors.end()), 3);
      const bool legit = is_legitimate(g, c);
      EXPECT_EQ(legit, oracle::proper(arcs, colors));
      EXPECT_EQ(legit, conflicts(g, c).empty());
      EXPECT_EQ(legit, is_terminal(g, c));
    }
  }
}

TEST(ColorTableTest, ListsProcessesPerColor) {
  const auto table = color_table(Configuration({2, 0, 0, 3}, 4));
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table[0], (std::vector<ProcessId>{1, 2}));
  EXPECT_TRUE(table[1].empty());
  EXPECT_EQ(table[2], std::vector<ProcessId>{0});
  EXPECT_EQ(table[3], std::vector<ProcessId>{3});
}

TEST(RotationTest, Offsets) {
  const std::vector<Color> a{0, 0, 1, 2};
  EXPECT_EQ(rotation_offset(a, std::vector<Color>{0, 1, 2, 0}), 1u);
  EXPECT_EQ(rotation_offset(a, a), 0u);
  EXPECT_FALSE(rotation_offset(a, std::vector<Color>{0, 1, 0, 2}).has_value());
}

}  // namespace
}  // namespace unicolor
