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

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "unicolor/graph.hpp"

namespace unicolor {
namespace {

std::vector<ProcessId> ids(std::span<const ProcessId> s) { return {s.begin(), s.end()}; }

TEST(GraphTest, ThreeRingFromArcs) {
  const auto g = build_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  for (ProcessId i = 0; i < 3; ++i) {
    EXPECT_EQ(g.in_degree(i), 1u);
    EXPECT_EQ(g.out_degree(i), 1u);
    EXPECT_EQ(g.degree(i), 2u);
  }
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_EQ(ids(g.preds(0)), std::vector<ProcessId>{2});
  EXPECT_EQ(ids(g.succs(0)), std::vector<ProcessId>{1});
}

TEST(GraphTest, BidirectionalEdgeIsTwoArcs) {
  const auto g = build_graph(2, {{0, 1}, {1, 0}});
  EXPECT_EQ(g.max_degree(), 1u);
  EXPECT_EQ(g.max_in_degree(), 1u);
  EXPECT_EQ(g.max_out_degree(), 1u);
  EXPECT_TRUE(g.are_neighbors(0, 1));
}

TEST(GraphTest, RejectsSelfLoop) {
  try {
    build_graph(3, {{0, 1}, {1, 1}});
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("(1, 1)"), std::string::npos);
  }
}

TEST(GraphTest, RejectsOutOfRangeEndpoint) {
  try {
    build_graph(3, {{0, 3}});
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 3)"), std::string::npos);
  }
}

TEST(GraphTest, RejectsDuplicateArc) {
  try {
    build_graph(3, {{0, 1}, {1, 2}, {0, 1}});
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicated"), std::string::npos);
  }
}

TEST(GraphTest, Ring) {
  const auto r3 = gen_ring(3);
  EXPECT_EQ(std::vector<Arc>(r3.arcs().begin(), r3.arcs().end()), (std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}}));
  const auto r2 = gen_ring(2);
  EXPECT_EQ(std::vector<Arc>(r2.arcs().begin(), r2.arcs().end()), (std::vector<Arc>{{0, 1}, {1, 0}}));
  const auto r5 = gen_ring(5);
  for (ProcessId i = 0; i < 5; ++i) {
    EXPECT_EQ(r5.in_degree(i), 1u);
    EXPECT_EQ(r5.out_degree(i), 1u);
    EXPECT_EQ(ids(r5.preds(i)), std::vector<ProcessId>{(i + 4) % 5});
  }
  for (std::size_t n = 3; n < 12; ++n) {
    EXPECT_EQ(gen_ring(n).max_degree(), 2u);
  }
  EXPECT_THROW(gen_ring(1), GraphError);
}

TEST(GraphTest, ChainRunsFromSourceToSink) {
  const auto c3 = gen_chain(3);
  EXPECT_EQ(std::vector<Arc>(c3.arcs().begin(), c3.arcs().end()), (std::vector<Arc>{{2, 1}, {1, 0}}));
  EXPECT_EQ(ids(c3.preds(0)), std::vector<ProcessId>{1});
  EXPECT_EQ(ids(c3.preds(1)), std::vector<ProcessId>{2});
  EXPECT_TRUE(c3.preds(2).empty());

  const auto c2 = gen_chain(2);
  EXPECT_EQ(std::vector<Arc>(c2.arcs().begin(), c2.arcs().end()), (std::vector<Arc>{{1, 0}}));

  const auto c10 = gen_chain(10);
  EXPECT_EQ(c10.degree(0), 1u);
  EXPECT_EQ(c10.degree(9), 1u);
  for (ProcessId i = 1; i < 9; ++i) {
    EXPECT_EQ(c10.degree(i), 2u);
  }
  EXPECT_THROW(gen_chain(0), GraphError);
}

TEST(GraphTest, BidirectionalClique) {
  EXPECT_EQ(gen_clique_bidirectional(3).arcs().size(), 6u);
  EXPECT_EQ(gen_clique_bidirectional(3).max_degree(), 2u);
  EXPECT_EQ(gen_clique_bidirectional(2).arcs().size(), 2u);
  const auto k4 = gen_clique_bidirectional(4);
  for (ProcessId i = 0; i < 4; ++i) {
    EXPECT_EQ(k4.in_degree(i), 3u);
    EXPECT_EQ(k4.out_degree(i), 3u);
  }
  EXPECT_THROW(gen_clique_bidirectional(1), GraphError);
}

TEST(GraphTest, DerivedSetsMatchArcs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = gen_random_bounded(3 + seed % 8, 1 + seed % 4, seed);
    std::size_t max_deg = 0;
    for (ProcessId i = 0; i < g.size(); ++i) {
      std::set<ProcessId> preds, succs;
      for (const Arc& a : g.arcs()) {
        if (a.to == i) preds.insert(a.from);
        if (a.from == i) succs.insert(a.to);
      }
      std::set<ProcessId> nbrs = preds;
      nbrs.insert(succs.begin(), succs.end());
      EXPECT_EQ(ids(g.preds(i)), std::vector<ProcessId>(preds.begin(), preds.end()));
      EXPECT_EQ(ids(g.succs(i)), std::vector<ProcessId>(succs.begin(), succs.end()));
      EXPECT_EQ(ids(g.neighbors(i)), std::vector<ProcessId>(nbrs.begin(), nbrs.end()));
      max_deg = std::max(max_deg, nbrs.size());
    }
    EXPECT_EQ(g.max_degree(), max_deg);
    EXPECT_LE(g.max_degree(), 1 + seed % 4);
  }
}

TEST(GraphTest, RandomBoundedHitsTargetDegree) {
  const auto g = gen_random_bounded(30, 4, 2024);
  EXPECT_EQ(g.max_degree(), 4u);
  const auto again = gen_random_bounded(30, 4, 2024);
  EXPECT_TRUE(std::equal(g.arcs().begin(), g.arcs().end(), again.arcs().begin(), again.arcs().end()));
}

TEST(GraphTest, ParsesTextFormat) {
  std::istringstream in("# a 3-ring\n3\n0 1\n1 2  # inline\n\n2 0\n");
  const auto g = parse_graph(in);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.arcs().size(), 3u);
  EXPECT_TRUE(g.has_arc(2, 0));

  std::ostringstream out;
  write_graph(out, g);
  std::istringstream back(out.str());
  const auto g2 = parse_graph(back);
  EXPECT_TRUE(std::equal(g.arcs().begin(), g.arcs().end(), g2.arcs().begin(), g2.arcs().end()));
}

TEST(GraphTest, ParseErrors) {
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(parse_graph(empty), GraphError);
  std::istringstream junk("3\n0 x\n");
  EXPECT_THROW(parse_graph(junk), GraphError);
  std::istringstream triple("3\n0 1 2\n");
  EXPECT_THROW(parse_graph(triple), GraphError);
  std::istringstream loop("3\n1 1\n");
  EXPECT_THROW(parse_graph(loop), GraphError);
}

TEST(GraphTest, SpecMiniLanguage) {
  EXPECT_EQ(graph_from_spec("ring:5").size(), 5u);
  EXPECT_EQ(graph_from_spec("chain:4").arcs().size(), 3u);
  EXPECT_EQ(graph_from_spec("clique:3").arcs().size(), 6u);
  EXPECT_EQ(graph_from_spec("random:30:4:7").max_degree(), 4u);
  EXPECT_THROW(graph_from_spec("ring"), GraphError);
  EXPECT_THROW(graph_from_spec("ring:x"), GraphError);
  EXPECT_THROW(graph_from_spec("torus:4"), GraphError);
  EXPECT_THROW(graph_from_spec("random:4:2"), GraphError);
  EXPECT_THROW(graph_from_spec("file:/nonexistent/graph.txt"), GraphError);
}

}  // namespace
}  // namespace unicolor
