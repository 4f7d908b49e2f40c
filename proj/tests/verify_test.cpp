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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unicolor/verify.hpp"

namespace unicolor {
namespace {

oracle::ArcList arc_list(const DirectedGraph& g) {
  oracle::ArcList out;
  for (const Arc& a : g.arcs()) out.emplace_back(a.from, a.to);
  return out;
}

TEST(CodecTest, RoundTripAndCap) {
  const ConfigurationCodec codec(4, 3, 1000);
  EXPECT_EQ(codec.total(), 81u);
  for (std::uint64_t code = 0; code < codec.total(); ++code) {
    EXPECT_EQ(codec.encode(codec.decode(code).colors()), code);
  }
  try {
    ConfigurationCodec(10, 10, 1000);
    FAIL() << "expected EnumerationCapExceeded";
  } catch (const EnumerationCapExceeded& e) {
    EXPECT_EQ(e.allowed(), 1000u);
    EXPECT_GT(e.required(), 1000u);
  }
  EXPECT_THROW(verify_deterministic(gen_ring(10), 10, PolicyClass::AllLocallyCentralSingle), EnumerationCapExceeded);
}

TEST(VerifyDeterministicTest, ThreeRing) {
  const auto r = verify_deterministic(gen_ring(3), 3, PolicyClass::AllLocallyCentralSingle);
  EXPECT_TRUE(r.all_converge);
  EXPECT_FALSE(r.witness_divergence.has_value());
  EXPECT_EQ(r.configurations_checked, 27u);
  EXPECT_LE(r.worst_case_moves, 3u);
  EXPECT_EQ(r.terminal_count, 6u);
  EXPECT_TRUE(r.terminal_equals_legitimate);
}

TEST(VerifyDeterministicTest, ThreeRingDistributedDiverges) {
  const auto r = verify_deterministic(gen_ring(3), 3, PolicyClass::AllDistributedSubsets);
  EXPECT_FALSE(r.all_converge);
  EXPECT_EQ(r.divergence_kind, "cycle");
  ASSERT_TRUE(r.witness_divergence.has_value());
  EXPECT_TRUE(witness_replay_cycles(gen_ring(3), 3, *r.witness_divergence));
  // The lowest-coded root is the uniform 0 configuration.
  EXPECT_EQ(r.witness_divergence->initial, (std::vector<Color>{0, 0, 0}));
}

TEST(VerifyDeterministicTest, PinchOnChainsAndRings) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const Color k = static_cast<Color>(n);
    const auto want = n * (n - 1) / 2;
    const auto chain = verify_deterministic(gen_chain(n), k, PolicyClass::AllLocallyCentralSingle);
    EXPECT_TRUE(chain.all_converge) << "chain " << n;
    EXPECT_EQ(chain.worst_case_moves, want) << "chain " << n;
    const auto ring = verify_deterministic(gen_ring(n), k, PolicyClass::AllLocallyCentralSingle);
    EXPECT_TRUE(ring.all_converge) << "ring " << n;
    EXPECT_EQ(ring.worst_case_moves, want) << "ring " << n;
  }
}

TEST(VerifyDeterministicTest, WorstWitnessReplaysToItsMoveCount) {
  const auto g = gen_chain(4);
  const auto r = verify_deterministic(g, 4, PolicyClass::AllLocallyCentralSingle);
  ASSERT_TRUE(r.worst_case_witness.has_value());
  const auto& w = *r.worst_case_witness;
  EXPECT_EQ(w.moves, r.worst_case_moves);
  const auto t = run(g, AlgorithmSpec::deterministic(4), SchedulerPolicy::scripted(Script{w.schedule}),
                     Configuration(w.initial, 4), 0, 0);
  EXPECT_TRUE(t.terminated);
  EXPECT_EQ(t.total_moves, r.worst_case_moves);
}

// Worst case from each configuration against the unmemoized oracle.
TEST(VerifyDeterministicTest, AgreesWithBruteForce) {
  const std::vector<std::pair<DirectedGraph, Color>> cases{
      {gen_ring(3), 3}, {gen_chain(4), 3}, {gen_random_bounded(4, 2, 8), 3}, {gen_clique_bidirectional(3), 3}};
  for (const auto& [g, k] : cases) {
    const auto preds = oracle::predecessor_lists(g.size(), arc_list(g));
    std::size_t worst = 0;
    for (const auto& c : oracle::all_configurations(g.size(), k)) {
      const auto l = oracle::brute_force_longest(preds, c, k, 200);
      ASSERT_TRUE(l.has_value());
      worst = std::max(worst, *l);
    }
    const auto r = verify_deterministic(g, k, PolicyClass::AllLocallyCentralSingle);
    EXPECT_TRUE(r.all_converge);
    EXPECT_EQ(r.worst_case_moves, worst);
  }
}

TEST(VerifyDeterministicTest, DepthLimit) {
  const auto r = verify_deterministic(gen_chain(4), 4, PolicyClass::AllLocallyCentralSingle, 5);
  EXPECT_FALSE(r.all_converge);
  EXPECT_EQ(r.divergence_kind, "depth");
  EXPECT_TRUE(r.witness_divergence.has_value());
}

TEST(VerifyDeterministicTest, RingsDivergeUnderDistributedSubsets) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto g = gen_ring(n);
    const auto r = verify_deterministic(g, static_cast<Color>(n), PolicyClass::AllDistributedSubsets);
    EXPECT_FALSE(r.all_converge);
    ASSERT_TRUE(r.witness_divergence.has_value());
    EXPECT_TRUE(witness_replay_cycles(g, static_cast<Color>(n), *r.witness_divergence));
  }
}

TEST(VerifyDeterministicTest, ReportsAreDeterministic) {
  const auto a = to_json(verify_deterministic(gen_ring(4), 4, PolicyClass::AllDistributedSubsets));
  const auto b = to_json(verify_deterministic(gen_ring(4), 4, PolicyClass::AllDistributedSubsets));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(VerifyProbabilisticTest, ThreeRing) {
  const auto r = verify_probabilistic_support(gen_ring(3), 3);
  EXPECT_TRUE(r.all_converge);
  EXPECT_TRUE(r.terminal_equals_legitimate);
  const auto arcs = arc_list(gen_ring(3));
  std::size_t proper = 0;
  for (const auto& c : oracle::all_configurations(3, 3)) proper += oracle::proper(arcs, c);
  EXPECT_EQ(r.terminal_count, proper);
}

TEST(VerifyProbabilisticTest, CliqueTerminalsArePermutations) {
  const auto r = verify_probabilistic_support(gen_clique_bidirectional(3), 3);
  EXPECT_TRUE(r.all_converge);
  EXPECT_EQ(r.terminal_count, 6u);
  EXPECT_EQ(r.legitimate_count, 6u);
}

TEST(VerifyProbabilisticTest, RequiresMoreColorsThanDegree) {
  EXPECT_THROW(verify_probabilistic_support(gen_ring(4), 2), AlgorithmError);
}

TEST(CountLegitimateTest, Clique) {
  EXPECT_EQ(count_legitimate(gen_clique_bidirectional(4), 3), 0u);
  EXPECT_EQ(count_legitimate(gen_clique_bidirectional(4), 4), 24u);
}

}  // namespace
}  // namespace unicolor
