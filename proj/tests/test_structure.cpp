#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/samples.hpp"

using namespace ulpa;
using namespace ulpa::testing;

TEST(ConditionK, Examples) {
  const auto g2 = u2();
  const auto r2 = condition_K(g2);
  EXPECT_FALSE(r2.holds);
  EXPECT_EQ(r2.failing, (std::vector<VertexId>{V(g2, "v")}));
  EXPECT_EQ(r2.per_vertex.at(V(g2, "v")).witnesses, (std::vector<PathWord>{W(g2, "l")}));
  EXPECT_TRUE(condition_K(u3()).holds);
  EXPECT_TRUE(condition_K(u4()).holds);
  const auto g1 = u1();
  EXPECT_EQ(condition_K(g1).failing, (std::vector<VertexId>{V(g1, "v"), V(g1, "w")}));
}

TEST(ConditionK, AgreesWithCountingOracle) {
  Rng rng(51);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_ultragraph(rng, 5, 8);
    bool expected = true;
    for (auto v : g.vertices()) expected = expected && count_first_returns(g, v).capped != 1;
    EXPECT_EQ(condition_K(g).holds, expected);
  }
}

TEST(Connection, Examples) {
  const auto g1 = u1();
  EXPECT_TRUE(connects_to_all_infinite(g1, V(g1, "v")).connects);
  const auto r = connects_to_all_infinite(g1, V(g1, "w"));
  EXPECT_FALSE(r.connects);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(*r.counterexample, P(g1, "", "e"));
  const auto g2 = u2();
  EXPECT_TRUE(connects_to_all_infinite(g2, V(g2, "v")).connects);
}

TEST(Connection, CounterexamplesAvoidTheReachableSet) {
  Rng rng(52);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_ultragraph(rng, 5, 8);
    const auto reach = reach_matrix(g);
    for (auto v : g.vertices()) {
      const auto r = connects_to_all_infinite(g, v);
      // Oracle: a cycle among edges whose sources v cannot reach, found by
      // closing the restricted edge relation transitively.
      std::vector<EdgeId> outside;
      for (auto e : g.edges())
        if (!reach[v.index][g.source(e).index]) outside.push_back(e);
      const std::size_t n = outside.size();
      std::vector<std::vector<bool>> t(n, std::vector<bool>(n, false));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = g.range(outside[a]).contains(g.source(outside[b]));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (t[a][k] && t[k][b]) t[a][b] = true;
      bool cycle = false;
      for (std::size_t a = 0; a < n; ++a) cycle = cycle || t[a][a];
      EXPECT_EQ(r.connects, !cycle);
      if (!r.connects) {
        ++failures;
        const auto& p = *r.counterexample;
        EXPECT_TRUE(p.valid_prefix(g, 3 * (p.preperiod() + p.period())));
        for (std::size_t j = 0; j < 2 * (p.preperiod() + p.period()); ++j)
          EXPECT_FALSE(reach[v.index][g.source(p.letter(j)).index]);
      }
    }
  }
  EXPECT_GT(failures, 10);
}

TEST(Simplicity, GoldenVerdicts) {
  const auto g3 = u3();
  const auto s3 = simplicity_sufficient(g3);
  EXPECT_EQ(s3.kind, SimplicityVerdict::Kind::True);
  EXPECT_TRUE(s3.condition_emitters_vacuous);

  const auto g2 = u2();
  const auto s2 = simplicity_sufficient(g2);
  EXPECT_EQ(s2.kind, SimplicityVerdict::Kind::Inconclusive);
  EXPECT_EQ(s2.failing_conditions, (std::vector<int>{1}));

  const auto g1 = u1();
  const auto s1 = simplicity_sufficient(g1);
  EXPECT_EQ(s1.kind, SimplicityVerdict::Kind::Inconclusive);
  EXPECT_FALSE(s1.condition_connect);
  ASSERT_TRUE(s1.connect_witness);
  EXPECT_EQ(s1.connect_witness->first, V(g1, "w"));
  EXPECT_EQ(s1.connect_witness->second, P(g1, "", "e"));
  // Both loops are the only first-return paths at their vertices, so (K) fails as well.
  EXPECT_EQ(s1.failing_conditions, (std::vector<int>{1, 2}));

  EXPECT_EQ(simplicity_sufficient(u4()).kind, SimplicityVerdict::Kind::NotApplicable);
}

TEST(Simplicity, NeverTrueWithoutConditionK) {
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_ultragraph(rng, 5, 8, true);
    const auto s = simplicity_sufficient(g);
    if (!condition_K(g).holds) {
      EXPECT_NE(s.kind, SimplicityVerdict::Kind::True);
    }
    EXPECT_NE(s.kind, SimplicityVerdict::Kind::NotApplicable);
  }
}

TEST(PathLengths, MatchWalkEnumeration) {
  Rng rng(54);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_ultragraph(rng, 4, 6);
    PathLengthTable table(g);
    const LeavittPathAlgebra<RationalField> alg(g);
    for (std::size_t l = 1; l <= 4; ++l) {
      const auto words = alg.paths_of_length(l);
      for (auto e : g.edges()) {
        bool expected = false;
        for (const auto& w : words) expected = expected || g.range(w.back()) == g.range(e);
        EXPECT_EQ(table.has(l, g.range(e)), expected);
      }
    }
  }
}

TEST(StrongGrading, Examples) {
  const auto g2 = u2();
  EXPECT_EQ(strongly_graded(g2).kind, StrongGradingVerdict::Kind::True);
  EXPECT_TRUE(bounded_condition2(g2, 4, 4).passed);
  EXPECT_EQ(strongly_graded(three_cycle()).kind, StrongGradingVerdict::Kind::True);
  const auto r4 = strongly_graded(u4());
  EXPECT_EQ(r4.kind, StrongGradingVerdict::Kind::NotApplicableSinks);
  EXPECT_FALSE(r4.bounded.has_value());
}

TEST(StrongGrading, TrueExactlyOnSinkFreeInputs) {
  Rng rng(55);
  int sink_free = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = random_ultragraph(rng, 5, 8, uniform(rng, 0, 1) == 1);
    const auto r = strongly_graded(g);
    EXPECT_EQ(r.kind == StrongGradingVerdict::Kind::True, !g.has_sinks());
    if (r.kind == StrongGradingVerdict::Kind::True) {
      ++sink_free;
      ASSERT_TRUE(r.bounded);
      EXPECT_TRUE(r.bounded->passed);
      EXPECT_EQ(r.bounded->k_max, 6u);
      EXPECT_EQ(r.bounded->witness_bound, 2 * g.edge_count() + 2);
    }
  }
  EXPECT_GT(sink_free, 30);
}

TEST(StrongGrading, BoundedCheckHoldsWhenPathsEndInCycles) {
  // A tail into a loop, and a two-cycle whose ranges alternate by parity.
  const auto g = Ultragraph::build({"v", "w", "z"}, {{"a", "z", {"v"}}, {"e", "v", {"w"}}, {"f", "w", {"w"}}});
  const auto r = bounded_condition2(g, 3, 6);
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.paths_checked, 0u);
  const auto two = Ultragraph::build({"v", "w"}, {{"e", "v", {"w"}}, {"f", "w", {"v"}}});
  EXPECT_TRUE(bounded_condition2(two, 6, 6).passed);
}

TEST(Unital, AlwaysTrueOnFiniteGraphs) {
  EXPECT_TRUE(is_unital(u1()));
  EXPECT_TRUE(is_unital(u2()));
  Rng rng(56);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(is_unital(random_ultragraph(rng, 5, 8)));
}

TEST(Report, CollectsCyclesFromWitnesses) {
  const auto g = u1();
  const auto r = report(g);
  ASSERT_EQ(r.cycles.size(), 2u);
  EXPECT_EQ(r.cycles[0].cycle, W(g, "e"));
  EXPECT_EQ(r.cycles[0].exits.size(), 1u);
  EXPECT_EQ(r.cycles[1].cycle, W(g, "f"));
  EXPECT_TRUE(r.cycles[1].exits.empty());
  EXPECT_TRUE(r.unital);
  EXPECT_TRUE(r.sinks.empty());
}
