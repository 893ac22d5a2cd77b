#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/samples.hpp"

using namespace ulpa;
using namespace ulpa::testing;

TEST(Validate, WellFormedSample) {
  EXPECT_TRUE(validate(u1().description()).empty());
}

TEST(Validate, EmptyRangeAndUndeclaredVertex) {
  const UltragraphDescription d{{"v"}, {{"e", "v", {}}, {"g", "v", {"x"}}, {"h", "nowhere", {"v"}}}};
  const auto v = validate(d);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], (Violation{"edge e", "empty range"}));
  EXPECT_EQ(v[1].subject, "edge g");
  EXPECT_NE(v[1].message.find("undeclared vertex 'x'"), std::string::npos);
  EXPECT_EQ(v[2].subject, "edge h");
  EXPECT_THROW(Ultragraph::from_description(d), ValidationError);
}

TEST(Validate, DuplicatesAndCollisions) {
  const UltragraphDescription d{{"v", "v", "e"}, {{"e", "v", {"v"}}, {"f", "v", {"v"}}, {"f", "v", {"v"}}}};
  const auto v = validate(d);
  EXPECT_EQ(std::count_if(v.begin(), v.end(), [](const Violation& x) { return x.message == "duplicate vertex id"; }), 1);
  EXPECT_EQ(std::count_if(v.begin(), v.end(), [](const Violation& x) { return x.message == "duplicate edge id"; }), 1);
  EXPECT_EQ(std::count_if(v.begin(), v.end(),
                          [](const Violation& x) { return x.message == "edge id collides with a vertex id"; }),
            1);
}

TEST(Ultragraph, IdsFollowNameOrderAndDescriptionIsCanonical) {
  const auto g = Ultragraph::build({"w", "v"}, {{"f", "w", {"w"}}, {"e", "v", {"w", "v"}}});
  EXPECT_EQ(g, u1());
  EXPECT_EQ(g.vertex_name(VertexId{0}), "v");
  EXPECT_EQ(g.edge_name(EdgeId{0}), "e");
  EXPECT_EQ(g.description().edges[0].range, (std::vector<std::string>{"v", "w"}));
}

TEST(Sinks, Examples) {
  const auto g1 = u1();
  EXPECT_TRUE(sinks(g1).empty());
  EXPECT_EQ(regular_vertices(g1), S(g1, {"v", "w"}));
  const auto g4 = u4();
  EXPECT_EQ(sinks(g4), S(g4, {"w"}));
  EXPECT_EQ(regular_vertices(g4), S(g4, {"v"}));
  const auto lone = Ultragraph::build({"v"}, {});
  EXPECT_EQ(sinks(lone), S(lone, {"v"}));
}

TEST(Sinks, PartitionVerticesOnRandomGraphs) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_ultragraph(rng, 5, 8);
    for (auto v : g.vertices()) {
      std::size_t emitted = 0;
      for (auto e : g.edges()) emitted += g.source(e) == v;
      EXPECT_EQ(sinks(g).contains(v), emitted == 0);
      EXPECT_EQ(regular_vertices(g).contains(v), emitted > 0);
    }
  }
}

TEST(Epsilon, Examples) {
  const auto g = u1();
  EXPECT_EQ(epsilon(g, S(g, {"v", "w"})), (std::vector<EdgeId>{E(g, "e"), E(g, "f")}));
  EXPECT_TRUE(epsilon(g, VertexSet{}).empty());
  EXPECT_EQ(epsilon(g, S(g, {"w"})), (std::vector<EdgeId>{E(g, "f")}));
}

TEST(GeneratedFamily, Examples) {
  const auto g = u1();
  EXPECT_EQ(generate_G0(g), (std::vector<VertexSet>{S(g, {"v"}), S(g, {"v", "w"}), S(g, {"w"})}));
  const auto g2 = u2();
  EXPECT_EQ(generate_G0(g2), (std::vector<VertexSet>{S(g2, {"v"})}));
}

TEST(GeneratedFamily, EqualsNonemptyPowerSet) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_ultragraph(rng, 4, 6);
    auto expected = all_nonempty_subsets(g);
    std::sort(expected.begin(), expected.end());
    auto got = generate_G0(g);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
  }
  const auto three = three_cycle();
  EXPECT_EQ(generate_G0(three).size(), 7u);
}

TEST(Reaches, Examples) {
  const auto g = u1();
  EXPECT_TRUE(reaches(g, V(g, "v"), V(g, "w")));
  EXPECT_FALSE(reaches(g, V(g, "w"), V(g, "v")));
  for (auto x : g.vertices()) EXPECT_TRUE(reaches(g, x, x));
}

TEST(Reaches, AgreesWithTransitiveClosure) {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_ultragraph(rng, 5, 8);
    const auto r = reach_matrix(g);
    for (auto a : g.vertices())
      for (auto b : g.vertices()) EXPECT_EQ(reaches(g, a, b), r[a.index][b.index]);
  }
}

TEST(Paths, ConcatenationAndEffectiveRange) {
  const auto g = u1();
  EXPECT_TRUE(is_path(g, W(g, "e,e,f")));
  EXPECT_FALSE(is_path(g, W(g, "f,e")));
  EXPECT_THROW(require_path(g, W(g, "f,e")), PathError);
  EXPECT_EQ(effective_range(g, W(g, "e,f")), S(g, {"w"}));
  EXPECT_EQ(effective_range(g, {}), g.all_vertices());
}

TEST(CycleExits, Examples) {
  const auto g = u1();
  EXPECT_TRUE(cycle_exits(g, W(g, "f")).empty());
  const auto exits = cycle_exits(g, W(g, "e"));
  EXPECT_EQ(exits, (std::vector<CycleExit>{{CycleExit::Kind::Edge, 1, E(g, "f"), {}}}));
  const auto g4 = u4();
  EXPECT_FALSE(is_cycle(g4, W(g4, "e")));
  EXPECT_THROW(cycle_exits(g4, W(g4, "e")), PathError);
}

TEST(CycleExits, SinkExit) {
  const auto g = Ultragraph::build({"v", "z"}, {{"e", "v", {"v", "z"}}});
  EXPECT_EQ(cycle_exits(g, W(g, "e")), (std::vector<CycleExit>{{CycleExit::Kind::Sink, 1, {}, V(g, "z")}}));
}

TEST(FirstReturn, Examples) {
  const auto g2 = u2();
  const auto r2 = first_return(g2, V(g2, "v"));
  EXPECT_EQ(r2.kind, FirstReturnVerdict::Kind::ExactlyOne);
  EXPECT_EQ(r2.witnesses, (std::vector<PathWord>{W(g2, "l")}));
  const auto g3 = u3();
  const auto r3 = first_return(g3, V(g3, "v"));
  EXPECT_EQ(r3.kind, FirstReturnVerdict::Kind::TwoOrMore);
  EXPECT_EQ(r3.witnesses, (std::vector<PathWord>{W(g3, "a"), W(g3, "b")}));
  const auto g4 = u4();
  EXPECT_EQ(first_return(g4, V(g4, "v")).kind, FirstReturnVerdict::Kind::None);
}

TEST(FirstReturn, InfiniteLanguage) {
  // v -> x, x loops, x -> v: x^n between the two visits to v.
  const auto g = Ultragraph::build({"v", "x"}, {{"a", "v", {"x"}}, {"b", "x", {"x"}}, {"c", "x", {"v"}}});
  const auto r = first_return(g, V(g, "v"));
  EXPECT_EQ(r.kind, FirstReturnVerdict::Kind::TwoOrMore);
  EXPECT_TRUE(r.infinite_language);
  EXPECT_EQ(r.witnesses[0], W(g, "a,c"));
  EXPECT_EQ(r.witnesses[1], W(g, "a,b,c"));
}

TEST(FirstReturn, AgreesWithCountingOracle) {
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_ultragraph(rng, 5, 8);
    for (auto v : g.vertices()) {
      const auto got = first_return(g, v);
      const auto want = count_first_returns(g, v);
      EXPECT_EQ(static_cast<std::size_t>(got.kind), want.capped);
      EXPECT_EQ(got.infinite_language, want.infinite);
      for (const auto& w : got.witnesses) {
        ASSERT_TRUE(is_cycle(g, w));
        EXPECT_EQ(g.source(w.front()), v);
        EXPECT_TRUE(g.range(w.back()).contains(v));
        for (std::size_t j = 1; j < w.size(); ++j) EXPECT_NE(g.source(w[j]), v);
      }
    }
  }
}
