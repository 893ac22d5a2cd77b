#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/samples.hpp"

using namespace ulpa;
using namespace ulpa::testing;

TEST(UltrapathProduct, Examples) {
  const auto g = u1();
  EXPECT_EQ(up_product(g, vertex_set_path(S(g, {"v", "w"})), vertex_set_path(S(g, {"w"}))),
            vertex_set_path(S(g, {"w"})));
  EXPECT_EQ(up_product(g, {W(g, "e"), S(g, {"v", "w"})}, vertex_set_path(S(g, {"w"}))),
            (Ultrapath{W(g, "e"), S(g, {"w"})}));
  EXPECT_FALSE(up_product(g, vertex_set_path(S(g, {"v"})), {W(g, "f"), S(g, {"w"})}).has_value());
}

TEST(UltrapathProduct, ConcatenatesWords) {
  const auto g = u1();
  EXPECT_EQ(up_product(g, {W(g, "e"), S(g, {"v", "w"})}, {W(g, "f"), S(g, {"w"})}),
            (Ultrapath{W(g, "e,f"), S(g, {"w"})}));
  EXPECT_FALSE(up_product(g, {W(g, "e"), S(g, {"v"})}, {W(g, "f"), S(g, {"w"})}).has_value());
}

TEST(UltrapathProduct, Associative) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_ultragraph(rng, 4, 6);
    auto pick = [&]() -> Ultrapath {
      auto w = random_path(g, rng, uniform(rng, 0, 2));
      if (!w) return vertex_set_path(g.all_vertices());
      return {*w, random_subset(rng, effective_range(g, *w))};
    };
    const auto x = pick(), y = pick(), z = pick();
    auto xy = up_product(g, x, y);
    auto yz = up_product(g, y, z);
    auto left = xy ? up_product(g, *xy, z) : std::nullopt;
    auto right = yz ? up_product(g, x, *yz) : std::nullopt;
    EXPECT_EQ(left, right);
  }
}

TEST(ConcatInfinite, Examples) {
  const auto g = u1();
  const auto finf = P(g, "", "f");
  EXPECT_EQ(concat_infinite(g, {W(g, "e"), S(g, {"v", "w"})}, finf), P(g, "e", "f"));
  EXPECT_EQ(concat_infinite(g, vertex_set_path(S(g, {"w"})), finf), finf);
  EXPECT_FALSE(concat_infinite(g, vertex_set_path(S(g, {"v"})), finf).has_value());
}

TEST(Shift, Examples) {
  const auto g1 = u1();
  EXPECT_EQ(tau_gt(P(g1, "e", "f"), 1), P(g1, "", "f"));
  const auto g3 = u3();
  const auto ab = P(g3, "", "a,b");
  EXPECT_EQ(tau_le(ab, 3), W(g3, "a,b,a"));
  EXPECT_EQ(tau_gt(ab, 0), ab);
  EXPECT_EQ(tau_gt(ab, 1), P(g3, "", "b,a"));
}

TEST(InfinitePath, RepresentationIsMinimal) {
  const auto g = u3();
  EXPECT_EQ(P(g, "a,b", "a,b"), P(g, "", "a,b"));
  EXPECT_EQ(P(g, "", "a,a"), P(g, "", "a"));
  EXPECT_EQ(P(g, "b", "a,b"), P(g, "", "b,a"));
  EXPECT_EQ(P(g, "b,a,b", "a,b").format(g), "|b,a");
  EXPECT_THROW(P(u1(), "f", "e"), PathError);
  EXPECT_THROW(InfinitePath::eventually_periodic(g, {}, {}), PathError);
}

TEST(TailEquivalence, Examples) {
  const auto g1 = u1();
  EXPECT_TRUE(tail_equivalent(P(g1, "e", "f"), P(g1, "", "f")));
  const auto g3 = u3();
  EXPECT_FALSE(tail_equivalent(P(g3, "", "a"), P(g3, "", "b")));
  EXPECT_TRUE(tail_equivalent(P(g3, "a", "b,a"), P(g3, "b,b", "a,b")));
}

TEST(ShiftedTailEqual, Examples) {
  const auto g = u1();
  const auto efinf = P(g, "e", "f"), finf = P(g, "", "f");
  EXPECT_TRUE(shifted_tail_equal(efinf, finf, 1));
  // f^infinity is shift-invariant, so the alignment (m, n) = (2, 2) also works at k = 0.
  EXPECT_TRUE(shifted_tail_equal(efinf, finf, 0));
  EXPECT_TRUE(brute_shifted_tail_equal(efinf, finf, 0));
  const auto g3 = u3();
  EXPECT_FALSE(shifted_tail_equal(P(g3, "", "a"), P(g3, "", "b"), 0));
  EXPECT_TRUE(shifted_tail_equal(P(g3, "b", "a,b"), P(g3, "", "a,b"), 1));
  EXPECT_FALSE(shifted_tail_equal(P(g3, "b", "a,b"), P(g3, "", "a,b"), 0));
  EXPECT_TRUE(shifted_tail_equal(P(g3, "b", "a,b"), P(g3, "", "a,b"), -1));
}

TEST(ShiftedTailEqual, AgreesWithAlignmentEnumeration) {
  Rng rng(22);
  const std::vector<Ultragraph> graphs{u1(), u3(), three_cycle(), branching()};
  for (int i = 0; i < 300; ++i) {
    const auto& g = graphs[uniform(rng, 0, graphs.size() - 1)];
    const auto p = random_eventually_periodic(g, rng, 3, 3);
    ASSERT_TRUE(p);
    const auto q = uniform(rng, 0, 1) ? random_tail_point(g, rng, *p, 3, 4) : *random_eventually_periodic(g, rng, 3, 3);
    const long k = static_cast<long>(uniform(rng, 0, 10)) - 5;
    EXPECT_EQ(shifted_tail_equal(*p, q, k), brute_shifted_tail_equal(*p, q, k)) << p->format(g) << " " << q.format(g) << " " << k;
    if (auto m = find_alignment(*p, q, k)) {
      EXPECT_EQ(p->drop(*m), q.drop(*m - static_cast<std::size_t>(k)));
    }
  }
}

TEST(LeastRotation, Canonical) {
  const auto g = u3();
  EXPECT_EQ(least_rotation(W(g, "b,a,a")), W(g, "a,a,b"));
  EXPECT_EQ(least_rotation(W(g, "a,b,a,b")), W(g, "a,b,a,b"));
}

TEST(ShiftedTail, CanonicalizeExamples) {
  const auto g1 = u1();
  const auto finf = P(g1, "", "f");
  auto st = canonicalize({W(g1, "f"), 0, finf});
  EXPECT_TRUE(st.u.empty());
  EXPECT_EQ(st.m, 0u);
  const ShiftedTail keep{W(g1, "e"), 0, finf};
  EXPECT_EQ(canonicalize(keep), keep);
  const auto g3 = u3();
  const auto ab = P(g3, "", "a,b");
  const auto reduced = canonicalize({{}, 2, ab});
  EXPECT_TRUE(reduced.u.empty());
  EXPECT_EQ(reduced.m, 0u);
}

TEST(ShiftedTail, CanonicalizePreservesRealizationAndIsIdempotent) {
  Rng rng(23);
  const std::vector<Ultragraph> graphs{u1(), u3(), three_cycle(), branching()};
  for (int i = 0; i < 300; ++i) {
    const auto& g = graphs[uniform(rng, 0, graphs.size() - 1)];
    const auto base = *random_eventually_periodic(g, rng, 3, 3);
    const auto m = uniform(rng, 0, 6);
    const ShiftedTail st{random_path_into(g, rng, base.drop(m).source(g), 4), m, base};
    const auto c = canonicalize(st);
    EXPECT_EQ(c.realize(), st.realize());
    EXPECT_EQ(canonicalize(c), c);
    EXPECT_LT(c.m, base.preperiod() + base.period());
  }
}

TEST(ShiftedTail, EqualRealizationsCanonicalizeEqually) {
  Rng rng(24);
  const auto g = branching();
  for (int i = 0; i < 300; ++i) {
    const auto base = *random_eventually_periodic(g, rng, 2, 3);
    const auto q = random_tail_point(g, rng, base, 3, 5);
    // Decompositions u . tau_{>m}(base) of the same q canonicalize to one key.
    for (std::size_t m = 0; m < base.preperiod() + 2 * base.period(); ++m)
      for (std::size_t cut = 0; cut < 6; ++cut)
        if (q.drop(cut) == base.drop(m)) {
          const auto a = canonicalize({q.take(cut), m, base});
          const auto b = canonicalize({q.take(cut + 1), m + 1, base});
          EXPECT_EQ(a, b);
        }
  }
}

TEST(AperiodicStream, ShiftsAndComparison) {
  const auto g = u3();
  const EdgeId a = E(g, "a"), b = E(g, "b");
  auto s = std::make_shared<EdgeStream>(EdgeStream{"squares", [a, b](std::size_t i) {
                                                     std::size_t r = 0;
                                                     while ((r + 1) * (r + 1) <= i + 1) ++r;
                                                     return r * r == i + 1 ? b : a;
                                                   }});
  const auto p = InfinitePath::from_stream(s);
  EXPECT_EQ(p.take(5), W(g, "b,a,a,b,a"));
  EXPECT_EQ(p.drop(3).prepend(p.take(3)), p);
  EXPECT_EQ(p.drop(2).format(g), "|<squares>+2");
  EXPECT_TRUE(shifted_tail_equal(p.drop(2), p.drop(5), 3));
  EXPECT_FALSE(shifted_tail_equal(p.drop(2), p.drop(5), 2));
  EXPECT_FALSE(tail_equivalent(p, P(g, "", "a")));
  auto other = std::make_shared<EdgeStream>(EdgeStream{"other", s->letter});
  EXPECT_THROW(tail_equivalent(p, InfinitePath::from_stream(other)), UnsupportedComparison);
}
