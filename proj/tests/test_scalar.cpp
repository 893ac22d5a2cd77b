#include <gtest/gtest.h>

#include <random>

#include "ulpa/exact_solve.hpp"
#include "ulpa/scalar.hpp"

using namespace ulpa;

TEST(Rational, ArithmeticIsExactAndCanonical) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - a, Rational(0));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a * Rational(3), Rational(1));
  EXPECT_TRUE((a / a).is_one());
  EXPECT_EQ(Rational(2, 4).to_string(), "1/2");
  EXPECT_EQ(Rational(-6, 3).to_string(), "-2");
  EXPECT_TRUE(Rational(-1, 7).is_negative());
  EXPECT_EQ(Rational(-1, 7).abs(), Rational(1, 7));
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(ModPrime, InverseAndReduction) {
  const PrimeField f(101);
  EXPECT_EQ(f.from_int(-1).value(), 100u);
  for (long v = 1; v < 101; ++v) EXPECT_TRUE((f.from_int(v) * f.from_int(v).inverse()).is_one()) << v;
  EXPECT_EQ(f.from_fraction(1, 2) * f.from_int(2), f.one());
  EXPECT_THROW(f.from_fraction(1, 101), std::domain_error);
  EXPECT_THROW(f.zero() / f.zero(), std::domain_error);
}

TEST(ModPrime, MixedModuliRejected) { EXPECT_THROW(ModPrime(1, 5) + ModPrime(1, 7), std::logic_error); }

TEST(PrimeField, ModulusValidation) {
  EXPECT_THROW(PrimeField(15), std::invalid_argument);
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
  EXPECT_THROW(PrimeField((std::uint64_t{1} << 32) + 15), std::invalid_argument);
  EXPECT_EQ(PrimeField(4294967291ULL).name(), "fp:4294967291");
  const PrimeField big(4294967291ULL);
  EXPECT_TRUE((big.from_int(-2) * big.from_int(-2).inverse()).is_one());
}

TEST(IsPrime, SmallValues) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 0; n < 30; ++n)
    if (is_prime(n)) primes.push_back(n);
  EXPECT_EQ(primes, (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

template <Field F>
void check_random_systems(const F& field, std::uint64_t seed) {
  using K = typename F::scalar;
  std::mt19937_64 rng(seed);
  auto small = [&] { return static_cast<long>(rng() % 7) - 3; };
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 5, m = 1 + rng() % 6;
    std::vector<K> x(n, field.zero());
    for (auto& v : x) v = field.from_int(small());
    SparseLinearSystem<F> sys(field, n);
    std::vector<std::map<std::size_t, K>> rows;
    for (std::size_t i = 0; i < m; ++i) {
      std::map<std::size_t, K> row;
      K rhs = field.zero();
      for (std::size_t j = 0; j < n; ++j) {
        const K c = field.from_int(small());
        if (c.is_zero()) continue;
        row.emplace(j, c);
        rhs = rhs + c * x[j];
      }
      rows.push_back(row);
      sys.add_equation(row, rhs);
    }
    const auto sol = sys.solve();
    ASSERT_TRUE(sol.has_value());
    for (std::size_t i = 0; i < m; ++i) {
      K lhs = field.zero();
      for (const auto& [j, c] : rows[i]) lhs = lhs + c * (*sol)[j];
      K rhs = field.zero();
      for (const auto& [j, c] : rows[i]) rhs = rhs + c * x[j];
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(SparseLinearSystem, SolvesConsistentSystems) {
  check_random_systems(RationalField{}, 3);
  check_random_systems(PrimeField(7), 4);
}

TEST(SparseLinearSystem, DetectsInconsistency) {
  const RationalField q;
  SparseLinearSystem<RationalField> sys(q, 2);
  sys.add_equation({{0, Rational(1)}, {1, Rational(1)}}, Rational(1));
  sys.add_equation({{0, Rational(2)}, {1, Rational(2)}}, Rational(3));
  EXPECT_FALSE(sys.solve().has_value());
}

TEST(SparseLinearSystem, ZeroRowNeedsZeroRhs) {
  const RationalField q;
  SparseLinearSystem<RationalField> sys(q, 1);
  sys.add_equation({}, Rational(0));
  ASSERT_TRUE(sys.solve().has_value());
  sys.add_equation({}, Rational(1));
  EXPECT_FALSE(sys.solve().has_value());
}
