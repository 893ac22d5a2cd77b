#pragma once

// Exact coefficient fields: arbitrary-precision rationals and prime fields.
//
// Scalars are plain values.  Constants are produced by a field object
// (RationalField / PrimeField) so that code generic over the field never
// has to guess a modulus.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ulpa {

class Rational {
 public:
  Rational() = default;
  explicit Rational(long n) : value_(n) {}
  Rational(long num, long den) : value_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  const mpq_class& raw() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }

  /// "3", "-1/2"
  std::string to_string() const { return value_.get_str(); }
  /// Sign and magnitude split, used by pretty printers.
  bool is_negative() const { return sgn(value_) < 0; }
  Rational abs() const { return is_negative() ? -*this : *this; }

 private:
  mpq_class value_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

/// Residue modulo a prime carried with the value.
class ModPrime {
 public:
  ModPrime() = default;
  ModPrime(std::int64_t v, std::uint64_t p) : p_(p) {
    if (p == 0) throw std::invalid_argument("modulus must be positive");
    auto m = static_cast<std::int64_t>(p);
    v %= m;
    if (v < 0) v += m;
    v_ = static_cast<std::uint64_t>(v);
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  ModPrime operator-() const { return from_raw(v_ == 0 ? 0 : p_ - v_, p_); }
  ModPrime& operator+=(const ModPrime& o) {
    check(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) + o.v_) % p_);
    return *this;
  }
  ModPrime& operator-=(const ModPrime& o) { return *this += -o; }
  ModPrime& operator*=(const ModPrime& o) {
    check(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % p_);
    return *this;
  }
  ModPrime& operator/=(const ModPrime& o) {
    check(o);
    if (o.is_zero()) throw std::domain_error("division by zero");
    return *this *= o.inverse();
  }
  friend ModPrime operator+(ModPrime a, const ModPrime& b) { return a += b; }
  friend ModPrime operator-(ModPrime a, const ModPrime& b) { return a -= b; }
  friend ModPrime operator*(ModPrime a, const ModPrime& b) { return a *= b; }
  friend ModPrime operator/(ModPrime a, const ModPrime& b) { return a /= b; }
  friend bool operator==(const ModPrime& a, const ModPrime& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  std::string to_string() const { return std::to_string(v_); }
  bool is_negative() const { return false; }
  ModPrime abs() const { return *this; }

  ModPrime inverse() const {
    // Fermat: v^(p-2)
    ModPrime result = from_raw(1 % p_, p_);
    ModPrime base = *this;
    std::uint64_t e = p_ - 2;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

 private:
  static ModPrime from_raw(std::uint64_t v, std::uint64_t p) {
    ModPrime r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  void check(const ModPrime& o) const {
    if (p_ != o.p_) throw std::logic_error("mixing residues of different moduli");
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

inline std::ostream& operator<<(std::ostream& os, const ModPrime& r) { return os << r.to_string(); }

struct RationalField {
  using scalar = Rational;
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_int(long n) const { return Rational(n); }
  Rational from_fraction(long num, long den) const { return Rational(num, den); }
  std::string name() const { return "q"; }
  bool operator==(const RationalField&) const = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class PrimeField {
 public:
  using scalar = ModPrime;
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("prime modulus must be below 2^32");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
  ModPrime zero() const { return ModPrime(0, p_); }
  ModPrime one() const { return ModPrime(1, p_); }
  ModPrime from_int(long n) const { return ModPrime(n, p_); }
  ModPrime from_fraction(long num, long den) const {
    ModPrime d(den, p_);
    if (d.is_zero()) throw std::domain_error("denominator vanishes modulo " + std::to_string(p_));
    return ModPrime(num, p_) / d;
  }
  std::uint64_t modulus() const { return p_; }
  std::string name() const { return "fp:" + std::to_string(p_); }
  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

template <class F>
concept Field = requires(const F& f, long n) {
  typename F::scalar;
  { f.zero() } -> std::same_as<typename F::scalar>;
  { f.one() } -> std::same_as<typename F::scalar>;
  { f.from_int(n) } -> std::same_as<typename F::scalar>;
  { f.from_fraction(n, n) } -> std::same_as<typename F::scalar>;
  requires requires(typename F::scalar a, typename F::scalar b) {
    { a + b } -> std::same_as<typename F::scalar>;
    { a * b } -> std::same_as<typename F::scalar>;
    { a / b } -> std::same_as<typename F::scalar>;
    { -a } -> std::same_as<typename F::scalar>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
  };
};

}  // namespace ulpa
