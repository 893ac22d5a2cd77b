#pragma once

// Chen modules over finite sink-free ultragraphs.
//
// V_[p] has basis the tail-equivalence class of an infinite path p, written
// as canonical shifted tails u . tau_{>m}(base).  The twisted module V^f over
// a rational class [c^inf] has basis (q, t^j) with 0 <= j < deg f: each basis
// vector stands for the arrow (q, |u| - m, c^inf) tensored with t^j, and a
// change of arrow degree by d |c| during recanonicalization is multiplied
// into the residue as t^d.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "groupoid.hpp"
#include "ultragraph.hpp"
#include "ultrapath.hpp"

namespace ulpa {

class ReduciblePolynomial : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Monic f in K[t] with f(0) != 0, i.e. the representative of f up to units of K[t, t^-1].
template <Field F>
class IrreduciblePoly {
 public:
  using K = typename F::scalar;
  enum class Status { Verified, Asserted };

  IrreduciblePoly(const F& field, std::vector<K> coeffs) : field_(field), c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.size() < 2) throw std::invalid_argument("twist polynomial must have positive degree");
    if (c_.front().is_zero()) throw std::invalid_argument("twist polynomial is divisible by t, a unit of the Laurent ring");
    const K lead = c_.back();
    for (auto& x : c_) x = x / lead;
    status_ = check_irreducible();
  }

  const std::vector<K>& coefficients() const { return c_; }
  std::size_t degree() const { return c_.size() - 1; }
  Status status() const { return status_; }
  const F& field() const { return field_; }

  K evaluate(const K& x) const {
    K acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Residue times t, for a residue of length deg f.
  std::vector<K> times_t(const std::vector<K>& r) const {
    const std::size_t d = degree();
    std::vector<K> out(d, field_.zero());
    const K top = r[d - 1];
    for (std::size_t i = d - 1; i > 0; --i) out[i] = r[i - 1];
    for (std::size_t i = 0; i < d; ++i) out[i] = out[i] - top * c_[i];
    return out;
  }

  /// Residue times t^-1, using t^-1 = -(f_1 + f_2 t + ... + t^{d-1}) / f_0.
  std::vector<K> times_t_inverse(const std::vector<K>& r) const {
    const std::size_t d = degree();
    const K low = r[0] / c_[0];
    std::vector<K> out(d, field_.zero());
    for (std::size_t i = 0; i + 1 < d; ++i) out[i] = r[i + 1];
    for (std::size_t i = 0; i < d; ++i) out[i] = out[i] - low * c_[i + 1];
    return out;
  }

  std::vector<K> times_t_power(std::vector<K> r, long n) const {
    for (; n > 0; --n) r = times_t(r);
    for (; n < 0; ++n) r = times_t_inverse(r);
    return r;
  }

  std::vector<K> unit_residue(std::size_t j) const {
    std::vector<K> r(degree(), field_.zero());
    r.at(j) = field_.one();
    return r;
  }

 private:
  Status check_irreducible() const {
    if (degree() == 1) return Status::Verified;
    if (degree() > 3) return Status::Asserted;
    // degree 2 or 3: irreducible iff no root
    if constexpr (std::is_same_v<F, RationalField>) {
      auto root = rational_root();
      if (!root) return Status::Asserted;
      if (*root) throw ReduciblePolynomial("twist polynomial has the rational root " + (*root)->to_string());
      return Status::Verified;
    } else if constexpr (std::is_same_v<F, PrimeField>) {
      const std::uint64_t p = field_.modulus();
      if (p > 1000000) return Status::Asserted;
      for (std::uint64_t x = 0; x < p; ++x)
        if (evaluate(field_.from_int(static_cast<long>(x))).is_zero())
          throw ReduciblePolynomial("twist polynomial has the root " + std::to_string(x) + " mod " + std::to_string(p));
      return Status::Verified;
    } else {
      return Status::Asserted;
    }
  }

  /// nullopt when the search is too large; otherwise a root or none.
  std::optional<std::optional<Rational>> rational_root() const
    requires std::is_same_v<F, RationalField>
  {
    mpz_class den = 1;
    for (const auto& x : c_) den = lcm(den, mpz_class(x.raw().get_den()));
    std::vector<mpz_class> ints;
    for (const auto& x : c_) ints.push_back(mpz_class(x.raw() * den));
    const mpz_class limit("1000000000000");
    const mpz_class a0 = abs(ints.front());
    const mpz_class an = abs(ints.back());
    if (a0 > limit || an > limit) return std::nullopt;
    auto divisors = [](const mpz_class& n) {
      std::vector<mpz_class> out;
      for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
          out.push_back(d);
          if (d * d != n) out.push_back(n / d);
        }
      return out;
    };
    for (const auto& num : divisors(a0))
      for (const auto& q : divisors(an))
        for (int sign : {1, -1}) {
          const Rational x(mpq_class(sign * num, q));
          if (evaluate(x).is_zero()) return std::optional<Rational>(x);
        }
    return std::optional<Rational>();
  }

  F field_;
  std::vector<K> c_;
  Status status_ = Status::Asserted;
};

// ---------------------------------------------------------------------------
// Promised-aperiodic streams over two letters

namespace detail {
/// floor(n * (sqrt(d) - s) / q) for non-square d, with exact integer square roots.
inline std::uint64_t floor_quadratic(std::uint64_t n, unsigned long d, unsigned long s, unsigned long q) {
  const mpz_class root = sqrt(mpz_class(n) * mpz_class(n) * d);  // floor(n sqrt d)
  const mpz_class v = (root - mpz_class(n) * s) / q;
  return v.get_ui();
}
}  // namespace detail

/// Sturmian word of slope (sqrt(5) - 1) / 2.
inline StreamPtr sturmian_golden(EdgeId a, EdgeId b) {
  return std::make_shared<EdgeStream>(EdgeStream{"sturmian-golden", [a, b](std::size_t i) {
    const auto f = [](std::size_t n) { return detail::floor_quadratic(n, 5, 1, 2); };
    return f(i + 1) - f(i) == 0 ? a : b;
  }});
}

/// Sturmian word of slope sqrt(2) - 1.
inline StreamPtr sturmian_silver(EdgeId a, EdgeId b) {
  return std::make_shared<EdgeStream>(EdgeStream{"sturmian-silver", [a, b](std::size_t i) {
    const auto f = [](std::size_t n) { return detail::floor_quadratic(n, 2, 1, 1); };
    return f(i + 1) - f(i) == 0 ? a : b;
  }});
}

inline StreamPtr thue_morse(EdgeId a, EdgeId b) {
  return std::make_shared<EdgeStream>(
      EdgeStream{"thue-morse", [a, b](std::size_t i) { return __builtin_popcountll(i) % 2 == 0 ? a : b; }});
}

/// a b a a b a a a b ...
inline StreamPtr staircase(EdgeId a, EdgeId b) {
  return std::make_shared<EdgeStream>(EdgeStream{"staircase", [a, b](std::size_t i) {
    std::size_t block = 2;  // a^n b has length n + 1
    while (i >= block) {
      i -= block;
      ++block;
    }
    return i + 1 == block ? b : a;
  }});
}

/// Binary expansions of 1, 2, 3, ... concatenated, 1 -> b and 0 -> a.
inline StreamPtr champernowne_binary(EdgeId a, EdgeId b) {
  return std::make_shared<EdgeStream>(EdgeStream{"champernowne-binary", [a, b](std::size_t i) {
    for (std::uint64_t n = 1;; ++n) {
      const std::size_t len = 64 - static_cast<std::size_t>(__builtin_clzll(n));
      if (i < len) return ((n >> (len - 1 - i)) & 1) ? b : a;
      i -= len;
    }
  }});
}

inline std::vector<StreamPtr> standard_streams(EdgeId a, EdgeId b) {
  return {sturmian_golden(a, b), sturmian_silver(a, b), thue_morse(a, b), staircase(a, b), champernowne_binary(a, b)};
}

// ---------------------------------------------------------------------------
// Shifted-tail moves shared by both module kinds

namespace detail {

inline VertexId tail_source(const Ultragraph& g, const ShiftedTail& st) {
  return st.u.empty() ? g.source(st.base.letter(st.m)) : g.source(st.u.front());
}

inline EdgeId tail_first(const ShiftedTail& st) { return st.u.empty() ? st.base.letter(st.m) : st.u.front(); }

inline long arrow_degree(const ShiftedTail& st) { return static_cast<long>(st.u.size()) - static_cast<long>(st.m); }

/// The generator applied to one basis tail, before canonicalization.
inline std::optional<ShiftedTail> move(const Ultragraph& g, const Generator& x, const ShiftedTail& st) {
  switch (x.kind) {
    case Generator::Kind::P:
      if (!x.set.contains(tail_source(g, st))) return std::nullopt;
      return st;
    case Generator::Kind::S:
      if (!g.range(x.edge).contains(tail_source(g, st))) return std::nullopt;
      return ShiftedTail{concat({x.edge}, st.u), st.m, st.base};
    case Generator::Kind::SStar:
      if (tail_first(st) != x.edge) return std::nullopt;
      if (st.u.empty()) return ShiftedTail{{}, st.m + 1, st.base};
      return ShiftedTail{PathWord(st.u.begin() + 1, st.u.end()), st.m, st.base};
  }
  return std::nullopt;
}

/// Base of the class: the primitive cycle in least rotation, or the bare stream.
inline InfinitePath class_base(const InfinitePath& p) {
  if (p.is_periodic()) return InfinitePath::eventually_periodic_unchecked({}, least_rotation(p.cycle()));
  return InfinitePath::from_stream(p.stream());
}

/// q written as a canonical shifted tail over the class base.
inline ShiftedTail tail_of(const InfinitePath& base, const InfinitePath& q) {
  if (q.is_periodic() != base.is_periodic()) throw std::invalid_argument("path is not tail-equivalent to the module base");
  if (q.is_periodic()) {
    auto r = rotation_offset(base.cycle(), q.cycle());
    if (!r) throw std::invalid_argument("path is not tail-equivalent to the module base");
    return canonicalize(ShiftedTail{q.prefix(), *r, base});
  }
  require_same_stream(base, q);
  return canonicalize(ShiftedTail{q.prefix(), q.offset(), base});
}

}  // namespace detail

inline std::string format_tail(const Ultragraph& g, const ShiftedTail& st) { return st.realize().format(g); }

// ---------------------------------------------------------------------------

/// The module V_[p].
template <Field F>
class PathModule {
 public:
  using K = typename F::scalar;
  using Basis = ShiftedTail;
  using Vector = std::map<Basis, K>;

  PathModule(const LeavittPathAlgebra<F>& algebra, const InfinitePath& p)
      : L_(&algebra), base_(detail::class_base(p)) {
    require_sink_free(algebra.graph(), "Chen modules");
  }

  const LeavittPathAlgebra<F>& algebra() const { return *L_; }
  const InfinitePath& base() const { return base_; }

  Basis basis_of(const InfinitePath& q) const { return detail::tail_of(base_, q); }
  Vector vector_of(const InfinitePath& q) const { return {{basis_of(q), L_->field().one()}}; }

  Vector act_gen(const Generator& x, const Vector& v) const {
    Vector out;
    for (const auto& [b, c] : v)
      if (auto moved = detail::move(L_->graph(), x, b)) add(out, canonicalize(*moved), c);
    return out;
  }

  Vector act_word(const GeneratorWord& w, Vector v) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = act_gen(*it, v);
    return v;
  }

  Vector act_elem(const Element<K>& a, const Vector& v) const {
    Vector out;
    for (const auto& [m, c] : a.terms())
      for (const auto& [b, d] : act_word(factor_monomial(m), v)) add(out, b, c * d);
    return out;
  }

  Vector act_formal(const FormalCombination<K>& f, const Vector& v) const {
    Vector out;
    for (const auto& [c, w] : f.terms)
      for (const auto& [b, d] : act_word(w, v)) add(out, b, c * d);
    return out;
  }

  static void add(Vector& v, const Basis& b, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = v.try_emplace(b, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) v.erase(it);
    }
  }

 private:
  const LeavittPathAlgebra<F>* L_;
  InfinitePath base_;
};

/// A monomial s_x p_{s(tail)} s_y^* carrying basis tail `from` to `to`.
inline Monomial find_transport(const Ultragraph& g, const ShiftedTail& from, const ShiftedTail& to) {
  const InfinitePath q = from.realize();
  const InfinitePath r = to.realize();
  long k = detail::arrow_degree(from) - detail::arrow_degree(to);
  auto m = find_alignment(q, r, k);
  if (!m) throw std::invalid_argument("tails are not equivalent");
  const std::size_t mq = *m;
  const auto mr = static_cast<std::size_t>(static_cast<long>(mq) - k);
  const VertexId joint = q.drop(mq).source(g);
  return Monomial{r.take(mr), VertexSet::singleton(joint), q.take(mq)};
}

/// The twisted module V^f over the class of a rational path.
template <Field F>
class TwistedModule {
 public:
  using K = typename F::scalar;
  using Basis = std::pair<ShiftedTail, std::size_t>;
  using Vector = std::map<Basis, K>;

  TwistedModule(const LeavittPathAlgebra<F>& algebra, const InfinitePath& p, IrreduciblePoly<F> f)
      : L_(&algebra), base_(rational_base(p)), f_(std::move(f)) {
    require_sink_free(algebra.graph(), "Chen modules");
  }

  const LeavittPathAlgebra<F>& algebra() const { return *L_; }
  const InfinitePath& base() const { return base_; }
  const IrreduciblePoly<F>& twist() const { return f_; }

  Basis basis_of(const InfinitePath& q, std::size_t j = 0) const {
    if (j >= f_.degree()) throw std::invalid_argument("residue index out of range");
    return {detail::tail_of(base_, q), j};
  }
  Vector vector_of(const InfinitePath& q, std::size_t j = 0) const { return {{basis_of(q, j), L_->field().one()}}; }

  Vector act_gen(const Generator& x, const Vector& v) const {
    Vector out;
    const long period = static_cast<long>(base_.period());
    for (const auto& [b, c] : v) {
      const auto& [st, j] = b;
      auto moved = detail::move(L_->graph(), x, st);
      if (!moved) continue;
      const long actual = detail::arrow_degree(*moved);
      ShiftedTail canon = canonicalize(*moved);
      const long shift = actual - detail::arrow_degree(canon);
      if (shift % period != 0) throw std::logic_error("arrow degree shift not divisible by the period");
      const auto residue = f_.times_t_power(f_.unit_residue(j), shift / period);
      for (std::size_t i = 0; i < residue.size(); ++i) add(out, {canon, i}, c * residue[i]);
    }
    return out;
  }

  /// Right multiplication by t.
  Vector act_t(const Vector& v) const {
    Vector out;
    for (const auto& [b, c] : v) {
      const auto residue = f_.times_t(f_.unit_residue(b.second));
      for (std::size_t i = 0; i < residue.size(); ++i) add(out, {b.first, i}, c * residue[i]);
    }
    return out;
  }

  /// Right multiplication by a polynomial in t (coefficients low to high).
  Vector act_poly(const std::vector<K>& coeffs, const Vector& v) const {
    Vector out;
    Vector power = v;
    for (const auto& c : coeffs) {
      for (const auto& [b, d] : power) add(out, b, c * d);
      power = act_t(power);
    }
    return out;
  }

  Vector act_word(const GeneratorWord& w, Vector v) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = act_gen(*it, v);
    return v;
  }

  Vector act_elem(const Element<K>& a, const Vector& v) const {
    Vector out;
    for (const auto& [m, c] : a.terms())
      for (const auto& [b, d] : act_word(factor_monomial(m), v)) add(out, b, c * d);
    return out;
  }

  Vector act_formal(const FormalCombination<K>& fc, const Vector& v) const {
    Vector out;
    for (const auto& [c, w] : fc.terms)
      for (const auto& [b, d] : act_word(w, v)) add(out, b, c * d);
    return out;
  }

  static void add(Vector& v, const Basis& b, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = v.try_emplace(b, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) v.erase(it);
    }
  }

 private:
  static InfinitePath rational_base(const InfinitePath& p) {
    if (!p.is_periodic()) throw std::invalid_argument("twisted modules need a rational path (a cycle class)");
    return detail::class_base(p);
  }

  const LeavittPathAlgebra<F>* L_;
  InfinitePath base_;
  IrreduciblePoly<F> f_;
};

// ---------------------------------------------------------------------------

struct RepresentationReport {
  std::size_t relation_checks = 0;
  std::size_t product_checks = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Runs every defining relation as an operator on each sample vector, and
/// act(ab, m) = act(a, act(b, m)) on the given triples.
template <class Module>
RepresentationReport check_representation(
    const Module& mod, const std::vector<typename Module::Vector>& samples,
    const std::vector<std::tuple<Element<typename Module::K>, Element<typename Module::K>, typename Module::Vector>>& triples) {
  RepresentationReport rep;
  const auto& L = mod.algebra();
  const auto relations = L.relation_instances();
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (const auto& inst : relations) {
      ++rep.relation_checks;
      if (!mod.act_formal(inst.difference, samples[i]).empty())
        rep.failures.push_back("relation " + inst.name + " on sample " + std::to_string(i));
    }
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& [a, b, m] = triples[i];
    ++rep.product_checks;
    if (mod.act_elem(L.mul(a, b), m) != mod.act_elem(a, mod.act_elem(b, m)))
      rep.failures.push_back("act(ab, m) != act(a, act(b, m)) on triple " + std::to_string(i));
  }
  return rep;
}

}  // namespace ulpa
