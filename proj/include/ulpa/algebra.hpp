#pragma once

// The Leavitt path algebra of a finite ultragraph over an exact field.
//
// Elements are finite combinations of monomials s_alpha p_A s_beta^*.  The
// algebra object carries the ultragraph and the field; elements are plain
// values and may be shared between algebras over the same graph.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "exact_solve.hpp"
#include "scalar.hpp"
#include "ultragraph.hpp"

namespace ulpa {

/// s_alpha p_mid s_beta^*
struct Monomial {
  PathWord alpha;
  VertexSet mid;
  PathWord beta;

  long degree() const { return static_cast<long>(alpha.size()) - static_cast<long>(beta.size()); }
  std::size_t depth() const { return std::min(alpha.size(), beta.size()); }
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

inline bool is_valid_monomial(const Ultragraph& g, const Monomial& m) {
  if (!is_path(g, m.alpha) || !is_path(g, m.beta) || m.mid.empty()) return false;
  for (auto v : m.mid)
    if (v.index >= g.vertex_count()) return false;
  return m.mid.subset_of(effective_range(g, m.alpha).intersect(effective_range(g, m.beta)));
}

/// Monomial product following the relations p_A p_B = p_{A cap B},
/// s_e^* s_f = delta_{e,f} p_{r(e)} and p_A s_e = [s(e) in A] s_e.
inline std::optional<Monomial> mono_mul(const Ultragraph& g, const Monomial& x, const Monomial& y) {
  const PathWord& beta = x.beta;
  const PathWord& gamma = y.alpha;
  if (beta.size() == gamma.size()) {
    if (beta != gamma) return std::nullopt;
    VertexSet mid = x.mid.intersect(y.mid);
    if (mid.empty()) return std::nullopt;
    return Monomial{x.alpha, std::move(mid), y.beta};
  }
  if (gamma.size() > beta.size()) {
    if (!std::equal(beta.begin(), beta.end(), gamma.begin())) return std::nullopt;
    const EdgeId w1 = gamma[beta.size()];
    if (!x.mid.contains(g.source(w1))) return std::nullopt;
    PathWord alpha = x.alpha;
    alpha.insert(alpha.end(), gamma.begin() + static_cast<std::ptrdiff_t>(beta.size()), gamma.end());
    return Monomial{std::move(alpha), y.mid, y.beta};
  }
  if (!std::equal(gamma.begin(), gamma.end(), beta.begin())) return std::nullopt;
  const EdgeId w1 = beta[gamma.size()];
  if (!y.mid.contains(g.source(w1))) return std::nullopt;
  PathWord delta = y.beta;
  delta.insert(delta.end(), beta.begin() + static_cast<std::ptrdiff_t>(gamma.size()), beta.end());
  return Monomial{x.alpha, x.mid, std::move(delta)};
}

/// Finitely supported combination of monomials; zero coefficients are never stored.
template <class K>
class Element {
 public:
  using Terms = std::map<Monomial, K>;

  Element() = default;

  void add(const Monomial& m, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Element& operator+=(const Element& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element operator-() const {
    Element r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  Element scaled(const K& k) const {
    Element r;
    for (const auto& [m, c] : terms_) r.add(m, c * k);
    return r;
  }

  /// Structural equality of representations; use LeavittPathAlgebra::eq for algebra equality.
  bool operator==(const Element&) const = default;

 private:
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Formal generator words, used to state defining relations independently of
// how a model evaluates them.

struct Generator {
  enum class Kind { P, S, SStar };
  Kind kind;
  VertexSet set;  // Kind::P
  EdgeId edge{};  // Kind::S, Kind::SStar

  static Generator p(VertexSet a) { return {Kind::P, std::move(a), {}}; }
  static Generator s(EdgeId e) { return {Kind::S, {}, e}; }
  static Generator s_star(EdgeId e) { return {Kind::SStar, {}, e}; }
  long degree() const { return kind == Kind::S ? 1 : kind == Kind::SStar ? -1 : 0; }
};

/// A product of generators, leftmost factor first.
using GeneratorWord = std::vector<Generator>;

/// Generator factorization s_alpha p_A s_beta^* of a monomial; the star factors come last.
inline GeneratorWord factor_monomial(const Monomial& m) {
  GeneratorWord word;
  for (auto e : m.alpha) word.push_back(Generator::s(e));
  word.push_back(Generator::p(m.mid));
  for (auto it = m.beta.rbegin(); it != m.beta.rend(); ++it) word.push_back(Generator::s_star(*it));
  return word;
}

template <class K>
struct FormalCombination {
  std::vector<std::pair<K, GeneratorWord>> terms;
};

template <class K>
struct RelationInstance {
  std::string name;
  FormalCombination<K> difference;  // lhs - rhs, expected to vanish
};

struct NotFoundWithinDepth {
  std::size_t depth_reached;
};

template <Field F>
class LeavittPathAlgebra {
 public:
  using K = typename F::scalar;
  using Elem = Element<K>;

  explicit LeavittPathAlgebra(const Ultragraph& g, F field = F{}) : g_(&g), field_(std::move(field)) {}

  const Ultragraph& graph() const { return *g_; }
  const F& field() const { return field_; }

  // -- generators and monomials ------------------------------------------

  Elem monomial(const Monomial& m, const K& c) const {
    if (!is_valid_monomial(*g_, m)) throw std::invalid_argument("invalid monomial");
    Elem r;
    r.add(m, c);
    return r;
  }
  Elem monomial(const Monomial& m) const { return monomial(m, field_.one()); }

  /// p_A; p_{empty} = 0.
  Elem p(const VertexSet& a) const {
    if (a.empty()) return {};
    return monomial({{}, a, {}});
  }
  Elem p(VertexId v) const { return p(VertexSet::singleton(v)); }
  Elem s(EdgeId e) const { return monomial({{e}, g_->range(e), {}}); }
  Elem s_star(EdgeId e) const { return monomial({{}, g_->range(e), {e}}); }
  /// s_alpha for a nonempty path, p_{all vertices} for the empty word.
  Elem s_path(const PathWord& w) const { return monomial({w, effective_range(*g_, w), {}}); }
  Elem s_path_star(const PathWord& w) const { return monomial({{}, effective_range(*g_, w), w}); }

  Elem generator(const Generator& x) const {
    switch (x.kind) {
      case Generator::Kind::P: return p(x.set);
      case Generator::Kind::S: return s(x.edge);
      case Generator::Kind::SStar: return s_star(x.edge);
    }
    return {};
  }

  Elem evaluate(const GeneratorWord& w) const {
    if (w.empty()) return unit();
    Elem acc = generator(w.front());
    for (std::size_t i = 1; i < w.size(); ++i) acc = mul(acc, generator(w[i]));
    return acc;
  }
  Elem evaluate(const FormalCombination<K>& f) const {
    Elem acc;
    for (const auto& [c, w] : f.terms) acc += evaluate(w).scaled(c);
    return acc;
  }

  /// Sum of p_v over all vertices.
  Elem unit() const {
    Elem r;
    for (auto v : g_->vertices()) r.add({{}, VertexSet::singleton(v), {}}, field_.one());
    return r;
  }

  // -- products, involution, grading ------------------------------------

  Elem mul(const Elem& a, const Elem& b) const {
    Elem r;
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms())
        if (auto m = mono_mul(*g_, ma, mb)) r.add(*m, ca * cb);
    return r;
  }

  Elem involution(const Elem& a) const {
    Elem r;
    for (const auto& [m, c] : a.terms()) r.add({m.beta, m.mid, m.alpha}, c);
    return r;
  }

  std::map<long, Elem> degree_components(const Elem& a) const {
    std::map<long, Elem> out;
    for (const auto& [m, c] : a.terms()) out[m.degree()].add(m, c);
    return out;
  }

  Elem graded_component(const Elem& a, long n) const {
    Elem r;
    for (const auto& [m, c] : a.terms())
      if (m.degree() == n) r.add(m, c);
    return r;
  }

  /// The degree of a nonzero homogeneous element.
  std::optional<long> homogeneous_degree(const Elem& a) const {
    auto parts = degree_components(normalize(a));
    if (parts.size() != 1) return std::nullopt;
    return parts.begin()->first;
  }

  /// psi(a, b) = ab for a of degree -1 and b of degree 1.
  Elem psi(const Elem& a, const Elem& b) const {
    for (const auto& [m, c] : a.terms())
      if (m.degree() != -1) throw std::invalid_argument("psi: left factor must have degree -1");
    for (const auto& [m, c] : b.terms())
      if (m.degree() != 1) throw std::invalid_argument("psi: right factor must have degree 1");
    return mul(a, b);
  }

  // -- normal form ---------------------------------------------------------

  /// Splits middles into singletons, then expands every non-sink monomial of
  /// each degree class via p_v = sum_{s(e)=v} s_e s_e^* until it reaches the
  /// deepest min-word-length present in that class.
  Elem normalize(const Elem& a) const {
    Elem split = split_singletons(a);
    std::map<long, std::size_t> target;
    for (const auto& [m, c] : split.terms()) {
      auto& t = target[m.degree()];
      t = std::max(t, m.depth());
    }
    return expand(split, [&](long d) { return target[d]; });
  }

  /// Normal form with every degree class expanded to at least `depth`.
  Elem normalize_to_depth(const Elem& a, std::size_t depth) const {
    Elem split = split_singletons(a);
    std::map<long, std::size_t> target;
    for (const auto& [m, c] : split.terms()) {
      auto& t = target[m.degree()];
      t = std::max({t, m.depth(), depth});
    }
    return expand(split, [&](long d) { return target[d]; });
  }

  bool is_zero(const Elem& a) const { return normalize(a).empty(); }
  bool eq(const Elem& a, const Elem& b) const { return is_zero(a - b); }

  // -- graded regularity ---------------------------------------------------

  /// Searches a homogeneous y of degree -n with xyx = x among combinations
  /// of monomials of min-word-length <= D, for D = 0 .. depth_max, by exact
  /// linear solving.  Not finding one says nothing about larger depths.
  std::variant<Elem, NotFoundWithinDepth> inner_inverse(const Elem& x, std::size_t depth_max) const {
    const auto n = homogeneous_degree(x);
    if (!n) throw std::invalid_argument("inner_inverse needs a nonzero homogeneous element");
    const long target = -*n;
    for (std::size_t D = 0; D <= depth_max; ++D) {
      std::vector<Monomial> unknowns = monomials_of_degree(target, D);
      std::vector<Elem> images;
      images.reserve(unknowns.size());
      std::size_t depth = max_depth(x);
      for (const auto& m : unknowns) {
        images.push_back(mul(mul(x, monomial(m)), x));
        depth = std::max(depth, max_depth(images.back()));
      }
      const Elem rhs = normalize_to_depth(x, depth);
      std::map<Monomial, std::size_t> row_of;
      std::vector<typename SparseLinearSystem<F>::Row> rows;
      std::vector<K> values;
      auto row_index = [&](const Monomial& m) {
        auto [it, inserted] = row_of.try_emplace(m, rows.size());
        if (inserted) {
          rows.emplace_back();
          values.push_back(field_.zero());
        }
        return it->second;
      };
      for (std::size_t i = 0; i < images.size(); ++i) {
        const Elem image = normalize_to_depth(images[i], depth);
        for (const auto& [m, c] : image.terms()) rows[row_index(m)][i] = c;
      }
      for (const auto& [m, c] : rhs.terms()) values[row_index(m)] = c;

      SparseLinearSystem<F> system(field_, unknowns.size());
      for (std::size_t r = 0; r < rows.size(); ++r) system.add_equation(std::move(rows[r]), values[r]);
      if (auto sol = system.solve()) {
        Elem y;
        for (std::size_t i = 0; i < unknowns.size(); ++i) y.add(unknowns[i], (*sol)[i]);
        if (!eq(mul(mul(x, y), x), x)) throw std::logic_error("inner_inverse: solver returned a non-witness");
        return y;
      }
    }
    return NotFoundWithinDepth{depth_max};
  }

  /// All singleton-middled monomials of the given degree and min-word-length <= depth.
  std::vector<Monomial> monomials_of_degree(long degree, std::size_t depth) const {
    std::vector<Monomial> out;
    for (std::size_t d = 0; d <= depth; ++d) {
      const std::size_t la = degree >= 0 ? d + static_cast<std::size_t>(degree) : d;
      const std::size_t lb = degree >= 0 ? d : d + static_cast<std::size_t>(-degree);
      const auto alphas = paths_of_length(la);
      const auto betas = paths_of_length(lb);
      for (const auto& a : alphas)
        for (const auto& b : betas)
          for (auto u : effective_range(*g_, a).intersect(effective_range(*g_, b)))
            out.push_back({a, VertexSet::singleton(u), b});
    }
    return out;
  }

  /// Every path of exactly n edges (the empty word for n = 0), in lexicographic order.
  std::vector<PathWord> paths_of_length(std::size_t n) const {
    std::vector<PathWord> layer{PathWord{}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<PathWord> next;
      for (const auto& w : layer)
        for (auto e : g_->edges())
          if (w.empty() || g_->range(w.back()).contains(g_->source(e))) next.push_back(concat(w, {e}));
      layer = std::move(next);
    }
    return layer;
  }

  // -- defining relations --------------------------------------------------

  /// Every instance of the defining relations over the given family of
  /// vertex sets (all of G^0 by default), each as a vanishing formal combination.
  std::vector<RelationInstance<K>> relation_instances(std::optional<std::vector<VertexSet>> sets = std::nullopt) const {
    const std::vector<VertexSet> family = sets ? *sets : generate_G0(*g_);
    const K one = field_.one();
    const K minus_one = -one;
    std::vector<RelationInstance<K>> out;
    auto P = [](const VertexSet& a) { return Generator::p(a); };
    auto name_set = [&](const VertexSet& a) { return g_->format_set(a); };
    for (const auto& a : family)
      for (const auto& b : family) {
        const VertexSet i = a.intersect(b);
        RelationInstance<K> mult{"(1) p" + name_set(a) + " p" + name_set(b) + " = p_{A cap B}", {}};
        mult.difference.terms.push_back({one, {P(a), P(b)}});
        if (!i.empty()) mult.difference.terms.push_back({minus_one, {P(i)}});
        out.push_back(std::move(mult));
        RelationInstance<K> uni{"(1) p_{A cup B} for A=" + name_set(a) + ", B=" + name_set(b), {}};
        uni.difference.terms.push_back({one, {P(a.unite(b))}});
        uni.difference.terms.push_back({minus_one, {P(a)}});
        uni.difference.terms.push_back({minus_one, {P(b)}});
        if (!i.empty()) uni.difference.terms.push_back({one, {P(i)}});
        out.push_back(std::move(uni));
      }
    for (auto e : g_->edges()) {
      const std::string en = g_->edge_name(e);
      const auto S = Generator::s(e);
      const auto Ss = Generator::s_star(e);
      const auto src = VertexSet::singleton(g_->source(e));
      out.push_back({"(2) p_s(" + en + ") s_" + en + " = s_" + en, {{{one, {P(src), S}}, {minus_one, {S}}}}});
      out.push_back({"(2) s_" + en + " p_r(" + en + ") = s_" + en, {{{one, {S, P(g_->range(e))}}, {minus_one, {S}}}}});
      out.push_back({"(2) p_r(" + en + ") s*_" + en + " = s*_" + en, {{{one, {P(g_->range(e)), Ss}}, {minus_one, {Ss}}}}});
      out.push_back({"(2) s*_" + en + " p_s(" + en + ") = s*_" + en, {{{one, {Ss, P(src)}}, {minus_one, {Ss}}}}});
      for (auto f : g_->edges()) {
        RelationInstance<K> r{"(3) s*_" + en + " s_" + g_->edge_name(f), {}};
        r.difference.terms.push_back({one, {Ss, Generator::s(f)}});
        if (e == f) r.difference.terms.push_back({minus_one, {P(g_->range(e))}});
        out.push_back(std::move(r));
      }
    }
    for (auto v : regular_vertices(*g_)) {
      RelationInstance<K> r{"(4) p_" + g_->vertex_name(v) + " = sum s_e s*_e", {}};
      r.difference.terms.push_back({one, {P(VertexSet::singleton(v))}});
      for (auto e : g_->emitted(v)) r.difference.terms.push_back({minus_one, {Generator::s(e), Generator::s_star(e)}});
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  static std::size_t max_depth(const Elem& a) {
    std::size_t d = 0;
    for (const auto& [m, c] : a.terms()) d = std::max(d, m.depth());
    return d;
  }

  Elem split_singletons(const Elem& a) const {
    Elem r;
    for (const auto& [m, c] : a.terms())
      for (auto v : m.mid) r.add({m.alpha, VertexSet::singleton(v), m.beta}, c);
    return r;
  }

  /// Expands singleton-middled terms below the per-degree target depth.
  Elem expand(const Elem& split, const std::function<std::size_t(long)>& target) const {
    Elem out;
    std::vector<std::pair<Monomial, K>> work(split.terms().begin(), split.terms().end());
    while (!work.empty()) {
      auto [m, c] = std::move(work.back());
      work.pop_back();
      const VertexId v = m.mid.front();
      if (m.depth() >= target(m.degree()) || g_->is_sink(v)) {
        out.add(m, c);
        continue;
      }
      for (auto e : g_->emitted(v))
        for (auto u : g_->range(e))
          work.push_back({Monomial{concat(m.alpha, {e}), VertexSet::singleton(u), concat(m.beta, {e})}, c});
    }
    return out;
  }

  const Ultragraph* g_;
  F field_;
};

}  // namespace ulpa
