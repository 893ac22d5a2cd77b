#pragma once

// The Steinberg-algebra model of the ultragraph Leavitt path algebra.
//
// A cylinder (x, A, y) stands for the compact open bisection of arrows
// (x mu, |x| - |y|, y mu) with s(mu) in A.  Finite sink-free ultragraphs have
// no singular generalized vertices, so every infinite path is an edge path
// and every cylinder splits exactly into its one-step extensions.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "ultragraph.hpp"
#include "ultrapath.hpp"

namespace ulpa {

class UnsupportedGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_sink_free(const Ultragraph& g, const std::string& what) {
  if (!g.has_sinks()) return;
  throw UnsupportedGraph(what + " requires an ultragraph without sinks; sinks: " + g.format_set(sinks(g)));
}

struct Cylinder {
  PathWord x;
  VertexSet range;
  PathWord y;

  Ultrapath source_path() const { return {x, range}; }
  Ultrapath target_path() const { return {y, range}; }
  long degree() const { return static_cast<long>(x.size()) - static_cast<long>(y.size()); }
  std::size_t depth() const { return std::min(x.size(), y.size()); }
  auto operator<=>(const Cylinder&) const = default;
  bool operator==(const Cylinder&) const = default;
};

inline bool is_valid_cylinder(const Ultragraph& g, const Cylinder& c) {
  return is_ultrapath(g, c.source_path()) && is_ultrapath(g, c.target_path());
}

inline Cylinder cyl_inverse(const Cylinder& c) { return {c.y, c.range, c.x}; }

/// The product bisection c1 c2: arrows (x mu, ., y mu)(z nu, ., w nu) with y mu = z nu.
inline std::optional<Cylinder> cyl_compose(const Ultragraph& g, const Cylinder& c1, const Cylinder& c2) {
  const PathWord& y = c1.y;
  const PathWord& z = c2.x;
  const std::size_t common = std::min(y.size(), z.size());
  if (!std::equal(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(common), z.begin())) return std::nullopt;
  if (y.size() == z.size()) {
    VertexSet a = c1.range.intersect(c2.range);
    if (a.empty()) return std::nullopt;
    return Cylinder{c1.x, std::move(a), c2.y};
  }
  if (z.size() > y.size()) {
    // mu = w nu where z = y w; mu must start inside c1's range
    const PathWord w(z.begin() + static_cast<std::ptrdiff_t>(common), z.end());
    if (!c1.range.contains(g.source(w.front()))) return std::nullopt;
    return Cylinder{concat(c1.x, w), c2.range, c2.y};
  }
  // nu = w mu where y = z w
  const PathWord w(y.begin() + static_cast<std::ptrdiff_t>(common), y.end());
  if (!c2.range.contains(g.source(w.front()))) return std::nullopt;
  return Cylinder{c1.x, c1.range, concat(c2.y, w)};
}

/// One-step extensions (x e, r(e), y e) of a cylinder, over every e with s(e) in its range.
inline std::vector<Cylinder> one_step_extensions(const Ultragraph& g, const Cylinder& c) {
  std::vector<Cylinder> out;
  for (auto e : epsilon(g, c.range)) out.push_back({concat(c.x, {e}), g.range(e), concat(c.y, {e})});
  return out;
}

/// A(x, y) minus the one-step extensions through K and the restrictions to
/// members of Q, as disjoint plain cylinders.
inline std::vector<Cylinder> cyl_make(const Ultragraph& g, const Ultrapath& x, const Ultrapath& y,
                                      const std::vector<EdgeId>& k, const std::vector<VertexSet>& q) {
  require_sink_free(g, "cylinder construction");
  if (x.range != y.range) throw std::invalid_argument("cylinder ends must share their range set");
  const Cylinder whole{x.word, x.range, y.word};
  if (!is_valid_cylinder(g, whole)) throw std::invalid_argument("invalid cylinder data");
  const auto eps = epsilon(g, x.range);
  for (auto e : k)
    if (std::find(eps.begin(), eps.end(), e) == eps.end())
      throw std::invalid_argument("excluded edge " + g.edge_name(e) + " does not leave the range set");
  if (k.empty() && q.empty()) return {whole};

  std::vector<Cylinder> out;
  for (auto u : x.range) {
    const bool removed = std::any_of(q.begin(), q.end(), [&](const VertexSet& c) { return c.contains(u); });
    if (removed) continue;
    for (auto e : g.emitted(u))
      if (std::find(k.begin(), k.end(), e) == k.end())
        out.push_back({concat(x.word, {e}), g.range(e), concat(y.word, {e})});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Steinberg elements

/// Finite combination of cylinder indicators.  Canonical form: singleton
/// ranges, pairwise disjoint supports, and no family of siblings that could
/// merge into their common parent with one coefficient.
template <class K>
class SteinbergElement {
 public:
  using Terms = std::map<Cylinder, K>;

  void add(const Cylinder& c, const K& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(c, v);
    if (!inserted) {
      it->second = it->second + v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  SteinbergElement& operator+=(const SteinbergElement& o) {
    for (const auto& [c, v] : o.terms_) add(c, v);
    return *this;
  }
  SteinbergElement& operator-=(const SteinbergElement& o) {
    for (const auto& [c, v] : o.terms_) add(c, -v);
    return *this;
  }
  friend SteinbergElement operator+(SteinbergElement a, const SteinbergElement& b) { return a += b; }
  friend SteinbergElement operator-(SteinbergElement a, const SteinbergElement& b) { return a -= b; }
  bool operator==(const SteinbergElement&) const = default;

 private:
  Terms terms_;
};

namespace detail {

/// (x, {s(e)}, y) for a cylinder (x e, {u}, y e).
inline std::optional<Cylinder> parent(const Ultragraph& g, const Cylinder& c) {
  if (c.x.empty() || c.y.empty() || c.x.back() != c.y.back()) return std::nullopt;
  const EdgeId e = c.x.back();
  return Cylinder{PathWord(c.x.begin(), c.x.end() - 1), VertexSet::singleton(g.source(e)),
                  PathWord(c.y.begin(), c.y.end() - 1)};
}

inline std::size_t child_count(const Ultragraph& g, VertexId u) {
  std::size_t n = 0;
  for (auto e : g.emitted(u)) n += g.range(e).size();
  return n;
}

}  // namespace detail

/// Refines every degree class to its deepest cylinder, then merges complete
/// sibling families carrying one coefficient back into their parent.
template <class K>
SteinbergElement<K> canonicalize(const Ultragraph& g, const SteinbergElement<K>& f) {
  require_sink_free(g, "the Steinberg model");
  std::map<long, std::size_t> target;
  std::vector<std::pair<Cylinder, K>> work;
  for (const auto& [c, v] : f.terms()) {
    auto& t = target[c.degree()];
    t = std::max(t, c.depth());
    for (auto u : c.range) work.push_back({Cylinder{c.x, VertexSet::singleton(u), c.y}, v});
  }
  SteinbergElement<K> leaves;
  while (!work.empty()) {
    auto [c, v] = std::move(work.back());
    work.pop_back();
    if (c.depth() >= target[c.degree()]) {
      leaves.add(c, v);
      continue;
    }
    for (auto e : g.emitted(c.range.front()))
      for (auto u : g.range(e)) work.push_back({Cylinder{concat(c.x, {e}), VertexSet::singleton(u), concat(c.y, {e})}, v});
  }

  std::map<Cylinder, K> level(leaves.terms().begin(), leaves.terms().end());
  std::size_t deepest = 0;
  for (const auto& [c, v] : level) deepest = std::max(deepest, c.depth());
  for (std::size_t d = deepest; d > 0; --d) {
    std::map<Cylinder, std::vector<Cylinder>> families;
    for (const auto& [c, v] : level)
      if (c.depth() == d)
        if (auto p = detail::parent(g, c)) families[*p].push_back(c);
    for (const auto& [p, kids] : families) {
      if (kids.size() != detail::child_count(g, p.range.front())) continue;
      const K v = level.at(kids.front());
      if (!std::all_of(kids.begin(), kids.end(), [&](const Cylinder& c) { return level.at(c) == v; })) continue;
      for (const auto& c : kids) level.erase(c);
      level.emplace(p, v);
    }
  }
  SteinbergElement<K> out;
  for (const auto& [c, v] : level) out.add(c, v);
  return out;
}

template <class K>
SteinbergElement<K> st_convolve(const Ultragraph& g, const SteinbergElement<K>& a, const SteinbergElement<K>& b) {
  SteinbergElement<K> r;
  for (const auto& [c1, v1] : a.terms())
    for (const auto& [c2, v2] : b.terms())
      if (auto c = cyl_compose(g, c1, c2)) r.add(*c, v1 * v2);
  return canonicalize(g, r);
}

/// Image of an algebra element: s_alpha p_A s_beta^* goes to the indicator of
/// the cylinder ((alpha, A), (beta, A)).
template <class K>
SteinbergElement<K> pi_G(const Ultragraph& g, const Element<K>& a) {
  require_sink_free(g, "the Steinberg model");
  SteinbergElement<K> r;
  for (const auto& [m, v] : a.terms()) {
    const VertexSet shared = effective_range(g, m.alpha).intersect(effective_range(g, m.beta)).intersect(m.mid);
    r.add({m.alpha, shared, m.beta}, v);
  }
  return canonicalize(g, r);
}

// ---------------------------------------------------------------------------
// Groupoid points

/// The arrow (q, k, p).
struct GroupoidPoint {
  InfinitePath q;
  long k = 0;
  InfinitePath p;
  bool operator==(const GroupoidPoint&) const = default;
};

inline bool is_valid_point(const GroupoidPoint& pt) { return shifted_tail_equal(pt.q, pt.p, pt.k); }

inline void require_valid_point(const GroupoidPoint& pt) {
  if (!is_valid_point(pt)) throw std::invalid_argument("not an arrow of the groupoid: tails do not agree at shift k");
}

inline bool starts_with(const InfinitePath& q, const PathWord& w) { return q.take(w.size()) == w; }

inline bool membership(const Ultragraph& g, const Cylinder& c, const GroupoidPoint& pt) {
  require_valid_point(pt);
  if (pt.k != c.degree() || !starts_with(pt.q, c.x) || !starts_with(pt.p, c.y)) return false;
  const InfinitePath tail = pt.q.drop(c.x.size());
  return tail == pt.p.drop(c.y.size()) && c.range.contains(tail.source(g));
}

template <class K>
K st_eval(const Ultragraph& g, const SteinbergElement<K>& f, const GroupoidPoint& pt, const K& zero) {
  K acc = zero;
  for (const auto& [c, v] : f.terms())
    if (membership(g, c, pt)) acc = acc + v;
  return acc;
}

/// (q, k1, z)(z, k2, p) = (q, k1 + k2, p).
inline std::optional<GroupoidPoint> compose_points(const GroupoidPoint& a, const GroupoidPoint& b) {
  if (!(a.p == b.q)) return std::nullopt;
  return GroupoidPoint{a.q, a.k + b.k, b.p};
}

struct IsotropyResult {
  enum class Kind { Trivial, InfiniteCyclic };
  Kind kind = Kind::Trivial;
  std::size_t generator_degree = 0;
  bool operator==(const IsotropyResult&) const = default;
};

/// Isotropy at an infinite path: Z generated in degree |minimal cycle| for an
/// eventually periodic path, trivial for a promised-aperiodic one.
inline IsotropyResult isotropy(const InfinitePath& mu) {
  if (!mu.is_periodic()) return {IsotropyResult::Kind::Trivial, 0};
  return {IsotropyResult::Kind::InfiniteCyclic, mu.period()};
}

/// Writes an arrow of degree n > 0 as n arrows of degree 1, peeling one edge
/// of q per factor and absorbing the remaining shift into the last one.
inline std::vector<GroupoidPoint> factor_positive(const Ultragraph& g, const GroupoidPoint& pt) {
  require_sink_free(g, "factorization");
  if (pt.k <= 0) throw std::invalid_argument("factorization needs positive degree");
  require_valid_point(pt);
  std::vector<GroupoidPoint> out;
  const auto n = static_cast<std::size_t>(pt.k);
  for (std::size_t i = 1; i < n; ++i) out.push_back({pt.q.drop(i - 1), 1, pt.q.drop(i)});
  out.push_back({pt.q.drop(n - 1), 1, pt.p});
  for (const auto& f : out)
    if (!is_valid_point(f)) throw std::logic_error("factorization produced an invalid arrow");
  return out;
}

}  // namespace ulpa
