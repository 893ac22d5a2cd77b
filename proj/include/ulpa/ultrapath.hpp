#pragma once

// Ultrapaths (alpha, A) with their partial product, infinite paths, tail
// operations, and canonical shifted tails u . tau_{>m}(base).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ultragraph.hpp"

namespace ulpa {

/// (word, range).  An empty word denotes the length-0 ultrapath A = range.
struct Ultrapath {
  PathWord word;
  VertexSet range;

  std::size_t length() const { return word.size(); }
  auto operator<=>(const Ultrapath&) const = default;
  bool operator==(const Ultrapath&) const = default;
};

inline Ultrapath vertex_set_path(VertexSet a) { return {{}, std::move(a)}; }
/// The embedding alpha -> (alpha, r(alpha)).
inline Ultrapath edge_path(const Ultragraph& g, PathWord w) {
  VertexSet r = effective_range(g, w);
  return {std::move(w), std::move(r)};
}

inline bool is_ultrapath(const Ultragraph& g, const Ultrapath& x) {
  return is_path(g, x.word) && !x.range.empty() && x.range.subset_of(effective_range(g, x.word));
}

inline VertexSet source_set(const Ultragraph& g, const Ultrapath& x) {
  return x.word.empty() ? x.range : VertexSet::singleton(g.source(x.word.front()));
}

/// x . y, or nullopt when r(x) and s(y) are disjoint.
inline std::optional<Ultrapath> up_product(const Ultragraph& g, const Ultrapath& x, const Ultrapath& y) {
  if (x.word.empty() && y.word.empty()) {
    VertexSet i = x.range.intersect(y.range);
    if (i.empty()) return std::nullopt;
    return vertex_set_path(std::move(i));
  }
  if (y.word.empty()) {
    VertexSet i = x.range.intersect(y.range);
    if (i.empty()) return std::nullopt;
    return Ultrapath{x.word, std::move(i)};
  }
  if (!x.range.contains(g.source(y.word.front()))) return std::nullopt;
  return Ultrapath{concat(x.word, y.word), y.range};
}

// ---------------------------------------------------------------------------
// Infinite paths

/// Stateless index -> edge generator.  `aperiodic_promise` records the
/// caller's unverifiable assertion that no two distinct shifts coincide.
struct EdgeStream {
  std::string name;
  std::function<EdgeId(std::size_t)> letter;
  bool aperiodic_promise = true;
};
using StreamPtr = std::shared_ptr<const EdgeStream>;

class UnsupportedComparison : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An infinite path, either prefix . cycle^infinity (stored with minimal
/// period and minimal preperiod) or prefix . tau_{>offset}(stream) (stored
/// with every absorbable prefix letter folded into the offset).  Equal paths
/// have equal representations; for streams this relies on the promise.
class InfinitePath {
 public:
  static InfinitePath eventually_periodic(const Ultragraph& g, PathWord prefix, PathWord cycle) {
    if (cycle.empty()) throw PathError("eventually periodic path needs a nonempty cycle");
    require_path(g, concat(concat(prefix, cycle), cycle));
    return eventually_periodic_unchecked(std::move(prefix), std::move(cycle));
  }
  static InfinitePath periodic(const Ultragraph& g, PathWord cycle) { return eventually_periodic(g, {}, std::move(cycle)); }

  /// u . tau_{>offset}(stream); validity is checked on demand by valid_prefix.
  static InfinitePath from_stream(StreamPtr stream, PathWord u = {}, std::size_t offset = 0) {
    if (!stream) throw std::invalid_argument("null stream");
    InfinitePath p;
    p.stream_ = std::move(stream);
    p.prefix_ = std::move(u);
    p.offset_ = offset;
    p.normalize_stream();
    return p;
  }

  static InfinitePath eventually_periodic_unchecked(PathWord prefix, PathWord cycle) {
    InfinitePath p;
    p.prefix_ = std::move(prefix);
    p.cycle_ = std::move(cycle);
    p.normalize_periodic();
    return p;
  }

  bool is_periodic() const { return !stream_; }
  const PathWord& prefix() const { return prefix_; }
  const PathWord& cycle() const { return cycle_; }
  const StreamPtr& stream() const { return stream_; }
  std::size_t offset() const { return offset_; }
  std::size_t preperiod() const { return prefix_.size(); }
  std::size_t period() const { return cycle_.size(); }

  EdgeId letter(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    i -= prefix_.size();
    return is_periodic() ? cycle_[i % cycle_.size()] : stream_->letter(offset_ + i);
  }
  EdgeId first() const { return letter(0); }
  VertexId source(const Ultragraph& g) const { return g.source(first()); }

  /// tau_{<=n}
  PathWord take(std::size_t n) const {
    PathWord out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(letter(i));
    return out;
  }

  /// tau_{>n}
  InfinitePath drop(std::size_t n) const {
    InfinitePath p = *this;
    if (n <= prefix_.size()) {
      p.prefix_.erase(p.prefix_.begin(), p.prefix_.begin() + static_cast<std::ptrdiff_t>(n));
      return p;
    }
    const std::size_t rest = n - prefix_.size();
    p.prefix_.clear();
    if (is_periodic()) {
      const std::size_t k = rest % cycle_.size();
      std::rotate(p.cycle_.begin(), p.cycle_.begin() + static_cast<std::ptrdiff_t>(k), p.cycle_.end());
    } else {
      p.offset_ += rest;
    }
    return p;
  }

  /// w . this, without checking the junction.
  InfinitePath prepend(const PathWord& w) const {
    InfinitePath p = *this;
    p.prefix_ = concat(w, prefix_);
    if (is_periodic()) p.normalize_periodic();
    else p.normalize_stream();
    return p;
  }

  /// Checks that the first n letters form a path.
  bool valid_prefix(const Ultragraph& g, std::size_t n) const { return is_path(g, take(n)); }

  bool operator==(const InfinitePath& o) const { return key() == o.key(); }
  bool operator<(const InfinitePath& o) const { return key() < o.key(); }

  std::string format(const Ultragraph& g) const {
    if (is_periodic()) return g.format_word(prefix_) + "|" + g.format_word(cycle_);
    return g.format_word(prefix_) + "|<" + stream_->name + ">+" + std::to_string(offset_);
  }

 private:
  InfinitePath() = default;

  std::tuple<std::string, const EdgeStream*, PathWord, PathWord, std::size_t> key() const {
    return std::make_tuple(stream_ ? stream_->name : std::string(), stream_.get(), prefix_, cycle_, offset_);
  }

  void normalize_periodic() {
    const std::size_t n = cycle_.size();
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      bool repeats = true;
      for (std::size_t i = d; i < n && repeats; ++i) repeats = cycle_[i] == cycle_[i - d];
      if (repeats) {
        cycle_.resize(d);
        break;
      }
    }
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
      prefix_.pop_back();
      std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    }
  }

  void normalize_stream() {
    while (offset_ > 0 && !prefix_.empty() && prefix_.back() == stream_->letter(offset_ - 1)) {
      prefix_.pop_back();
      --offset_;
    }
  }

  PathWord prefix_;
  PathWord cycle_;
  StreamPtr stream_;
  std::size_t offset_ = 0;
};

/// y . gamma, defined iff s(gamma) lies in r(y).
inline std::optional<InfinitePath> concat_infinite(const Ultragraph& g, const Ultrapath& y, const InfinitePath& gamma) {
  if (!y.range.contains(gamma.source(g))) return std::nullopt;
  return gamma.prepend(y.word);
}

inline PathWord tau_le(const InfinitePath& p, std::size_t n) { return p.take(n); }
inline InfinitePath tau_gt(const InfinitePath& p, std::size_t n) { return p.drop(n); }

/// Lexicographically least rotation; the key of a tail-equivalence class.
inline PathWord least_rotation(PathWord c) {
  PathWord best = c;
  for (std::size_t i = 1; i < c.size(); ++i) {
    std::rotate(c.begin(), c.begin() + 1, c.end());
    best = std::min(best, c);
  }
  return best;
}

namespace detail {
/// r with b == rotate_left(a, r), if any.
inline std::optional<std::size_t> rotation_offset(const PathWord& a, const PathWord& b) {
  if (a.size() != b.size()) return std::nullopt;
  PathWord r = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (r == b) return i;
    std::rotate(r.begin(), r.begin() + 1, r.end());
  }
  return std::nullopt;
}

inline void require_same_stream(const InfinitePath& p, const InfinitePath& q) {
  if (p.stream() != q.stream())
    throw UnsupportedComparison("comparing paths over unrelated aperiodic streams '" + p.stream()->name + "' and '" +
                                q.stream()->name + "'");
}
}  // namespace detail

/// p ~ q: some shifts agree.
inline bool tail_equivalent(const InfinitePath& p, const InfinitePath& q) {
  if (p.is_periodic() != q.is_periodic()) return false;  // aperiodicity promise
  if (p.is_periodic()) return least_rotation(p.cycle()) == least_rotation(q.cycle());
  detail::require_same_stream(p, q);
  return true;
}

/// Exists m, n >= 0 with m - n = k and tau_{>m}(p) = tau_{>n}(q).
inline bool shifted_tail_equal(const InfinitePath& p, const InfinitePath& q, long k) {
  if (!tail_equivalent(p, q)) return false;
  const long pp = static_cast<long>(p.preperiod());
  const long qp = static_cast<long>(q.preperiod());
  if (p.is_periodic()) {
    const long period = static_cast<long>(p.period());
    const long r = static_cast<long>(*detail::rotation_offset(p.cycle(), q.cycle()));
    const long residue = ((k - (pp + r - qp)) % period + period) % period;
    return residue == 0;
  }
  return k == (pp - static_cast<long>(p.offset())) - (qp - static_cast<long>(q.offset()));
}

/// Some m >= max(0, k) with tau_{>m}(p) = tau_{>m-k}(q), when one exists.
inline std::optional<std::size_t> find_alignment(const InfinitePath& p, const InfinitePath& q, long k) {
  if (!shifted_tail_equal(p, q, k)) return std::nullopt;
  const long m = std::max({0L, k, static_cast<long>(p.preperiod()), static_cast<long>(q.preperiod()) + k});
  if (!(p.drop(static_cast<std::size_t>(m)) == q.drop(static_cast<std::size_t>(m - k))))
    throw std::logic_error("alignment check failed");
  return static_cast<std::size_t>(m);
}

// ---------------------------------------------------------------------------
// Shifted tails

/// u . tau_{>m}(base).
struct ShiftedTail {
  PathWord u;
  std::size_t m = 0;
  InfinitePath base;

  InfinitePath realize() const { return base.drop(m).prepend(u); }
  bool operator==(const ShiftedTail& o) const { return u == o.u && m == o.m && base == o.base; }
  bool operator<(const ShiftedTail& o) const {
    return std::tie(u, m) < std::tie(o.u, o.m) || (std::tie(u, m) == std::tie(o.u, o.m) && base < o.base);
  }
};

/// Absorbs u's last letter into the base while it equals the base letter
/// just before position m; on a periodic base, m is kept inside
/// [preperiod, preperiod + period) once it reaches the periodic part.
inline ShiftedTail canonicalize(ShiftedTail st) {
  const InfinitePath& b = st.base;
  for (;;) {
    if (b.is_periodic()) {
      const std::size_t pre = b.preperiod(), per = b.period();
      if (st.m >= pre + per) {
        st.m = pre + (st.m - pre) % per;
        continue;
      }
      if (st.u.empty()) break;
      const EdgeId x = st.u.back();
      if (st.m > pre) {
        if (x != b.letter(st.m - 1)) break;
        --st.m;
      } else if (st.m == pre) {
        if (pre > 0 && x == b.prefix().back()) --st.m;
        else if (x == b.cycle().back()) st.m = pre + per - 1;
        else break;
      } else {
        if (st.m == 0 || x != b.letter(st.m - 1)) break;
        --st.m;
      }
      st.u.pop_back();
    } else {
      if (st.u.empty() || st.m == 0 || st.u.back() != b.letter(st.m - 1)) break;
      st.u.pop_back();
      --st.m;
    }
  }
  return st;
}

}  // namespace ulpa
