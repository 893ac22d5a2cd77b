#pragma once

// Decision procedures on finite ultragraphs: Condition (K), a sufficient
// simplicity test, strong grading, unitality.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultragraph.hpp"
#include "ultrapath.hpp"

namespace ulpa {

struct ConditionKResult {
  bool holds = true;
  std::map<VertexId, FirstReturnVerdict> per_vertex;
  std::vector<VertexId> failing;  // vertices with exactly one first-return path
};

inline ConditionKResult condition_K(const Ultragraph& g) {
  ConditionKResult r;
  for (auto v : g.vertices()) {
    auto verdict = first_return(g, v);
    if (verdict.kind == FirstReturnVerdict::Kind::ExactlyOne) {
      r.holds = false;
      r.failing.push_back(v);
    }
    r.per_vertex.emplace(v, std::move(verdict));
  }
  return r;
}

struct ConnectionResult {
  bool connects = true;
  std::optional<InfinitePath> counterexample;  // never meets a vertex reachable from v
};

/// Whether v reaches some source along every infinite path.  An infinite
/// path avoiding the vertices reachable from v exists iff the edges sourced
/// outside that set contain a cycle.
inline ConnectionResult connects_to_all_infinite(const Ultragraph& g, VertexId v) {
  const VertexSet reach = reachable_from(g, v);
  std::vector<EdgeId> outside;
  for (auto e : g.edges())
    if (!reach.contains(g.source(e))) outside.push_back(e);
  auto follows = [&](EdgeId e, EdgeId f) { return g.range(e).contains(g.source(f)); };

  // iterative DFS over the edge graph; 0 = new, 1 = on stack, 2 = done
  std::vector<int> state(g.edge_count(), 0);
  for (auto root : outside) {
    if (state[root.index] != 0) continue;
    std::vector<std::pair<EdgeId, std::size_t>> stack{{root, 0}};
    state[root.index] = 1;
    while (!stack.empty()) {
      auto& [e, next] = stack.back();
      if (next == outside.size()) {
        state[e.index] = 2;
        stack.pop_back();
        continue;
      }
      const EdgeId f = outside[next++];
      if (!follows(e, f)) continue;
      if (state[f.index] == 1) {
        PathWord cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& s) { return s.first == f; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        return {false, InfinitePath::periodic(g, cycle)};
      }
      if (state[f.index] == 0) {
        state[f.index] = 1;
        stack.push_back({f, 0});
      }
    }
  }
  return {true, std::nullopt};
}

struct SimplicityVerdict {
  enum class Kind { NotApplicable, True, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::string reason;  // NotApplicable
  bool condition_k = false;
  bool condition_connect = false;
  bool condition_emitters_vacuous = true;  // no infinite emitters in a finite ultragraph
  std::vector<VertexId> k_witnesses;
  std::optional<std::pair<VertexId, InfinitePath>> connect_witness;
  std::vector<int> failing_conditions;  // 1 = Condition (K), 2 = connection
};

/// Sufficient test only: True means simple; Inconclusive never means "not simple".
inline SimplicityVerdict simplicity_sufficient(const Ultragraph& g) {
  SimplicityVerdict r;
  if (g.has_sinks()) {
    r.kind = SimplicityVerdict::Kind::NotApplicable;
    r.reason = "ultragraph has sinks " + g.format_set(sinks(g));
    return r;
  }
  const auto k = condition_K(g);
  r.condition_k = k.holds;
  r.k_witnesses = k.failing;
  if (!k.holds) r.failing_conditions.push_back(1);
  r.condition_connect = true;
  for (auto v : g.vertices()) {
    auto c = connects_to_all_infinite(g, v);
    if (!c.connects) {
      r.condition_connect = false;
      r.connect_witness.emplace(v, *c.counterexample);
      r.failing_conditions.push_back(2);
      break;
    }
  }
  r.kind = r.failing_conditions.empty() ? SimplicityVerdict::Kind::True : SimplicityVerdict::Kind::Inconclusive;
  return r;
}

// ---------------------------------------------------------------------------
// Strong grading

/// For each length l >= 1, the edges that can end a path of length l.
class PathLengthTable {
 public:
  explicit PathLengthTable(const Ultragraph& g) : g_(&g) { ends_.push_back({}); }

  /// Some path y of length l has r(y) = R (l >= 1).
  bool has(std::size_t l, const VertexSet& r) {
    extend_to(l);
    for (auto e : g_->edges())
      if (ends_[l][e.index] && g_->range(e) == r) return true;
    return false;
  }

 private:
  void extend_to(std::size_t l) {
    while (ends_.size() <= l) {
      std::vector<bool> next(g_->edge_count(), false);
      if (ends_.size() == 1) {
        next.assign(g_->edge_count(), true);
      } else {
        const auto& prev = ends_.back();
        for (auto e : g_->edges())
          if (prev[e.index])
            for (auto f : g_->edges())
              if (g_->range(e).contains(g_->source(f))) next[f.index] = true;
      }
      ends_.push_back(std::move(next));
    }
  }

  const Ultragraph* g_;
  std::vector<std::vector<bool>> ends_;
};

struct BoundedCondition2Report {
  bool passed = true;
  std::size_t k_max = 0;
  std::size_t witness_bound = 0;
  std::size_t paths_checked = 0;
  std::optional<std::pair<InfinitePath, std::size_t>> failure;  // (p, k)
};

/// Checks, for every k <= k_max and every eventually periodic p with
/// preperiod + period <= witness_bound, that some initial subpath x of p
/// with |x| >= 1 admits a path y with r(y) = r(x) and |y| - |x| = k.
inline BoundedCondition2Report bounded_condition2(const Ultragraph& g, std::size_t k_max, std::size_t witness_bound) {
  BoundedCondition2Report rep;
  rep.k_max = k_max;
  rep.witness_bound = witness_bound;
  PathLengthTable lengths(g);

  for (std::size_t k = 0; k <= k_max && rep.passed; ++k) {
    auto ok_at = [&](std::size_t n, EdgeId en) { return lengths.has(n + k, g.range(en)); };
    auto word_succeeds = [&](const PathWord& w) {
      for (std::size_t n = 1; n <= w.size(); ++n)
        if (ok_at(n, w[n - 1])) return true;
      return false;
    };
    auto path_succeeds = [&](const InfinitePath& p) {
      const std::size_t cap = (p.preperiod() + p.period()) * (g.edge_count() + 2) + k_max;
      for (std::size_t n = 1; n <= cap; ++n)
        if (ok_at(n, p.letter(n - 1))) return true;
      return false;
    };

    // Depth-first over walks; a walk that already succeeds settles every
    // path it begins, so only failing walks are extended or closed up.
    std::vector<PathWord> stack;
    for (auto e : g.edges()) stack.push_back({e});
    while (!stack.empty() && rep.passed) {
      PathWord w = std::move(stack.back());
      stack.pop_back();
      if (word_succeeds(w)) {
        ++rep.paths_checked;
        continue;
      }
      for (std::size_t split = 0; split < w.size(); ++split) {
        const PathWord prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split));
        const PathWord cycle(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());
        if (!g.range(cycle.back()).contains(g.source(cycle.front()))) continue;
        const auto p = InfinitePath::eventually_periodic(g, prefix, cycle);
        ++rep.paths_checked;
        if (!path_succeeds(p)) {
          rep.passed = false;
          rep.failure.emplace(p, k);
          break;
        }
      }
      if (w.size() < witness_bound)
        for (auto f : g.edges())
          if (g.range(w.back()).contains(g.source(f))) stack.push_back(concat(w, {f}));
    }
  }
  return rep;
}

struct StrongGradingVerdict {
  enum class Kind { True, False, NotApplicableSinks };
  Kind kind = Kind::True;
  bool condition_emitters_vacuous = true;
  std::optional<BoundedCondition2Report> bounded;
};

/// On a finite sink-free ultragraph every infinite path eventually runs
/// around a cycle, and a path ending with a cycle edge e exists in every
/// length (walk the cycle backwards from e), so condition (2) holds.  The
/// bounded checker confirms this independently on each input.
inline StrongGradingVerdict strongly_graded(const Ultragraph& g) {
  StrongGradingVerdict r;
  if (g.has_sinks()) {
    r.kind = StrongGradingVerdict::Kind::NotApplicableSinks;
    return r;
  }
  r.bounded = bounded_condition2(g, 6, 2 * g.edge_count() + 2);
  r.kind = r.bounded->passed ? StrongGradingVerdict::Kind::True : StrongGradingVerdict::Kind::False;
  return r;
}

inline bool is_unital(const Ultragraph& g) {
  const auto family = generate_G0(g);
  return std::find(family.begin(), family.end(), g.all_vertices()) != family.end();
}

// ---------------------------------------------------------------------------

struct CycleExitReport {
  PathWord cycle;
  std::vector<CycleExit> exits;
};

struct StructureReport {
  VertexSet sinks;
  VertexSet regular;
  ConditionKResult condition_k;
  SimplicityVerdict simplicity;
  StrongGradingVerdict strong_grading;
  bool unital = false;
  std::vector<CycleExitReport> cycles;  // first-return witnesses and their exits
};

inline StructureReport report(const Ultragraph& g) {
  StructureReport r;
  r.sinks = sinks(g);
  r.regular = regular_vertices(g);
  r.condition_k = condition_K(g);
  r.simplicity = simplicity_sufficient(g);
  r.strong_grading = strongly_graded(g);
  r.unital = is_unital(g);
  std::vector<PathWord> seen;
  for (const auto& [v, verdict] : r.condition_k.per_vertex)
    for (const auto& w : verdict.witnesses)
      if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
        seen.push_back(w);
        r.cycles.push_back({w, cycle_exits(g, w)});
      }
  return r;
}

}  // namespace ulpa
