#pragma once

// Finite ultragraphs: vertices, edges whose range is a nonempty vertex set,
// the generalized-vertex family, and graph primitives (reachability, cycles,
// exits, first-return analysis).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ulpa {

struct VertexId {
  std::uint32_t index = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
  std::uint32_t index = 0;
  auto operator<=>(const EdgeId&) const = default;
};

using PathWord = std::vector<EdgeId>;

/// Finite set of vertices kept as a sorted vector; the empty set is allowed.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids) : items_(ids) { normalize(); }
  explicit VertexSet(std::vector<VertexId> ids) : items_(std::move(ids)) { normalize(); }

  static VertexSet singleton(VertexId v) { return VertexSet({v}); }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<VertexId>& items() const { return items_; }
  VertexId front() const { return items_.front(); }

  bool contains(VertexId v) const { return std::binary_search(items_.begin(), items_.end(), v); }
  bool subset_of(const VertexSet& o) const {
    return std::includes(o.items_.begin(), o.items_.end(), items_.begin(), items_.end());
  }
  bool intersects(const VertexSet& o) const { return !intersect(o).empty(); }

  VertexSet intersect(const VertexSet& o) const {
    VertexSet r;
    std::set_intersection(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
                          std::back_inserter(r.items_));
    return r;
  }
  VertexSet unite(const VertexSet& o) const {
    VertexSet r;
    std::set_union(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
                   std::back_inserter(r.items_));
    return r;
  }
  VertexSet minus(const VertexSet& o) const {
    VertexSet r;
    std::set_difference(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
                        std::back_inserter(r.items_));
    return r;
  }
  void insert(VertexId v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it == items_.end() || *it != v) items_.insert(it, v);
  }

  auto operator<=>(const VertexSet&) const = default;
  bool operator==(const VertexSet&) const = default;

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }
  std::vector<VertexId> items_;
};

// ---------------------------------------------------------------------------
// Construction and validation

struct EdgeDescription {
  std::string id;
  std::string source;
  std::vector<std::string> range;
};

/// Name-based description, as read from a document; may be invalid.
struct UltragraphDescription {
  std::vector<std::string> vertices;
  std::vector<EdgeDescription> edges;
};

struct Violation {
  std::string subject;  // "edge e", "vertex v"
  std::string message;
  bool operator==(const Violation&) const = default;
};

inline std::vector<Violation> validate(const UltragraphDescription& d) {
  std::vector<Violation> out;
  std::set<std::string> vertices;
  for (const auto& v : d.vertices) {
    if (v.empty()) out.push_back({"vertex", "empty vertex name"});
    if (!vertices.insert(v).second) out.push_back({"vertex " + v, "duplicate vertex id"});
  }
  std::set<std::string> edges;
  for (const auto& e : d.edges) {
    const std::string subject = "edge " + e.id;
    if (e.id.empty()) out.push_back({"edge", "empty edge id"});
    if (!edges.insert(e.id).second) out.push_back({subject, "duplicate edge id"});
    if (vertices.count(e.id)) out.push_back({subject, "edge id collides with a vertex id"});
    if (!vertices.count(e.source)) out.push_back({subject, "source '" + e.source + "' is not a declared vertex"});
    if (e.range.empty()) out.push_back({subject, "empty range"});
    for (const auto& r : e.range)
      if (!vertices.count(r)) out.push_back({subject, "range cites undeclared vertex '" + r + "'"});
  }
  return out;
}

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> v)
      : std::runtime_error(summarize(v)), violations_(std::move(v)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string s = "invalid ultragraph:";
    for (const auto& x : v) s += " [" + x.subject + ": " + x.message + "]";
    return s;
  }
  std::vector<Violation> violations_;
};

/// Thrown when a word of edges is not a path.
class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A validated finite ultragraph.  Vertex and edge ids are positions in the
/// lexicographic order of their names.
class Ultragraph {
 public:
  /// The empty ultragraph.
  Ultragraph() = default;

  static Ultragraph from_description(const UltragraphDescription& d) {
    if (auto v = validate(d); !v.empty()) throw ValidationError(std::move(v));
    Ultragraph g;
    g.vertex_names_ = d.vertices;
    std::sort(g.vertex_names_.begin(), g.vertex_names_.end());
    for (std::uint32_t i = 0; i < g.vertex_names_.size(); ++i) g.vertex_index_[g.vertex_names_[i]] = {i};
    std::vector<EdgeDescription> edges = d.edges;
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    g.emitted_.resize(g.vertex_names_.size());
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      const EdgeId e{i};
      g.edge_names_.push_back(edges[i].id);
      g.edge_index_[edges[i].id] = e;
      const VertexId s = g.vertex_index_.at(edges[i].source);
      g.source_.push_back(s);
      VertexSet r;
      for (const auto& name : edges[i].range) r.insert(g.vertex_index_.at(name));
      g.range_.push_back(std::move(r));
      g.emitted_[s.index].push_back(e);
    }
    return g;
  }

  static Ultragraph build(std::vector<std::string> vertices, std::vector<EdgeDescription> edges) {
    return from_description({std::move(vertices), std::move(edges)});
  }

  /// Canonical description: sorted vertex names, edges sorted by id, ranges sorted.
  UltragraphDescription description() const {
    UltragraphDescription d;
    d.vertices = vertex_names_;
    for (std::uint32_t i = 0; i < edge_names_.size(); ++i) {
      EdgeDescription e{edge_names_[i], vertex_names_[source_[i].index], {}};
      for (auto v : range_[i]) e.range.push_back(vertex_names_[v.index]);
      d.edges.push_back(std::move(e));
    }
    return d;
  }

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edge_names_.size(); }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    for (std::uint32_t i = 0; i < vertex_count(); ++i) out.push_back({i});
    return out;
  }
  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    for (std::uint32_t i = 0; i < edge_count(); ++i) out.push_back({i});
    return out;
  }
  VertexSet all_vertices() const { return VertexSet(vertices()); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v.index); }
  const std::string& edge_name(EdgeId e) const { return edge_names_.at(e.index); }
  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeId> find_edge(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId source(EdgeId e) const { return source_.at(e.index); }
  const VertexSet& range(EdgeId e) const { return range_.at(e.index); }
  /// s^{-1}(v), sorted by edge id.
  const std::vector<EdgeId>& emitted(VertexId v) const { return emitted_.at(v.index); }

  bool is_sink(VertexId v) const { return emitted(v).empty(); }
  bool has_sinks() const {
    for (const auto& e : emitted_)
      if (e.empty()) return true;
    return false;
  }

  std::string format_set(const VertexSet& a) const {
    std::string s = "{";
    bool first = true;
    for (auto v : a) {
      if (!first) s += ",";
      s += vertex_name(v);
      first = false;
    }
    return s + "}";
  }
  std::string format_word(const PathWord& w) const {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + edge_name(w[i]);
    return s;
  }

  bool operator==(const Ultragraph& o) const {
    return vertex_names_ == o.vertex_names_ && edge_names_ == o.edge_names_ && source_ == o.source_ &&
           range_ == o.range_;
  }

 private:

  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::map<std::string, VertexId> vertex_index_;
  std::map<std::string, EdgeId> edge_index_;
  std::vector<VertexId> source_;
  std::vector<VertexSet> range_;
  std::vector<std::vector<EdgeId>> emitted_;
};

// ---------------------------------------------------------------------------
// Vertex classes and generalized vertices

inline VertexSet sinks(const Ultragraph& g) {
  VertexSet out;
  for (auto v : g.vertices())
    if (g.is_sink(v)) out.insert(v);
  return out;
}

/// Vertices with 0 < |s^{-1}(v)| < infinity; on a finite graph, the non-sinks.
inline VertexSet regular_vertices(const Ultragraph& g) {
  VertexSet out;
  for (auto v : g.vertices())
    if (!g.emitted(v).empty()) out.insert(v);
  return out;
}

/// Edges whose source lies in `a`, sorted by id.
inline std::vector<EdgeId> epsilon(const Ultragraph& g, const VertexSet& a) {
  std::vector<EdgeId> out;
  for (auto e : g.edges())
    if (a.contains(g.source(e))) out.push_back(e);
  return out;
}

/// Closure of singletons and edge ranges under pairwise union and
/// intersection (the empty set is not a member).
inline std::vector<VertexSet> generate_G0(const Ultragraph& g) {
  std::set<VertexSet> family;
  std::deque<VertexSet> work;
  auto offer = [&](VertexSet s) {
    if (!s.empty() && family.insert(s).second) work.push_back(std::move(s));
  };
  for (auto v : g.vertices()) offer(VertexSet::singleton(v));
  for (auto e : g.edges()) offer(g.range(e));
  while (!work.empty()) {
    VertexSet a = std::move(work.front());
    work.pop_front();
    std::vector<VertexSet> snapshot(family.begin(), family.end());
    for (const auto& b : snapshot) {
      offer(a.unite(b));
      offer(a.intersect(b));
    }
  }
  return {family.begin(), family.end()};
}

// ---------------------------------------------------------------------------
// Paths

inline bool is_path(const Ultragraph& g, const PathWord& w) {
  for (auto e : w)
    if (e.index >= g.edge_count()) return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!g.range(w[i - 1]).contains(g.source(w[i]))) return false;
  return true;
}

inline void require_path(const Ultragraph& g, const PathWord& w) {
  if (!is_path(g, w)) throw PathError("not a path: [" + g.format_word(w) + "]");
}

/// r(last edge) for nonempty words; the full vertex set for the empty word.
inline VertexSet effective_range(const Ultragraph& g, const PathWord& w) {
  return w.empty() ? g.all_vertices() : g.range(w.back());
}

inline PathWord concat(PathWord a, const PathWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Every vertex u with w >= u (length-0 paths make w reach itself).
inline VertexSet reachable_from(const Ultragraph& g, VertexId w) {
  VertexSet seen = VertexSet::singleton(w);
  std::deque<VertexId> queue{w};
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (auto e : g.emitted(x))
      for (auto u : g.range(e))
        if (!seen.contains(u)) {
          seen.insert(u);
          queue.push_back(u);
        }
  }
  return seen;
}

/// w >= v: some path starting at w has v in its range.
inline bool reaches(const Ultragraph& g, VertexId w, VertexId v) { return reachable_from(g, w).contains(v); }

inline bool is_cycle(const Ultragraph& g, const PathWord& w) {
  require_path(g, w);
  return !w.empty() && g.range(w.back()).contains(g.source(w.front()));
}

struct CycleExit {
  enum class Kind { Edge, Sink };
  Kind kind;
  std::size_t index;  // 1-based position i of the edge e_i whose range is left
  EdgeId edge{};      // Kind::Edge
  VertexId sink{};    // Kind::Sink
  bool operator==(const CycleExit&) const = default;
};

/// Exits of a cycle; the successor of the last edge is the first edge.
inline std::vector<CycleExit> cycle_exits(const Ultragraph& g, const PathWord& w) {
  if (!is_cycle(g, w)) throw PathError("not a cycle: [" + g.format_word(w) + "]");
  std::vector<CycleExit> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const EdgeId next = w[(i + 1) % w.size()];
    const VertexSet& r = g.range(w[i]);
    for (auto e : g.edges())
      if (r.contains(g.source(e)) && e != next) out.push_back({CycleExit::Kind::Edge, i + 1, e, {}});
    for (auto u : r)
      if (g.is_sink(u)) out.push_back({CycleExit::Kind::Sink, i + 1, {}, u});
  }
  return out;
}

// ---------------------------------------------------------------------------
// First-return paths

struct FirstReturnVerdict {
  enum class Kind { None, ExactlyOne, TwoOrMore };
  Kind kind = Kind::None;
  std::vector<PathWord> witnesses;  // 0, 1 or 2 distinct first-return paths
  bool infinite_language = false;
};

/// Classifies the first-return paths at v into 0 / 1 / >= 2.
///
/// The language is recognized by the automaton whose states are edges: a
/// word starts with an edge out of v, moves e -> e' when s(e') in r(e) and
/// s(e') != v, and accepts after e when v in r(e).  The automaton is trimmed
/// to states that are both reachable and co-reachable; a cycle among the
/// remaining states makes the language infinite.
inline FirstReturnVerdict first_return(const Ultragraph& g, VertexId v) {
  const std::size_t n = g.edge_count();
  std::vector<std::vector<EdgeId>> next(n);
  for (auto e : g.edges())
    for (auto f : g.edges())
      if (g.source(f) != v && g.range(e).contains(g.source(f))) next[e.index].push_back(f);
  auto accepting = [&](EdgeId e) { return g.range(e).contains(v); };

  std::vector<bool> forward(n, false), backward(n, false);
  std::deque<EdgeId> queue;
  for (auto e : g.emitted(v)) {
    forward[e.index] = true;
    queue.push_back(e);
  }
  while (!queue.empty()) {
    EdgeId e = queue.front();
    queue.pop_front();
    for (auto f : next[e.index])
      if (!forward[f.index]) {
        forward[f.index] = true;
        queue.push_back(f);
      }
  }
  std::vector<std::vector<EdgeId>> prev(n);
  for (auto e : g.edges())
    for (auto f : next[e.index]) prev[f.index].push_back(e);
  for (auto e : g.edges())
    if (accepting(e)) {
      backward[e.index] = true;
      queue.push_back(e);
    }
  while (!queue.empty()) {
    EdgeId e = queue.front();
    queue.pop_front();
    for (auto f : prev[e.index])
      if (!backward[f.index]) {
        backward[f.index] = true;
        queue.push_back(f);
      }
  }
  auto useful = [&](EdgeId e) { return forward[e.index] && backward[e.index]; };

  // Cycle detection among useful states (iterative colouring DFS).
  FirstReturnVerdict verdict;
  {
    std::vector<int> colour(n, 0);
    for (auto root : g.edges()) {
      if (!useful(root) || colour[root.index]) continue;
      std::vector<std::pair<EdgeId, std::size_t>> stack{{root, 0}};
      colour[root.index] = 1;
      while (!stack.empty() && !verdict.infinite_language) {
        auto& [e, pos] = stack.back();
        if (pos < next[e.index].size()) {
          EdgeId f = next[e.index][pos++];
          if (!useful(f)) continue;
          if (colour[f.index] == 1) verdict.infinite_language = true;
          else if (colour[f.index] == 0) {
            colour[f.index] = 1;
            stack.push_back({f, 0});
          }
        } else {
          colour[e.index] = 2;
          stack.pop_back();
        }
      }
    }
  }

  // Breadth-first enumeration of accepted words over the trimmed automaton;
  // every prefix extends to an accepted word, so this stops after two.
  std::deque<PathWord> words;
  for (auto e : g.emitted(v))
    if (useful(e)) words.push_back({e});
  while (!words.empty() && verdict.witnesses.size() < 2) {
    PathWord w = std::move(words.front());
    words.pop_front();
    if (accepting(w.back())) verdict.witnesses.push_back(w);
    for (auto f : next[w.back().index])
      if (useful(f)) {
        PathWord longer = w;
        longer.push_back(f);
        words.push_back(std::move(longer));
      }
  }
  switch (verdict.witnesses.size()) {
    case 0: verdict.kind = FirstReturnVerdict::Kind::None; break;
    case 1: verdict.kind = FirstReturnVerdict::Kind::ExactlyOne; break;
    default: verdict.kind = FirstReturnVerdict::Kind::TwoOrMore; break;
  }
  return verdict;
}

}  // namespace ulpa
