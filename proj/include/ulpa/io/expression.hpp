#pragma once

// Text syntaxes: algebra elements, infinite paths, twist polynomials.
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := coeff ['*' factors] | factors        coeff := int ['/' int]
//   factors:= factor ('*' factor)*
//   factor := 'p' '{' id (',' id)* '}' | 's' '[' id ']' | 's*' '[' id ']'
//
// A bare coefficient stands for that multiple of the unit.  Paths are
// `prefix|cycle` with comma-separated edge ids, or `prefix|<stream:a,b>+m`
// for a promised-aperiodic stream over the edges a, b.

#include <cctype>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "../algebra.hpp"
#include "../chen.hpp"
#include "../ultrapath.hpp"

namespace ulpa::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// A well-formed expression naming a vertex or edge the ultragraph lacks.
class UndefinedReference : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string& w) {
    skip_space();
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }

  long integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    try {
      return std::stol(text_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      pos_ = start;
      fail("integer out of range");
    }
  }

  /// An id: everything up to whitespace or a delimiter of the enclosing syntax.
  std::string name(const std::string& stops) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           stops.find(text_[pos_]) == std::string::npos)
      ++pos_;
    if (start == pos_) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, message);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

inline VertexId vertex_named(const Ultragraph& g, const std::string& name) {
  if (auto v = g.find_vertex(name)) return *v;
  throw UndefinedReference("unknown vertex '" + name + "'");
}

inline EdgeId edge_named(const Ultragraph& g, const std::string& name) {
  if (auto e = g.find_edge(name)) return *e;
  throw UndefinedReference("unknown edge '" + name + "'");
}

}  // namespace detail

template <Field F>
Element<typename F::scalar> parse_element(const LeavittPathAlgebra<F>& L, const std::string& text) {
  using K = typename F::scalar;
  const Ultragraph& g = L.graph();
  detail::Cursor in(text);

  auto factor = [&]() -> Generator {
    if (in.accept_word("s*")) {
      in.expect('[');
      auto id = in.name("]");
      in.expect(']');
      return Generator::s_star(detail::edge_named(g, id));
    }
    if (in.accept('s')) {
      in.expect('[');
      auto id = in.name("]");
      in.expect(']');
      return Generator::s(detail::edge_named(g, id));
    }
    if (in.accept('p')) {
      in.expect('{');
      VertexSet a;
      do a.insert(detail::vertex_named(g, in.name(",}"))); while (in.accept(','));
      in.expect('}');
      return Generator::p(std::move(a));
    }
    in.fail("expected p{...}, s[...] or s*[...]");
  };

  auto term = [&](bool negative) -> Element<K> {
    K coeff = L.field().one();
    GeneratorWord word;
    if (std::isdigit(static_cast<unsigned char>(in.peek()))) {
      const long num = in.integer();
      long den = 1;
      if (in.accept('/')) {
        den = in.integer();
        if (den == 0) in.fail("zero denominator");
      }
      coeff = L.field().from_fraction(num, den);
      if (!in.accept('*')) return L.unit().scaled(negative ? -coeff : coeff);
    }
    word.push_back(factor());
    while (in.accept('*')) word.push_back(factor());
    return L.evaluate(word).scaled(negative ? -coeff : coeff);
  };

  Element<K> acc;
  if (in.at_end()) in.fail("empty expression");
  acc += term(in.accept('-'));
  while (!in.at_end()) {
    if (in.accept('+')) acc += term(false);
    else if (in.accept('-')) acc += term(true);
    else in.fail("expected '+' or '-'");
  }
  return acc;
}

template <class K>
std::string format_coefficient(const K& c) {
  return c.abs().to_string();
}

/// s[a]*...*p{A}*s*[b]*...; p{A} is left out when a word is present and A is
/// already the joint range of the words.
template <Field F>
std::string format_monomial(const Ultragraph& g, const Monomial& m) {
  std::vector<std::string> parts;
  for (auto e : m.alpha) parts.push_back("s[" + g.edge_name(e) + "]");
  const bool implied = (!m.alpha.empty() || !m.beta.empty()) &&
                       m.mid == effective_range(g, m.alpha).intersect(effective_range(g, m.beta));
  if (!implied) parts.push_back("p" + g.format_set(m.mid));
  for (auto it = m.beta.rbegin(); it != m.beta.rend(); ++it) parts.push_back("s*[" + g.edge_name(*it) + "]");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out;
}

template <Field F>
std::string format_element(const LeavittPathAlgebra<F>& L, const Element<typename F::scalar>& a) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    const bool negative = c.is_negative();
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    if (!c.abs().is_one()) out += format_coefficient(c) + "*";
    out += format_monomial<F>(L.graph(), m);
  }
  return out;
}

// ---------------------------------------------------------------------------

inline PathWord parse_word(const Ultragraph& g, const std::string& text) {
  PathWord w;
  std::size_t start = 0;
  if (text.find_first_not_of(" \t") == std::string::npos) return w;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string id = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto b = id.find_first_not_of(" \t"), e = id.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError(1, start + 1, "empty edge id in path");
    w.push_back(detail::edge_named(g, id.substr(b, e - b + 1)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return w;
}

/// `prefix|cycle` or `prefix|<stream:a,b>` with an optional `+offset`.
inline InfinitePath parse_path(const Ultragraph& g, const std::string& text) {
  const std::size_t bar = text.find('|');
  if (bar == std::string::npos) throw ParseError(1, text.size() + 1, "path needs 'prefix|cycle'");
  const PathWord prefix = parse_word(g, text.substr(0, bar));
  const std::string rest = text.substr(bar + 1);
  const auto open = rest.find('<');
  if (open == std::string::npos) {
    const PathWord cycle = parse_word(g, rest);
    if (cycle.empty()) throw ParseError(1, bar + 2, "empty cycle");
    return InfinitePath::eventually_periodic(g, prefix, cycle);
  }
  const auto close = rest.find('>', open);
  const auto colon = rest.find(':', open);
  if (close == std::string::npos || colon == std::string::npos || colon > close)
    throw ParseError(1, bar + 2 + open, "stream needs '<name:a,b>'");
  const std::string name = rest.substr(open + 1, colon - open - 1);
  const PathWord letters = parse_word(g, rest.substr(colon + 1, close - colon - 1));
  if (letters.size() != 2) throw ParseError(1, bar + 2 + colon, "stream needs exactly two edges");
  std::size_t offset = 0;
  const std::string tail = rest.substr(close + 1);
  if (!tail.empty()) {
    if (tail[0] != '+') throw ParseError(1, bar + 2 + close + 1, "expected '+offset'");
    try {
      offset = std::stoul(tail.substr(1));
    } catch (const std::exception&) {
      throw ParseError(1, bar + 2 + close + 2, "bad offset");
    }
  }
  for (const auto& s : standard_streams(letters[0], letters[1]))
    if (s->name == name) {
      auto named = std::make_shared<EdgeStream>(*s);
      named->name = name + ":" + g.edge_name(letters[0]) + "," + g.edge_name(letters[1]);
      const auto p = InfinitePath::from_stream(named, prefix, offset);
      if (!p.valid_prefix(g, prefix.size() + 64)) throw std::invalid_argument("stream is not a path in this ultragraph");
      return p;
    }
  throw UndefinedReference("unknown stream '" + name + "'");
}

// ---------------------------------------------------------------------------

/// Polynomials in t such as `t^2-t-1` or `2*t - 1/3`; coefficients low to high.
template <Field F>
std::vector<typename F::scalar> parse_polynomial(const F& field, const std::string& text) {
  using K = typename F::scalar;
  detail::Cursor in(text);
  std::vector<K> c;
  auto add = [&](std::size_t power, const K& v) {
    if (c.size() <= power) c.resize(power + 1, field.zero());
    c[power] = c[power] + v;
  };
  auto term = [&](bool negative) {
    K coeff = field.one();
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(in.peek()))) {
      const long num = in.integer();
      long den = 1;
      if (in.accept('/')) den = in.integer();
      if (den == 0) in.fail("zero denominator");
      coeff = field.from_fraction(num, den);
      has_coeff = true;
      if (!in.accept('*')) {
        if (in.peek() != 't') {
          add(0, negative ? -coeff : coeff);
          return;
        }
      }
    }
    if (!in.accept('t')) in.fail(has_coeff ? "expected 't'" : "expected a coefficient or 't'");
    std::size_t power = 1;
    if (in.accept('^')) power = static_cast<std::size_t>(in.integer());
    add(power, negative ? -coeff : coeff);
  };
  if (in.at_end()) in.fail("empty polynomial");
  term(in.accept('-'));
  while (!in.at_end()) {
    if (in.accept('+')) term(false);
    else if (in.accept('-')) term(true);
    else in.fail("expected '+' or '-'");
  }
  return c;
}

template <Field F>
std::string format_polynomial(const std::vector<typename F::scalar>& c) {
  std::string out;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    const bool negative = c[i].is_negative();
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    const bool unit = c[i].abs().is_one();
    if (i == 0) out += format_coefficient(c[i]);
    else out += (unit ? "" : format_coefficient(c[i]) + "*") + "t" + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return first ? "0" : out;
}

}  // namespace ulpa::io
