#pragma once

// The ultragraph document: {"vertices": [names], "edges": [{"id", "source", "range": [names]}]}.
// Emission is canonical (sorted keys, ids in name order), so documents
// round-trip byte for byte.

#include <json.hpp>

#include <string>
#include <utility>

#include "../ultragraph.hpp"

namespace ulpa::io {

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Names must survive the expression, path and DOT syntaxes unquoted.
inline bool is_plain_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c <= ' ' || c == ',' || c == '{' || c == '}' || c == '[' || c == ']' || c == '|' || c == '<' ||
        c == '>' || c == '"' || c == '*' || c == '\\')
      return false;
  return true;
}

inline UltragraphDescription parse_description(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
  auto names = [](const nlohmann::json& arr, const std::string& where) {
    if (!arr.is_array()) throw DocumentError(where + " must be a list of names");
    std::vector<std::string> out;
    for (const auto& x : arr) {
      if (!x.is_string()) throw DocumentError(where + " must be a list of names");
      auto s = x.get<std::string>();
      if (!is_plain_name(s)) throw DocumentError(where + ": unusable name '" + s + "'");
      out.push_back(std::move(s));
    }
    return out;
  };
  if (!j.is_object()) throw DocumentError("document must be an object");
  for (const auto& [key, value] : j.items())
    if (key != "vertices" && key != "edges") throw DocumentError("unknown key '" + key + "'");
  if (!j.contains("vertices")) throw DocumentError("missing key 'vertices'");
  UltragraphDescription d;
  d.vertices = names(j["vertices"], "vertices");
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw DocumentError("edges must be a list");
    for (const auto& e : j["edges"]) {
      if (!e.is_object() || !e.contains("id") || !e.contains("source") || !e.contains("range") || !e["id"].is_string() ||
          !e["source"].is_string())
        throw DocumentError("each edge needs string 'id', string 'source' and list 'range'");
      EdgeDescription ed{e["id"].get<std::string>(), e["source"].get<std::string>(), {}};
      if (!is_plain_name(ed.id)) throw DocumentError("edges: unusable name '" + ed.id + "'");
      ed.range = names(e["range"], "edge " + ed.id + " range");
      d.edges.push_back(std::move(ed));
    }
  }
  return d;
}

/// Throws DocumentError or ValidationError.
inline Ultragraph parse_document(const std::string& text) { return Ultragraph::from_description(parse_description(text)); }

inline std::string emit_document(const Ultragraph& g) {
  const auto d = g.description();
  nlohmann::json j;
  j["vertices"] = d.vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : d.edges) j["edges"].push_back({{"id", e.id}, {"range", e.range}, {"source", e.source}});
  return j.dump(2) + "\n";
}

}  // namespace ulpa::io
