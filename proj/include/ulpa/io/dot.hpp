#pragma once

// Graphviz rendering: one arrow per (edge, range vertex), labeled by the edge.

#include <string>

#include "../ultragraph.hpp"

namespace ulpa::io {

inline std::string emit_dot(const Ultragraph& g) {
  std::string out = "digraph ultragraph {\n";
  for (auto v : g.vertices()) out += "  \"" + g.vertex_name(v) + "\";\n";
  for (auto e : g.edges())
    for (auto u : g.range(e))
      out += "  \"" + g.vertex_name(g.source(e)) + "\" -> \"" + g.vertex_name(u) + "\" [label=\"" + g.edge_name(e) + "\"];\n";
  return out + "}\n";
}

}  // namespace ulpa::io
