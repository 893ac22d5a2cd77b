#pragma once

// Structure reports as text and as JSON.  JSON keys are stable: "sinks",
// "regular", "unital", "condition_k", "simplicity_sufficient",
// "strongly_graded", "cycles".

#include <json.hpp>

#include <string>
#include <vector>

#include "../structure.hpp"

namespace ulpa::io {

namespace detail {

inline std::vector<std::string> names(const Ultragraph& g, const VertexSet& a) {
  std::vector<std::string> out;
  for (auto v : a) out.push_back(g.vertex_name(v));
  return out;
}

inline const char* verdict_name(FirstReturnVerdict::Kind k) {
  switch (k) {
    case FirstReturnVerdict::Kind::None: return "none";
    case FirstReturnVerdict::Kind::ExactlyOne: return "exactly-one";
    case FirstReturnVerdict::Kind::TwoOrMore: return "two-or-more";
  }
  return "";
}

inline const char* simplicity_name(SimplicityVerdict::Kind k) {
  switch (k) {
    case SimplicityVerdict::Kind::NotApplicable: return "not-applicable";
    case SimplicityVerdict::Kind::True: return "true";
    case SimplicityVerdict::Kind::Inconclusive: return "inconclusive";
  }
  return "";
}

inline const char* grading_name(StrongGradingVerdict::Kind k) {
  switch (k) {
    case StrongGradingVerdict::Kind::True: return "true";
    case StrongGradingVerdict::Kind::False: return "false";
    case StrongGradingVerdict::Kind::NotApplicableSinks: return "not-applicable-sinks";
  }
  return "";
}

inline std::string exit_text(const Ultragraph& g, const CycleExit& x) {
  if (x.kind == CycleExit::Kind::Edge) return "edge " + g.edge_name(x.edge) + " at " + std::to_string(x.index);
  return "sink " + g.vertex_name(x.sink) + " at " + std::to_string(x.index);
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace detail

inline nlohmann::json report_json(const Ultragraph& g, const StructureReport& r) {
  using nlohmann::json;
  json j;
  j["sinks"] = detail::names(g, r.sinks);
  j["regular"] = detail::names(g, r.regular);
  j["unital"] = r.unital;

  json k;
  k["holds"] = r.condition_k.holds;
  json per = json::object();
  for (const auto& [v, verdict] : r.condition_k.per_vertex) {
    json w = json::array();
    for (const auto& p : verdict.witnesses) w.push_back(g.format_word(p));
    per[g.vertex_name(v)] = {{"verdict", detail::verdict_name(verdict.kind)},
                             {"witnesses", w},
                             {"infinite_language", verdict.infinite_language}};
  }
  k["vertices"] = per;
  json kf = json::array();
  for (auto v : r.condition_k.failing) kf.push_back(g.vertex_name(v));
  k["failing"] = kf;
  j["condition_k"] = k;

  const auto& s = r.simplicity;
  json sj;
  sj["verdict"] = detail::simplicity_name(s.kind);
  if (s.kind == SimplicityVerdict::Kind::NotApplicable) {
    sj["reason"] = s.reason;
  } else {
    sj["failing_conditions"] = s.failing_conditions;
    sj["condition_1"] = s.condition_k;
    sj["condition_2"] = s.condition_connect;
    sj["condition_3"] = "vacuously true";
    if (s.connect_witness)
      sj["condition_2_witness"] = {{"vertex", g.vertex_name(s.connect_witness->first)},
                                   {"path", s.connect_witness->second.format(g)}};
  }
  j["simplicity_sufficient"] = sj;

  const auto& sg = r.strong_grading;
  json gj;
  gj["verdict"] = detail::grading_name(sg.kind);
  if (sg.bounded) {
    gj["condition_1"] = "vacuously true";
    json b = {{"passed", sg.bounded->passed},
              {"k_max", sg.bounded->k_max},
              {"witness_bound", sg.bounded->witness_bound},
              {"paths_checked", sg.bounded->paths_checked}};
    if (sg.bounded->failure)
      b["failure"] = {{"path", sg.bounded->failure->first.format(g)}, {"k", sg.bounded->failure->second}};
    gj["bounded_condition2"] = b;
  }
  j["strongly_graded"] = gj;

  json cycles = json::array();
  for (const auto& c : r.cycles) {
    json exits = json::array();
    for (const auto& x : c.exits) exits.push_back(detail::exit_text(g, x));
    cycles.push_back({{"cycle", g.format_word(c.cycle)}, {"exits", exits}});
  }
  j["cycles"] = cycles;
  return j;
}

inline std::string report_text(const Ultragraph& g, const StructureReport& r) {
  std::string out;
  auto line = [&](const std::string& s) { out += s + "\n"; };
  line("sinks: " + g.format_set(r.sinks));
  line("regular: " + g.format_set(r.regular));
  line(std::string("unital: ") + (r.unital ? "true" : "false"));

  line(std::string("condition (K): ") + (r.condition_k.holds ? "holds" : "fails"));
  for (const auto& [v, verdict] : r.condition_k.per_vertex) {
    std::vector<std::string> ws;
    for (const auto& p : verdict.witnesses) ws.push_back("[" + g.format_word(p) + "]");
    std::string l = "  " + g.vertex_name(v) + ": " + detail::verdict_name(verdict.kind);
    if (!ws.empty()) l += " " + detail::join(ws, " ");
    if (verdict.infinite_language) l += " (infinitely many)";
    line(l);
  }

  const auto& s = r.simplicity;
  line(std::string("simplicity (sufficient test): ") + detail::simplicity_name(s.kind));
  if (s.kind == SimplicityVerdict::Kind::NotApplicable) {
    line("  " + s.reason);
  } else {
    std::vector<std::string> kw;
    for (auto v : s.k_witnesses) kw.push_back(g.vertex_name(v));
    line(std::string("  condition 1, Condition (K): ") + (s.condition_k ? "holds" : "fails at " + detail::join(kw, ", ")));
    if (s.connect_witness)
      line("  condition 2, every vertex connects to every infinite path: fails at " +
           g.vertex_name(s.connect_witness->first) + ", witness " + s.connect_witness->second.format(g));
    else
      line("  condition 2, every vertex connects to every infinite path: holds");
    line("  condition 3, infinite emitters: vacuously true");
  }

  const auto& sg = r.strong_grading;
  line(std::string("strongly graded: ") + detail::grading_name(sg.kind));
  if (sg.bounded) {
    line("  condition 1, no infinite emitters: vacuously true");
    std::string b = "  condition 2, bounded check (k <= " + std::to_string(sg.bounded->k_max) +
                    ", preperiod + period <= " + std::to_string(sg.bounded->witness_bound) + "): " +
                    (sg.bounded->passed ? "passed" : "failed") + ", " + std::to_string(sg.bounded->paths_checked) +
                    " paths";
    if (sg.bounded->failure)
      b += ", witness " + sg.bounded->failure->first.format(g) + " at k = " + std::to_string(sg.bounded->failure->second);
    line(b);
  }

  line("cycles:");
  if (r.cycles.empty()) line("  none");
  for (const auto& c : r.cycles) {
    std::vector<std::string> xs;
    for (const auto& x : c.exits) xs.push_back(detail::exit_text(g, x));
    line("  [" + g.format_word(c.cycle) + "] exits: " + (xs.empty() ? "none" : detail::join(xs, "; ")));
  }
  return out;
}

}  // namespace ulpa::io
