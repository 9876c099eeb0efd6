#include "milnor/report.hpp"

#include <cstdio>
#include <sstream>

namespace milnor {

using nlohmann::ordered_json;

VerdictSummary summarize(const ReportEnvelope& e) {
  VerdictSummary s;
  for (const auto& r : e.reports) {
    switch (r.verdict) {
      case Verdict::verified: ++s.verified; break;
      case Verdict::conflict: ++s.conflict; break;
      case Verdict::unsupported_symbolic: ++s.unsupported_symbolic; break;
      case Verdict::unstable: ++s.unstable; break;
    }
  }
  return s;
}

namespace {

ordered_json side(const std::optional<long>& v, const char* source, const std::string& method) {
  if (!v) return nullptr;
  return ordered_json{{"value", *v}, {"source", source}, {"method", method}};
}

ordered_json object_of(const std::map<std::string, std::string>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

}  // namespace

ordered_json to_json(const FormulaReport& r) {
  ordered_json gates = ordered_json::array();
  for (const auto& g : r.gates)
    gates.push_back({{"name", g.name},
                     {"kind", g.kind == Gate::Kind::stability ? "stability" : "consistency"},
                     {"passed", g.passed},
                     {"detail", g.detail}});
  return {{"formula_id", to_string(r.formula_id)},
          {"inputs", r.inputs},
          {"parameters", object_of(r.parameters)},
          {"lhs", side(r.lhs, r.symbolic_failed ? "formula (oracle degree)" : "formula", r.lhs_method)},
          {"rhs", side(r.rhs, "oracle", r.rhs_method)},
          {"verdict", to_string(r.verdict)},
          {"method", r.method},
          {"gates", gates},
          {"assumptions", r.assumptions},
          {"diagnostics", r.diagnostics}};
}

ordered_json to_json(const DegreePayload& p) {
  return {{"label", p.label},
          {"inputs", p.inputs},
          {"degree", {{"value", p.result.degree}, {"method", to_string(p.result.method)}}},
          {"parameters", object_of(p.result.parameters)},
          {"diagnostics", p.result.diagnostics}};
}

ordered_json to_json(const ChiPayload& p) {
  return {{"label", p.label},
          {"inputs", p.inputs},
          {"chi", {{"value", p.result.chi}, {"method", p.result.method}}},
          {"cells",
           {{"vertices", p.result.vertices},
            {"edges", p.result.edges},
            {"faces", p.result.faces},
            {"solids", p.result.solids}}},
          {"parameters", object_of(p.result.parameters)}};
}

ordered_json to_json(const ReportEnvelope& e) {
  ordered_json reports = ordered_json::array();
  for (const auto& r : e.reports) reports.push_back(to_json(r));
  ordered_json j{{"version", e.version}, {"command", e.command}, {"reports", reports}};
  if (!e.degrees.empty()) {
    ordered_json d = ordered_json::array();
    for (const auto& p : e.degrees) d.push_back(to_json(p));
    j["degrees"] = d;
  }
  if (!e.chis.empty()) {
    ordered_json c = ordered_json::array();
    for (const auto& p : e.chis) c.push_back(to_json(p));
    j["chis"] = c;
  }
  if (e.wall_time) j["wall_time"] = *e.wall_time;
  const VerdictSummary s = summarize(e);
  j["summary"] = {{"VERIFIED", s.verified},
                  {"CONFLICT", s.conflict},
                  {"UNSUPPORTED-SYMBOLIC", s.unsupported_symbolic},
                  {"UNSTABLE", s.unstable}};
  return j;
}

namespace {

std::string cell(const std::string& s, std::size_t width) {
  if (s.size() > width) return s.substr(0, width - 1) + "~";
  return s + std::string(width - s.size(), ' ');
}

std::string opt(const std::optional<long>& v) { return v ? std::to_string(*v) : "-"; }

std::string key_params(const FormulaReport& r) {
  std::string out;
  for (const char* key : {"entry", "relation", "c", "k", "K", "delta", "origin_shift"}) {
    auto it = r.parameters.find(key);
    if (it == r.parameters.end()) continue;
    out += (out.empty() ? "" : " ") + std::string(key) + "=" + it->second;
  }
  return out;
}

}  // namespace

std::string emit_report(const ReportEnvelope& e, ReportFormat format) {
  if (format == ReportFormat::json) return to_json(e).dump(2) + "\n";
  std::ostringstream out;
  out << "milnor " << e.version << "  " << e.command << "\n";
  if (!e.reports.empty()) {
    out << cell("FORMULA", 28) << cell("LHS", 6) << cell("RHS", 6) << cell("VERDICT", 22) << "PARAMETERS\n";
    for (const auto& r : e.reports)
      out << cell(to_string(r.formula_id), 28) << cell(opt(r.lhs), 6) << cell(opt(r.rhs), 6)
          << cell(to_string(r.verdict), 22) << key_params(r) << "\n";
  }
  if (!e.degrees.empty()) {
    out << cell("DEGREE", 28) << cell("VALUE", 12) << "METHOD\n";
    for (const auto& p : e.degrees)
      out << cell(p.label, 28) << cell(std::to_string(p.result.degree), 12) << to_string(p.result.method) << "\n";
  }
  if (!e.chis.empty()) {
    out << cell("CHI", 28) << cell("VALUE", 12) << "METHOD\n";
    for (const auto& p : e.chis)
      out << cell(p.label, 28) << cell(std::to_string(p.result.chi), 12) << p.result.method << "\n";
  }
  for (const auto& r : e.reports) {
    for (const auto& a : r.assumptions) out << "  assumption [" << to_string(r.formula_id) << "]: " << a << "\n";
    for (const auto& g : r.gates)
      if (!g.passed)
        out << "  failed gate [" << to_string(r.formula_id) << "]: " << g.name
            << (g.detail.empty() ? "" : " (" + g.detail + ")") << "\n";
  }
  const VerdictSummary s = summarize(e);
  if (!e.reports.empty())
    out << "summary: " << s.verified << " VERIFIED, " << s.conflict << " CONFLICT, " << s.unsupported_symbolic
        << " UNSUPPORTED-SYMBOLIC, " << s.unstable << " UNSTABLE\n";
  if (e.wall_time) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *e.wall_time);
    out << "wall time: " << buf << " s\n";
  }
  return out.str();
}

int exit_code(const ReportEnvelope& e, bool strict) {
  const VerdictSummary s = summarize(e);
  if (s.conflict > 0) return 2;
  if (strict && (s.unsupported_symbolic > 0 || s.unstable > 0)) return 3;
  return 0;
}

}  // namespace milnor
