#pragma once

#include "milnor/chi_oracle.hpp"
#include "milnor/elk.hpp"
#include "milnor/formulas.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace milnor {

inline constexpr const char* kToolVersion = "0.3.0";

// A bare degree or chi value (local-degree, oracle ... commands).
struct DegreePayload {
  std::string label;
  std::vector<std::string> inputs;
  DegreeResult result;
};

struct ChiPayload {
  std::string label;
  std::vector<std::string> inputs;
  ChiResult result;
};

struct ReportEnvelope {
  std::string version = kToolVersion;
  std::string command;
  std::vector<FormulaReport> reports;
  std::vector<DegreePayload> degrees;
  std::vector<ChiPayload> chis;
  // Seconds; left out of the output when empty.
  std::optional<double> wall_time;
};

enum class ReportFormat { text, json };

struct VerdictSummary {
  std::size_t verified = 0, conflict = 0, unsupported_symbolic = 0, unstable = 0;
};

VerdictSummary summarize(const ReportEnvelope& envelope);

nlohmann::ordered_json to_json(const FormulaReport& report);
nlohmann::ordered_json to_json(const DegreePayload& payload);
nlohmann::ordered_json to_json(const ChiPayload& payload);
nlohmann::ordered_json to_json(const ReportEnvelope& envelope);

std::string emit_report(const ReportEnvelope& envelope, ReportFormat format);

// 0, 2 on any CONFLICT, 3 on UNSUPPORTED/UNSTABLE when strict.
int exit_code(const ReportEnvelope& envelope, bool strict);

}  // namespace milnor
