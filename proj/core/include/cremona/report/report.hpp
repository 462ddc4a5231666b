#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cremona/links/catalog.hpp"
#include "cremona/prover/contrast.hpp"
#include "cremona/prover/prover.hpp"

namespace cremona {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Json, Markdown };
enum class Verbosity { Summary, FullTree };

struct ReportConfig {
  ReportFormat format = ReportFormat::Json;
  std::uint64_t seed = 42;
  Verbosity verbosity = Verbosity::Summary;
};

/// One expected fact and what the computation produced. `origin` is
/// "reference" for values quoted from the literature, "computed" for values
/// fixed by an independent computation and "control" for checks that must fail.
struct CheckLine {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
  std::string origin = "reference";
};

struct VerifyReport {
  std::string id;
  std::string title;
  std::vector<CheckLine> checks;
  nlohmann::json data = nlohmann::json::object();

  bool pass() const;
  /// Name and detail of the first failing check, empty when all pass.
  std::string first_failure() const;
};

struct VerificationInfo {
  std::string id;
  std::string alias;
  std::string title;
};

/// Registered checks, in a fixed order.
const std::vector<VerificationInfo>& verifications();
/// Accepts an id or its alias; nullopt for unknown names.
std::optional<std::string> resolve_verification(const std::string& name);

/// Throws PreconditionViolation for an id that resolve_verification rejects.
VerifyReport run_verification(const std::string& id, const LinkTable& table, const ReportConfig& config);

struct ProveReport {
  Verdict verdict;
  ContrastReport contrast;
  bool golden_match = false;
  /// Reasons the run fails; empty on success.
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

ProveReport run_prove(const LinkTable& table, const ReportConfig& config, const nlohmann::json& golden);

nlohmann::json report_json(const VerifyReport& r, const ReportConfig& config);
nlohmann::json report_json(const ProveReport& r, const ReportConfig& config);
std::string render_markdown(const VerifyReport& r, const ReportConfig& config);
std::string render_markdown(const ProveReport& r, const ReportConfig& config);

}  // namespace cremona
