#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatekit/accounting.hpp"
#include "gatekit/gate.hpp"

namespace gatekit {

// One advisory prediction. Advisory means exactly that: records live in their
// own shadow stream and never touch ledger outcome fields or the gate.
struct PgvRecord {
  std::string sample_id;
  PgvPrediction prediction = PgvPrediction::blocked_risky;
  std::vector<std::string> rule_hits;
};

namespace pgv_rule {
inline constexpr const char* ownership_unpopulated = "ownership_unpopulated";
inline constexpr const char* claim_absent = "claim_absent";
inline constexpr const char* evidence_absent = "evidence_absent";
inline constexpr const char* partial_as_done = "partial_as_done";
inline constexpr const char* unclear_without_diagnostic = "unclear_without_diagnostic";
inline constexpr const char* stale_ground = "stale_ground";
inline constexpr const char* active_recovery = "active_recovery";
}  // namespace pgv_rule

// Audits the admission preconditions on a context snapshot. Conservative:
// any rule hit yields blocked_risky. Pure — no ledger writes, no gating.
PgvRecord pgv_check(const VerifyContext& ctx, std::string sample_id);

struct PgvDenominatorMap {
  std::uint64_t n_all = 0;
  std::uint64_t n_final = 0;
  std::uint64_t n_safe_pred = 0;
  std::uint64_t n_blocked_pred = 0;
};

// true = the sample's finalized outcome was genuinely completion-worthy.
using FinalizedOutcomes = std::map<std::string, bool>;

struct PgvEvaluation {
  PgvDenominatorMap denominators;
  Share rule_agreement;     // over n_final, 2 d.p.
  Share false_success;      // finalized-bad safe predictions over n_safe_pred, 1 d.p.
  Share blocked_precision;  // finalized-bad blocked predictions over n_blocked_pred, 2 d.p.
  std::uint64_t recall_caught = 0;  // raw counts only; never rendered as a rate
  std::uint64_t recall_actual = 0;
  bool recall_non_estimative = true;
};

// Scores predictions against the comparable finalized subset. Each ratio owns
// its denominator. Refuses duplicated samples (the prediction-side partition
// would no longer cover the pool) and finalized rows outside the pool.
PgvEvaluation shadow_evaluate(const std::vector<PgvRecord>& predictions,
                              const FinalizedOutcomes& finalized);

nlohmann::ordered_json pgv_record_json(const PgvRecord& r);
PgvRecord pgv_record_from_json(const nlohmann::json& j);
void write_pgv_records(const std::filesystem::path& file, const std::vector<PgvRecord>& records);
std::vector<PgvRecord> read_pgv_records(const std::filesystem::path& file);

void write_finalized(const std::filesystem::path& file, const FinalizedOutcomes& finalized);
FinalizedOutcomes read_finalized(const std::filesystem::path& file);

nlohmann::ordered_json pgv_evaluation_json(const PgvEvaluation& e);

}  // namespace gatekit
