#pragma once

#include <cstdint>
#include <string>

namespace gatekit {

enum class PacketKind { common_ground, claim, evidence, recovery, procedure_pack };

// Tiers carry an explicit unknown bucket: historical rows may lack tier
// attribution and accounting must report them separately, never coerce them.
enum class Tier { light, standard, deep, unknown };

enum class VerifyState { not_invoked, pending, completed };

enum class ClaimedState { done, partial, not_fixed };

enum class EvidenceQuality { weak, adequate, strong };

enum class SourceType { deterministic_check, document, tool_output, testimony };

enum class ErrorClass {
  weak_evidence,
  scope_drift,
  ownership_gap,
  stale_ground,
  verification_failure,
  other,
};

enum class RecoveryStatus { open, closed };

enum class RollbackProfile { none, declared };

enum class MemoryClass { canonical, archive_only, prompt_injectable };

enum class FreshnessVerdict { fresh, stale_version, digest_mismatch };

enum class Outcome { success, blocked, failed, skipped };

enum class AcceptanceStatus { accepted, withheld };

enum class BlockedReasonClass {
  none,
  missing_ground_alignment,
  missing_claim,
  partial_state,
  verify_not_invoked,
  evidence_floor_failed,
  owner_gap,
  stale_ground,
  open_blocker,
  escalation_path_violation,
  untreated_advisory,
  active_recovery,
  veto,
};

enum class BranchState {
  in_progress,
  claim_ready,
  verify_pending,
  verified_success,
  blocked,
  failed,
  recovered,
  rolled_back,
};

enum class Origin { production, synthetic, session };

enum class Severity { info, serious };

enum class RollbackTrigger {
  high_risk_verification_failure,
  challenge_confirmed_invalidity,
  weak_evidence_post_claim,
};

enum class RollbackStatus {
  pending_review,
  approved,
  denied,
  executed_success,
  executed_failed,
};

enum class DenominatorPolicy { known_outcome, all_row };

enum class PgvPrediction { safe_to_proceed, blocked_risky };

const char* to_string(PacketKind v);
const char* to_string(Tier v);
const char* to_string(VerifyState v);
const char* to_string(ClaimedState v);
const char* to_string(EvidenceQuality v);
const char* to_string(SourceType v);
const char* to_string(ErrorClass v);
const char* to_string(RecoveryStatus v);
const char* to_string(RollbackProfile v);
const char* to_string(MemoryClass v);
const char* to_string(FreshnessVerdict v);
const char* to_string(Outcome v);
const char* to_string(AcceptanceStatus v);
const char* to_string(BlockedReasonClass v);
const char* to_string(BranchState v);
const char* to_string(Origin v);
const char* to_string(Severity v);
const char* to_string(RollbackTrigger v);
const char* to_string(RollbackStatus v);
const char* to_string(DenominatorPolicy v);
const char* to_string(PgvPrediction v);

// Parsers throw Errc::invalid_input on unrecognized labels.
PacketKind packet_kind_from(const std::string& s);
Tier tier_from(const std::string& s);
VerifyState verify_state_from(const std::string& s);
ClaimedState claimed_state_from(const std::string& s);
EvidenceQuality evidence_quality_from(const std::string& s);
SourceType source_type_from(const std::string& s);
ErrorClass error_class_from(const std::string& s);
RecoveryStatus recovery_status_from(const std::string& s);
RollbackProfile rollback_profile_from(const std::string& s);
FreshnessVerdict freshness_from(const std::string& s);
Outcome outcome_from(const std::string& s);
AcceptanceStatus acceptance_status_from(const std::string& s);
BlockedReasonClass blocked_reason_class_from(const std::string& s);
BranchState branch_state_from(const std::string& s);
Origin origin_from(const std::string& s);
Severity severity_from(const std::string& s);
RollbackTrigger rollback_trigger_from(const std::string& s);
RollbackStatus rollback_status_from(const std::string& s);
PgvPrediction pgv_prediction_from(const std::string& s);

// Evidence quality is ordered: weak < adequate < strong.
inline int quality_rank(EvidenceQuality q) { return static_cast<int>(q); }

}  // namespace gatekit
