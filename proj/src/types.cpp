#include "gatekit/types.hpp"

#include "gatekit/errors.hpp"

namespace gatekit {

const char* to_string(PacketKind v) {
  switch (v) {
    case PacketKind::common_ground: return "common_ground";
    case PacketKind::claim: return "claim";
    case PacketKind::evidence: return "evidence";
    case PacketKind::recovery: return "recovery";
    case PacketKind::procedure_pack: return "procedure_pack";
  }
  return "?";
}

const char* to_string(Tier v) {
  switch (v) {
    case Tier::light: return "light";
    case Tier::standard: return "standard";
    case Tier::deep: return "deep";
    case Tier::unknown: return "unknown";
  }
  return "?";
}

const char* to_string(VerifyState v) {
  switch (v) {
    case VerifyState::not_invoked: return "not_invoked";
    case VerifyState::pending: return "pending";
    case VerifyState::completed: return "completed";
  }
  return "?";
}

const char* to_string(ClaimedState v) {
  switch (v) {
    case ClaimedState::done: return "done";
    case ClaimedState::partial: return "partial";
    case ClaimedState::not_fixed: return "not_fixed";
  }
  return "?";
}

const char* to_string(EvidenceQuality v) {
  switch (v) {
    case EvidenceQuality::weak: return "weak";
    case EvidenceQuality::adequate: return "adequate";
    case EvidenceQuality::strong: return "strong";
  }
  return "?";
}

const char* to_string(SourceType v) {
  switch (v) {
    case SourceType::deterministic_check: return "deterministic_check";
    case SourceType::document: return "document";
    case SourceType::tool_output: return "tool_output";
    case SourceType::testimony: return "testimony";
  }
  return "?";
}

const char* to_string(ErrorClass v) {
  switch (v) {
    case ErrorClass::weak_evidence: return "weak_evidence";
    case ErrorClass::scope_drift: return "scope_drift";
    case ErrorClass::ownership_gap: return "ownership_gap";
    case ErrorClass::stale_ground: return "stale_ground";
    case ErrorClass::verification_failure: return "verification_failure";
    case ErrorClass::other: return "other";
  }
  return "?";
}

const char* to_string(RecoveryStatus v) {
  return v == RecoveryStatus::open ? "open" : "closed";
}

const char* to_string(RollbackProfile v) {
  return v == RollbackProfile::none ? "none" : "declared";
}

const char* to_string(MemoryClass v) {
  switch (v) {
    case MemoryClass::canonical: return "canonical";
    case MemoryClass::archive_only: return "archive_only";
    case MemoryClass::prompt_injectable: return "prompt_injectable";
  }
  return "?";
}

const char* to_string(FreshnessVerdict v) {
  switch (v) {
    case FreshnessVerdict::fresh: return "fresh";
    case FreshnessVerdict::stale_version: return "stale_version";
    case FreshnessVerdict::digest_mismatch: return "digest_mismatch";
  }
  return "?";
}

const char* to_string(Outcome v) {
  switch (v) {
    case Outcome::success: return "success";
    case Outcome::blocked: return "blocked";
    case Outcome::failed: return "failed";
    case Outcome::skipped: return "skipped";
  }
  return "?";
}

const char* to_string(AcceptanceStatus v) {
  return v == AcceptanceStatus::accepted ? "accepted" : "withheld";
}

const char* to_string(BlockedReasonClass v) {
  switch (v) {
    case BlockedReasonClass::none: return "none";
    case BlockedReasonClass::missing_ground_alignment: return "missing_ground_alignment";
    case BlockedReasonClass::missing_claim: return "missing_claim";
    case BlockedReasonClass::partial_state: return "partial_state";
    case BlockedReasonClass::verify_not_invoked: return "verify_not_invoked";
    case BlockedReasonClass::evidence_floor_failed: return "evidence_floor_failed";
    case BlockedReasonClass::owner_gap: return "owner_gap";
    case BlockedReasonClass::stale_ground: return "stale_ground";
    case BlockedReasonClass::open_blocker: return "open_blocker";
    case BlockedReasonClass::escalation_path_violation: return "escalation_path_violation";
    case BlockedReasonClass::untreated_advisory: return "untreated_advisory";
    case BlockedReasonClass::active_recovery: return "active_recovery";
    case BlockedReasonClass::veto: return "veto";
  }
  return "?";
}

const char* to_string(BranchState v) {
  switch (v) {
    case BranchState::in_progress: return "in_progress";
    case BranchState::claim_ready: return "claim_ready";
    case BranchState::verify_pending: return "verify_pending";
    case BranchState::verified_success: return "verified_success";
    case BranchState::blocked: return "blocked";
    case BranchState::failed: return "failed";
    case BranchState::recovered: return "recovered";
    case BranchState::rolled_back: return "rolled_back";
  }
  return "?";
}

const char* to_string(Origin v) {
  switch (v) {
    case Origin::production: return "production";
    case Origin::synthetic: return "synthetic";
    case Origin::session: return "session";
  }
  return "?";
}

const char* to_string(Severity v) {
  return v == Severity::info ? "info" : "serious";
}

const char* to_string(RollbackTrigger v) {
  switch (v) {
    case RollbackTrigger::high_risk_verification_failure: return "high_risk_verification_failure";
    case RollbackTrigger::challenge_confirmed_invalidity: return "challenge_confirmed_invalidity";
    case RollbackTrigger::weak_evidence_post_claim: return "weak_evidence_post_claim";
  }
  return "?";
}

const char* to_string(RollbackStatus v) {
  switch (v) {
    case RollbackStatus::pending_review: return "pending_review";
    case RollbackStatus::approved: return "approved";
    case RollbackStatus::denied: return "denied";
    case RollbackStatus::executed_success: return "executed_success";
    case RollbackStatus::executed_failed: return "executed_failed";
  }
  return "?";
}

const char* to_string(DenominatorPolicy v) {
  return v == DenominatorPolicy::known_outcome ? "known_outcome" : "all_row";
}

const char* to_string(PgvPrediction v) {
  return v == PgvPrediction::safe_to_proceed ? "safe_to_proceed" : "blocked_risky";
}

namespace {

[[noreturn]] void bad_label(const char* what, const std::string& s) {
  fail(Errc::invalid_input, std::string("unrecognized ") + what + " label '" + s + "'");
}

}  // namespace

PacketKind packet_kind_from(const std::string& s) {
  if (s == "common_ground") return PacketKind::common_ground;
  if (s == "claim") return PacketKind::claim;
  if (s == "evidence") return PacketKind::evidence;
  if (s == "recovery") return PacketKind::recovery;
  if (s == "procedure_pack") return PacketKind::procedure_pack;
  bad_label("packet kind", s);
}

Tier tier_from(const std::string& s) {
  if (s == "light") return Tier::light;
  if (s == "standard") return Tier::standard;
  if (s == "deep") return Tier::deep;
  if (s == "unknown") return Tier::unknown;
  bad_label("tier", s);
}

VerifyState verify_state_from(const std::string& s) {
  if (s == "not_invoked") return VerifyState::not_invoked;
  if (s == "pending") return VerifyState::pending;
  if (s == "completed") return VerifyState::completed;
  bad_label("verify state", s);
}

ClaimedState claimed_state_from(const std::string& s) {
  if (s == "done") return ClaimedState::done;
  if (s == "partial") return ClaimedState::partial;
  if (s == "not_fixed") return ClaimedState::not_fixed;
  bad_label("claimed state", s);
}

EvidenceQuality evidence_quality_from(const std::string& s) {
  if (s == "weak") return EvidenceQuality::weak;
  if (s == "adequate") return EvidenceQuality::adequate;
  if (s == "strong") return EvidenceQuality::strong;
  bad_label("evidence quality", s);
}

SourceType source_type_from(const std::string& s) {
  if (s == "deterministic_check") return SourceType::deterministic_check;
  if (s == "document") return SourceType::document;
  if (s == "tool_output") return SourceType::tool_output;
  if (s == "testimony") return SourceType::testimony;
  bad_label("source type", s);
}

ErrorClass error_class_from(const std::string& s) {
  if (s == "weak_evidence") return ErrorClass::weak_evidence;
  if (s == "scope_drift") return ErrorClass::scope_drift;
  if (s == "ownership_gap") return ErrorClass::ownership_gap;
  if (s == "stale_ground") return ErrorClass::stale_ground;
  if (s == "verification_failure") return ErrorClass::verification_failure;
  if (s == "other") return ErrorClass::other;
  bad_label("error class", s);
}

RecoveryStatus recovery_status_from(const std::string& s) {
  if (s == "open") return RecoveryStatus::open;
  if (s == "closed") return RecoveryStatus::closed;
  bad_label("recovery status", s);
}

RollbackProfile rollback_profile_from(const std::string& s) {
  if (s == "none") return RollbackProfile::none;
  if (s == "declared") return RollbackProfile::declared;
  bad_label("rollback profile", s);
}

FreshnessVerdict freshness_from(const std::string& s) {
  if (s == "fresh") return FreshnessVerdict::fresh;
  if (s == "stale_version") return FreshnessVerdict::stale_version;
  if (s == "digest_mismatch") return FreshnessVerdict::digest_mismatch;
  bad_label("freshness", s);
}

Outcome outcome_from(const std::string& s) {
  if (s == "success") return Outcome::success;
  if (s == "blocked") return Outcome::blocked;
  if (s == "failed") return Outcome::failed;
  if (s == "skipped") return Outcome::skipped;
  bad_label("outcome", s);
}

AcceptanceStatus acceptance_status_from(const std::string& s) {
  if (s == "accepted") return AcceptanceStatus::accepted;
  if (s == "withheld") return AcceptanceStatus::withheld;
  bad_label("acceptance status", s);
}

BlockedReasonClass blocked_reason_class_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(BlockedReasonClass::veto); ++i) {
    auto v = static_cast<BlockedReasonClass>(i);
    if (s == to_string(v)) return v;
  }
  bad_label("blocked reason class", s);
}

BranchState branch_state_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(BranchState::rolled_back); ++i) {
    auto v = static_cast<BranchState>(i);
    if (s == to_string(v)) return v;
  }
  bad_label("branch state", s);
}

Origin origin_from(const std::string& s) {
  if (s == "production") return Origin::production;
  if (s == "synthetic") return Origin::synthetic;
  if (s == "session") return Origin::session;
  bad_label("origin", s);
}

Severity severity_from(const std::string& s) {
  if (s == "info") return Severity::info;
  if (s == "serious") return Severity::serious;
  bad_label("severity", s);
}

RollbackTrigger rollback_trigger_from(const std::string& s) {
  if (s == "high_risk_verification_failure") return RollbackTrigger::high_risk_verification_failure;
  if (s == "challenge_confirmed_invalidity") return RollbackTrigger::challenge_confirmed_invalidity;
  if (s == "weak_evidence_post_claim") return RollbackTrigger::weak_evidence_post_claim;
  fail(Errc::unknown_trigger, "unrecognized rollback trigger '" + s + "'");
}

RollbackStatus rollback_status_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(RollbackStatus::executed_failed); ++i) {
    auto v = static_cast<RollbackStatus>(i);
    if (s == to_string(v)) return v;
  }
  bad_label("rollback status", s);
}

PgvPrediction pgv_prediction_from(const std::string& s) {
  if (s == "safe_to_proceed") return PgvPrediction::safe_to_proceed;
  if (s == "blocked_risky") return PgvPrediction::blocked_risky;
  bad_label("pgv prediction", s);
}

}  // namespace gatekit
