#pragma once

#include <array>
#include <optional>
#include <string>

#include "gatekit/ledger.hpp"
#include "gatekit/packet_store.hpp"
#include "gatekit/policy.hpp"
#include "gatekit/scribe.hpp"
#include "gatekit/task_state.hpp"

namespace gatekit {

// The eleven admission predicates, index 0 holding predicate 1. Acceptance is
// their conjunction; nothing else can admit a claim.
struct PredicateVector {
  std::array<bool, 11> phi{};

  bool all_true() const {
    for (bool b : phi)
      if (!b) return false;
    return true;
  }
  // 1-based index of the first failing predicate; 0 when none fail.
  int lowest_failed() const {
    for (int i = 0; i < 11; ++i)
      if (!phi[i]) return i + 1;
    return 0;
  }
};

// Immutable verification snapshot. Absent pieces stay absent — evaluation is
// total and missing inputs read as failing predicates, never as errors.
struct VerifyContext {
  std::optional<ClaimPacket> claim;
  std::optional<CommonGroundPacket> ground;
  std::optional<EvidencePacket> evidence;
  std::optional<ControlHeader> header;
  bool recovery_open = false;
  bool diagnostic_review_seen = false;
  bool escalation_board_seen = false;
  FreshnessVerdict freshness = FreshnessVerdict::stale_version;
  std::string work_product_digest;
};

// Report-boundary non-release marker. sigma may be raised only while the
// branch is still unclassified; decide() enforces the ordering.
struct SkipFlag {
  bool sigma = false;
  std::string reason;
};

struct VerifyDecision {
  Outcome outcome = Outcome::failed;
  AcceptanceStatus acceptance_status = AcceptanceStatus::withheld;
  PredicateVector predicate_vector;
  BlockedReasonClass blocked_reason_class = BlockedReasonClass::none;
  int blocking_predicate = 0;  // lowest failing index, 0 on success
  std::optional<PacketKind> missing_packet_type;
};

struct VerifyMode {
  bool sigma = false;
  std::string skip_reason;
  // Explicit branch classification supplied by the caller (e.g. drills that
  // declare the branch unrecoverable in scope). Unset: policy mapping applies.
  std::optional<bool> recoverable_override;
};

PredicateVector evaluate_predicates(const VerifyContext& ctx, const GatePolicy& policy);

// Outcome mapping: success iff all predicates hold; otherwise sigma selects
// skipped, then branch recoverability selects blocked vs failed. Raising sigma
// on an already classified branch is refused.
VerifyDecision decide(const PredicateVector& v, const SkipFlag& skip, bool recoverable,
                      bool branch_classified = false, const VerifyContext* ctx = nullptr);

AcceptanceStatus project_acceptance(Outcome outcome);

// Reason class for a 1-based predicate index (0 -> none). The claim-presence
// distinction picks missing_claim vs partial_state for predicate 2.
BlockedReasonClass reason_for_predicate(int index, bool claim_present);

// Error class used for recoverability mapping of a failing predicate.
ErrorClass error_class_for_predicate(int index);

VerifyContext build_context(const TaskState& task, const PacketStore& store,
                            const Ledger& ledger, const WorkProductStore& work);

// Full verification pass: snapshot, evaluate, decide, emit verify_started and
// verify_completed. The store and work products are read-only here — the one
// permitted write is the serialized ledger append, and an unappendable ledger
// refuses the whole operation up front.
VerifyDecision verify_claim(const TaskState& task, const PacketStore& store, Ledger& ledger,
                            const WorkProductStore& work, const PolicyConfig& policy,
                            EventScribe& scribe, const VerifyMode& mode = {});

}  // namespace gatekit
