#include "gatekit/gate.hpp"

#include "gatekit/errors.hpp"
#include "gatekit/lanes.hpp"
#include "gatekit/lifecycle.hpp"

namespace gatekit {

PredicateVector evaluate_predicates(const VerifyContext& c, const GatePolicy& p) {
  PredicateVector v;
  const bool ground_ok = c.ground.has_value();
  const bool header_ok = c.header.has_value();

  // 1: current shared ground with objective and success criteria.
  v.phi[0] = ground_ok && !c.ground->superseded && !c.ground->objective.empty() &&
             !c.ground->success_criteria.empty();
  // 2: an explicit claim of completion.
  v.phi[1] = c.claim.has_value() && c.claim->claimed_state == ClaimedState::done;
  // 3: verification was actually invoked for this branch.
  v.phi[2] = header_ok && c.header->verify_state != VerifyState::not_invoked;
  // 4: evidence attached, nothing required missing, quality at or above floor.
  v.phi[3] = c.evidence.has_value() && c.evidence->missing_required.empty() &&
             quality_rank(c.evidence->quality) >= quality_rank(p.evidence_floor);
  // 5: named owner and accountable on header and claim, mutually consistent.
  v.phi[4] = header_ok && c.claim.has_value() && c.header->ownership_complete() &&
             !c.claim->owner.empty() && !c.claim->accountable.empty() &&
             c.header->owner == c.claim->owner && c.header->accountable == c.claim->accountable;
  // 6: claim built against the current ground version and digest.
  v.phi[5] = c.freshness == FreshnessVerdict::fresh;
  // 7: no open blocker on the branch (claim or ground question lists).
  v.phi[6] = c.claim.has_value() && ground_ok && c.claim->unresolved_questions.empty() &&
             c.ground->open_questions.empty();
  // 8: deep-tier branches saw a diagnostic review before any board step.
  v.phi[7] = header_ok && (!(c.header->tier == Tier::deep && p.deep_requires_diagnostic_first) ||
                           !c.escalation_board_seen || c.diagnostic_review_seen);
  // 9: every serious advisory treated, or dismissed under recorded policy.
  if (header_ok) {
    v.phi[8] = true;
    for (const auto& a : c.header->advisory_signals)
      if (a.severity == Severity::serious && !a.treated && !a.dismissed_under_policy)
        v.phi[8] = false;
  } else {
    v.phi[8] = false;
  }
  // 10: no recovery cycle still open.
  v.phi[9] = !c.recovery_open;
  // 11: no standing veto.
  v.phi[10] = header_ok && !c.header->veto_active;
  return v;
}

BlockedReasonClass reason_for_predicate(int index, bool claim_present) {
  switch (index) {
    case 0: return BlockedReasonClass::none;
    case 1: return BlockedReasonClass::missing_ground_alignment;
    case 2:
      return claim_present ? BlockedReasonClass::partial_state : BlockedReasonClass::missing_claim;
    case 3: return BlockedReasonClass::verify_not_invoked;
    case 4: return BlockedReasonClass::evidence_floor_failed;
    case 5: return BlockedReasonClass::owner_gap;
    case 6: return BlockedReasonClass::stale_ground;
    case 7: return BlockedReasonClass::open_blocker;
    case 8: return BlockedReasonClass::escalation_path_violation;
    case 9: return BlockedReasonClass::untreated_advisory;
    case 10: return BlockedReasonClass::active_recovery;
    case 11: return BlockedReasonClass::veto;
  }
  fail(Errc::invalid_input, "predicate index " + std::to_string(index));
}

ErrorClass error_class_for_predicate(int index) {
  switch (index) {
    case 1: return ErrorClass::scope_drift;
    case 3: return ErrorClass::verification_failure;
    case 4: return ErrorClass::weak_evidence;
    case 5: return ErrorClass::ownership_gap;
    case 6: return ErrorClass::stale_ground;
    default: return ErrorClass::other;
  }
}

AcceptanceStatus project_acceptance(Outcome outcome) {
  return outcome == Outcome::success ? AcceptanceStatus::accepted : AcceptanceStatus::withheld;
}

VerifyDecision decide(const PredicateVector& v, const SkipFlag& skip, bool recoverable,
                      bool branch_classified, const VerifyContext* ctx) {
  if (skip.sigma && branch_classified)
    fail(Errc::inconsistent_branch,
         "skip raised after branch recoverability was already committed");
  VerifyDecision d;
  d.predicate_vector = v;
  if (v.all_true()) {
    d.outcome = Outcome::success;
    d.blocking_predicate = 0;
    d.blocked_reason_class = BlockedReasonClass::none;
  } else {
    d.blocking_predicate = v.lowest_failed();
    const bool claim_present = ctx ? ctx->claim.has_value() : false;
    d.blocked_reason_class = reason_for_predicate(d.blocking_predicate, claim_present);
    if (skip.sigma)
      d.outcome = Outcome::skipped;
    else
      d.outcome = recoverable ? Outcome::blocked : Outcome::failed;
    if (ctx) {
      if (d.blocking_predicate == 2 && !ctx->claim) d.missing_packet_type = PacketKind::claim;
      if (d.blocking_predicate == 4 && !ctx->evidence) d.missing_packet_type = PacketKind::evidence;
    }
  }
  d.acceptance_status = project_acceptance(d.outcome);
  return d;
}

VerifyContext build_context(const TaskState& task, const PacketStore& store,
                            const Ledger& ledger, const WorkProductStore& work) {
  VerifyContext ctx;
  ctx.claim = store.latest_claim(task.task_id);
  ctx.ground = store.current_ground(task.task_id);
  ctx.evidence = store.latest_evidence(task.task_id);
  ctx.header = task.header;
  ctx.recovery_open = store.open_recovery(task.task_id).has_value();
  // Escalation ordering: a diagnostic review only counts for the deep-tier
  // path check when it landed before the first board event.
  std::uint64_t first_board = 0, first_diag = 0;
  for (const auto& e : ledger.all_events()) {
    if (e.task_id != task.task_id) continue;
    if (e.event_type == ev::escalation_board && first_board == 0) first_board = e.seq;
    if (e.event_type == ev::diagnostic_review && first_diag == 0) first_diag = e.seq;
  }
  ctx.escalation_board_seen = first_board != 0;
  ctx.diagnostic_review_seen =
      first_diag != 0 && (first_board == 0 || first_diag < first_board);
  if (ctx.claim) {
    try {
      ctx.freshness = store.check_freshness(*ctx.claim);
    } catch (const Error&) {
      ctx.freshness = FreshnessVerdict::stale_version;  // dangling ref reads as stale
    }
  }
  ctx.work_product_digest = work.digest(task.task_id);
  return ctx;
}

VerifyDecision verify_claim(const TaskState& task, const PacketStore& store, Ledger& ledger,
                            const WorkProductStore& work, const PolicyConfig& policy,
                            EventScribe& scribe, const VerifyMode& mode) {
  if (!ledger.appendable())
    fail(Errc::ledger_unavailable, "verification refused without appendable ledger");

  VerifyContext ctx = build_context(task, store, ledger, work);
  PredicateVector v = evaluate_predicates(ctx, policy.gate);

  const int lowest = v.all_true() ? 0 : v.lowest_failed();
  bool recoverable = true;
  if (lowest != 0) {
    recoverable = mode.recoverable_override.value_or(policy.recovery.recoverable(
        error_class_for_predicate(lowest), task.risk.tier, task.risk.rollback_profile,
        store.recovery_cycles(task.task_id)));
  }
  bool branch_classified = task.branch == BranchState::blocked || task.branch == BranchState::failed;
  for (const auto& h : task.history)
    if (h.to == BranchState::blocked || h.to == BranchState::failed) branch_classified = true;

  VerifyDecision d = decide(v, SkipFlag{mode.sigma, mode.skip_reason}, recoverable,
                            branch_classified, &ctx);

  Event started = scribe.base(task, ev::verify_started, lanes::verifier);
  started.stage_to = to_string(BranchState::verify_pending);
  if (ctx.claim) started.claim_packet_id = ctx.claim->id.value;
  if (ctx.evidence) started.evidence_packet_id = ctx.evidence->id.value;
  scribe.emit(ledger, started);

  Event completed = scribe.base(task, ev::verify_completed, lanes::verifier);
  completed.stage_from = to_string(BranchState::verify_pending);
  auto landing = next_branch(BranchState::verify_pending, ev::verify_completed, d.outcome);
  completed.stage_to = to_string(landing.value_or(BranchState::verify_pending));
  if (ctx.claim) completed.claim_packet_id = ctx.claim->id.value;
  if (ctx.evidence) completed.evidence_packet_id = ctx.evidence->id.value;
  completed.outcome = d.outcome;
  completed.acceptance_status = d.acceptance_status;
  completed.blocking_predicate = d.blocking_predicate;
  if (d.outcome != Outcome::success) {
    completed.blocked_reason_class = d.blocked_reason_class;
    completed.missing_packet_type = d.missing_packet_type;
    switch (d.outcome) {
      case Outcome::blocked: completed.blocked_reason = "verify_blocked"; break;
      case Outcome::failed: completed.blocked_reason = "verify_failed"; break;
      case Outcome::skipped:
        completed.blocked_reason = mode.skip_reason.empty() ? "verify_skipped" : mode.skip_reason;
        break;
      default: break;
    }
  }
  scribe.emit(ledger, completed);
  return d;
}

}  // namespace gatekit
