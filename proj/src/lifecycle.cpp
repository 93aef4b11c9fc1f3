#include "gatekit/lifecycle.hpp"

#include <sstream>

#include "gatekit/errors.hpp"
#include "gatekit/lanes.hpp"

namespace gatekit {

const std::vector<LegalTransition>& legal_transitions() {
  using B = BranchState;
  static const std::vector<LegalTransition> table = {
      // in_progress: pre-claim work, bookkeeping self-loops, manual stops.
      {B::in_progress, ev::claim_packet_created, {}, B::claim_ready},
      {B::in_progress, ev::ground_refreshed, {}, B::in_progress},
      {B::in_progress, ev::diagnostic_review, {}, B::in_progress},
      {B::in_progress, ev::escalation_board, {}, B::in_progress},
      {B::in_progress, ev::verify_started, {}, B::verify_pending},
      {B::in_progress, ev::task_blocked, {}, B::blocked},
      {B::in_progress, ev::task_failed, {}, B::failed},
      // claim_ready: evidence attaches after the claim, then verify opens.
      {B::claim_ready, ev::evidence_packet_created, {}, B::claim_ready},
      {B::claim_ready, ev::ground_refreshed, {}, B::claim_ready},
      {B::claim_ready, ev::diagnostic_review, {}, B::claim_ready},
      {B::claim_ready, ev::escalation_board, {}, B::claim_ready},
      {B::claim_ready, ev::verify_started, {}, B::verify_pending},
      {B::claim_ready, ev::task_blocked, {}, B::blocked},
      {B::claim_ready, ev::task_failed, {}, B::failed},
      // verify_pending resolves only through a completed verification.
      {B::verify_pending, ev::verify_completed, Outcome::success, B::verified_success},
      {B::verify_pending, ev::verify_completed, Outcome::blocked, B::blocked},
      {B::verify_pending, ev::verify_completed, Outcome::failed, B::failed},
      {B::verify_pending, ev::verify_completed, Outcome::skipped, B::claim_ready},
      // verified_success is terminal; public completion may restate it.
      {B::verified_success, ev::task_completed, {}, B::verified_success},
      // blocked re-enters verification only through a recovery cycle.
      {B::blocked, ev::recovery_packet_created, {}, B::recovered},
      {B::blocked, ev::rollback_enqueued, {}, B::blocked},
      {B::blocked, ev::rollback_approved, {}, B::blocked},
      {B::blocked, ev::rollback_denied, {}, B::blocked},
      {B::blocked, ev::rollback_executed, {}, B::rolled_back},
      {B::blocked, ev::rollback_failed, {}, B::blocked},
      // failed supports rollback review but no direct re-verification.
      {B::failed, ev::rollback_enqueued, {}, B::failed},
      {B::failed, ev::rollback_approved, {}, B::failed},
      {B::failed, ev::rollback_denied, {}, B::failed},
      {B::failed, ev::rollback_executed, {}, B::rolled_back},
      {B::failed, ev::rollback_failed, {}, B::failed},
      // recovered: transient repair window before the resuming verify.
      {B::recovered, ev::evidence_packet_created, {}, B::recovered},
      {B::recovered, ev::ground_refreshed, {}, B::recovered},
      {B::recovered, ev::recovery_closed, {}, B::recovered},
      {B::recovered, ev::diagnostic_review, {}, B::recovered},
      {B::recovered, ev::escalation_board, {}, B::recovered},
      {B::recovered, ev::claim_packet_created, {}, B::claim_ready},
      {B::recovered, ev::verify_started, {}, B::verify_pending},
      // rolled_back never resumes; a fresh claim branch may start over.
      {B::rolled_back, ev::claim_packet_created, {}, B::claim_ready},
  };
  return table;
}

std::optional<BranchState> next_branch(BranchState from, const std::string& event_type,
                                       const std::optional<Outcome>& outcome) {
  for (const auto& t : legal_transitions()) {
    if (t.from != from || t.event_type != event_type) continue;
    if (t.outcome && (!outcome || *t.outcome != *outcome)) continue;
    if (!t.outcome && t.event_type == ev::verify_completed) continue;
    return t.to;
  }
  return std::nullopt;
}

std::string transition_table_text() {
  std::ostringstream out;
  out << "from\tevent\toutcome\tto\n";
  for (const auto& t : legal_transitions())
    out << to_string(t.from) << '\t' << t.event_type << '\t'
        << (t.outcome ? to_string(*t.outcome) : "-") << '\t' << to_string(t.to) << '\n';
  return out.str();
}

TaskState transition(TaskState state, const Event& e) {
  auto to = next_branch(state.branch, e.event_type, e.outcome);
  if (!to) {
    std::string trigger = e.event_type;
    if (e.outcome) trigger += std::string(":") + to_string(*e.outcome);
    fail(Errc::illegal_transition,
         "'" + trigger + "' from state " + to_string(state.branch) + " (task " + state.task_id + ")");
  }
  std::string trigger = e.event_type;
  if (e.outcome) trigger += std::string(":") + to_string(*e.outcome);
  state.history.push_back({state.branch, *to, trigger, e.seq});
  state.branch = *to;
  return state;
}

void apply_verify_pair(TaskState& task, const VerifyDecision& decision,
                       std::uint64_t started_seq, std::uint64_t completed_seq) {
  Event started;
  started.event_type = ev::verify_started;
  started.seq = started_seq;
  task = transition(task, started);
  Event completed;
  completed.event_type = ev::verify_completed;
  completed.outcome = decision.outcome;
  completed.seq = completed_seq;
  task = transition(task, completed);
}

bool has_high_risk_hint(const TaskRequest& req) {
  for (const auto& h : req.risk_hints)
    if (h.rfind("high:", 0) == 0) return true;
  return false;
}

Tier select_tier(const TaskRequest& req) {
  if (has_high_risk_hint(req) || req.rollback_needed) return Tier::deep;
  if (req.risk_hints.empty() && req.single_step) return Tier::light;
  return Tier::standard;
}

PublicReport surface_outcome(const TaskState& task, const VerifyDecision& decision,
                             const PacketStore& store) {
  PublicReport r;
  r.acceptance_status = decision.acceptance_status;
  r.outcome = decision.outcome;
  if (decision.acceptance_status == AcceptanceStatus::accepted) {
    r.owner_of_next_action = task.owner;
    return r;
  }
  if (auto rec = store.open_recovery(task.task_id); rec && !rec->recovery_owner.empty())
    r.owner_of_next_action = rec->recovery_owner;
  else
    r.owner_of_next_action = task.owner;
  if (r.owner_of_next_action.empty())
    fail(Errc::ownerless_next_action, "withheld report for task " + task.task_id);
  return r;
}

void escalate(TaskState& task, Ledger& ledger, EventScribe& scribe, bool board_first) {
  if (board_first) {
    // The board convened anyway: record it, then refuse. The recorded event
    // leaves the path violation visible to the next verification pass.
    Event board = scribe.base(task, ev::escalation_board, lanes::board);
    board.seq = scribe.emit(ledger, board);
    task = transition(task, board);
    fail(Errc::board_before_diagnostic, "escalation for task " + task.task_id);
  }
  Event diag = scribe.base(task, ev::diagnostic_review, lanes::diagnostic);
  diag.seq = scribe.emit(ledger, diag);
  task = transition(task, diag);
  Event board = scribe.base(task, ev::escalation_board, lanes::board);
  board.seq = scribe.emit(ledger, board);
  task = transition(task, board);
}

std::vector<Event> public_trace(const std::vector<Event>& session_events) {
  static const std::vector<std::string> visible = {
      ev::task_created,      ev::claim_packet_created, ev::verify_completed,
      ev::recovery_packet_created, ev::task_completed, ev::task_blocked,
      ev::task_failed,       ev::rollback_executed,    ev::rollback_failed,
  };
  std::vector<Event> out;
  for (const auto& e : session_events)
    for (const auto& t : visible)
      if (e.event_type == t) {
        out.push_back(e);
        break;
      }
  return out;
}

}  // namespace gatekit
