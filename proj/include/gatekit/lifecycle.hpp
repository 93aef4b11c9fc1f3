#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatekit/gate.hpp"
#include "gatekit/ledger.hpp"
#include "gatekit/packet_store.hpp"
#include "gatekit/scribe.hpp"
#include "gatekit/task_state.hpp"

namespace gatekit {

struct LegalTransition {
  BranchState from;
  std::string event_type;
  std::optional<Outcome> outcome;  // verify_completed edges key on outcome
  BranchState to;
};

// The complete branch-state machine. Everything not listed is illegal.
const std::vector<LegalTransition>& legal_transitions();

std::optional<BranchState> next_branch(BranchState from, const std::string& event_type,
                                       const std::optional<Outcome>& outcome);

// Tab-separated export (from, event, outcome-or-dash, to) for test tooling.
std::string transition_table_text();

// Applies one event to the branch, records the hop, refuses illegal moves.
TaskState transition(TaskState state, const Event& e);

// Applies the two branch hops of an emitted verify pair (started, completed)
// to the task, given the ledger sequence numbers the pair received.
void apply_verify_pair(TaskState& task, const VerifyDecision& decision,
                       std::uint64_t started_seq, std::uint64_t completed_seq);

struct TaskRequest {
  std::string objective;
  std::vector<std::string> success_criteria;
  std::string owner;
  std::string accountable;
  std::string task_class = "delivery";
  std::vector<std::string> risk_hints;  // labels; "high:" prefix marks high risk
  bool single_step = false;
  bool rollback_needed = false;
};

// Tier rule: light needs a hint-free single-step request; any high-risk hint
// or declared rollback need forces deep; everything else runs standard.
Tier select_tier(const TaskRequest& req);
bool has_high_risk_hint(const TaskRequest& req);

struct PublicReport {
  AcceptanceStatus acceptance_status = AcceptanceStatus::withheld;
  Outcome outcome = Outcome::failed;
  std::string owner_of_next_action;
};

// Boundary report. Withheld reports always name the owner of the next action
// (open recovery owner when one exists, else the task owner) and are refused
// when no owner can be named.
PublicReport surface_outcome(const TaskState& task, const VerifyDecision& decision,
                             const PacketStore& store);

// Proper escalation emits diagnostic_review then escalation_board. A
// board-first request records the board event and is then refused, leaving
// the path violation visible to the next verification pass.
void escalate(TaskState& task, Ledger& ledger, EventScribe& scribe, bool board_first = false);

// Externally visible projection of a session: packet creation, verification
// outcomes, completion and rollback executions; internal verify_started,
// repair and operator-review steps are omitted.
std::vector<Event> public_trace(const std::vector<Event>& session_events);

}  // namespace gatekit
