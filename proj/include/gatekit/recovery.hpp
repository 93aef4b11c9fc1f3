#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gatekit/gate.hpp"
#include "gatekit/ids.hpp"
#include "gatekit/ledger.hpp"
#include "gatekit/lifecycle.hpp"
#include "gatekit/packet_store.hpp"
#include "gatekit/scribe.hpp"

namespace gatekit {

struct RecoveryCycle {
  std::string recovery_packet_id;
  std::uint64_t opened_at_seq = 0;
  std::optional<std::uint64_t> closed_at_seq;
};

// Opens a recovery cycle for a blocked decision: recovery packet with a named
// owner and next action, recovery_packet_created event, branch -> recovered.
// The open cycle keeps the admission gate closed until it is closed again.
RecoveryCycle enter_recovery(TaskState& task, const VerifyDecision& decision,
                             std::string recovery_owner, std::string next_action,
                             PacketStore& store, Ledger& ledger, EventScribe& scribe,
                             IdMinter& minter);

// Closes the cycle: recovery packet closed, recovery_closed event appended,
// φ10 input cleared. Refuses a second close.
void close_cycle(TaskState& task, RecoveryCycle& cycle, PacketStore& store, Ledger& ledger,
                 EventScribe& scribe);

// Closes the cycle and re-runs the full verification pass. Admission after
// recovery goes through every predicate again — there is no shortcut.
VerifyDecision close_recovery_and_reverify(TaskState& task, RecoveryCycle& cycle,
                                           PacketStore& store, Ledger& ledger,
                                           const WorkProductStore& work,
                                           const PolicyConfig& policy, EventScribe& scribe,
                                           const VerifyMode& mode = {});

struct RollbackQueueItem {
  std::string item_id;
  std::string task_id;
  RollbackTrigger trigger = RollbackTrigger::high_risk_verification_failure;
  RollbackStatus status = RollbackStatus::pending_review;
  bool policy_declared = false;
  std::optional<std::string> reviewer;
};

// Returns true when the rollback action reached a validated safe state.
using RollbackExecutor = std::function<bool(const RollbackQueueItem&)>;

// Simulated executor used by default; real executors are integration points.
RollbackExecutor simulated_executor(bool succeed);

// Human-reviewed rollback queue. Items enter pending_review; execution is
// reachable only through an approval that names a reviewer, and a failing
// execution is recorded as its own event — never silently retried.
class RollbackQueue {
 public:
  const RollbackQueueItem& enqueue(TaskState& task, RollbackTrigger trigger,
                                   bool policy_declared, Ledger& ledger, EventScribe& scribe,
                                   IdMinter& minter);

  const RollbackQueueItem& review(const std::string& item_id, const std::string& reviewer,
                                  bool approve, TaskState& task, Ledger& ledger,
                                  EventScribe& scribe, const RollbackExecutor& executor);

  const std::vector<RollbackQueueItem>& items() const { return items_; }
  const RollbackQueueItem* find(const std::string& item_id) const;

  void save(const std::filesystem::path& file) const;
  static RollbackQueue load(const std::filesystem::path& file);

 private:
  RollbackQueueItem& execute_approved(RollbackQueueItem& item, TaskState& task, Ledger& ledger,
                                      EventScribe& scribe, const RollbackExecutor& executor);

  std::vector<RollbackQueueItem> items_;
};

nlohmann::ordered_json rollback_item_json(const RollbackQueueItem& item);
RollbackQueueItem rollback_item_from_json(const nlohmann::json& j);

}  // namespace gatekit
