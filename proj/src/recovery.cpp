#include "gatekit/recovery.hpp"

#include <fstream>

#include "gatekit/errors.hpp"
#include "gatekit/lanes.hpp"

namespace gatekit {

using nlohmann::json;
using nlohmann::ordered_json;

RecoveryCycle enter_recovery(TaskState& task, const VerifyDecision& decision,
                             std::string recovery_owner, std::string next_action,
                             PacketStore& store, Ledger& ledger, EventScribe& scribe,
                             IdMinter& minter) {
  if (decision.outcome != Outcome::blocked)
    fail(Errc::invalid_input, "recovery opens only on blocked decisions, got " +
                                  std::string(to_string(decision.outcome)));
  RecoveryPacket packet =
      store.add_recovery(task.task_id, error_class_for_predicate(decision.blocking_predicate),
                         to_string(decision.blocked_reason_class), std::move(next_action),
                         recovery_owner, minter);
  Event e = scribe.base(task, ev::recovery_packet_created, recovery_owner);
  e.recovery_packet_id = packet.id.value;
  e.stage_to = to_string(BranchState::recovered);
  e.seq = scribe.emit(ledger, e);
  task = transition(task, e);

  RecoveryCycle cycle;
  cycle.recovery_packet_id = packet.id.value;
  cycle.opened_at_seq = e.seq;
  return cycle;
}

void close_cycle(TaskState& task, RecoveryCycle& cycle, PacketStore& store, Ledger& ledger,
                 EventScribe& scribe) {
  if (cycle.closed_at_seq)
    fail(Errc::cycle_already_closed, "recovery " + cycle.recovery_packet_id);
  store.close_recovery(cycle.recovery_packet_id);
  Event e = scribe.base(task, ev::recovery_closed, lanes::coordinator);
  e.recovery_packet_id = cycle.recovery_packet_id;
  e.seq = scribe.emit(ledger, e);
  task = transition(task, e);
  cycle.closed_at_seq = e.seq;
}

VerifyDecision close_recovery_and_reverify(TaskState& task, RecoveryCycle& cycle,
                                           PacketStore& store, Ledger& ledger,
                                           const WorkProductStore& work,
                                           const PolicyConfig& policy, EventScribe& scribe,
                                           const VerifyMode& mode) {
  close_cycle(task, cycle, store, ledger, scribe);
  VerifyDecision d = verify_claim(task, store, ledger, work, policy, scribe, mode);
  apply_verify_pair(task, d, ledger.head_seq() - 1, ledger.head_seq());
  return d;
}

RollbackExecutor simulated_executor(bool succeed) {
  return [succeed](const RollbackQueueItem&) { return succeed; };
}

const RollbackQueueItem& RollbackQueue::enqueue(TaskState& task, RollbackTrigger trigger,
                                                bool policy_declared, Ledger& ledger,
                                                EventScribe& scribe, IdMinter& minter) {
  RollbackQueueItem item;
  item.item_id = minter.mint_value();
  item.task_id = task.task_id;
  item.trigger = trigger;
  item.status = RollbackStatus::pending_review;
  item.policy_declared = policy_declared;

  Event e = scribe.base(task, ev::rollback_enqueued, lanes::coordinator);
  e.blocked_reason = to_string(trigger);
  e.seq = scribe.emit(ledger, e);
  task = transition(task, e);

  items_.push_back(std::move(item));
  return items_.back();
}

const RollbackQueueItem* RollbackQueue::find(const std::string& item_id) const {
  for (const auto& item : items_)
    if (item.item_id == item_id) return &item;
  return nullptr;
}

const RollbackQueueItem& RollbackQueue::review(const std::string& item_id,
                                               const std::string& reviewer, bool approve,
                                               TaskState& task, Ledger& ledger,
                                               EventScribe& scribe,
                                               const RollbackExecutor& executor) {
  if (reviewer.empty()) fail(Errc::invalid_input, "review requires a named reviewer");
  RollbackQueueItem* item = nullptr;
  for (auto& candidate : items_)
    if (candidate.item_id == item_id) item = &candidate;
  if (!item) fail(Errc::invalid_input, "unknown rollback item '" + item_id + "'");
  if (item->status != RollbackStatus::pending_review)
    fail(Errc::invalid_input, "item '" + item_id + "' already reviewed");
  if (item->task_id != task.task_id)
    fail(Errc::invalid_input, "item '" + item_id + "' belongs to task " + item->task_id);

  item->reviewer = reviewer;
  if (!approve) {
    item->status = RollbackStatus::denied;
    Event e = scribe.base(task, ev::rollback_denied, reviewer);
    e.seq = scribe.emit(ledger, e);
    task = transition(task, e);
    return *item;
  }
  item->status = RollbackStatus::approved;
  Event e = scribe.base(task, ev::rollback_approved, reviewer);
  e.seq = scribe.emit(ledger, e);
  task = transition(task, e);
  return execute_approved(*item, task, ledger, scribe, executor);
}

RollbackQueueItem& RollbackQueue::execute_approved(RollbackQueueItem& item, TaskState& task,
                                                   Ledger& ledger, EventScribe& scribe,
                                                   const RollbackExecutor& executor) {
  if (item.status != RollbackStatus::approved || !item.reviewer)
    fail(Errc::unreviewed_execution, "item '" + item.item_id + "'");
  const bool ok = executor(item);
  item.status = ok ? RollbackStatus::executed_success : RollbackStatus::executed_failed;
  Event e = scribe.base(task, ok ? ev::rollback_executed : ev::rollback_failed, lanes::steward);
  if (ok) e.stage_to = to_string(BranchState::rolled_back);
  e.seq = scribe.emit(ledger, e);
  task = transition(task, e);
  return item;
}

ordered_json rollback_item_json(const RollbackQueueItem& item) {
  ordered_json j;
  j["item_id"] = item.item_id;
  j["task_id"] = item.task_id;
  j["trigger"] = to_string(item.trigger);
  j["status"] = to_string(item.status);
  j["policy_declared"] = item.policy_declared;
  if (item.reviewer) j["reviewer"] = *item.reviewer;
  return j;
}

RollbackQueueItem rollback_item_from_json(const json& j) {
  RollbackQueueItem item;
  item.item_id = j.at("item_id").get<std::string>();
  item.task_id = j.at("task_id").get<std::string>();
  item.trigger = rollback_trigger_from(j.at("trigger").get<std::string>());
  item.status = rollback_status_from(j.at("status").get<std::string>());
  item.policy_declared = j.at("policy_declared").get<bool>();
  if (j.contains("reviewer")) item.reviewer = j.at("reviewer").get<std::string>();
  return item;
}

void RollbackQueue::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) fail(Errc::invalid_input, "cannot write " + file.string());
  for (const auto& item : items_) out << rollback_item_json(item).dump() << '\n';
}

RollbackQueue RollbackQueue::load(const std::filesystem::path& file) {
  RollbackQueue q;
  std::ifstream in(file);
  if (!in) return q;  // missing file = empty queue
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    q.items_.push_back(rollback_item_from_json(json::parse(line)));
  }
  return q;
}

}  // namespace gatekit
