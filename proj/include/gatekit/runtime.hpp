#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gatekit/accounting.hpp"
#include "gatekit/gate.hpp"
#include "gatekit/ids.hpp"
#include "gatekit/lanes.hpp"
#include "gatekit/ledger.hpp"
#include "gatekit/lifecycle.hpp"
#include "gatekit/packet_store.hpp"
#include "gatekit/pgv.hpp"
#include "gatekit/recovery.hpp"
#include "gatekit/replay.hpp"
#include "gatekit/scribe.hpp"

namespace gatekit {

struct RuntimeConfig {
  std::uint64_t seed = 1;
  std::string run_id;  // derived from seed when empty
  std::string slice_label = slice_label::rotation_aware;
  std::string session_prefix = "S";
  std::uint64_t rotate_every = 0;  // active-segment size triggering rotation; 0 = never
  bool shadow_enabled = false;
  PolicyConfig policy;
};

// Orchestration facade: owns the stores, the ledger, the scribe, the rollback
// queue and the per-task states, and sequences every module operation so the
// branch machine, the event record and the packet log stay in step.
class TaskRuntime {
 public:
  explicit TaskRuntime(RuntimeConfig cfg);

  TaskState& create_task(const TaskRequest& req, Origin origin, std::string cluster_id,
                         std::string session_id = "", std::optional<Tier> tier_override = {});
  ClaimPacket assemble_claim(const std::string& task_id, ClaimedState claimed_state,
                             std::vector<std::string> unresolved_questions = {});
  EvidencePacket attach_evidence(const std::string& task_id, EvidenceQuality quality,
                                 std::vector<std::string> missing_required = {});
  // Coordinator opens the verification path; the header records the
  // invocation before any verify pass runs.
  void open_verify(const std::string& task_id);
  VerifyDecision run_verify(const std::string& task_id, const VerifyMode& mode = {});
  CommonGroundPacket refresh_ground(const std::string& task_id, const GroundUpdate& updates);
  void complete_task(const std::string& task_id);
  void block_task(const std::string& task_id, std::string reason);
  void fail_task(const std::string& task_id, std::string reason);
  void escalate_task(const std::string& task_id, bool board_first = false);

  RecoveryCycle& enter_recovery(const std::string& task_id, const VerifyDecision& decision,
                                std::string recovery_owner, std::string next_action);
  VerifyDecision close_and_reverify(const std::string& task_id, const VerifyMode& mode = {});
  const RollbackQueueItem& enqueue_rollback(const std::string& task_id, RollbackTrigger trigger);
  const RollbackQueueItem& review_rollback(const std::string& item_id,
                                           const std::string& reviewer, bool approve,
                                           bool execution_succeeds = true);

  // Header adjustments: the repair surface for owner gaps, advisories and
  // vetoes — and, inverted, the fault-injection surface for drills.
  void set_header_accountable(const std::string& task_id, std::string value);
  void add_advisory(const std::string& task_id, Severity severity, std::string note);
  void treat_advisories(const std::string& task_id);
  void dismiss_advisories(const std::string& task_id);
  void set_veto(const std::string& task_id, bool active);

  TaskState& task(const std::string& task_id);
  const TaskState* find_task(const std::string& task_id) const;
  PublicReport report(const std::string& task_id, const VerifyDecision& decision) const;

  const RuntimeConfig& config() const { return cfg_; }
  Ledger& ledger() { return ledger_; }
  const Ledger& ledger() const { return ledger_; }
  PacketStore& store() { return store_; }
  const PacketStore& store() const { return store_; }
  const WorkProductStore& work() const { return work_; }
  WorkProductStore& work() { return work_; }
  const RollbackQueue& queue() const { return queue_; }
  const std::vector<PgvRecord>& pgv_records() const { return pgv_records_; }
  const std::map<std::string, TaskState>& tasks() const { return tasks_; }
  IdMinter& minter() { return minter_; }
  EventScribe& scribe() { return scribe_; }

  void save(const std::filesystem::path& dir) const;
  static TaskRuntime load(const std::filesystem::path& dir, PolicyConfig policy);

 private:
  std::string next_session_id();
  VerifyDecision do_verify(TaskState& t, const VerifyMode& mode);
  void maybe_rotate();

  RuntimeConfig cfg_;
  IdMinter minter_;
  EventScribe scribe_;
  PacketStore store_;
  Ledger ledger_;
  WorkProductStore work_;
  RollbackQueue queue_;
  LaneRegistry lanes_;
  std::vector<PgvRecord> pgv_records_;
  std::map<std::string, TaskState> tasks_;
  std::map<std::string, RecoveryCycle> cycles_;  // open cycle per task
  std::uint64_t session_counter_ = 0;
};

}  // namespace gatekit
