#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatekit/packets.hpp"
#include "gatekit/types.hpp"

namespace gatekit {

struct RiskState {
  Tier tier = Tier::standard;
  RollbackProfile rollback_profile = RollbackProfile::none;
};

struct TransitionRecord {
  BranchState from = BranchState::in_progress;
  BranchState to = BranchState::in_progress;
  std::string trigger;
  std::uint64_t seq = 0;
};

// Per-task working record. Together with the referenced packets this resolves
// every component of the task tuple: shared ground, task class, ownership,
// progress stage, open questions, risk posture and memory references.
struct TaskState {
  std::string task_id;
  std::string session_id;
  std::string task_class;
  std::string objective;
  std::vector<std::string> success_criteria;
  std::string owner;
  std::string accountable;
  std::vector<std::string> open_questions;
  RiskState risk;
  std::vector<std::string> memory_refs;  // packet id values
  BranchState branch = BranchState::in_progress;
  ControlHeader header;
  std::vector<TransitionRecord> history;

  // Reporting context stamped onto every event for this task.
  Origin origin = Origin::synthetic;
  std::string cluster_id;
  std::string protocol;

  std::string stage() const { return to_string(branch); }
};

nlohmann::json task_to_json(const TaskState& t);
TaskState task_from_json(const nlohmann::json& j);

// Simulated work artifacts; verification reads digests and never writes.
class WorkProductStore {
 public:
  void put(const std::string& task_id, std::string content);
  std::string digest(const std::string& task_id) const;
  std::string whole_digest() const;

  void save(const std::filesystem::path& file) const;
  static WorkProductStore load(const std::filesystem::path& file);

 private:
  std::map<std::string, std::string> blobs_;
};

}  // namespace gatekit
