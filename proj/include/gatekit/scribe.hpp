#pragma once

#include <map>
#include <string>

#include "gatekit/ledger.hpp"
#include "gatekit/task_state.hpp"

namespace gatekit {

// Stamps run-level fields onto events and threads per-task parent links so
// every event chains back to its task_created record.
class EventScribe {
 public:
  explicit EventScribe(std::string run_id) : run_id_(std::move(run_id)) {}

  Event base(const TaskState& task, const char* event_type, std::string acting_owner) const {
    Event e;
    e.run_id = run_id_;
    e.task_id = task.task_id;
    e.session_id = task.session_id;
    e.event_type = event_type;
    e.owner = std::move(acting_owner);
    e.accountable = task.accountable;
    e.protocol_expected = task.protocol;
    e.protocol_applied = task.protocol;
    e.origin = task.origin;
    e.tier = task.risk.tier;
    e.cluster_id = task.cluster_id;
    e.stage_from = task.stage();
    e.stage_to = task.stage();
    return e;
  }

  std::uint64_t emit(Ledger& ledger, Event e) {
    auto it = last_seq_.find(e.task_id);
    if (it != last_seq_.end()) e.parent_event_id = it->second;
    const std::string task_id = e.task_id;
    std::uint64_t seq = ledger.append(std::move(e));
    last_seq_[task_id] = seq;
    return seq;
  }

  // Rebuilds parent-link threading from an existing event history (load path).
  void restore(const std::vector<Event>& events) {
    for (const auto& e : events) {
      auto it = last_seq_.find(e.task_id);
      if (it == last_seq_.end() || it->second < e.seq) last_seq_[e.task_id] = e.seq;
    }
  }

  const std::string& run_id() const { return run_id_; }

 private:
  std::string run_id_;
  std::map<std::string, std::uint64_t> last_seq_;
};

}  // namespace gatekit
