#include "gatekit/runtime.hpp"

#include <fstream>

#include "gatekit/errors.hpp"

namespace gatekit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string derive_run_id(const RuntimeConfig& cfg) {
  return cfg.run_id.empty() ? "RUN" + std::to_string(cfg.seed) : cfg.run_id;
}

}  // namespace

TaskRuntime::TaskRuntime(RuntimeConfig cfg)
    : cfg_(std::move(cfg)),
      minter_(cfg_.seed),
      scribe_(derive_run_id(cfg_)),
      lanes_(LaneRegistry::standard()) {
  cfg_.run_id = derive_run_id(cfg_);
}

std::string TaskRuntime::next_session_id() {
  std::string n = std::to_string(++session_counter_);
  return cfg_.session_prefix + std::string(6 - std::min<std::size_t>(6, n.size()), '0') + n;
}

TaskState& TaskRuntime::task(const std::string& task_id) {
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) fail(Errc::invalid_input, "unknown task '" + task_id + "'");
  return it->second;
}

const TaskState* TaskRuntime::find_task(const std::string& task_id) const {
  auto it = tasks_.find(task_id);
  return it == tasks_.end() ? nullptr : &it->second;
}

TaskState& TaskRuntime::create_task(const TaskRequest& req, Origin origin,
                                    std::string cluster_id, std::string session_id,
                                    std::optional<Tier> tier_override) {
  TaskState t;
  t.task_id = minter_.mint_value();
  t.session_id = session_id.empty() ? next_session_id() : std::move(session_id);
  t.task_class = req.task_class;
  t.objective = req.objective;
  t.success_criteria = req.success_criteria;
  t.owner = req.owner;
  t.accountable = req.accountable;
  t.risk.tier = tier_override ? *tier_override : select_tier(req);
  t.risk.rollback_profile =
      t.risk.tier == Tier::deep ? RollbackProfile::declared : RollbackProfile::none;
  t.header.tier = t.risk.tier;
  t.header.task_class = req.task_class;
  t.header.owner = req.owner;
  t.header.accountable = req.accountable;
  t.origin = origin;
  t.cluster_id = std::move(cluster_id);
  t.protocol = standard_pack().name;

  CommonGroundPacket ground = store_.mint_common_ground(
      t.task_id, req.objective, req.success_criteria, req.owner, req.accountable, minter_);
  t.memory_refs.push_back(ground.id.value);
  work_.put(t.task_id, "work-product for " + t.task_id);

  TaskState& stored = tasks_.emplace(t.task_id, std::move(t)).first->second;
  Event e = scribe_.base(stored, ev::task_created, lanes::coordinator);
  e.seq = scribe_.emit(ledger_, e);
  maybe_rotate();
  return stored;
}

ClaimPacket TaskRuntime::assemble_claim(const std::string& task_id, ClaimedState claimed_state,
                                        std::vector<std::string> unresolved_questions) {
  TaskState& t = task(task_id);
  ClaimPacket claim =
      store_.assemble_claim(task_id, claimed_state, t.owner, t.accountable,
                            std::move(unresolved_questions), ledger_.head_seq(), minter_);
  t.memory_refs.push_back(claim.id.value);
  Event e = scribe_.base(t, ev::claim_packet_created, lanes::worker);
  e.claim_packet_id = claim.id.value;
  e.stage_to = to_string(BranchState::claim_ready);
  e.seq = scribe_.emit(ledger_, e);
  t = transition(t, e);
  maybe_rotate();
  return claim;
}

EvidencePacket TaskRuntime::attach_evidence(const std::string& task_id, EvidenceQuality quality,
                                            std::vector<std::string> missing_required) {
  TaskState& t = task(task_id);
  auto claim = store_.latest_claim(task_id);
  if (!claim) fail(Errc::dangling_ref, "evidence without claim for task " + task_id);
  EvidencePacket evidence = store_.attach_evidence(
      claim->id.value, {"artifact for " + task_id},
      {SourceType::deterministic_check, SourceType::tool_output}, quality,
      std::move(missing_required), minter_);
  t.memory_refs.push_back(evidence.id.value);
  Event e = scribe_.base(t, ev::evidence_packet_created, lanes::retriever);
  e.claim_packet_id = claim->id.value;
  e.evidence_packet_id = evidence.id.value;
  e.seq = scribe_.emit(ledger_, e);
  t = transition(t, e);
  maybe_rotate();
  return evidence;
}

void TaskRuntime::open_verify(const std::string& task_id) {
  task(task_id).header.verify_state = VerifyState::pending;
}

VerifyDecision TaskRuntime::do_verify(TaskState& t, const VerifyMode& mode) {
  if (cfg_.shadow_enabled) {
    VerifyContext ctx = build_context(t, store_, ledger_, work_);
    pgv_records_.push_back(
        pgv_check(ctx, t.task_id + "#" + std::to_string(ledger_.head_seq() + 1)));
  }
  VerifyDecision d = verify_claim(t, store_, ledger_, work_, cfg_.policy, scribe_, mode);
  apply_verify_pair(t, d, ledger_.head_seq() - 1, ledger_.head_seq());
  // Only a properly opened pass closes the header record; a pass run with the
  // header still unset must stay visibly uninvoked so the gate keeps refusing.
  if (t.header.verify_state == VerifyState::pending)
    t.header.verify_state = VerifyState::completed;
  return d;
}

VerifyDecision TaskRuntime::run_verify(const std::string& task_id, const VerifyMode& mode) {
  VerifyDecision d = do_verify(task(task_id), mode);
  maybe_rotate();
  return d;
}

CommonGroundPacket TaskRuntime::refresh_ground(const std::string& task_id,
                                               const GroundUpdate& updates) {
  TaskState& t = task(task_id);
  auto current = store_.current_ground(task_id);
  if (!current) fail(Errc::dangling_ref, "refresh without ground for task " + task_id);
  CommonGroundPacket refreshed = store_.refresh_ground(task_id, current->version, updates);
  Event e = scribe_.base(t, ev::ground_refreshed, lanes::steward);
  e.seq = scribe_.emit(ledger_, e);
  t = transition(t, e);
  t.header.stale_ground = store_.latest_claim(task_id).has_value();
  maybe_rotate();
  return refreshed;
}

void TaskRuntime::complete_task(const std::string& task_id) {
  TaskState& t = task(task_id);
  Event e = scribe_.base(t, ev::task_completed, lanes::coordinator);
  e.acceptance_status = AcceptanceStatus::accepted;
  e.seq = scribe_.emit(ledger_, e);
  t = transition(t, e);
  maybe_rotate();
}

void TaskRuntime::block_task(const std::string& task_id, std::string reason) {
  TaskState& t = task(task_id);
  Event e = scribe_.base(t, ev::task_blocked, lanes::coordinator);
  e.blocked_reason = std::move(reason);
  e.stage_to = to_string(BranchState::blocked);
  e.seq = scribe_.emit(ledger_, e);
  t = transition(t, e);
  maybe_rotate();
}

void TaskRuntime::fail_task(const std::string& task_id, std::string reason) {
  TaskState& t = task(task_id);
  Event e = scribe_.base(t, ev::task_failed, lanes::coordinator);
  e.blocked_reason = std::move(reason);
  e.stage_to = to_string(BranchState::failed);
  e.seq = scribe_.emit(ledger_, e);
  t = transition(t, e);
  maybe_rotate();
}

void TaskRuntime::escalate_task(const std::string& task_id, bool board_first) {
  escalate(task(task_id), ledger_, scribe_, board_first);
  maybe_rotate();
}

RecoveryCycle& TaskRuntime::enter_recovery(const std::string& task_id,
                                           const VerifyDecision& decision,
                                           std::string recovery_owner, std::string next_action) {
  auto it = cycles_.find(task_id);
  if (it != cycles_.end() && !it->second.closed_at_seq)
    fail(Errc::invalid_input, "task " + task_id + " already has an open recovery cycle");
  RecoveryCycle cycle =
      gatekit::enter_recovery(task(task_id), decision, std::move(recovery_owner),
                              std::move(next_action), store_, ledger_, scribe_, minter_);
  cycles_[task_id] = cycle;
  maybe_rotate();
  return cycles_[task_id];
}

VerifyDecision TaskRuntime::close_and_reverify(const std::string& task_id,
                                               const VerifyMode& mode) {
  auto it = cycles_.find(task_id);
  if (it == cycles_.end() || it->second.closed_at_seq)
    fail(Errc::invalid_input, "task " + task_id + " has no open recovery cycle");
  TaskState& t = task(task_id);
  close_cycle(t, it->second, store_, ledger_, scribe_);
  VerifyDecision d = do_verify(t, mode);
  maybe_rotate();
  return d;
}

const RollbackQueueItem& TaskRuntime::enqueue_rollback(const std::string& task_id,
                                                       RollbackTrigger trigger) {
  TaskState& t = task(task_id);
  const bool declared = t.risk.rollback_profile == RollbackProfile::declared;
  const RollbackQueueItem& item =
      queue_.enqueue(t, trigger, declared, ledger_, scribe_, minter_);
  maybe_rotate();
  return item;
}

const RollbackQueueItem& TaskRuntime::review_rollback(const std::string& item_id,
                                                      const std::string& reviewer, bool approve,
                                                      bool execution_succeeds) {
  const RollbackQueueItem* item = queue_.find(item_id);
  if (!item) fail(Errc::invalid_input, "unknown rollback item '" + item_id + "'");
  TaskState& t = task(item->task_id);
  const RollbackQueueItem& reviewed = queue_.review(
      item_id, reviewer, approve, t, ledger_, scribe_, simulated_executor(execution_succeeds));
  maybe_rotate();
  return reviewed;
}

void TaskRuntime::set_header_accountable(const std::string& task_id, std::string value) {
  task(task_id).header.accountable = std::move(value);
}

void TaskRuntime::add_advisory(const std::string& task_id, Severity severity, std::string note) {
  task(task_id).header.advisory_signals.push_back({severity, false, false, std::move(note)});
}

void TaskRuntime::treat_advisories(const std::string& task_id) {
  for (auto& a : task(task_id).header.advisory_signals) a.treated = true;
}

void TaskRuntime::dismiss_advisories(const std::string& task_id) {
  for (auto& a : task(task_id).header.advisory_signals) a.dismissed_under_policy = true;
}

void TaskRuntime::set_veto(const std::string& task_id, bool active) {
  task(task_id).header.veto_active = active;
}

PublicReport TaskRuntime::report(const std::string& task_id,
                                 const VerifyDecision& decision) const {
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) fail(Errc::invalid_input, "unknown task '" + task_id + "'");
  return surface_outcome(it->second, decision, store_);
}

void TaskRuntime::maybe_rotate() {
  if (cfg_.rotate_every == 0) return;
  if (ledger_.segments().back().events.size() >= cfg_.rotate_every) ledger_.rotate();
}

void TaskRuntime::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  store_.save(dir / "packets.ndjson");
  ledger_.save(dir);
  work_.save(dir / "work_products.jsonl");
  queue_.save(dir / "rollback_queue.jsonl");
  write_pgv_records(dir / "pgv_shadow.jsonl", pgv_records_);
  {
    std::ofstream out(dir / "tasks.jsonl");
    if (!out) fail(Errc::invalid_input, "cannot write " + (dir / "tasks.jsonl").string());
    for (const auto& [id, t] : tasks_) out << task_to_json(t).dump() << '\n';
  }
  ordered_json manifest;
  manifest["run_id"] = cfg_.run_id;
  manifest["seed"] = cfg_.seed;
  manifest["slice_label"] = cfg_.slice_label;
  manifest["session_prefix"] = cfg_.session_prefix;
  manifest["rotate_every"] = cfg_.rotate_every;
  manifest["shadow_enabled"] = cfg_.shadow_enabled;
  manifest["minter_ticks"] = minter_.ticks();
  manifest["session_counter"] = session_counter_;
  manifest["event_count"] = ledger_.event_count();
  manifest["task_count"] = tasks_.size();
  std::ofstream out(dir / "manifest.json");
  if (!out) fail(Errc::invalid_input, "cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

TaskRuntime TaskRuntime::load(const std::filesystem::path& dir, PolicyConfig policy) {
  std::ifstream in(dir / "manifest.json");
  if (!in) fail(Errc::invalid_input, "no manifest in " + dir.string());
  json manifest = json::parse(in);

  RuntimeConfig cfg;
  cfg.seed = manifest.at("seed").get<std::uint64_t>();
  cfg.run_id = manifest.at("run_id").get<std::string>();
  cfg.slice_label = manifest.at("slice_label").get<std::string>();
  cfg.session_prefix = manifest.at("session_prefix").get<std::string>();
  cfg.rotate_every = manifest.at("rotate_every").get<std::uint64_t>();
  cfg.shadow_enabled = manifest.at("shadow_enabled").get<bool>();
  cfg.policy = std::move(policy);

  TaskRuntime rt(cfg);
  rt.minter_.advance_to(manifest.at("minter_ticks").get<std::uint64_t>());
  rt.session_counter_ = manifest.at("session_counter").get<std::uint64_t>();
  rt.store_ = PacketStore::load(dir / "packets.ndjson");
  rt.ledger_ = Ledger::load(dir);
  rt.work_ = WorkProductStore::load(dir / "work_products.jsonl");
  rt.queue_ = RollbackQueue::load(dir / "rollback_queue.jsonl");
  if (std::filesystem::exists(dir / "pgv_shadow.jsonl"))
    rt.pgv_records_ = read_pgv_records(dir / "pgv_shadow.jsonl");

  std::ifstream tasks_in(dir / "tasks.jsonl");
  if (tasks_in) {
    std::string line;
    while (std::getline(tasks_in, line)) {
      if (line.empty()) continue;
      TaskState t = task_from_json(json::parse(line));
      rt.tasks_.emplace(t.task_id, std::move(t));
    }
  }

  const auto events = rt.ledger_.all_events();
  rt.scribe_.restore(events);
  for (const auto& [task_id, t] : rt.tasks_) {
    auto open = rt.store_.open_recovery(task_id);
    if (!open) continue;
    RecoveryCycle cycle;
    cycle.recovery_packet_id = open->id.value;
    for (const auto& e : events)
      if (e.event_type == ev::recovery_packet_created && e.recovery_packet_id &&
          *e.recovery_packet_id == open->id.value)
        cycle.opened_at_seq = e.seq;
    rt.cycles_[task_id] = cycle;
  }
  return rt;
}

}  // namespace gatekit
