#include "gatekit/scenario.hpp"

#include <fstream>

#include "gatekit/errors.hpp"

namespace gatekit {

namespace {

TaskRequest request_for(const ScriptStep& step, std::size_t ordinal) {
  TaskRequest req;
  req.objective = "deliver work item " + std::to_string(ordinal);
  req.success_criteria = {"artifact digest recorded", "verification pass admitted"};
  req.owner = lanes::worker;
  req.accountable = lanes::coordinator;
  switch (step.tier) {
    case Tier::light: req.single_step = true; break;
    case Tier::deep: req.risk_hints = {"high:irreversible-surface"}; break;
    default: break;
  }
  return req;
}

void record(ScenarioResult* r, const std::string& id, const VerifyDecision& d) {
  if (r) r->decisions[id] = d;
}

void expect_outcome(const VerifyDecision& d, Outcome want, const std::string& id,
                    const char* where) {
  if (d.outcome != want)
    fail(Errc::invalid_input, std::string("scenario derailed at ") + where + " for task " + id +
                                  ": got " + to_string(d.outcome) + ", wanted " +
                                  to_string(want));
}

// Faults that flip header inputs without touching the packet log.
void inject_fault(TaskRuntime& rt, const std::string& id, const std::string& fault) {
  if (fault == "owner_gap") rt.set_header_accountable(id, "");
  else if (fault == "untreated_advisory")
    rt.add_advisory(id, Severity::serious, "unreviewed risk note");
  else if (fault == "veto") rt.set_veto(id, true);
  else if (fault == "stale_ground") rt.refresh_ground(id, {});
}

void repair_fault(TaskRuntime& rt, const std::string& id, const std::string& fault) {
  if (fault == "owner_gap") rt.set_header_accountable(id, rt.task(id).accountable);
  else if (fault == "untreated_advisory") rt.treat_advisories(id);
  else if (fault == "veto") rt.set_veto(id, false);
  else if (fault == "weak_evidence") rt.attach_evidence(id, EvidenceQuality::adequate);
  else if (fault == "verify_not_invoked") rt.open_verify(id);
}

std::string repair_action_for(const std::string& fault) {
  if (fault == "weak_evidence") return "attach deterministic evidence at or above the floor";
  if (fault == "owner_gap") return "restore the accountable owner on the control header";
  if (fault == "verify_not_invoked") return "open the verification pass for the branch";
  if (fault == "untreated_advisory") return "review and treat standing advisories";
  if (fault == "veto") return "resolve the standing veto with its holder";
  return "re-establish admission preconditions";
}

void run_rollback(TaskRuntime& rt, const std::string& id, RollbackTrigger trigger,
                  bool succeed) {
  const std::string item_id = rt.enqueue_rollback(id, trigger).item_id;
  rt.review_rollback(item_id, "release_reviewer", true, succeed);
}

// Bookkeeping padding on an idle branch: alternating review notes and ground
// refreshes, neither of which advances the stage.
void pad_filler(TaskRuntime& rt, const std::string& id, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      TaskState& t = rt.task(id);
      Event e = rt.scribe().base(t, ev::diagnostic_review, lanes::diagnostic);
      e.seq = rt.scribe().emit(rt.ledger(), e);
      t = transition(t, e);
    } else {
      rt.refresh_ground(id, {});
    }
  }
}

// A verification pass whose completion record lost its outcome before it was
// durably written. The pair still lands on the ledger; the branch cannot move
// because no outcome-less completion edge exists.
void torn_verify(TaskRuntime& rt, const std::string& id) {
  rt.assemble_claim(id, ClaimedState::done);
  rt.attach_evidence(id, EvidenceQuality::adequate);
  rt.open_verify(id);
  auto claim = rt.store().latest_claim(id);
  auto evidence = rt.store().latest_evidence(id);

  TaskState& t = rt.task(id);
  Event started = rt.scribe().base(t, ev::verify_started, lanes::verifier);
  started.stage_to = to_string(BranchState::verify_pending);
  if (claim) started.claim_packet_id = claim->id.value;
  if (evidence) started.evidence_packet_id = evidence->id.value;
  started.seq = rt.scribe().emit(rt.ledger(), started);
  t = transition(t, started);

  Event torn = rt.scribe().base(t, ev::verify_completed, lanes::verifier);
  if (claim) torn.claim_packet_id = claim->id.value;
  if (evidence) torn.evidence_packet_id = evidence->id.value;
  rt.scribe().emit(rt.ledger(), torn);
}

}  // namespace

void execute_step(TaskRuntime& rt, const ScriptStep& step, ScenarioResult* result) {
  const std::string& kind = step.kind;
  std::optional<Tier> tier_override;
  if (step.tier == Tier::unknown) tier_override = Tier::unknown;
  TaskState& created = rt.create_task(request_for(step, rt.tasks().size() + 1), step.origin,
                                      step.cluster_id, "", tier_override);
  const std::string id = created.task_id;
  if (result) result->task_ids.push_back(id);

  if (kind == "noverify") return;
  if (kind == "filler") return pad_filler(rt, id, step.filler_events);
  if (kind == "missing_outcome_artifact") return torn_verify(rt, id);

  const bool drill = kind.rfind("failed_drill", 0) == 0;
  const bool retry = kind == "blocked_retry_success";
  std::string fault = step.fault;
  if (fault.empty() && (kind.rfind("blocked_", 0) == 0)) fault = "weak_evidence";
  if (fault.empty() && drill) fault = "partial_claim";

  if (kind == "skip_then_success") {
    rt.assemble_claim(id, ClaimedState::done);
    rt.open_verify(id);
    VerifyMode skip;
    skip.sigma = true;
    skip.skip_reason = "out_of_scope_this_pass";
    record(result, id, rt.run_verify(id, skip));
    rt.attach_evidence(id, EvidenceQuality::adequate);
    rt.open_verify(id);
    VerifyDecision d = rt.run_verify(id);
    record(result, id, d);
    expect_outcome(d, Outcome::success, id, "post-skip verify");
    return;
  }

  std::vector<std::string> questions;
  if (fault == "open_blocker") questions = {"unresolved dependency"};
  rt.assemble_claim(id, fault == "partial_claim" ? ClaimedState::partial : ClaimedState::done,
                    std::move(questions));
  rt.attach_evidence(id, fault == "weak_evidence" ? EvidenceQuality::weak
                                                  : EvidenceQuality::adequate);
  inject_fault(rt, id, fault);
  if (fault != "verify_not_invoked") rt.open_verify(id);

  VerifyMode mode;
  if (drill) mode.recoverable_override = false;
  VerifyDecision d = rt.run_verify(id, mode);
  record(result, id, d);

  if (kind == "success" || kind == "success_completed") {
    expect_outcome(d, Outcome::success, id, "clean verify");
    if (kind == "success_completed") rt.complete_task(id);
    return;
  }
  if (drill) {
    expect_outcome(d, Outcome::failed, id, "drill verify");
    if (kind == "failed_drill_rollback_exec")
      run_rollback(rt, id, RollbackTrigger::high_risk_verification_failure, true);
    return;
  }
  expect_outcome(d, Outcome::blocked, id, "faulted verify");
  if (kind == "blocked_open") return;
  if (kind == "blocked_rollback_pending") {
    rt.enqueue_rollback(id, RollbackTrigger::weak_evidence_post_claim);
    return;
  }
  if (kind == "blocked_rollback_failed_exec")
    return run_rollback(rt, id, RollbackTrigger::weak_evidence_post_claim, false);

  if (retry) {
    // First cycle closes without the repair landing; the gate blocks again.
    rt.enter_recovery(id, d, lanes::steward, repair_action_for(fault));
    d = rt.close_and_reverify(id);
    record(result, id, d);
    expect_outcome(d, Outcome::blocked, id, "unrepaired re-verify");
  }
  rt.enter_recovery(id, d, lanes::steward, repair_action_for(fault));
  repair_fault(rt, id, fault);
  VerifyDecision final_d = rt.close_and_reverify(id);
  record(result, id, final_d);
  expect_outcome(final_d, Outcome::success, id, "post-recovery verify");
  if (kind == "blocked_recover_success_completed") rt.complete_task(id);
}

TaskRuntime make_runtime(const ScenarioScript& script, PolicyConfig policy, bool shadow) {
  RuntimeConfig cfg;
  cfg.seed = script.seed;
  cfg.slice_label = script.slice_label;
  cfg.session_prefix = script.session_prefix;
  cfg.rotate_every = script.rotate_every;
  cfg.shadow_enabled = shadow;
  cfg.policy = std::move(policy);
  return TaskRuntime(cfg);
}

TaskRuntime run_scenario(const ScenarioScript& script, PolicyConfig policy, bool shadow,
                         ScenarioResult* result) {
  TaskRuntime rt = make_runtime(script, std::move(policy), shadow);
  for (const auto& step : script.steps) execute_step(rt, step, result);
  return rt;
}

void simulate_to_dir(const WorkloadSpec& spec, const std::filesystem::path& out,
                     PolicyConfig policy) {
  std::filesystem::create_directories(out);
  if (spec.spec_kind == "pgv") return write_pgv_fixture(spec, out);

  ScenarioScript script = generate_workload(spec);
  TaskRuntime rt = make_runtime(script, std::move(policy), spec.shadow);
  try {
    for (const auto& step : script.steps) execute_step(rt, step, nullptr);
  } catch (const std::exception& e) {
    // Torn run: keep what the ledger has, mark it, and let the caller see the
    // failure. Readers must treat a marked store as incomplete.
    std::ofstream marker(out / "PARTIAL");
    marker << e.what() << '\n';
    marker.close();
    try {
      rt.save(out);
    } catch (...) {
    }
    throw;
  }
  rt.save(out);
  std::ofstream script_out(out / "script.json");
  if (!script_out) fail(Errc::invalid_input, "cannot write " + (out / "script.json").string());
  script_out << script.to_json().dump(2) << '\n';
}

void write_pgv_fixture(const WorkloadSpec& spec, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  std::vector<PgvRecord> records;
  FinalizedOutcomes finalized;
  std::uint64_t n = 0;
  const char* rules[] = {pgv_rule::ownership_unpopulated, pgv_rule::evidence_absent,
                         pgv_rule::partial_as_done,       pgv_rule::stale_ground,
                         pgv_rule::unclear_without_diagnostic, pgv_rule::claim_absent,
                         pgv_rule::active_recovery};
  auto emit = [&](std::uint64_t count, PgvPrediction prediction, int finalized_good) {
    for (std::uint64_t i = 0; i < count; ++i) {
      PgvRecord r;
      std::string v = std::to_string(++n);
      r.sample_id = "PGV" + std::string(6 - std::min<std::size_t>(6, v.size()), '0') + v;
      r.prediction = prediction;
      if (prediction == PgvPrediction::blocked_risky) r.rule_hits = {rules[n % 7]};
      if (finalized_good >= 0) finalized[r.sample_id] = finalized_good != 0;
      records.push_back(std::move(r));
    }
  };
  emit(spec.pgv_safe_good, PgvPrediction::safe_to_proceed, 1);
  emit(spec.pgv_safe_bad, PgvPrediction::safe_to_proceed, 0);
  emit(spec.pgv_safe_open, PgvPrediction::safe_to_proceed, -1);
  emit(spec.pgv_blocked_good, PgvPrediction::blocked_risky, 1);
  emit(spec.pgv_blocked_bad, PgvPrediction::blocked_risky, 0);
  emit(spec.pgv_blocked_open, PgvPrediction::blocked_risky, -1);
  write_pgv_records(out / "predictions.jsonl", records);
  write_finalized(out / "finalized.jsonl", finalized);
}

}  // namespace gatekit
