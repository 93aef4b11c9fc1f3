// Acceptance gate: runs the shipped CLI against the bundled fixture specs and
// exercises the in-process property suites. Prints one [PASS]/[FAIL] line per
// criterion; exits 0 only when every criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatekit/errors.hpp"
#include "gatekit/rng.hpp"
#include "gatekit/runtime.hpp"
#include "gatekit/scenario.hpp"
#include "gatekit/workload.hpp"

using namespace gatekit;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

CliResult run_cli(const std::string& cli, const std::vector<std::string>& args) {
  std::string cmd = quote(cli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t total = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++total;
    pos += needle.size();
  }
  return total;
}

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Criterion {
  int index;
  std::string label;
  bool ok = false;
  std::string detail;  // failure diagnostics, stderr only
};

void report(const Criterion& c) {
  std::printf("[%s] criterion-%02d: %s\n", c.ok ? "PASS" : "FAIL", c.index, c.label.c_str());
  if (!c.ok && !c.detail.empty()) std::cerr << "criterion-" << c.index << ": " << c.detail << "\n";
}

std::string first_lines(const std::string& text, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n && pos != std::string::npos; ++i)
    pos = text.find('\n', pos + 1);
  return pos == std::string::npos ? text : text.substr(0, pos);
}

// ---- fixture pipeline -------------------------------------------------------

struct FixtureRuns {
  fs::path rotation_store;
  fs::path historical_store;
  fs::path pgv_dir;
  bool rotation_ok = false;
  bool historical_ok = false;
  bool pgv_ok = false;
  double rotation_seconds = 0.0;  // simulate + verify-share accounting
  std::string verify_out, split_out, conc_out, subset_out, subset_json_out;
  std::string cases_out, tiers_out, pgv_out;
};

FixtureRuns run_fixture_pipeline(const std::string& cli, const fs::path& fixtures,
                                 const fs::path& workdir) {
  FixtureRuns fx;
  fx.rotation_store = workdir / "rotation_store";
  fx.historical_store = workdir / "historical_store";
  fx.pgv_dir = workdir / "pgv_fixture";

  const std::string policy = (fixtures / "policy.conf").string();

  const auto t0 = clock_type::now();
  CliResult sim = run_cli(cli, {"simulate", "--spec", (fixtures / "rotation_aware.spec").string(),
                                "--out", fx.rotation_store.string(), "--policy", policy});
  CliResult verify = run_cli(cli, {"account", "--slice", fx.rotation_store.string(), "--report",
                                   "verify"});
  fx.rotation_seconds = seconds_since(t0);
  fx.rotation_ok = sim.exit_code == 0 && verify.exit_code == 0;
  fx.verify_out = verify.output;
  if (!fx.rotation_ok) fx.verify_out += "\n[simulate] " + first_lines(sim.output, 3);

  fx.split_out = run_cli(cli, {"account", "--slice", fx.rotation_store.string(), "--report",
                               "split"}).output;
  fx.conc_out = run_cli(cli, {"account", "--slice", fx.rotation_store.string(), "--report",
                              "concentration"}).output;
  fx.subset_out = run_cli(cli, {"account", "--slice", fx.rotation_store.string(), "--report",
                                "subset"}).output;
  fx.subset_json_out = run_cli(cli, {"account", "--slice", fx.rotation_store.string(), "--report",
                                     "subset", "--json"}).output;

  CliResult hist = run_cli(cli, {"simulate", "--spec",
                                 (fixtures / "historical_active.spec").string(), "--out",
                                 fx.historical_store.string(), "--policy", policy});
  fx.historical_ok = hist.exit_code == 0;
  fx.cases_out = run_cli(cli, {"account", "--slice", fx.historical_store.string(), "--report",
                               "cases"}).output;
  fx.tiers_out = run_cli(cli, {"account", "--slice", fx.historical_store.string(), "--report",
                               "tiers"}).output;

  CliResult pgv_sim = run_cli(cli, {"simulate", "--spec", (fixtures / "pgv.spec").string(),
                                    "--out", fx.pgv_dir.string()});
  fx.pgv_ok = pgv_sim.exit_code == 0;
  fx.pgv_out = run_cli(cli, {"pgv-eval", "--predictions",
                             (fx.pgv_dir / "predictions.jsonl").string(), "--finalized",
                             (fx.pgv_dir / "finalized.jsonl").string()}).output;
  return fx;
}

// ---- criteria 1-5: fixture figures -----------------------------------------

Criterion criterion_verify_shares(const FixtureRuns& fx) {
  Criterion c{1,
              "known-outcome verify share 1791/1800 = 99.5% and all-row 1791/1801 = 99.44%, "
              "simulated and accounted within 10s"};
  c.ok = fx.rotation_ok && contains(fx.verify_out, "rows: 1801") &&
         contains(fx.verify_out, "known_outcome: 1791/1800 = 99.5%") &&
         contains(fx.verify_out, "all_row: 1791/1801 = 99.44%") && fx.rotation_seconds < 10.0;
  if (!c.ok)
    c.detail = "elapsed " + std::to_string(fx.rotation_seconds) + "s, output:\n" +
               first_lines(fx.verify_out, 6);
  return c;
}

Criterion criterion_split_concentration(const FixtureRuns& fx) {
  Criterion c{2,
              "origin split 17 production (9 success, 8 blocked) vs 1784 synthetic/session "
              "(1782 success, 1 failed, 1 missing); concentration 1762 top-cluster rows, 39 "
              "outside"};
  c.ok = contains(fx.split_out,
                  "production: total 17 success 9 blocked 8 failed 0 skipped 0 missing 0") &&
         contains(fx.split_out,
                  "synthetic_session: total 1784 success 1782 blocked 0 failed 1 skipped 0 "
                  "missing 1") &&
         contains(fx.conc_out, "top_cluster: C0") &&
         contains(fx.conc_out, "top_cluster_rows: 1762") &&
         contains(fx.conc_out, "outside_rows: 39") && contains(fx.conc_out, "total_rows: 1801");
  if (!c.ok) c.detail = fx.split_out + fx.conc_out;
  return c;
}

Criterion criterion_subset(const FixtureRuns& fx) {
  Criterion c{3,
              "subset report: 69 production ids, verify 11/69 = 15.9%, 4 completed with 4/4 "
              "verified, and no global-coverage field"};
  bool structural = false;
  try {
    auto j = nlohmann::json::parse(fx.subset_json_out);
    structural = j.contains("coverage_note") && j.at("coverage_note").is_string();
    for (const auto& [key, value] : j.items())
      if (key != "coverage_note" && contains(key, "coverage")) structural = false;
  } catch (const std::exception&) {
    structural = false;
  }
  c.ok = contains(fx.subset_out, "production_task_ids: 69") &&
         contains(fx.subset_out, "with_verify: 11/69 = 15.9%") &&
         contains(fx.subset_out, "completed: 4") &&
         contains(fx.subset_out, "completed_with_verify: 4/4") && structural;
  if (!c.ok) c.detail = fx.subset_out + first_lines(fx.subset_json_out, 12);
  return c;
}

Criterion criterion_case_table(const FixtureRuns& fx) {
  Criterion c{4,
              "case table of 9 rows (7 blocked_production, 1 failed_synthetic_drill, 1 "
              "missing_outcome_artifact); tier proxy 785/8240 = 9.5% with 1 unknown-tier "
              "artifact kept separate"};
  c.ok = fx.historical_ok && contains(fx.cases_out, "cases: 9") &&
         count_of(fx.cases_out, "\tblocked_production\t") == 7 &&
         count_of(fx.cases_out, "\tfailed_synthetic_drill\t") == 1 &&
         count_of(fx.cases_out, "\tmissing_outcome_artifact\t") == 1 &&
         contains(fx.tiers_out, "tier standard: verify_rows 785 events 8240 ratio 9.5%") &&
         contains(fx.tiers_out, "tier unknown: verify_rows 1 events 5");
  if (!c.ok) c.detail = first_lines(fx.cases_out, 11) + fx.tiers_out;
  return c;
}

Criterion criterion_pgv_scores(const FixtureRuns& fx) {
  Criterion c{5,
              "advisory shadow scoring: n_all 2044, agreement 1526/1548 = 98.58%, "
              "false-success 0/1526 = 0.0%, blocked precision 2/518 = 0.39%, recall 2/2 "
              "non-estimative"};
  c.ok = fx.pgv_ok && contains(fx.pgv_out, "n_all: 2044") &&
         contains(fx.pgv_out, "rule_agreement: 1526/1548 = 98.58%") &&
         contains(fx.pgv_out, "false_success: 0/1526 = 0.0%") &&
         contains(fx.pgv_out, "blocked_precision: 2/518 = 0.39%") &&
         contains(fx.pgv_out, "recall: 2/2 (non-estimative)");
  if (!c.ok) c.detail = fx.pgv_out;
  return c;
}

// ---- criterion 6: fail-closed decision sweep -------------------------------

Criterion criterion_decision_sweep() {
  Criterion c{6,
              "decision mapping over all 8192 predicate-vector / skip / recoverability cases: "
              "success only on all-true, acceptance iff success, under 5s"};
  const auto t0 = clock_type::now();
  std::uint64_t cases = 0, violations = 0;
  for (unsigned mask = 0; mask < 2048; ++mask) {
    PredicateVector v;
    for (int i = 0; i < 11; ++i) v.phi[i] = (mask >> i) & 1u;
    for (int s = 0; s < 2; ++s) {
      for (int r = 0; r < 2; ++r) {
        SkipFlag skip;
        skip.sigma = s != 0;
        if (skip.sigma) skip.reason = "report_boundary_pass";
        const VerifyDecision d = decide(v, skip, r != 0);
        ++cases;
        const bool all = mask == 2047;
        bool ok = all ? d.outcome == Outcome::success
                  : skip.sigma ? d.outcome == Outcome::skipped
                  : r != 0     ? d.outcome == Outcome::blocked
                               : d.outcome == Outcome::failed;
        if (!all && d.outcome == Outcome::success) ok = false;
        if ((d.acceptance_status == AcceptanceStatus::accepted) !=
            (d.outcome == Outcome::success))
          ok = false;
        if (!ok) ++violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  c.ok = cases == 8192 && violations == 0 && secs < 5.0;
  if (!c.ok)
    c.detail = std::to_string(violations) + " violations over " + std::to_string(cases) +
               " cases in " + std::to_string(secs) + "s";
  return c;
}

// ---- criterion 7: read-only verification -----------------------------------

TaskRuntime mixed_state_runtime(std::uint64_t seed, ScenarioResult* result = nullptr) {
  WorkloadSpec spec;
  spec.seed = seed;
  spec.slice_label = slice_label::rotation_aware;
  spec.session_prefix = "M";
  spec.cluster_count = 4;
  spec.plan = {
      {"success", 8, Origin::synthetic, Tier::standard, "", 0, ""},
      {"success_completed", 4, Origin::production, Tier::standard, "", 0, ""},
      {"blocked_open", 4, Origin::production, Tier::standard, "owner_gap", 0, ""},
      {"blocked_recover_success", 4, Origin::production, Tier::standard, "weak_evidence", 0, ""},
      {"skip_then_success", 3, Origin::synthetic, Tier::standard, "", 0, ""},
      {"blocked_rollback_pending", 2, Origin::production, Tier::standard, "weak_evidence", 0, ""},
      {"failed_drill", 2, Origin::synthetic, Tier::standard, "partial_claim", 0, ""},
      {"noverify", 3, Origin::production, Tier::standard, "", 0, ""},
  };
  return run_scenario(generate_workload(spec), {}, false, result);
}

Criterion criterion_read_only_verify(TaskRuntime& rt) {
  Criterion c{7,
              "packet-store and work-product digests unchanged across 1000 randomized "
              "verification passes over mixed branch states"};
  const std::string store_before = rt.store().whole_store_digest();
  const std::string work_before = rt.work().whole_digest();

  std::vector<std::string> ids;
  for (const auto& [id, task] : rt.tasks()) ids.push_back(id);

  CounterRng rng(1207);
  std::uint64_t diffs = 0, passes = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string& id = ids[rng.bounded(ids.size())];
    try {
      verify_claim(rt.task(id), rt.store(), rt.ledger(), rt.work(), rt.config().policy,
                   rt.scribe());
      ++passes;
    } catch (const Error&) {
    }
    if (i % 200 == 199 && (rt.store().whole_store_digest() != store_before ||
                           rt.work().whole_digest() != work_before))
      ++diffs;
  }
  if (rt.store().whole_store_digest() != store_before) ++diffs;
  if (rt.work().whole_digest() != work_before) ++diffs;
  c.ok = diffs == 0 && passes == 1000;
  if (!c.ok)
    c.detail = std::to_string(diffs) + " digest diffs, " + std::to_string(passes) +
               "/1000 passes completed";
  return c;
}

// ---- criterion 8: composition identity + deletion mutants ------------------

Criterion criterion_replay_identity(std::vector<Event>& events_out) {
  Criterion c{8,
              "composition identity holds on 100 randomized sessions (with retry and recovery "
              "branches) and fails under every single verify-event deletion"};
  WorkloadSpec spec;
  spec.seed = 4242;
  spec.slice_label = slice_label::rotation_aware;
  spec.session_prefix = "R";
  spec.cluster_count = 6;
  spec.task_count = 100;
  spec.fault_rates = {{4, {1, 6}}, {5, {1, 8}}};
  spec.retry_rate = {1, 4};
  spec.skip_rate = {1, 10};
  spec.complete_rate = {1, 2};
  const ScenarioScript script = generate_workload(spec);

  bool has_retry = false, has_recovery = false;
  for (const auto& s : script.steps) {
    if (s.kind == "blocked_retry_success") has_retry = true;
    if (s.kind == "blocked_recover_success") has_recovery = true;
  }

  TaskRuntime rt = run_scenario(script, {});
  events_out = rt.ledger().all_events();

  std::map<std::string, std::vector<Event>> sessions;
  for (const auto& e : events_out) sessions[e.session_id].push_back(e);

  const ProcedurePack& pack = standard_pack();
  std::uint64_t holding = 0, mutants = 0, false_passes = 0;
  for (const auto& [sid, events] : sessions) {
    if (replay_accounting(events, pack).identity_holds) ++holding;
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].event_type != ev::verify_started &&
          events[i].event_type != ev::verify_completed)
        continue;
      std::vector<Event> mutated = events;
      mutated.erase(mutated.begin() + static_cast<std::ptrdiff_t>(i));
      ++mutants;
      if (replay_accounting(mutated, pack).identity_holds) ++false_passes;
    }
  }
  c.ok = sessions.size() == 100 && holding == 100 && has_retry && has_recovery && mutants > 0 &&
         false_passes == 0;
  if (!c.ok)
    c.detail = std::to_string(holding) + "/" + std::to_string(sessions.size()) +
               " sessions hold, retry=" + std::to_string(has_retry) +
               " recovery=" + std::to_string(has_recovery) + ", " +
               std::to_string(false_passes) + "/" + std::to_string(mutants) +
               " mutants passed";
  return c;
}

// ---- criterion 9: rotation transparency ------------------------------------

Criterion criterion_rotation_transparency() {
  Criterion c{9,
              "randomized rotation schedules reconstruct byte-identical sequences to a "
              "never-rotated ledger on 100 random append streams"};
  const char* types[] = {ev::task_created,          ev::claim_packet_created,
                         ev::evidence_packet_created, ev::ground_refreshed,
                         ev::verify_started,        ev::verify_completed,
                         ev::recovery_packet_created, ev::diagnostic_review,
                         ev::task_completed,        ev::rollback_enqueued};
  const Outcome outcomes[] = {Outcome::success, Outcome::blocked, Outcome::failed,
                              Outcome::skipped};
  auto dump = [](const Ledger& l) {
    std::string out;
    for (const auto& e : l.all_events()) out += event_line(e) + "\n";
    return out;
  };

  CounterRng rng(9090);
  std::uint64_t diffs = 0, rotations = 0;
  for (int stream = 0; stream < 100; ++stream) {
    CounterRng sub = rng.fork(static_cast<std::uint64_t>(stream));
    const std::uint64_t session_count = 1 + sub.bounded(5);
    const std::uint64_t event_count = 20 + sub.bounded(61);

    std::vector<std::string> sids;
    for (std::uint64_t s = 0; s < session_count; ++s)
      sids.push_back("S" + std::to_string(stream) + "_" + std::to_string(s));

    Ledger flat, rotating;
    for (std::uint64_t i = 0; i < event_count; ++i) {
      Event e;
      e.run_id = "stream" + std::to_string(stream);
      e.session_id = sids[sub.bounded(sids.size())];
      e.task_id = "T" + e.session_id;
      e.event_type = types[sub.bounded(10)];
      e.owner = lanes::coordinator;
      e.origin = Origin::synthetic;
      e.cluster_id = "C1";
      if (e.event_type == ev::verify_completed) e.outcome = outcomes[sub.bounded(4)];
      flat.append(e);
      rotating.append(e);
      if (!rotating.segments().back().events.empty() && sub.chance(1, 5)) {
        rotating.rotate();
        ++rotations;
      }
    }
    if (dump(flat) != dump(rotating)) ++diffs;
    for (const auto& sid : sids) {
      const auto a = flat.reconstruct(sid);
      const auto b = rotating.reconstruct(sid);
      if (a.size() != b.size()) {
        ++diffs;
        continue;
      }
      for (std::size_t i = 0; i < a.size(); ++i)
        if (event_line(a[i]) != event_line(b[i])) ++diffs;
    }
  }
  c.ok = diffs == 0 && rotations > 0;
  if (!c.ok)
    c.detail = std::to_string(diffs) + " diffs across streams (" + std::to_string(rotations) +
               " rotations exercised)";
  return c;
}

// ---- criterion 10: branch legality + public trace --------------------------

struct HandEdge {
  BranchState from;
  const char* event_type;
  std::optional<Outcome> outcome;
  BranchState to;
};

// Independently written legal-transition table; everything absent is illegal.
const std::vector<HandEdge>& hand_table() {
  using B = BranchState;
  static const std::vector<HandEdge> table = {
      {B::in_progress, ev::claim_packet_created, {}, B::claim_ready},
      {B::in_progress, ev::ground_refreshed, {}, B::in_progress},
      {B::in_progress, ev::diagnostic_review, {}, B::in_progress},
      {B::in_progress, ev::escalation_board, {}, B::in_progress},
      {B::in_progress, ev::verify_started, {}, B::verify_pending},
      {B::in_progress, ev::task_blocked, {}, B::blocked},
      {B::in_progress, ev::task_failed, {}, B::failed},
      {B::claim_ready, ev::evidence_packet_created, {}, B::claim_ready},
      {B::claim_ready, ev::ground_refreshed, {}, B::claim_ready},
      {B::claim_ready, ev::diagnostic_review, {}, B::claim_ready},
      {B::claim_ready, ev::escalation_board, {}, B::claim_ready},
      {B::claim_ready, ev::verify_started, {}, B::verify_pending},
      {B::claim_ready, ev::task_blocked, {}, B::blocked},
      {B::claim_ready, ev::task_failed, {}, B::failed},
      {B::verify_pending, ev::verify_completed, Outcome::success, B::verified_success},
      {B::verify_pending, ev::verify_completed, Outcome::blocked, B::blocked},
      {B::verify_pending, ev::verify_completed, Outcome::failed, B::failed},
      {B::verify_pending, ev::verify_completed, Outcome::skipped, B::claim_ready},
      {B::verified_success, ev::task_completed, {}, B::verified_success},
      {B::blocked, ev::recovery_packet_created, {}, B::recovered},
      {B::blocked, ev::rollback_enqueued, {}, B::blocked},
      {B::blocked, ev::rollback_approved, {}, B::blocked},
      {B::blocked, ev::rollback_denied, {}, B::blocked},
      {B::blocked, ev::rollback_failed, {}, B::blocked},
      {B::blocked, ev::rollback_executed, {}, B::rolled_back},
      {B::failed, ev::rollback_enqueued, {}, B::failed},
      {B::failed, ev::rollback_approved, {}, B::failed},
      {B::failed, ev::rollback_denied, {}, B::failed},
      {B::failed, ev::rollback_failed, {}, B::failed},
      {B::failed, ev::rollback_executed, {}, B::rolled_back},
      {B::recovered, ev::evidence_packet_created, {}, B::recovered},
      {B::recovered, ev::ground_refreshed, {}, B::recovered},
      {B::recovered, ev::recovery_closed, {}, B::recovered},
      {B::recovered, ev::diagnostic_review, {}, B::recovered},
      {B::recovered, ev::escalation_board, {}, B::recovered},
      {B::recovered, ev::claim_packet_created, {}, B::claim_ready},
      {B::recovered, ev::verify_started, {}, B::verify_pending},
      {B::rolled_back, ev::claim_packet_created, {}, B::claim_ready},
  };
  return table;
}

std::optional<BranchState> hand_lookup(BranchState from, const std::string& type,
                                       const std::optional<Outcome>& outcome) {
  for (const auto& edge : hand_table()) {
    if (edge.from != from || type != edge.event_type) continue;
    if (std::string_view(edge.event_type) == ev::verify_completed) {
      if (outcome && edge.outcome == *outcome) return edge.to;
      continue;  // outcome-less completion never matches
    }
    return edge.to;  // non-completion edges ignore the outcome annotation
  }
  return std::nullopt;
}

Criterion criterion_branch_legality() {
  Criterion c{10,
              "exhaustive branch-state sweep matches the independent legal-transition table, "
              "and the recovery scenario surfaces exactly its five-event public trace"};
  const BranchState states[] = {BranchState::in_progress,      BranchState::claim_ready,
                                BranchState::verify_pending,   BranchState::verified_success,
                                BranchState::blocked,          BranchState::failed,
                                BranchState::recovered,        BranchState::rolled_back};
  const char* types[] = {ev::task_created,          ev::claim_packet_created,
                         ev::evidence_packet_created, ev::ground_refreshed,
                         ev::verify_started,        ev::verify_completed,
                         ev::recovery_packet_created, ev::recovery_closed,
                         ev::task_completed,        ev::task_blocked,
                         ev::task_failed,           ev::diagnostic_review,
                         ev::escalation_board,      ev::rollback_enqueued,
                         ev::rollback_approved,     ev::rollback_denied,
                         ev::rollback_executed,     ev::rollback_failed};
  const std::optional<Outcome> outcome_options[] = {
      std::nullopt, Outcome::success, Outcome::blocked, Outcome::failed, Outcome::skipped};

  std::uint64_t combos = 0, mismatches = 0, legal = 0;
  for (BranchState from : states) {
    for (const char* type : types) {
      for (const auto& outcome : outcome_options) {
        ++combos;
        const auto want = hand_lookup(from, type, outcome);
        const auto got = next_branch(from, type, outcome);
        if (want != got) ++mismatches;
        if (got) ++legal;
      }
    }
  }

  // A faulted session that recovers: nine ledger events, five visible ones.
  ScenarioScript script;
  script.seed = 55;
  script.slice_label = slice_label::rotation_aware;
  script.session_prefix = "T";
  script.steps = {{"blocked_recover_success", Origin::production, Tier::standard, "owner_gap", 0,
                   "C1"}};
  ScenarioResult result;
  TaskRuntime rt = run_scenario(script, {}, false, &result);
  const auto session = rt.ledger().reconstruct(rt.task(result.task_ids.at(0)).session_id);
  const auto trace = public_trace(session);

  bool trace_ok = session.size() == 9 && trace.size() == 5;
  const char* expected_types[] = {ev::task_created, ev::claim_packet_created,
                                  ev::verify_completed, ev::recovery_packet_created,
                                  ev::verify_completed};
  for (std::size_t i = 0; trace_ok && i < trace.size(); ++i)
    trace_ok = trace[i].event_type == expected_types[i];
  trace_ok = trace_ok && trace[2].outcome == Outcome::blocked &&
             trace[4].outcome == Outcome::success;

  c.ok = combos == 720 && mismatches == 0 && legal == 34 * 5 + 4 && trace_ok;
  if (!c.ok)
    c.detail = std::to_string(mismatches) + " table mismatches, " + std::to_string(legal) +
               " legal combos, trace_ok=" + std::to_string(trace_ok) + " (trace " +
               std::to_string(trace.size()) + " of " + std::to_string(session.size()) +
               " events)";
  return c;
}

// ---- criterion 11: advisory shadow neutrality ------------------------------

std::string decision_stream(const ScenarioResult& r) {
  std::string out;
  for (const auto& id : r.task_ids) {
    const VerifyDecision& d = r.decisions.at(id);
    out += id + "|" + to_string(d.outcome) + "|" + to_string(d.acceptance_status) + "|" +
           std::to_string(d.blocking_predicate) + "|" + to_string(d.blocked_reason_class) + "|";
    for (bool b : d.predicate_vector.phi) out += b ? '1' : '0';
    if (d.missing_packet_type) out += std::string("|") + to_string(*d.missing_packet_type);
    out += "\n";
  }
  return out;
}

Criterion criterion_shadow_neutrality() {
  Criterion c{11,
              "verification decision stream and ledger bit-identical with the advisory shadow "
              "enabled vs disabled over 1000 simulated tasks"};
  WorkloadSpec spec;
  spec.seed = 777;
  spec.slice_label = slice_label::rotation_aware;
  spec.session_prefix = "N";
  spec.cluster_count = 5;
  spec.task_count = 1000;
  spec.fault_rates = {{4, {1, 8}}, {9, {1, 16}}};
  spec.retry_rate = {1, 5};
  spec.skip_rate = {1, 12};
  spec.complete_rate = {1, 2};
  const ScenarioScript script = generate_workload(spec);

  ScenarioResult plain, shadowed;
  TaskRuntime rt_plain = run_scenario(script, {}, false, &plain);
  TaskRuntime rt_shadow = run_scenario(script, {}, true, &shadowed);

  auto dump = [](const TaskRuntime& rt) {
    std::string out;
    for (const auto& e : rt.ledger().all_events()) out += event_line(e) + "\n";
    return out;
  };
  const bool decisions_equal = decision_stream(plain) == decision_stream(shadowed);
  const bool ledgers_equal = dump(rt_plain) == dump(rt_shadow);
  c.ok = plain.task_ids.size() == 1000 && decisions_equal && ledgers_equal &&
         rt_plain.pgv_records().empty() && !rt_shadow.pgv_records().empty();
  if (!c.ok)
    c.detail = "tasks=" + std::to_string(plain.task_ids.size()) +
               " decisions_equal=" + std::to_string(decisions_equal) +
               " ledgers_equal=" + std::to_string(ledgers_equal) +
               " shadow_records=" + std::to_string(rt_shadow.pgv_records().size());
  return c;
}

// ---- criterion 12: rollback governance -------------------------------------

Criterion criterion_rollback_governance(const FixtureRuns& fx,
                                        const std::vector<Event>& extra_events) {
  Criterion c{12,
              "generated ledgers contain no rollback execution lacking a prior named-reviewer "
              "approval, and executed vs failed paths log their distinct events"};
  std::vector<Event> events;
  try {
    events = Ledger::load(fx.rotation_store).all_events();
  } catch (const std::exception& e) {
    c.detail = std::string("cannot load fixture ledger: ") + e.what();
    return c;
  }
  events.insert(events.end(), extra_events.begin(), extra_events.end());

  std::uint64_t executed = 0, failed = 0, unapproved = 0;
  std::map<std::string, std::vector<std::uint64_t>> approvals;  // task -> approval seqs
  for (const auto& e : events)
    if (e.event_type == ev::rollback_approved && !e.owner.empty())
      approvals[e.task_id].push_back(e.seq);

  for (const auto& e : events) {
    const bool exec = e.event_type == ev::rollback_executed;
    const bool fail_exec = e.event_type == ev::rollback_failed;
    if (!exec && !fail_exec) continue;
    exec ? ++executed : ++failed;
    bool approved_before = false;
    for (std::uint64_t seq : approvals[e.task_id])
      if (seq < e.seq) approved_before = true;
    if (!approved_before) ++unapproved;
  }
  c.ok = unapproved == 0 && executed > 0 && failed > 0 &&
         std::string(ev::rollback_executed) != ev::rollback_failed;
  if (!c.ok)
    c.detail = std::to_string(unapproved) + " unapproved executions; executed=" +
               std::to_string(executed) + " failed=" + std::to_string(failed);
  return c;
}

Criterion guarded(int index, const std::string& label, Criterion (*fn)()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    Criterion c{index, label};
    c.detail = std::string("exception: ") + e.what();
    return c;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli, fixtures, workdir;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") cli = argv[i + 1];
    else if (flag == "--fixtures") fixtures = argv[i + 1];
    else if (flag == "--workdir") workdir = argv[i + 1];
  }
  if (cli.empty() || fixtures.empty() || workdir.empty()) {
    std::cerr << "usage: acceptance_tests --cli <tool> --fixtures <dir> --workdir <dir>\n";
    return 2;
  }
  std::error_code ec;
  fs::remove_all(workdir, ec);
  fs::create_directories(workdir);

  const FixtureRuns fx = run_fixture_pipeline(cli, fixtures, workdir);

  std::vector<Criterion> results;
  results.push_back(criterion_verify_shares(fx));
  results.push_back(criterion_split_concentration(fx));
  results.push_back(criterion_subset(fx));
  results.push_back(criterion_case_table(fx));
  results.push_back(criterion_pgv_scores(fx));
  results.push_back(guarded(6, "decision mapping sweep", criterion_decision_sweep));

  std::vector<Event> replay_events;
  try {
    TaskRuntime mixed = mixed_state_runtime(1106);
    results.push_back(criterion_read_only_verify(mixed));
  } catch (const std::exception& e) {
    Criterion c{7, "read-only verification sweep"};
    c.detail = std::string("exception: ") + e.what();
    results.push_back(c);
  }
  try {
    results.push_back(criterion_replay_identity(replay_events));
  } catch (const std::exception& e) {
    Criterion c{8, "composition identity sweep"};
    c.detail = std::string("exception: ") + e.what();
    results.push_back(c);
  }
  results.push_back(guarded(9, "rotation transparency sweep", criterion_rotation_transparency));
  results.push_back(guarded(10, "branch legality sweep", criterion_branch_legality));
  results.push_back(guarded(11, "advisory shadow neutrality", criterion_shadow_neutrality));
  try {
    results.push_back(criterion_rollback_governance(fx, replay_events));
  } catch (const std::exception& e) {
    Criterion c{12, "rollback governance scan"};
    c.detail = std::string("exception: ") + e.what();
    results.push_back(c);
  }

  bool all_ok = true;
  for (const auto& c : results) {
    report(c);
    all_ok = all_ok && c.ok;
  }
  return all_ok ? 0 : 1;
}
