#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gatekit/accounting.hpp"
#include "gatekit/errors.hpp"
#include "gatekit/lifecycle.hpp"
#include "gatekit/pgv.hpp"
#include "gatekit/replay.hpp"
#include "gatekit/runtime.hpp"
#include "gatekit/scenario.hpp"

using namespace gatekit;
namespace fs = std::filesystem;

namespace {

PolicyConfig load_policy(const std::string& file) {
  return file.empty() ? PolicyConfig{} : PolicyConfig::from_file(file);
}

std::string share_line(const Share& s) {
  return std::to_string(s.numerator) + "/" + std::to_string(s.denominator) + " = " +
         s.rendered + "%";
}

struct SliceInput {
  std::vector<Event> events;
  std::string label;
};

// A store directory (ledger segments + manifest) or a flat event file.
SliceInput load_slice(const std::string& path, const std::string& label_flag,
                      bool allow_partial) {
  SliceInput in;
  fs::path p(path);
  if (fs::is_directory(p)) {
    if (fs::exists(p / "PARTIAL") && !allow_partial)
      fail(Errc::invalid_input,
           "store " + path + " is marked PARTIAL; pass --allow-partial to read it anyway");
    in.events = Ledger::load(p).all_events();
    std::ifstream mf(p / "manifest.json");
    if (mf) {
      auto j = nlohmann::json::parse(mf);
      if (j.contains("slice_label")) in.label = j.at("slice_label").get<std::string>();
    }
  } else {
    in.events = read_event_lines(p);
  }
  if (!label_flag.empty()) in.label = label_flag;
  if (in.label.empty()) in.label = slice_label::rotation_aware;
  return in;
}

int run_simulate(const std::string& spec_file, long long seed_override, const std::string& out,
                 const std::string& policy_file) {
  WorkloadSpec spec = WorkloadSpec::from_file(spec_file);
  if (seed_override >= 0) spec.seed = static_cast<std::uint64_t>(seed_override);
  simulate_to_dir(spec, out, load_policy(policy_file));
  if (spec.spec_kind == "pgv") {
    std::cout << "pgv fixture written: " << out << "\n";
    return 0;
  }
  std::ifstream mf(fs::path(out) / "manifest.json");
  auto manifest = nlohmann::json::parse(mf);
  std::cout << "out: " << out << "\n"
            << "tasks: " << manifest.at("task_count").get<std::uint64_t>() << "\n"
            << "events: " << manifest.at("event_count").get<std::uint64_t>() << "\n";
  return 0;
}

int run_verify(const std::string& dir, const std::string& task_id,
               const std::string& policy_file) {
  TaskRuntime rt = TaskRuntime::load(dir, load_policy(policy_file));
  VerifyDecision d = rt.run_verify(task_id);
  PublicReport report = rt.report(task_id, d);
  nlohmann::ordered_json j;
  j["task_id"] = task_id;
  j["outcome"] = to_string(d.outcome);
  j["acceptance_status"] = to_string(d.acceptance_status);
  j["blocking_predicate"] = d.blocking_predicate;
  j["blocked_reason_class"] = to_string(d.blocked_reason_class);
  auto predicates = nlohmann::ordered_json::array();
  for (bool b : d.predicate_vector.phi) predicates.push_back(b);
  j["predicates"] = predicates;
  if (d.missing_packet_type) j["missing_packet_type"] = to_string(*d.missing_packet_type);
  j["owner_of_next_action"] = report.owner_of_next_action;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_account(const std::string& path, const std::string& report, const std::string& label,
                bool allow_partial, bool as_json) {
  SliceInput in = load_slice(path, label, allow_partial);
  VerifySlice slice = slice_from_events(in.events, in.label);

  if (report == "verify") {
    AccountingReport known = verify_success_share(slice, DenominatorPolicy::known_outcome, 1);
    AccountingReport all = verify_success_share(slice, DenominatorPolicy::all_row, 2);
    if (as_json) {
      nlohmann::ordered_json j;
      j["slice"] = slice.slice_label;
      j["rows"] = slice.rows.size();
      j["known_outcome"] = verify_share_json(known);
      j["all_row"] = verify_share_json(all);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "slice: " << slice.slice_label << "\n"
                << "rows: " << slice.rows.size() << "\n"
                << "known_outcome: " << share_line(known.share) << "\n"
                << "all_row: " << share_line(all.share) << "\n";
    }
    return 0;
  }
  if (report == "split") {
    SplitReport r = production_split(slice);
    if (as_json) {
      std::cout << split_json(r).dump(2) << "\n";
      return 0;
    }
    auto line = [](const char* name, const OutcomeCounts& c) {
      std::cout << name << ": total " << c.total << " success " << c.success << " blocked "
                << c.blocked << " failed " << c.failed << " skipped " << c.skipped
                << " missing " << c.missing << "\n";
    };
    line("production", r.production);
    line("synthetic_session", r.synthetic_session);
    return 0;
  }
  if (report == "concentration") {
    ConcentrationReport r = concentration(slice);
    if (as_json) {
      std::cout << concentration_json(r).dump(2) << "\n";
      return 0;
    }
    std::cout << "top_cluster: " << r.top_cluster_id << "\n"
              << "top_cluster_rows: " << r.top_cluster_rows << "\n"
              << "outside_rows: " << r.outside_rows << "\n"
              << "total_rows: " << r.total_rows << "\n";
    return 0;
  }
  if (report == "subset") {
    SubsetReport r = subset_accounting(in.events);
    if (as_json) {
      std::cout << subset_json(r).dump(2) << "\n";
      return 0;
    }
    std::cout << "production_task_ids: " << r.production_task_ids << "\n";
    if (r.with_verify_share.denominator == 0)
      std::cout << "with_verify: " << r.with_verify << "\n";
    else
      std::cout << "with_verify: " << share_line(r.with_verify_share) << "\n";
    std::cout << "completed: " << r.completed << "\n"
              << "completed_with_verify: " << r.completed_with_verify << "/" << r.completed
              << "\n"
              << "coverage: " << r.coverage_note << "\n";
    return 0;
  }
  if (report == "cases") {
    std::vector<CaseRow> rows = case_table(slice);
    if (as_json) {
      std::cout << case_table_json(rows).dump(2) << "\n";
      return 0;
    }
    std::cout << "cases: " << rows.size() << "\n";
    for (const auto& r : rows)
      std::cout << r.task_id << "\t" << r.classification << "\t" << r.blocked_reason << "\n";
    return 0;
  }
  if (report == "tiers") {
    TierReport r = tier_overhead_proxy(in.events);
    if (as_json) {
      std::cout << tier_report_json(r).dump(2) << "\n";
      return 0;
    }
    for (const auto& [tier, bucket] : r.tiers)
      std::cout << "tier " << tier << ": verify_rows " << bucket.verify_rows << " events "
                << bucket.total_events << " ratio " << bucket.ratio.rendered << "%\n";
    return 0;
  }
  fail(Errc::invalid_input, "unknown report '" + report + "'");
}

int run_pgv_eval(const std::string& predictions_file, const std::string& finalized_file,
                 bool as_json) {
  std::vector<PgvRecord> predictions = read_pgv_records(predictions_file);
  FinalizedOutcomes finalized = read_finalized(finalized_file);
  PgvEvaluation e = shadow_evaluate(predictions, finalized);
  if (as_json) {
    std::cout << pgv_evaluation_json(e).dump(2) << "\n";
    return 0;
  }
  std::cout << "n_all: " << e.denominators.n_all << "\n"
            << "n_final: " << e.denominators.n_final << "\n"
            << "n_safe_pred: " << e.denominators.n_safe_pred << "\n"
            << "n_blocked_pred: " << e.denominators.n_blocked_pred << "\n"
            << "rule_agreement: " << share_line(e.rule_agreement) << "\n"
            << "false_success: " << share_line(e.false_success) << "\n"
            << "blocked_precision: " << share_line(e.blocked_precision) << "\n"
            << "recall: " << e.recall_caught << "/" << e.recall_actual << " (non-estimative)\n";
  return 0;
}

int run_replay_check(const std::string& path, const std::string& session,
                     const std::string& pack_name, bool strict, bool allow_partial,
                     bool as_json) {
  SliceInput in = load_slice(path, "", allow_partial);
  PackRegistry registry = PackRegistry::with_builtin();
  const ProcedurePack& pack = registry.get(pack_name);

  std::map<std::string, std::vector<Event>> sessions;
  for (const auto& e : in.events) sessions[e.session_id].push_back(e);
  if (!session.empty()) {
    auto it = sessions.find(session);
    if (it == sessions.end()) fail(Errc::invalid_input, "unknown session '" + session + "'");
    ReplayReport r = replay_accounting(it->second, pack, strict);
    std::cout << replay_report_json(r).dump(2) << "\n";
    return r.identity_holds ? 0 : 2;
  }

  std::uint64_t ok = 0, failed = 0;
  auto reports = nlohmann::ordered_json::array();
  for (const auto& [sid, events] : sessions) {
    ReplayReport r = replay_accounting(events, pack, strict);
    if (as_json) reports.push_back(replay_report_json(r));
    if (r.identity_holds) {
      ++ok;
    } else {
      ++failed;
      if (!as_json)
        std::cout << "FAIL " << sid << ": observed " << r.observed << " expected " << r.expected
                  << "\n";
    }
  }
  if (as_json)
    std::cout << reports.dump(2) << "\n";
  else
    std::cout << "sessions: " << sessions.size() << " ok: " << ok << " failed: " << failed
              << "\n";
  return failed == 0 ? 0 : 2;
}

void print_item(const RollbackQueueItem& item) {
  std::cout << item.item_id << "\ttask " << item.task_id << "\ttrigger "
            << to_string(item.trigger) << "\tstatus " << to_string(item.status) << "\treviewer "
            << (item.reviewer ? *item.reviewer : "-") << "\n";
}

int run_queue_list(const std::string& dir) {
  RollbackQueue queue = RollbackQueue::load(fs::path(dir) / "rollback_queue.jsonl");
  std::cout << "items: " << queue.items().size() << "\n";
  for (const auto& item : queue.items()) print_item(item);
  return 0;
}

int run_queue_review(const std::string& dir, const std::string& item_id,
                     const std::string& reviewer, bool approve, bool fail_exec,
                     const std::string& policy_file) {
  TaskRuntime rt = TaskRuntime::load(dir, load_policy(policy_file));
  const RollbackQueueItem& item = rt.review_rollback(item_id, reviewer, approve, !fail_exec);
  print_item(item);
  rt.save(dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verify-gated completion admission control toolkit"};
  app.require_subcommand(1);

  std::string spec_file, out_dir, policy_file;
  long long seed_override = -1;
  auto* sim = app.add_subcommand("simulate", "expand a workload spec and run it to a store");
  sim->add_option("--spec", spec_file, "workload spec (json)")
      ->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--seed", seed_override, "override the spec seed");
  sim->add_option("--out", out_dir, "output store directory")->required();
  sim->add_option("--policy", policy_file, "policy file")->check(CLI::ExistingFile);

  std::string verify_dir, verify_task, verify_policy;
  auto* ver = app.add_subcommand("verify", "run the admission gate for one task in a store");
  ver->add_option("--dir", verify_dir, "store directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  ver->add_option("--task", verify_task, "task id")->required();
  ver->add_option("--policy", verify_policy, "policy file")->check(CLI::ExistingFile);

  std::string acct_path, acct_report = "verify", acct_label;
  bool acct_partial = false, acct_json = false;
  auto* acct = app.add_subcommand("account", "outcome accounting over a verify slice");
  acct->add_option("--slice", acct_path, "store directory or event file")->required();
  acct->add_option("--report", acct_report, "verify|split|concentration|subset|cases|tiers")
      ->check(CLI::IsMember({"verify", "split", "concentration", "subset", "cases", "tiers"}));
  acct->add_option("--label", acct_label, "slice label override for flat event files");
  acct->add_flag("--allow-partial", acct_partial, "read stores marked PARTIAL");
  acct->add_flag("--json", acct_json, "machine-readable output");

  std::string pgv_predictions, pgv_finalized;
  bool pgv_json = false;
  auto* pgv = app.add_subcommand("pgv-eval", "score advisory predictions against outcomes");
  pgv->add_option("--predictions", pgv_predictions, "prediction records (jsonl)")
      ->required()
      ->check(CLI::ExistingFile);
  pgv->add_option("--finalized", pgv_finalized, "finalized outcomes (jsonl)")
      ->required()
      ->check(CLI::ExistingFile);
  pgv->add_flag("--json", pgv_json, "machine-readable output");

  std::string replay_path, replay_session, replay_pack = "standard_v1";
  bool replay_strict = false, replay_partial = false, replay_json = false;
  auto* replay = app.add_subcommand("replay-check", "per-session composition identity check");
  replay->add_option("--dir", replay_path, "store directory or event file")->required();
  replay->add_option("--session", replay_session, "check one session and print its report");
  replay->add_option("--pack", replay_pack, "procedure pack name");
  replay->add_flag("--strict", replay_strict, "compare against the bare template length");
  replay->add_flag("--allow-partial", replay_partial, "read stores marked PARTIAL");
  replay->add_flag("--json", replay_json, "machine-readable output");

  std::string q_dir, q_item, q_reviewer, q_policy;
  bool q_fail_exec = false;
  auto* queue = app.add_subcommand("rollback-queue", "inspect or review queued rollbacks");
  queue->require_subcommand(1);
  auto* q_list = queue->add_subcommand("list", "list queue items");
  q_list->add_option("--dir", q_dir, "store directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  auto* q_approve = queue->add_subcommand("approve", "approve and execute an item");
  q_approve->add_option("--dir", q_dir, "store directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  q_approve->add_option("--item", q_item, "queue item id")->required();
  q_approve->add_option("--reviewer", q_reviewer, "reviewer name")->required();
  q_approve->add_flag("--fail-exec", q_fail_exec, "simulate a failing execution");
  q_approve->add_option("--policy", q_policy, "policy file")->check(CLI::ExistingFile);
  auto* q_deny = queue->add_subcommand("deny", "deny an item");
  q_deny->add_option("--dir", q_dir, "store directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  q_deny->add_option("--item", q_item, "queue item id")->required();
  q_deny->add_option("--reviewer", q_reviewer, "reviewer name")->required();
  q_deny->add_option("--policy", q_policy, "policy file")->check(CLI::ExistingFile);

  auto* trans = app.add_subcommand("transitions", "print the branch transition table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return run_simulate(spec_file, seed_override, out_dir, policy_file);
    if (*ver) return run_verify(verify_dir, verify_task, verify_policy);
    if (*acct) return run_account(acct_path, acct_report, acct_label, acct_partial, acct_json);
    if (*pgv) return run_pgv_eval(pgv_predictions, pgv_finalized, pgv_json);
    if (*replay)
      return run_replay_check(replay_path, replay_session, replay_pack, replay_strict,
                              replay_partial, replay_json);
    if (*q_list) return run_queue_list(q_dir);
    if (*q_approve) return run_queue_review(q_dir, q_item, q_reviewer, true, q_fail_exec, q_policy);
    if (*q_deny) return run_queue_review(q_dir, q_item, q_reviewer, false, false, q_policy);
    if (*trans) {
      std::cout << transition_table_text();
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
