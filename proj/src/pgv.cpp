#include "gatekit/pgv.hpp"

#include <fstream>
#include <set>

#include "gatekit/errors.hpp"

namespace gatekit {

using nlohmann::json;
using nlohmann::ordered_json;

PgvRecord pgv_check(const VerifyContext& ctx, std::string sample_id) {
  PgvRecord r;
  r.sample_id = std::move(sample_id);
  auto hit = [&](const char* rule) { r.rule_hits.emplace_back(rule); };

  const bool ownership_ok = ctx.header && ctx.header->ownership_complete() && ctx.claim &&
                            !ctx.claim->owner.empty() && !ctx.claim->accountable.empty() &&
                            ctx.claim->owner == ctx.header->owner &&
                            ctx.claim->accountable == ctx.header->accountable;
  if (!ownership_ok) hit(pgv_rule::ownership_unpopulated);
  if (!ctx.claim) hit(pgv_rule::claim_absent);
  if (!ctx.evidence) hit(pgv_rule::evidence_absent);
  if (ctx.claim && ctx.claim->claimed_state != ClaimedState::done)
    hit(pgv_rule::partial_as_done);
  if (!ctx.ground ||
      (!ctx.ground->open_questions.empty() && !ctx.diagnostic_review_seen))
    hit(pgv_rule::unclear_without_diagnostic);
  if (ctx.freshness != FreshnessVerdict::fresh) hit(pgv_rule::stale_ground);
  if (ctx.recovery_open) hit(pgv_rule::active_recovery);

  r.prediction =
      r.rule_hits.empty() ? PgvPrediction::safe_to_proceed : PgvPrediction::blocked_risky;
  return r;
}

PgvEvaluation shadow_evaluate(const std::vector<PgvRecord>& predictions,
                              const FinalizedOutcomes& finalized) {
  std::map<std::string, PgvPrediction> pool;
  for (const auto& p : predictions) {
    if (!pool.emplace(p.sample_id, p.prediction).second)
      fail(Errc::denominator_mismatch,
           "sample '" + p.sample_id + "' duplicated; prediction partition no longer covers the pool");
  }
  for (const auto& [id, good] : finalized) {
    (void)good;
    if (!pool.count(id))
      fail(Errc::denominator_mismatch, "finalized sample '" + id + "' outside the prediction set");
  }

  PgvEvaluation e;
  e.denominators.n_all = pool.size();
  e.denominators.n_final = finalized.size();
  std::uint64_t agree = 0, safe_bad = 0, blocked_bad = 0, actual_bad = 0;
  for (const auto& [id, pred] : pool) {
    if (pred == PgvPrediction::safe_to_proceed)
      ++e.denominators.n_safe_pred;
    else
      ++e.denominators.n_blocked_pred;
    auto f = finalized.find(id);
    if (f == finalized.end()) continue;
    const bool good = f->second;
    if (!good) ++actual_bad;
    if (pred == PgvPrediction::safe_to_proceed) {
      if (good)
        ++agree;
      else
        ++safe_bad;
    } else {
      if (!good) {
        ++agree;
        ++blocked_bad;
      }
    }
  }
  e.rule_agreement = make_share(agree, e.denominators.n_final, 2);
  e.false_success = make_share(safe_bad, e.denominators.n_safe_pred, 1);
  e.blocked_precision = make_share(blocked_bad, e.denominators.n_blocked_pred, 2);
  e.recall_caught = blocked_bad;
  e.recall_actual = actual_bad;
  e.recall_non_estimative = true;
  return e;
}

ordered_json pgv_record_json(const PgvRecord& r) {
  ordered_json j;
  j["sample_id"] = r.sample_id;
  j["prediction"] = to_string(r.prediction);
  j["rule_hits"] = r.rule_hits;
  return j;
}

PgvRecord pgv_record_from_json(const json& j) {
  PgvRecord r;
  r.sample_id = j.at("sample_id").get<std::string>();
  r.prediction = pgv_prediction_from(j.at("prediction").get<std::string>());
  r.rule_hits = j.at("rule_hits").get<std::vector<std::string>>();
  return r;
}

void write_pgv_records(const std::filesystem::path& file, const std::vector<PgvRecord>& records) {
  std::ofstream out(file);
  if (!out) fail(Errc::invalid_input, "cannot write " + file.string());
  for (const auto& r : records) out << pgv_record_json(r).dump() << '\n';
}

std::vector<PgvRecord> read_pgv_records(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(Errc::invalid_input, "cannot read " + file.string());
  std::vector<PgvRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(pgv_record_from_json(json::parse(line)));
  }
  return out;
}

void write_finalized(const std::filesystem::path& file, const FinalizedOutcomes& finalized) {
  std::ofstream out(file);
  if (!out) fail(Errc::invalid_input, "cannot write " + file.string());
  for (const auto& [id, good] : finalized) {
    ordered_json j;
    j["sample_id"] = id;
    j["finalized"] = good ? "good" : "bad";
    out << j.dump() << '\n';
  }
}

FinalizedOutcomes read_finalized(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(Errc::invalid_input, "cannot read " + file.string());
  FinalizedOutcomes out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = json::parse(line);
    const std::string verdict = j.at("finalized").get<std::string>();
    if (verdict != "good" && verdict != "bad")
      fail(Errc::invalid_input, "finalized verdict '" + verdict + "'");
    out[j.at("sample_id").get<std::string>()] = (verdict == "good");
  }
  return out;
}

ordered_json pgv_evaluation_json(const PgvEvaluation& e) {
  ordered_json j;
  j["denominators"] = {{"n_all", e.denominators.n_all},
                       {"n_final", e.denominators.n_final},
                       {"n_safe_pred", e.denominators.n_safe_pred},
                       {"n_blocked_pred", e.denominators.n_blocked_pred}};
  j["rule_agreement"] = share_json(e.rule_agreement);
  j["false_success"] = share_json(e.false_success);
  j["blocked_precision"] = share_json(e.blocked_precision);
  j["blocked_recall_note"] = {{"caught", e.recall_caught},
                              {"actual", e.recall_actual},
                              {"non_estimative", e.recall_non_estimative}};
  return j;
}

}  // namespace gatekit
