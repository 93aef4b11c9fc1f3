#include "gatekit/accounting.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gatekit/errors.hpp"

namespace gatekit {

using nlohmann::ordered_json;

std::string render_percent(std::uint64_t num, std::uint64_t den, int decimals) {
  if (den == 0) fail(Errc::empty_slice, "zero denominator");
  if (decimals < 0) decimals = 0;
  std::uint64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // Half-up at the last kept digit, integer arithmetic throughout.
  const std::uint64_t v = (2 * num * 100 * scale + den) / (2 * den);
  std::string whole = std::to_string(v / scale);
  if (decimals == 0) return whole;
  std::string frac = std::to_string(v % scale);
  frac.insert(frac.begin(), static_cast<std::size_t>(decimals) - frac.size(), '0');
  return whole + "." + frac;
}

Share make_share(std::uint64_t num, std::uint64_t den, int decimals) {
  Share s;
  s.numerator = num;
  s.denominator = den;
  s.decimals = decimals;
  s.rendered = render_percent(num, den, decimals);
  return s;
}

VerifySlice slice_from_events(const std::vector<Event>& events, std::string label) {
  VerifySlice s;
  s.slice_label = std::move(label);
  for (const auto& e : events)
    if (e.event_type == ev::verify_completed) s.rows.push_back(e);
  return s;
}

VerifySlice merge_slices(const VerifySlice& a, const VerifySlice& b) {
  if (a.slice_label != b.slice_label)
    fail(Errc::slice_label_mismatch,
         "'" + a.slice_label + "' and '" + b.slice_label + "' never share a denominator");
  VerifySlice out = a;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  return out;
}

namespace {

Origin row_origin(const Event& e) {
  if (!e.origin) fail(Errc::missing_origin, "row seq " + std::to_string(e.seq));
  return *e.origin;
}

}  // namespace

DenominatorMap denominator_map(const VerifySlice& slice) {
  DenominatorMap m;
  for (const auto& row : slice.rows) {
    ++m.all_rows;
    if (row.outcome)
      ++m.known_outcome_rows;
    else
      ++m.missing_outcome_rows;
    if (row_origin(row) == Origin::production)
      ++m.production_rows;
    else
      ++m.synthetic_rows;
  }
  return m;
}

AccountingReport verify_success_share(const VerifySlice& slice, DenominatorPolicy policy,
                                      int decimals) {
  if (slice.rows.empty()) fail(Errc::empty_slice, "slice '" + slice.slice_label + "'");
  std::uint64_t success = 0, known = 0;
  for (const auto& row : slice.rows) {
    if (!row.outcome) continue;
    ++known;
    if (*row.outcome == Outcome::success) ++success;
  }
  const std::uint64_t den =
      policy == DenominatorPolicy::known_outcome ? known : slice.rows.size();
  AccountingReport r;
  r.policy = policy;
  r.share = make_share(success, den, decimals);
  return r;
}

namespace {

void count_outcome(OutcomeCounts& c, const Event& row) {
  ++c.total;
  if (!row.outcome) {
    ++c.missing;
    return;
  }
  switch (*row.outcome) {
    case Outcome::success: ++c.success; break;
    case Outcome::blocked: ++c.blocked; break;
    case Outcome::failed: ++c.failed; break;
    case Outcome::skipped: ++c.skipped; break;
  }
}

}  // namespace

SplitReport production_split(const VerifySlice& slice) {
  SplitReport r;
  for (const auto& row : slice.rows) {
    if (row_origin(row) == Origin::production)
      count_outcome(r.production, row);
    else
      count_outcome(r.synthetic_session, row);
  }
  return r;
}

ConcentrationReport concentration(const VerifySlice& slice) {
  ConcentrationReport r;
  r.total_rows = slice.rows.size();
  std::map<std::string, std::uint64_t> by_cluster;
  for (const auto& row : slice.rows) ++by_cluster[row.cluster_id];
  for (const auto& [cluster, rows] : by_cluster) {
    if (rows > r.top_cluster_rows) {  // ties resolve to the first key in order
      r.top_cluster_rows = rows;
      r.top_cluster_id = cluster;
    }
  }
  r.outside_rows = r.total_rows - r.top_cluster_rows;
  return r;
}

SubsetReport subset_accounting(const std::vector<Event>& events) {
  std::set<std::string> production_ids, with_verify, completed;
  for (const auto& e : events) {
    if (row_origin(e) != Origin::production) continue;
    production_ids.insert(e.task_id);
    if (e.event_type == ev::verify_completed) with_verify.insert(e.task_id);
    if (e.event_type == ev::task_completed) completed.insert(e.task_id);
  }
  SubsetReport r;
  r.production_task_ids = production_ids.size();
  r.with_verify = with_verify.size();
  r.completed = completed.size();
  for (const auto& id : completed)
    if (with_verify.count(id)) ++r.completed_with_verify;
  if (r.production_task_ids > 0)
    r.with_verify_share = make_share(r.with_verify, r.production_task_ids, 1);
  return r;
}

std::vector<CaseRow> case_table(const VerifySlice& slice) {
  if (slice.slice_label != slice_label::historical_active)
    fail(Errc::slice_label_mismatch,
         "case table runs on '" + std::string(slice_label::historical_active) +
             "' slices, got '" + slice.slice_label + "'");
  std::vector<CaseRow> rows;
  for (const auto& row : slice.rows) {
    CaseRow c;
    c.task_id = row.task_id;
    // Prefer the classified reason; the free-text marker is a fallback.
    if (row.blocked_reason_class)
      c.blocked_reason = to_string(*row.blocked_reason_class);
    else
      c.blocked_reason = row.blocked_reason.value_or("");
    if (!row.outcome) {
      c.classification = "missing_outcome_artifact";
    } else if (*row.outcome == Outcome::blocked) {
      c.classification = "blocked_production";
    } else if (*row.outcome == Outcome::failed) {
      c.classification = "failed_synthetic_drill";
    } else {
      continue;  // success rows excluded; skips decided nothing
    }
    rows.push_back(std::move(c));
  }
  return rows;
}

TierReport tier_overhead_proxy(const std::vector<Event>& events) {
  TierReport r;
  for (const auto& e : events) {
    auto& bucket = r.tiers[to_string(e.tier)];
    ++bucket.total_events;
    if (e.event_type == ev::verify_completed) ++bucket.verify_rows;
  }
  for (auto& [name, bucket] : r.tiers)
    bucket.ratio = make_share(bucket.verify_rows, bucket.total_events, 1);
  return r;
}

ordered_json share_json(const Share& s) {
  return {{"numerator", s.numerator},
          {"denominator", s.denominator},
          {"decimals", s.decimals},
          {"rendered_percent", s.rendered}};
}

ordered_json verify_share_json(const AccountingReport& r) {
  ordered_json j;
  j["policy"] = to_string(r.policy);
  j["share"] = share_json(r.share);
  return j;
}

namespace {

ordered_json counts_json(const OutcomeCounts& c) {
  return {{"total", c.total},   {"success", c.success}, {"blocked", c.blocked},
          {"failed", c.failed}, {"skipped", c.skipped}, {"missing", c.missing}};
}

}  // namespace

ordered_json split_json(const SplitReport& r) {
  ordered_json j;
  j["production"] = counts_json(r.production);
  j["synthetic_session"] = counts_json(r.synthetic_session);
  return j;
}

ordered_json concentration_json(const ConcentrationReport& r) {
  return {{"top_cluster_id", r.top_cluster_id},
          {"top_cluster_rows", r.top_cluster_rows},
          {"total_rows", r.total_rows},
          {"outside_rows", r.outside_rows}};
}

ordered_json subset_json(const SubsetReport& r) {
  ordered_json j;
  j["production_task_ids"] = r.production_task_ids;
  j["with_verify"] = r.with_verify;
  j["with_verify_share"] =
      r.production_task_ids > 0 ? share_json(r.with_verify_share) : ordered_json(nullptr);
  j["completed"] = r.completed;
  j["completed_with_verify"] = r.completed_with_verify;
  j["coverage_note"] = r.coverage_note;
  return j;
}

ordered_json case_table_json(const std::vector<CaseRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : rows)
    arr.push_back({{"task_id", c.task_id},
                   {"classification", c.classification},
                   {"blocked_reason", c.blocked_reason}});
  return arr;
}

ordered_json tier_report_json(const TierReport& r) {
  ordered_json tiers;
  for (const auto& [name, bucket] : r.tiers)
    tiers[name] = {{"verify_rows", bucket.verify_rows},
                   {"total_events", bucket.total_events},
                   {"ratio", share_json(bucket.ratio)}};
  ordered_json j;
  j["tiers"] = tiers;
  return j;
}

}  // namespace gatekit
