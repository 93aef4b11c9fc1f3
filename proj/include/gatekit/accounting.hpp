#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatekit/ledger.hpp"

namespace gatekit {

namespace slice_label {
inline constexpr const char* rotation_aware = "rotation_aware";
inline constexpr const char* historical_active = "historical_active";
}  // namespace slice_label

// Percent rendering at fixed decimal places, half-up, computed from the
// stored integers only — never from a pre-rounded float.
std::string render_percent(std::uint64_t num, std::uint64_t den, int decimals);

struct Share {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  int decimals = 1;
  std::string rendered;  // percent string at `decimals` places
};

Share make_share(std::uint64_t num, std::uint64_t den, int decimals);

// A labeled collection of verify_completed rows. Label separation is a hard
// rule: rows recorded under different slice labels never share a denominator.
struct VerifySlice {
  std::string slice_label;
  std::vector<Event> rows;
};

VerifySlice slice_from_events(const std::vector<Event>& events, std::string label);
VerifySlice merge_slices(const VerifySlice& a, const VerifySlice& b);

struct DenominatorMap {
  std::uint64_t all_rows = 0;
  std::uint64_t known_outcome_rows = 0;
  std::uint64_t production_rows = 0;
  std::uint64_t synthetic_rows = 0;  // synthetic and session origins together
  std::uint64_t missing_outcome_rows = 0;
};

DenominatorMap denominator_map(const VerifySlice& slice);

struct AccountingReport {
  DenominatorPolicy policy = DenominatorPolicy::known_outcome;
  Share share;  // numerator = success rows; denominator per policy
};

// known_outcome excludes rows with no recorded outcome from the denominator;
// all_row counts every row. Refuses an empty slice.
AccountingReport verify_success_share(const VerifySlice& slice, DenominatorPolicy policy,
                                      int decimals);

struct OutcomeCounts {
  std::uint64_t total = 0;
  std::uint64_t success = 0;
  std::uint64_t blocked = 0;
  std::uint64_t failed = 0;
  std::uint64_t skipped = 0;
  std::uint64_t missing = 0;  // rows with no recorded outcome
};

struct SplitReport {
  OutcomeCounts production;
  OutcomeCounts synthetic_session;
};

// Partition by origin with a per-partition outcome histogram. Refuses rows
// without an origin.
SplitReport production_split(const VerifySlice& slice);

struct ConcentrationReport {
  std::string top_cluster_id;
  std::uint64_t top_cluster_rows = 0;
  std::uint64_t total_rows = 0;
  std::uint64_t outside_rows = 0;
};

ConcentrationReport concentration(const VerifySlice& slice);

// Task-level production-subset counts. The report carries no global coverage
// rate — that quantity is not computable from a verify slice, and the note
// says so instead of a number.
struct SubsetReport {
  std::uint64_t production_task_ids = 0;
  std::uint64_t with_verify = 0;
  Share with_verify_share;
  std::uint64_t completed = 0;
  std::uint64_t completed_with_verify = 0;
  std::string coverage_note = "not computable";
};

SubsetReport subset_accounting(const std::vector<Event>& events);

struct CaseRow {
  std::string task_id;
  std::string classification;  // blocked_production | failed_synthetic_drill |
                               // missing_outcome_artifact
  std::string blocked_reason;
};

// Classifies every non-success or outcome-missing row; success rows are
// excluded. Only runs on slices labeled historical_active.
std::vector<CaseRow> case_table(const VerifySlice& slice);

struct TierBucket {
  std::uint64_t verify_rows = 0;
  std::uint64_t total_events = 0;
  Share ratio;  // verify_rows over total_events at 1 d.p.
};

// Event-count overhead proxy per tier. Unknown-tier events are bucketed
// separately from the named tiers, never folded into them.
struct TierReport {
  std::map<std::string, TierBucket> tiers;
};

TierReport tier_overhead_proxy(const std::vector<Event>& events);

nlohmann::ordered_json share_json(const Share& s);
nlohmann::ordered_json verify_share_json(const AccountingReport& r);
nlohmann::ordered_json split_json(const SplitReport& r);
nlohmann::ordered_json concentration_json(const ConcentrationReport& r);
nlohmann::ordered_json subset_json(const SubsetReport& r);
nlohmann::ordered_json case_table_json(const std::vector<CaseRow>& rows);
nlohmann::ordered_json tier_report_json(const TierReport& r);

}  // namespace gatekit
