#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gatekit/types.hpp"

namespace gatekit {

// Exact rational; mixes must sum to exactly one, checked without floats.
struct Proportion {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

// One exact-composition entry: `count` tasks of a scenario kind.
struct PlanEntry {
  std::string kind;
  std::uint64_t count = 1;
  Origin origin = Origin::synthetic;
  Tier tier = Tier::standard;
  std::string fault;                // predicate fault label; empty = none
  std::uint64_t filler_events = 0;  // bookkeeping padding for filler tasks
  std::string cluster;              // fixed cluster id; empty = spread
};

struct WorkloadSpec {
  std::string spec_kind = "workload";  // workload | pgv
  std::uint64_t seed = 1;
  std::string slice_label;
  std::string session_prefix = "S";
  std::uint64_t rotate_every = 0;
  std::uint64_t cluster_count = 1;
  std::string top_cluster = "C0";
  bool shadow = false;  // run the advisory checker alongside every verify pass

  // Exact fixture style: explicit plan entries.
  std::vector<PlanEntry> plan;

  // Proportional style: targets realized by integer rounding.
  std::uint64_t task_count = 0;
  std::vector<std::pair<Tier, Proportion>> tier_mix;
  std::vector<std::pair<Origin, Proportion>> origin_mix;
  Proportion top_cluster_share{0, 1};
  std::vector<std::pair<int, Proportion>> fault_rates;  // predicate index -> rate
  Proportion skip_rate{0, 1};
  Proportion retry_rate{0, 1};
  Proportion complete_rate{1, 2};
  std::uint64_t missing_outcome_artifacts = 0;
  std::uint64_t rollback_drills = 0;

  // Advisory-evaluation fixture style: sample counts per cell.
  std::uint64_t pgv_safe_good = 0;
  std::uint64_t pgv_safe_bad = 0;      // missed problem: safe prediction, bad outcome
  std::uint64_t pgv_safe_open = 0;     // safe prediction, no finalized outcome
  std::uint64_t pgv_blocked_good = 0;  // over-flag: blocked prediction, good outcome
  std::uint64_t pgv_blocked_bad = 0;
  std::uint64_t pgv_blocked_open = 0;

  static WorkloadSpec from_json(const nlohmann::json& j);
  static WorkloadSpec from_file(const std::filesystem::path& file);
};

struct ScriptStep {
  std::string kind;
  Origin origin = Origin::synthetic;
  Tier tier = Tier::standard;
  std::string fault;
  std::uint64_t filler_events = 0;
  std::string cluster_id;
};

// Fully expanded, serializable execution script. Same spec + seed always
// yields a byte-identical script; same script always yields byte-identical
// ledgers.
struct ScenarioScript {
  std::uint64_t seed = 1;
  std::string slice_label;
  std::string session_prefix = "S";
  std::uint64_t rotate_every = 0;
  std::vector<ScriptStep> steps;

  nlohmann::ordered_json to_json() const;
  static ScenarioScript from_json(const nlohmann::json& j);
};

// Expands a spec into a script. Plan entries expand verbatim; proportional
// knobs allocate counts by largest remainder so realized composition matches
// the targets exactly. Mixes that do not sum to one are refused.
ScenarioScript generate_workload(const WorkloadSpec& spec);

}  // namespace gatekit
