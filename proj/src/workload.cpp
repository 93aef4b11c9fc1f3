#include "gatekit/workload.hpp"

#include <fstream>
#include <numeric>

#include "gatekit/errors.hpp"
#include "gatekit/rng.hpp"

namespace gatekit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Proportion proportion_from(const json& j) {
  Proportion p;
  p.num = j.at("num").get<std::uint64_t>();
  p.den = j.at("den").get<std::uint64_t>();
  if (p.den == 0) fail(Errc::invalid_proportions, "zero denominator");
  return p;
}

template <typename Key>
void check_sums_to_one(const std::vector<std::pair<Key, Proportion>>& mix, const char* what) {
  if (mix.empty()) return;
  // Exact rational sum: accumulate num/den over a common denominator.
  unsigned __int128 den = 1, num = 0;
  for (const auto& [key, p] : mix) {
    num = num * p.den + static_cast<unsigned __int128>(p.num) * den;
    den *= p.den;
  }
  if (num != den)
    fail(Errc::invalid_proportions, std::string(what) + " does not sum to exactly one");
}

// Largest-remainder allocation of `total` across the mix, deterministic.
template <typename Key>
std::vector<std::pair<Key, std::uint64_t>> allocate(
    const std::vector<std::pair<Key, Proportion>>& mix, std::uint64_t total) {
  std::vector<std::pair<Key, std::uint64_t>> out;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> remainders;  // num, den
  std::uint64_t assigned = 0;
  for (const auto& [key, p] : mix) {
    const std::uint64_t share = total * p.num / p.den;
    out.emplace_back(key, share);
    remainders.emplace_back(total * p.num % p.den, p.den);
    assigned += share;
  }
  std::uint64_t leftover = total - assigned;
  while (leftover > 0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < remainders.size(); ++i) {
      const auto [bn, bd] = remainders[best];
      const auto [cn, cd] = remainders[i];
      if (static_cast<unsigned __int128>(cn) * bd > static_cast<unsigned __int128>(bn) * cd)
        best = i;
    }
    ++out[best].second;
    remainders[best] = {0, 1};
    --leftover;
  }
  return out;
}

}  // namespace

WorkloadSpec WorkloadSpec::from_json(const json& j) {
  WorkloadSpec s;
  if (j.contains("spec_kind")) s.spec_kind = j.at("spec_kind").get<std::string>();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("slice_label")) s.slice_label = j.at("slice_label").get<std::string>();
  if (j.contains("session_prefix")) s.session_prefix = j.at("session_prefix").get<std::string>();
  if (j.contains("rotate_every")) s.rotate_every = j.at("rotate_every").get<std::uint64_t>();
  if (j.contains("cluster_count")) s.cluster_count = j.at("cluster_count").get<std::uint64_t>();
  if (j.contains("top_cluster")) s.top_cluster = j.at("top_cluster").get<std::string>();
  if (j.contains("shadow")) s.shadow = j.at("shadow").get<bool>();

  if (j.contains("plan")) {
    for (const auto& entry : j.at("plan")) {
      PlanEntry p;
      p.kind = entry.at("kind").get<std::string>();
      if (entry.contains("count")) p.count = entry.at("count").get<std::uint64_t>();
      if (entry.contains("origin")) p.origin = origin_from(entry.at("origin").get<std::string>());
      if (entry.contains("tier")) p.tier = tier_from(entry.at("tier").get<std::string>());
      if (entry.contains("fault")) p.fault = entry.at("fault").get<std::string>();
      if (entry.contains("filler_events"))
        p.filler_events = entry.at("filler_events").get<std::uint64_t>();
      if (entry.contains("cluster")) p.cluster = entry.at("cluster").get<std::string>();
      s.plan.push_back(std::move(p));
    }
  }

  if (j.contains("task_count")) s.task_count = j.at("task_count").get<std::uint64_t>();
  if (j.contains("tier_mix"))
    for (const auto& [key, value] : j.at("tier_mix").items())
      s.tier_mix.emplace_back(tier_from(key), proportion_from(value));
  if (j.contains("origin_mix"))
    for (const auto& [key, value] : j.at("origin_mix").items())
      s.origin_mix.emplace_back(origin_from(key), proportion_from(value));
  if (j.contains("top_cluster_share"))
    s.top_cluster_share = proportion_from(j.at("top_cluster_share"));
  if (j.contains("fault_rates"))
    for (const auto& [key, value] : j.at("fault_rates").items())
      s.fault_rates.emplace_back(std::stoi(key), proportion_from(value));
  if (j.contains("skip_rate")) s.skip_rate = proportion_from(j.at("skip_rate"));
  if (j.contains("retry_rate")) s.retry_rate = proportion_from(j.at("retry_rate"));
  if (j.contains("complete_rate")) s.complete_rate = proportion_from(j.at("complete_rate"));
  if (j.contains("missing_outcome_artifacts"))
    s.missing_outcome_artifacts = j.at("missing_outcome_artifacts").get<std::uint64_t>();
  if (j.contains("rollback_drills"))
    s.rollback_drills = j.at("rollback_drills").get<std::uint64_t>();

  if (j.contains("pgv")) {
    const auto& p = j.at("pgv");
    s.pgv_safe_good = p.at("safe_good").get<std::uint64_t>();
    if (p.contains("safe_bad")) s.pgv_safe_bad = p.at("safe_bad").get<std::uint64_t>();
    s.pgv_safe_open = p.at("safe_open").get<std::uint64_t>();
    s.pgv_blocked_good = p.at("blocked_good").get<std::uint64_t>();
    s.pgv_blocked_bad = p.at("blocked_bad").get<std::uint64_t>();
    s.pgv_blocked_open = p.at("blocked_open").get<std::uint64_t>();
  }
  return s;
}

WorkloadSpec WorkloadSpec::from_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(Errc::invalid_input, "cannot read spec " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(Errc::invalid_input, "spec " + file.string() + ": " + e.what());
  }
  return from_json(j);
}

ordered_json ScenarioScript::to_json() const {
  ordered_json j;
  j["seed"] = seed;
  j["slice_label"] = slice_label;
  j["session_prefix"] = session_prefix;
  j["rotate_every"] = rotate_every;
  ordered_json steps_json = ordered_json::array();
  for (const auto& s : steps) {
    ordered_json step;
    step["kind"] = s.kind;
    step["origin"] = to_string(s.origin);
    step["tier"] = to_string(s.tier);
    step["fault"] = s.fault;
    step["filler_events"] = s.filler_events;
    step["cluster_id"] = s.cluster_id;
    steps_json.push_back(std::move(step));
  }
  j["steps"] = std::move(steps_json);
  return j;
}

ScenarioScript ScenarioScript::from_json(const json& j) {
  ScenarioScript s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.slice_label = j.at("slice_label").get<std::string>();
  s.session_prefix = j.at("session_prefix").get<std::string>();
  s.rotate_every = j.at("rotate_every").get<std::uint64_t>();
  for (const auto& step_json : j.at("steps")) {
    ScriptStep step;
    step.kind = step_json.at("kind").get<std::string>();
    step.origin = origin_from(step_json.at("origin").get<std::string>());
    step.tier = tier_from(step_json.at("tier").get<std::string>());
    step.fault = step_json.at("fault").get<std::string>();
    step.filler_events = step_json.at("filler_events").get<std::uint64_t>();
    step.cluster_id = step_json.at("cluster_id").get<std::string>();
    s.steps.push_back(std::move(step));
  }
  return s;
}

namespace {

// Predicate index -> injectable fault label for proportional workloads. Only
// faults repairable without a second claim qualify: re-claiming mid-recovery
// would put the session off its procedure-pack path.
std::string fault_for_predicate(int index) {
  switch (index) {
    case 3: return "verify_not_invoked";
    case 4: return "weak_evidence";
    case 5: return "owner_gap";
    case 9: return "untreated_advisory";
    case 11: return "veto";
    default:
      fail(Errc::invalid_input,
           "no injectable recoverable fault for predicate " + std::to_string(index));
  }
}

std::string spread_cluster(const WorkloadSpec& spec, std::uint64_t& counter) {
  if (spec.cluster_count <= 1) return spec.top_cluster;
  const std::uint64_t others = spec.cluster_count - 1;
  return "C" + std::to_string(1 + (counter++ % others));
}

}  // namespace

ScenarioScript generate_workload(const WorkloadSpec& spec) {
  ScenarioScript script;
  script.seed = spec.seed;
  script.slice_label = spec.slice_label;
  script.session_prefix = spec.session_prefix;
  script.rotate_every = spec.rotate_every;

  std::uint64_t spread_counter = 0;

  if (!spec.plan.empty()) {
    for (const auto& entry : spec.plan) {
      for (std::uint64_t i = 0; i < entry.count; ++i) {
        ScriptStep step;
        step.kind = entry.kind;
        step.origin = entry.origin;
        step.tier = entry.tier;
        step.fault = entry.fault;
        step.filler_events = entry.filler_events;
        step.cluster_id =
            entry.cluster.empty() ? spread_cluster(spec, spread_counter) : entry.cluster;
        script.steps.push_back(std::move(step));
      }
    }
    return script;
  }

  if (spec.task_count == 0) return script;

  check_sums_to_one(spec.tier_mix, "tier_mix");
  check_sums_to_one(spec.origin_mix, "origin_mix");

  std::vector<Tier> tiers;
  if (spec.tier_mix.empty()) {
    tiers.assign(spec.task_count, Tier::standard);
  } else {
    for (const auto& [tier, count] : allocate(spec.tier_mix, spec.task_count))
      tiers.insert(tiers.end(), count, tier);
  }
  std::vector<Origin> origins;
  if (spec.origin_mix.empty()) {
    origins.assign(spec.task_count, Origin::synthetic);
  } else {
    for (const auto& [origin, count] : allocate(spec.origin_mix, spec.task_count))
      origins.insert(origins.end(), count, origin);
  }

  const std::uint64_t top_rows =
      spec.task_count * spec.top_cluster_share.num / spec.top_cluster_share.den;

  CounterRng rng(spec.seed);
  for (std::uint64_t i = 0; i < spec.task_count; ++i) {
    ScriptStep step;
    step.tier = tiers[i];
    step.origin = origins[i];
    step.cluster_id = i < top_rows ? spec.top_cluster : spread_cluster(spec, spread_counter);

    for (const auto& [predicate, rate] : spec.fault_rates) {
      if (rate.num != 0 && rng.chance(rate.num, rate.den)) {
        step.fault = fault_for_predicate(predicate);
        break;
      }
    }
    if (!step.fault.empty()) {
      const bool retry = spec.retry_rate.num != 0 &&
                         rng.chance(spec.retry_rate.num, spec.retry_rate.den);
      step.kind = retry ? "blocked_retry_success" : "blocked_recover_success";
      // Deep-tier verification failures are unrecoverable in scope; keep the
      // randomized recovery paths on standard-tier branches.
      if (step.tier == Tier::deep) step.tier = Tier::standard;
    } else if (spec.skip_rate.num != 0 && rng.chance(spec.skip_rate.num, spec.skip_rate.den)) {
      step.kind = "skip_then_success";
    } else {
      const bool complete = spec.complete_rate.num != 0 &&
                            rng.chance(spec.complete_rate.num, spec.complete_rate.den);
      step.kind = complete ? "success_completed" : "success";
    }
    script.steps.push_back(std::move(step));
  }

  for (std::uint64_t i = 0; i < spec.rollback_drills; ++i) {
    ScriptStep step;
    step.kind = "failed_drill_rollback_exec";
    step.fault = "partial_claim";
    step.cluster_id = spread_cluster(spec, spread_counter);
    script.steps.push_back(std::move(step));
  }
  for (std::uint64_t i = 0; i < spec.missing_outcome_artifacts; ++i) {
    ScriptStep step;
    step.kind = "missing_outcome_artifact";
    step.tier = Tier::unknown;
    step.cluster_id = spread_cluster(spec, spread_counter);
    script.steps.push_back(std::move(step));
  }
  return script;
}

}  // namespace gatekit
