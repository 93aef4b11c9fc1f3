#include "gatekit/replay.hpp"

#include <algorithm>

#include "gatekit/errors.hpp"
#include "gatekit/lanes.hpp"

namespace gatekit {

void PackRegistry::put(ProcedurePack pack) {
  packs_[pack.name] = std::move(pack);
}

const ProcedurePack& PackRegistry::get(const std::string& name) const {
  auto it = packs_.find(name);
  if (it == packs_.end()) fail(Errc::unknown_pack, "procedure pack '" + name + "'");
  return it->second;
}

bool PackRegistry::has(const std::string& name) const { return packs_.count(name) != 0; }

PackRegistry PackRegistry::with_builtin() {
  PackRegistry r;
  r.put(standard_pack());
  return r;
}

ProcedurePack standard_pack() {
  ProcedurePack p;
  p.id = {"PACKSTANDARDV1", PacketKind::procedure_pack};
  p.name = "standard_v1";
  p.task_archetype = "delivery";
  p.required_protocol = "standard";
  p.lane_sequence = {lanes::coordinator, lanes::worker, lanes::verifier};
  p.required_packets = {"common_ground", "claim", "evidence"};
  p.expected_event_template = {ev::task_created,    ev::claim_packet_created,
                               ev::evidence_packet_created, ev::verify_started,
                               ev::verify_completed, ev::task_completed};
  p.rollback_profile = RollbackProfile::none;
  return p;
}

std::vector<std::string> reporting_path_types(const ProcedurePack& pack) {
  std::vector<std::string> types = pack.expected_event_template;
  for (const char* extra : {ev::recovery_packet_created, ev::recovery_closed,
                            ev::ground_refreshed, ev::rollback_executed, ev::rollback_failed})
    if (std::find(types.begin(), types.end(), extra) == types.end()) types.emplace_back(extra);
  return types;
}

ReplayReport replay_accounting(const std::vector<Event>& session_events,
                               const ProcedurePack& pack, bool strict) {
  ReplayReport r;
  r.pack_name = pack.name;
  r.strict = strict;
  if (!session_events.empty()) r.session_id = session_events.front().session_id;

  const auto path = reporting_path_types(pack);
  auto on_path = [&](const std::string& t) {
    return std::find(path.begin(), path.end(), t) != path.end();
  };

  std::uint64_t claims = 0, evidence = 0, refreshes = 0, recoveries = 0, skips = 0;
  std::uint64_t completions = 0, rollback_execs = 0;
  for (const auto& e : session_events) {
    if (on_path(e.event_type)) {
      ++r.observed;
    } else if (std::find(r.off_path_types.begin(), r.off_path_types.end(), e.event_type) ==
               r.off_path_types.end()) {
      r.off_path_types.push_back(e.event_type);
    }
    if (e.event_type == ev::claim_packet_created) ++claims;
    if (e.event_type == ev::evidence_packet_created) ++evidence;
    if (e.event_type == ev::ground_refreshed) ++refreshes;
    if (e.event_type == ev::recovery_packet_created) ++recoveries;
    if (e.event_type == ev::verify_completed && e.outcome && *e.outcome == Outcome::skipped)
      ++skips;
    if (e.event_type == ev::task_completed) ++completions;
    if (e.event_type == ev::rollback_executed || e.event_type == ev::rollback_failed)
      ++rollback_execs;
  }

  if (strict) {
    r.expected = pack.expected_event_template.size();
  } else {
    r.expected = 1 + claims + evidence + refreshes + 2 * recoveries +
                 2 * (claims + recoveries + skips) + completions + rollback_execs;
  }
  r.identity_holds = (r.observed == r.expected);
  r.branch_profile = {
      {"canonical", 1},
      {"recovery_cycle", recoveries},
      {"skip_reverify", skips},
      {"rollback_execution", rollback_execs},
      {"evidence_attach", evidence},
      {"ground_refresh", refreshes},
      {"completion", completions},
  };
  return r;
}

nlohmann::ordered_json replay_report_json(const ReplayReport& r) {
  nlohmann::ordered_json j;
  j["session_id"] = r.session_id;
  j["pack"] = r.pack_name;
  j["mode"] = r.strict ? "strict" : "composed";
  j["observed"] = r.observed;
  j["expected"] = r.expected;
  j["identity_holds"] = r.identity_holds;
  nlohmann::ordered_json profile = nlohmann::ordered_json::array();
  for (const auto& b : r.branch_profile)
    profile.push_back({{"branch", b.label}, {"count", b.count}});
  j["branch_profile"] = profile;
  j["off_path_types"] = r.off_path_types;
  return j;
}

}  // namespace gatekit
