#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatekit/ledger.hpp"
#include "gatekit/packets.hpp"

namespace gatekit {

// Registry of named procedure packs used for composition checks.
class PackRegistry {
 public:
  void put(ProcedurePack pack);
  const ProcedurePack& get(const std::string& name) const;  // refuses unknown names
  bool has(const std::string& name) const;
  static PackRegistry with_builtin();

 private:
  std::map<std::string, ProcedurePack> packs_;
};

// The builtin delivery pack: claim, evidence, one verify pair, completion.
ProcedurePack standard_pack();

struct BranchProfileEntry {
  std::string label;
  std::uint64_t count = 0;
};

struct ReplayReport {
  std::string session_id;
  std::string pack_name;
  bool strict = false;
  std::uint64_t observed = 0;
  std::uint64_t expected = 0;
  bool identity_holds = false;
  std::vector<BranchProfileEntry> branch_profile;
  std::vector<std::string> off_path_types;  // review artifacts present but not counted
};

// Event types counted toward the composition identity: the pack template plus
// the recovery, ground-refresh and rollback-execution extensions. Review
// artifacts (rollback queue decisions, diagnostic and board sessions) are
// excluded by construction.
std::vector<std::string> reporting_path_types(const ProcedurePack& pack);

// Checks that the session's reporting-path event count equals the count
// reconstructed from its composition: one creation record, each claim with a
// verify pair, each recovery with an open/close pair and a re-verify pair,
// each skip with a re-verify pair, plus evidence, refreshes, completion and
// rollback executions. In strict mode the expected count is the bare template
// length instead, so any branching at all fails the check.
ReplayReport replay_accounting(const std::vector<Event>& session_events,
                               const ProcedurePack& pack, bool strict = false);

nlohmann::ordered_json replay_report_json(const ReplayReport& r);

}  // namespace gatekit
