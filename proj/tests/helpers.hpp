#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gatekit/errors.hpp"
#include "gatekit/gate.hpp"
#include "gatekit/ledger.hpp"

namespace gatekit::testing {

// Runs fn and reports the refusal code, if any.
template <typename Fn>
std::optional<Errc> errc_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// A context every admission predicate accepts. Tests flip one input at a time.
inline VerifyContext admissible_context() {
  VerifyContext ctx;
  CommonGroundPacket g;
  g.id = {"G0000000000000000000000001", PacketKind::common_ground};
  g.task_id = "T1";
  g.version = 1;
  g.objective = "deliver the work item";
  g.success_criteria = {"artifact digest recorded"};
  g.current_owner = "implementation_worker";
  g.content_digest = g.compute_digest();
  ctx.ground = g;

  ClaimPacket c;
  c.id = {"C0000000000000000000000001", PacketKind::claim};
  c.task_id = "T1";
  c.objective_echo = g.objective;
  c.claimed_state = ClaimedState::done;
  c.owner = "implementation_worker";
  c.accountable = "runtime_coordinator";
  c.ground_ref = {g.id.value, g.version};
  c.ground_digest = g.content_digest;
  ctx.claim = c;

  EvidencePacket e;
  e.id = {"E0000000000000000000000001", PacketKind::evidence};
  e.task_id = "T1";
  e.claim_ref = c.id.value;
  e.artifacts = {"artifact.bin"};
  e.source_types = {SourceType::deterministic_check};
  e.quality = EvidenceQuality::adequate;
  ctx.evidence = e;

  ControlHeader h;
  h.tier = Tier::standard;
  h.task_class = "delivery";
  h.owner = c.owner;
  h.accountable = c.accountable;
  h.verify_state = VerifyState::pending;
  ctx.header = h;

  ctx.freshness = FreshnessVerdict::fresh;
  return ctx;
}

// Minimal verify_completed row for accounting slices.
inline Event verify_row(const std::string& task_id, std::optional<Outcome> outcome,
                        Origin origin, const std::string& cluster = "C0",
                        Tier tier = Tier::standard) {
  Event e;
  e.task_id = task_id;
  e.session_id = "sess_" + task_id;
  e.event_type = ev::verify_completed;
  e.outcome = outcome;
  if (outcome) e.acceptance_status = project_acceptance(*outcome);
  e.origin = origin;
  e.cluster_id = cluster;
  e.tier = tier;
  return e;
}

inline Event typed_event(const std::string& task_id, const char* type, Origin origin,
                         std::optional<Outcome> outcome = {}) {
  Event e;
  e.task_id = task_id;
  e.session_id = "sess_" + task_id;
  e.event_type = type;
  e.outcome = outcome;
  e.origin = origin;
  return e;
}

// Unique scratch directory under the system temp root.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("gatekit_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace gatekit::testing
