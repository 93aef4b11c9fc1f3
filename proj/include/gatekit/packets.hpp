#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatekit/digest.hpp"
#include "gatekit/ids.hpp"
#include "gatekit/types.hpp"

namespace gatekit {

struct GroundRef {
  std::string id;
  std::uint64_t version = 0;
};

// Shared task picture. Versions only move forward; exactly one version per
// task is current (non-superseded) at any time.
struct CommonGroundPacket {
  PacketId id;
  std::string task_id;
  std::uint64_t version = 1;
  std::string objective;
  std::vector<std::string> accepted_facts;
  std::vector<std::string> open_questions;
  std::vector<std::string> assumptions;
  std::string current_owner;
  std::string current_stage;
  std::vector<std::string> success_criteria;
  std::string content_digest;  // over all fields above, canonical encoding
  bool superseded = false;

  // Digest input covers every field declared before content_digest; the
  // superseded flag is lifecycle metadata and digest-neutral.
  std::string compute_digest() const;
};

struct ClaimPacket {
  PacketId id;
  std::string task_id;
  std::string objective_echo;
  ClaimedState claimed_state = ClaimedState::done;
  std::optional<PacketId> evidence_ref;
  std::vector<std::string> unresolved_questions;
  std::string owner;
  std::string accountable;
  VerifyState verify_state = VerifyState::not_invoked;  // state at assembly
  GroundRef ground_ref;
  std::string ground_digest;
  std::uint64_t created_seq = 0;  // ledger head at assembly
};

struct EvidencePacket {
  PacketId id;
  std::string task_id;
  std::string claim_ref;
  std::vector<std::string> artifacts;
  std::vector<SourceType> source_types;
  EvidenceQuality quality = EvidenceQuality::weak;
  std::vector<std::string> missing_required;
};

struct RecoveryPacket {
  PacketId id;
  std::string task_id;
  ErrorClass error_class = ErrorClass::other;
  std::string failure_context;
  std::string next_recovery_action;
  std::string recovery_owner;
  std::uint64_t retry_count = 0;  // prior cycles on this branch; never decreases
  RecoveryStatus status = RecoveryStatus::open;
};

struct ProcedurePack {
  PacketId id;
  std::string name;
  std::string task_archetype;
  std::string required_protocol;
  std::vector<std::string> lane_sequence;
  std::vector<std::string> required_packets;
  std::vector<std::string> expected_event_template;
  RollbackProfile rollback_profile = RollbackProfile::none;
};

struct Advisory {
  Severity severity = Severity::info;
  bool treated = false;
  bool dismissed_under_policy = false;
  std::string note;
};

// Mutable per-task control state. Not part of the append-only store;
// verify_state moves forward only within one claim branch.
struct ControlHeader {
  Tier tier = Tier::standard;
  std::string task_class;
  std::string owner;
  std::string accountable;
  VerifyState verify_state = VerifyState::not_invoked;
  bool stale_ground = false;
  std::vector<Advisory> advisory_signals;
  bool veto_active = false;

  bool ownership_complete() const { return !owner.empty() && !accountable.empty(); }
};

// Memory-class rules: shared-ground artifacts are canonical, raw residue is
// archive-only, reviewed material may be injected. Unrecognized kinds land in
// archive_only so nothing unclassified can reach a prompt.
MemoryClass classify_memory(const std::string& artifact_kind);

struct MemoryRecord {
  std::string artifact_kind;
  MemoryClass memory_class = MemoryClass::archive_only;
  std::string ref;
};

// Prompt-envelope selection: canonical and reviewed records only.
std::vector<MemoryRecord> envelope_records(const std::vector<MemoryRecord>& all);

// Canonical field encodings (digest + whole-store hashing).
CanonicalFields canonical_fields(const CommonGroundPacket& p);
CanonicalFields canonical_fields(const ClaimPacket& p);
CanonicalFields canonical_fields(const EvidencePacket& p);
CanonicalFields canonical_fields(const RecoveryPacket& p);
CanonicalFields canonical_fields(const ProcedurePack& p);

// One-line JSON forms used by packets.ndjson.
nlohmann::json to_json(const CommonGroundPacket& p);
nlohmann::json to_json(const ClaimPacket& p);
nlohmann::json to_json(const EvidencePacket& p);
nlohmann::json to_json(const RecoveryPacket& p);
nlohmann::json to_json(const ProcedurePack& p);
CommonGroundPacket common_ground_from_json(const nlohmann::json& j);
ClaimPacket claim_from_json(const nlohmann::json& j);
EvidencePacket evidence_from_json(const nlohmann::json& j);
RecoveryPacket recovery_from_json(const nlohmann::json& j);
ProcedurePack procedure_pack_from_json(const nlohmann::json& j);

}  // namespace gatekit
