#include "gatekit/packets.hpp"

#include <json.hpp>

namespace gatekit {

using nlohmann::json;

std::string CommonGroundPacket::compute_digest() const {
  return canonical_fields(*this).digest();
}

MemoryClass classify_memory(const std::string& artifact_kind) {
  if (artifact_kind == "common_ground_snapshot" || artifact_kind == "packet" ||
      artifact_kind == "after_action_record")
    return MemoryClass::canonical;
  if (artifact_kind == "reviewed_hint" || artifact_kind == "procedure_pack")
    return MemoryClass::prompt_injectable;
  // raw_log, chat_residue, failed_exploration and anything unrecognized.
  return MemoryClass::archive_only;
}

std::vector<MemoryRecord> envelope_records(const std::vector<MemoryRecord>& all) {
  std::vector<MemoryRecord> out;
  for (const auto& r : all)
    if (r.memory_class != MemoryClass::archive_only) out.push_back(r);
  return out;
}

CanonicalFields canonical_fields(const CommonGroundPacket& p) {
  CanonicalFields f;
  f.add("id", p.id.value);
  f.add("task_id", p.task_id);
  f.add_u64("version", p.version);
  f.add("objective", p.objective);
  f.add_list("accepted_facts", p.accepted_facts);
  f.add_list("open_questions", p.open_questions);
  f.add_list("assumptions", p.assumptions);
  f.add("current_owner", p.current_owner);
  f.add("current_stage", p.current_stage);
  f.add_list("success_criteria", p.success_criteria);
  return f;
}

CanonicalFields canonical_fields(const ClaimPacket& p) {
  CanonicalFields f;
  f.add("id", p.id.value);
  f.add("task_id", p.task_id);
  f.add("objective_echo", p.objective_echo);
  f.add("claimed_state", to_string(p.claimed_state));
  f.add("evidence_ref", p.evidence_ref ? p.evidence_ref->value : "");
  f.add_list("unresolved_questions", p.unresolved_questions);
  f.add("owner", p.owner);
  f.add("accountable", p.accountable);
  f.add("verify_state", to_string(p.verify_state));
  f.add("ground_ref", p.ground_ref.id);
  f.add_u64("ground_version", p.ground_ref.version);
  f.add("ground_digest", p.ground_digest);
  f.add_u64("created_seq", p.created_seq);
  return f;
}

CanonicalFields canonical_fields(const EvidencePacket& p) {
  CanonicalFields f;
  f.add("id", p.id.value);
  f.add("task_id", p.task_id);
  f.add("claim_ref", p.claim_ref);
  f.add_list("artifacts", p.artifacts);
  std::vector<std::string> sources;
  for (auto s : p.source_types) sources.emplace_back(to_string(s));
  f.add_list("source_types", sources);
  f.add("quality", to_string(p.quality));
  f.add_list("missing_required", p.missing_required);
  return f;
}

CanonicalFields canonical_fields(const RecoveryPacket& p) {
  CanonicalFields f;
  f.add("id", p.id.value);
  f.add("task_id", p.task_id);
  f.add("error_class", to_string(p.error_class));
  f.add("failure_context", p.failure_context);
  f.add("next_recovery_action", p.next_recovery_action);
  f.add("recovery_owner", p.recovery_owner);
  f.add_u64("retry_count", p.retry_count);
  f.add("status", to_string(p.status));
  return f;
}

CanonicalFields canonical_fields(const ProcedurePack& p) {
  CanonicalFields f;
  f.add("id", p.id.value);
  f.add("name", p.name);
  f.add("task_archetype", p.task_archetype);
  f.add("required_protocol", p.required_protocol);
  f.add_list("lane_sequence", p.lane_sequence);
  f.add_list("required_packets", p.required_packets);
  f.add_list("expected_event_template", p.expected_event_template);
  f.add("rollback_profile", to_string(p.rollback_profile));
  return f;
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

json to_json(const CommonGroundPacket& p) {
  return json{{"packet_kind", "common_ground"},
              {"id", p.id.value},
              {"task_id", p.task_id},
              {"version", p.version},
              {"objective", p.objective},
              {"accepted_facts", p.accepted_facts},
              {"open_questions", p.open_questions},
              {"assumptions", p.assumptions},
              {"current_owner", p.current_owner},
              {"current_stage", p.current_stage},
              {"success_criteria", p.success_criteria},
              {"content_digest", p.content_digest},
              {"superseded", p.superseded}};
}

json to_json(const ClaimPacket& p) {
  json j{{"packet_kind", "claim"},
         {"id", p.id.value},
         {"task_id", p.task_id},
         {"objective_echo", p.objective_echo},
         {"claimed_state", to_string(p.claimed_state)},
         {"unresolved_questions", p.unresolved_questions},
         {"owner", p.owner},
         {"accountable", p.accountable},
         {"verify_state", to_string(p.verify_state)},
         {"ground_ref", p.ground_ref.id},
         {"ground_version", p.ground_ref.version},
         {"ground_digest", p.ground_digest},
         {"created_seq", p.created_seq}};
  if (p.evidence_ref) j["evidence_ref"] = p.evidence_ref->value;
  return j;
}

json to_json(const EvidencePacket& p) {
  std::vector<std::string> sources;
  for (auto s : p.source_types) sources.emplace_back(to_string(s));
  return json{{"packet_kind", "evidence"},
              {"id", p.id.value},
              {"task_id", p.task_id},
              {"claim_ref", p.claim_ref},
              {"artifacts", p.artifacts},
              {"source_types", sources},
              {"quality", to_string(p.quality)},
              {"missing_required", p.missing_required}};
}

json to_json(const RecoveryPacket& p) {
  return json{{"packet_kind", "recovery"},
              {"id", p.id.value},
              {"task_id", p.task_id},
              {"error_class", to_string(p.error_class)},
              {"failure_context", p.failure_context},
              {"next_recovery_action", p.next_recovery_action},
              {"recovery_owner", p.recovery_owner},
              {"retry_count", p.retry_count},
              {"status", to_string(p.status)}};
}

json to_json(const ProcedurePack& p) {
  return json{{"packet_kind", "procedure_pack"},
              {"id", p.id.value},
              {"name", p.name},
              {"task_archetype", p.task_archetype},
              {"required_protocol", p.required_protocol},
              {"lane_sequence", p.lane_sequence},
              {"required_packets", p.required_packets},
              {"expected_event_template", p.expected_event_template},
              {"rollback_profile", to_string(p.rollback_profile)}};
}

CommonGroundPacket common_ground_from_json(const json& j) {
  CommonGroundPacket p;
  p.id = {j.at("id").get<std::string>(), PacketKind::common_ground};
  p.task_id = j.at("task_id").get<std::string>();
  p.version = j.at("version").get<std::uint64_t>();
  p.objective = j.at("objective").get<std::string>();
  p.accepted_facts = string_list(j, "accepted_facts");
  p.open_questions = string_list(j, "open_questions");
  p.assumptions = string_list(j, "assumptions");
  p.current_owner = j.at("current_owner").get<std::string>();
  p.current_stage = j.at("current_stage").get<std::string>();
  p.success_criteria = string_list(j, "success_criteria");
  p.content_digest = j.at("content_digest").get<std::string>();
  p.superseded = j.at("superseded").get<bool>();
  return p;
}

ClaimPacket claim_from_json(const json& j) {
  ClaimPacket p;
  p.id = {j.at("id").get<std::string>(), PacketKind::claim};
  p.task_id = j.at("task_id").get<std::string>();
  p.objective_echo = j.at("objective_echo").get<std::string>();
  p.claimed_state = claimed_state_from(j.at("claimed_state").get<std::string>());
  if (j.contains("evidence_ref"))
    p.evidence_ref = PacketId{j.at("evidence_ref").get<std::string>(), PacketKind::evidence};
  p.unresolved_questions = string_list(j, "unresolved_questions");
  p.owner = j.at("owner").get<std::string>();
  p.accountable = j.at("accountable").get<std::string>();
  p.verify_state = verify_state_from(j.at("verify_state").get<std::string>());
  p.ground_ref = {j.at("ground_ref").get<std::string>(), j.at("ground_version").get<std::uint64_t>()};
  p.ground_digest = j.at("ground_digest").get<std::string>();
  p.created_seq = j.at("created_seq").get<std::uint64_t>();
  return p;
}

EvidencePacket evidence_from_json(const json& j) {
  EvidencePacket p;
  p.id = {j.at("id").get<std::string>(), PacketKind::evidence};
  p.task_id = j.at("task_id").get<std::string>();
  p.claim_ref = j.at("claim_ref").get<std::string>();
  p.artifacts = string_list(j, "artifacts");
  for (const auto& s : string_list(j, "source_types"))
    p.source_types.push_back(source_type_from(s));
  p.quality = evidence_quality_from(j.at("quality").get<std::string>());
  p.missing_required = string_list(j, "missing_required");
  return p;
}

RecoveryPacket recovery_from_json(const json& j) {
  RecoveryPacket p;
  p.id = {j.at("id").get<std::string>(), PacketKind::recovery};
  p.task_id = j.at("task_id").get<std::string>();
  p.error_class = error_class_from(j.at("error_class").get<std::string>());
  p.failure_context = j.at("failure_context").get<std::string>();
  p.next_recovery_action = j.at("next_recovery_action").get<std::string>();
  p.recovery_owner = j.at("recovery_owner").get<std::string>();
  p.retry_count = j.at("retry_count").get<std::uint64_t>();
  p.status = recovery_status_from(j.at("status").get<std::string>());
  return p;
}

ProcedurePack procedure_pack_from_json(const json& j) {
  ProcedurePack p;
  p.id = {j.at("id").get<std::string>(), PacketKind::procedure_pack};
  p.name = j.at("name").get<std::string>();
  p.task_archetype = j.at("task_archetype").get<std::string>();
  p.required_protocol = j.at("required_protocol").get<std::string>();
  p.lane_sequence = string_list(j, "lane_sequence");
  p.required_packets = string_list(j, "required_packets");
  p.expected_event_template = string_list(j, "expected_event_template");
  p.rollback_profile = rollback_profile_from(j.at("rollback_profile").get<std::string>());
  return p;
}

}  // namespace gatekit
