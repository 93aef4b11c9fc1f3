#include "gatekit/packet_store.hpp"

#include <fstream>

#include <json.hpp>

#include "gatekit/errors.hpp"

namespace gatekit {

using nlohmann::json;

PacketStore::Record& PacketStore::append(Record r) {
  r.revision = by_id_.count(r.id_value) ? by_id_[r.id_value].size() : 0;
  log_.push_back(std::move(r));
  Record& rec = log_.back();
  by_id_[rec.id_value].push_back(log_.size() - 1);
  auto& idx = by_task_[rec.task_id];
  if (rec.revision == 0) {
    switch (rec.kind) {
      case PacketKind::common_ground: idx.ground_id = rec.id_value; break;
      case PacketKind::claim: idx.claim_ids.push_back(rec.id_value); break;
      case PacketKind::evidence: idx.evidence_ids.push_back(rec.id_value); break;
      case PacketKind::recovery: idx.recovery_ids.push_back(rec.id_value); break;
      case PacketKind::procedure_pack: break;
    }
  }
  return rec;
}

const PacketStore::Record* PacketStore::latest_record(const std::string& id_value) const {
  auto it = by_id_.find(id_value);
  if (it == by_id_.end() || it->second.empty()) return nullptr;
  return &log_[it->second.back()];
}

CommonGroundPacket PacketStore::mint_common_ground(const std::string& task_id,
                                                   std::string objective,
                                                   std::vector<std::string> success_criteria,
                                                   std::string owner, std::string accountable,
                                                   IdMinter& minter) {
  if (objective.empty()) fail(Errc::empty_objective, "ground for task " + task_id);
  if (success_criteria.empty()) fail(Errc::empty_criteria, "ground for task " + task_id);
  if (owner.empty() || accountable.empty())
    fail(Errc::missing_ownership, "ground for task " + task_id);
  CommonGroundPacket p;
  p.id = minter.mint(PacketKind::common_ground);
  p.task_id = task_id;
  p.version = 1;
  p.objective = std::move(objective);
  p.success_criteria = std::move(success_criteria);
  p.current_owner = std::move(owner);
  p.current_stage = "in_progress";
  // The live owner/accountable pair sits on the control header; the ground
  // records accountability as a fact line so the digest covers it.
  p.accepted_facts.push_back("accountable=" + accountable);
  p.content_digest = p.compute_digest();
  append({PacketKind::common_ground, task_id, p.id.value, 0, p});
  return p;
}

CommonGroundPacket PacketStore::refresh_ground(const std::string& task_id,
                                               std::uint64_t base_version,
                                               const GroundUpdate& updates) {
  auto cur = current_ground(task_id);
  if (!cur) fail(Errc::dangling_ref, "no ground for task " + task_id);
  if (base_version != cur->version)
    fail(Errc::stale_base, "refresh base v" + std::to_string(base_version) + " is not current v" +
                               std::to_string(cur->version));
  CommonGroundPacket next = *cur;
  next.version = cur->version + 1;
  next.superseded = false;
  if (updates.objective) next.objective = *updates.objective;
  if (updates.accepted_facts) next.accepted_facts = *updates.accepted_facts;
  if (updates.open_questions) next.open_questions = *updates.open_questions;
  if (updates.assumptions) next.assumptions = *updates.assumptions;
  if (updates.current_owner) next.current_owner = *updates.current_owner;
  if (updates.current_stage) next.current_stage = *updates.current_stage;
  if (updates.success_criteria) next.success_criteria = *updates.success_criteria;
  if (next.objective.empty()) fail(Errc::empty_objective, "refresh for task " + task_id);
  if (next.success_criteria.empty()) fail(Errc::empty_criteria, "refresh for task " + task_id);
  next.content_digest = next.compute_digest();
  // Mark every stored prior version superseded (digest-neutral flag).
  for (auto idx : by_id_.at(cur->id.value)) {
    auto& body = std::get<CommonGroundPacket>(log_[idx].body);
    if (body.version < next.version) body.superseded = true;
  }
  append({PacketKind::common_ground, task_id, next.id.value, 0, next});
  return next;
}

std::optional<CommonGroundPacket> PacketStore::current_ground(const std::string& task_id) const {
  auto it = by_task_.find(task_id);
  if (it == by_task_.end() || it->second.ground_id.empty()) return std::nullopt;
  const Record* rec = latest_record(it->second.ground_id);
  if (!rec) return std::nullopt;
  return std::get<CommonGroundPacket>(rec->body);
}

std::optional<CommonGroundPacket> PacketStore::ground_version(const std::string& task_id,
                                                              std::uint64_t version) const {
  auto it = by_task_.find(task_id);
  if (it == by_task_.end() || it->second.ground_id.empty()) return std::nullopt;
  for (auto idx : by_id_.at(it->second.ground_id)) {
    const auto& body = std::get<CommonGroundPacket>(log_[idx].body);
    if (body.version == version) return body;
  }
  return std::nullopt;
}

ClaimPacket PacketStore::assemble_claim(const std::string& task_id, ClaimedState claimed_state,
                                        std::string owner, std::string accountable,
                                        std::vector<std::string> unresolved_questions,
                                        std::uint64_t ledger_seq, IdMinter& minter) {
  auto ground = current_ground(task_id);
  if (!ground) fail(Errc::dangling_ref, "claim without ground for task " + task_id);
  if (ground->superseded) fail(Errc::superseded_ground, "claim base for task " + task_id);
  ClaimPacket p;
  p.id = minter.mint(PacketKind::claim);
  p.task_id = task_id;
  p.objective_echo = ground->objective;
  p.claimed_state = claimed_state;
  p.unresolved_questions = std::move(unresolved_questions);
  p.owner = std::move(owner);
  p.accountable = std::move(accountable);
  p.verify_state = VerifyState::not_invoked;
  p.ground_ref = {ground->id.value, ground->version};
  p.ground_digest = ground->content_digest;
  p.created_seq = ledger_seq;
  append({PacketKind::claim, task_id, p.id.value, 0, p});
  return p;
}

EvidencePacket PacketStore::attach_evidence(const std::string& claim_id_value,
                                            std::vector<std::string> artifacts,
                                            std::vector<SourceType> source_types,
                                            EvidenceQuality quality,
                                            std::vector<std::string> missing_required,
                                            IdMinter& minter) {
  const Record* claim_rec = latest_record(claim_id_value);
  if (!claim_rec || claim_rec->kind != PacketKind::claim)
    fail(Errc::dangling_ref, "evidence for unknown claim " + claim_id_value);
  EvidencePacket p;
  p.id = minter.mint(PacketKind::evidence);
  p.task_id = claim_rec->task_id;
  p.claim_ref = claim_id_value;
  p.artifacts = std::move(artifacts);
  p.source_types = std::move(source_types);
  p.quality = quality;
  p.missing_required = std::move(missing_required);
  append({PacketKind::evidence, p.task_id, p.id.value, 0, p});
  return p;
}

std::optional<ClaimPacket> PacketStore::latest_claim(const std::string& task_id) const {
  auto it = by_task_.find(task_id);
  if (it == by_task_.end() || it->second.claim_ids.empty()) return std::nullopt;
  return std::get<ClaimPacket>(latest_record(it->second.claim_ids.back())->body);
}

std::optional<EvidencePacket> PacketStore::latest_evidence(const std::string& task_id) const {
  auto it = by_task_.find(task_id);
  if (it == by_task_.end() || it->second.evidence_ids.empty()) return std::nullopt;
  return std::get<EvidencePacket>(latest_record(it->second.evidence_ids.back())->body);
}

FreshnessVerdict PacketStore::check_freshness(const ClaimPacket& claim) const {
  auto it = by_id_.find(claim.ground_ref.id);
  if (it == by_id_.end()) fail(Errc::dangling_ref, "claim ground ref " + claim.ground_ref.id);
  auto cur = current_ground(claim.task_id);
  if (!cur) fail(Errc::dangling_ref, "claim ground ref " + claim.ground_ref.id);
  if (claim.ground_ref.version != cur->version) return FreshnessVerdict::stale_version;
  if (claim.ground_digest != cur->content_digest) return FreshnessVerdict::digest_mismatch;
  return FreshnessVerdict::fresh;
}

RecoveryPacket PacketStore::add_recovery(const std::string& task_id, ErrorClass error_class,
                                         std::string failure_context,
                                         std::string next_recovery_action,
                                         std::string recovery_owner, IdMinter& minter) {
  if (recovery_owner.empty()) fail(Errc::missing_recovery_owner, "recovery for task " + task_id);
  if (next_recovery_action.empty()) fail(Errc::missing_next_action, "recovery for task " + task_id);
  RecoveryPacket p;
  p.id = minter.mint(PacketKind::recovery);
  p.task_id = task_id;
  p.error_class = error_class;
  p.failure_context = std::move(failure_context);
  p.next_recovery_action = std::move(next_recovery_action);
  p.recovery_owner = std::move(recovery_owner);
  p.retry_count = recovery_cycles(task_id);  // prior cycles on this branch
  p.status = RecoveryStatus::open;
  append({PacketKind::recovery, task_id, p.id.value, 0, p});
  return p;
}

RecoveryPacket PacketStore::close_recovery(const std::string& recovery_id_value) {
  const Record* rec = latest_record(recovery_id_value);
  if (!rec || rec->kind != PacketKind::recovery)
    fail(Errc::dangling_ref, "close of unknown recovery " + recovery_id_value);
  RecoveryPacket cur = std::get<RecoveryPacket>(rec->body);
  if (cur.status == RecoveryStatus::closed)
    fail(Errc::cycle_already_closed, "recovery " + recovery_id_value);
  cur.status = RecoveryStatus::closed;
  append({PacketKind::recovery, cur.task_id, cur.id.value, 0, cur});
  return cur;
}

std::optional<RecoveryPacket> PacketStore::open_recovery(const std::string& task_id) const {
  auto it = by_task_.find(task_id);
  if (it == by_task_.end()) return std::nullopt;
  for (auto rit = it->second.recovery_ids.rbegin(); rit != it->second.recovery_ids.rend(); ++rit) {
    auto p = std::get<RecoveryPacket>(latest_record(*rit)->body);
    if (p.status == RecoveryStatus::open) return p;
  }
  return std::nullopt;
}

std::uint64_t PacketStore::recovery_cycles(const std::string& task_id) const {
  auto it = by_task_.find(task_id);
  return it == by_task_.end() ? 0 : it->second.recovery_ids.size();
}

void PacketStore::put_pack(const ProcedurePack& pack) {
  append({PacketKind::procedure_pack, "_packs", pack.id.value, 0, pack});
}

std::string PacketStore::whole_store_digest() const {
  std::string chain = sha256_hex("");
  for (const auto& rec : log_) {
    CanonicalFields f =
        std::visit([](const auto& body) { return canonical_fields(body); }, rec.body);
    f.add("record_kind", to_string(rec.kind));
    f.add_u64("record_revision", rec.revision);
    chain = sha256_hex(chain + f.encode());
  }
  return chain;
}

void PacketStore::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  for (const auto& rec : log_) {
    json j = std::visit([](const auto& body) { return to_json(body); }, rec.body);
    j["revision"] = rec.revision;
    out << j.dump() << '\n';
  }
}

PacketStore PacketStore::load(const std::filesystem::path& file) {
  PacketStore store;
  std::ifstream in(file);
  if (!in) fail(Errc::invalid_input, "cannot open packet file " + file.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    const std::string kind = j.at("packet_kind").get<std::string>();
    if (kind == "common_ground") {
      auto p = common_ground_from_json(j);
      store.append({PacketKind::common_ground, p.task_id, p.id.value, 0, p});
    } else if (kind == "claim") {
      auto p = claim_from_json(j);
      store.append({PacketKind::claim, p.task_id, p.id.value, 0, p});
    } else if (kind == "evidence") {
      auto p = evidence_from_json(j);
      store.append({PacketKind::evidence, p.task_id, p.id.value, 0, p});
    } else if (kind == "recovery") {
      auto p = recovery_from_json(j);
      store.append({PacketKind::recovery, p.task_id, p.id.value, 0, p});
    } else if (kind == "procedure_pack") {
      store.put_pack(procedure_pack_from_json(j));
    } else {
      fail(Errc::unknown_packet, "packet kind '" + kind + "'");
    }
  }
  return store;
}

}  // namespace gatekit
