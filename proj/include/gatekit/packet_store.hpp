#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gatekit/ids.hpp"
#include "gatekit/packets.hpp"

namespace gatekit {

struct GroundUpdate {
  std::optional<std::string> objective;
  std::optional<std::vector<std::string>> accepted_facts;
  std::optional<std::vector<std::string>> open_questions;
  std::optional<std::vector<std::string>> assumptions;
  std::optional<std::string> current_owner;
  std::optional<std::string> current_stage;
  std::optional<std::vector<std::string>> success_criteria;
};

// Append-only packet log. Stored contents are never edited in place: ground
// refreshes append a new version, recovery status changes append a revision
// record. The only stored-field flip is the digest-neutral superseded marker
// on an outdated ground version.
class PacketStore {
 public:
  using Body = std::variant<CommonGroundPacket, ClaimPacket, EvidencePacket,
                            RecoveryPacket, ProcedurePack>;

  struct Record {
    PacketKind kind;
    std::string task_id;
    std::string id_value;
    std::uint64_t revision = 0;  // per-id revision counter
    Body body;
  };

  // --- common ground ---------------------------------------------------
  CommonGroundPacket mint_common_ground(const std::string& task_id, std::string objective,
                                        std::vector<std::string> success_criteria,
                                        std::string owner, std::string accountable,
                                        IdMinter& minter);
  // base_version must be the current version; bumps version, marks the prior
  // one superseded, recomputes the digest.
  CommonGroundPacket refresh_ground(const std::string& task_id, std::uint64_t base_version,
                                    const GroundUpdate& updates);
  std::optional<CommonGroundPacket> current_ground(const std::string& task_id) const;
  std::optional<CommonGroundPacket> ground_version(const std::string& task_id,
                                                   std::uint64_t version) const;

  // --- claims / evidence ----------------------------------------------
  ClaimPacket assemble_claim(const std::string& task_id, ClaimedState claimed_state,
                             std::string owner, std::string accountable,
                             std::vector<std::string> unresolved_questions,
                             std::uint64_t ledger_seq, IdMinter& minter);
  EvidencePacket attach_evidence(const std::string& claim_id_value,
                                 std::vector<std::string> artifacts,
                                 std::vector<SourceType> source_types, EvidenceQuality quality,
                                 std::vector<std::string> missing_required, IdMinter& minter);
  std::optional<ClaimPacket> latest_claim(const std::string& task_id) const;
  std::optional<EvidencePacket> latest_evidence(const std::string& task_id) const;
  FreshnessVerdict check_freshness(const ClaimPacket& claim) const;

  // --- recovery ---------------------------------------------------------
  RecoveryPacket add_recovery(const std::string& task_id, ErrorClass error_class,
                              std::string failure_context, std::string next_recovery_action,
                              std::string recovery_owner, IdMinter& minter);
  RecoveryPacket close_recovery(const std::string& recovery_id_value);
  std::optional<RecoveryPacket> open_recovery(const std::string& task_id) const;
  std::uint64_t recovery_cycles(const std::string& task_id) const;

  // --- procedure packs --------------------------------------------------
  void put_pack(const ProcedurePack& pack);

  // --- store-wide -------------------------------------------------------
  // Chained digest over every record's canonical encoding, in append order.
  // Bit-identical before/after any read-only operation.
  std::string whole_store_digest() const;
  const std::vector<Record>& records() const { return log_; }
  std::size_t size() const { return log_.size(); }

  void save(const std::filesystem::path& file) const;
  static PacketStore load(const std::filesystem::path& file);

 private:
  const Record* latest_record(const std::string& id_value) const;
  Record& append(Record r);

  std::vector<Record> log_;
  std::map<std::string, std::vector<std::size_t>> by_id_;  // id value -> log indices
  struct TaskIndex {
    std::string ground_id;
    std::vector<std::string> claim_ids;
    std::vector<std::string> evidence_ids;
    std::vector<std::string> recovery_ids;
  };
  std::map<std::string, TaskIndex> by_task_;
};

}  // namespace gatekit
