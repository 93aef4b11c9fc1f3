#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatekit/types.hpp"

namespace gatekit {

// Event type labels. Kept as strings in serialized form; these constants are
// the full vocabulary the engine emits.
namespace ev {
inline constexpr const char* task_created = "task_created";
inline constexpr const char* claim_packet_created = "claim_packet_created";
inline constexpr const char* evidence_packet_created = "evidence_packet_created";
inline constexpr const char* ground_refreshed = "ground_refreshed";
inline constexpr const char* verify_started = "verify_started";
inline constexpr const char* verify_completed = "verify_completed";
inline constexpr const char* recovery_packet_created = "recovery_packet_created";
inline constexpr const char* recovery_closed = "recovery_closed";
inline constexpr const char* task_completed = "task_completed";
inline constexpr const char* task_blocked = "task_blocked";
inline constexpr const char* task_failed = "task_failed";
inline constexpr const char* diagnostic_review = "diagnostic_review";
inline constexpr const char* escalation_board = "escalation_board";
inline constexpr const char* rollback_enqueued = "rollback_enqueued";
inline constexpr const char* rollback_approved = "rollback_approved";
inline constexpr const char* rollback_denied = "rollback_denied";
inline constexpr const char* rollback_executed = "rollback_executed";
inline constexpr const char* rollback_failed = "rollback_failed";
}  // namespace ev

struct Event {
  std::uint64_t seq = 0;
  std::string run_id;
  std::string task_id;
  std::string session_id;
  std::string event_type;
  std::optional<std::uint64_t> parent_event_id;
  std::string stage_from;
  std::string stage_to;
  std::string owner;       // acting lane (or reviewer) for this event
  std::string accountable;
  std::optional<std::string> claim_packet_id;
  std::optional<std::string> evidence_packet_id;
  std::optional<std::string> recovery_packet_id;
  std::optional<Outcome> outcome;  // verify_completed only; artifacts may omit
  std::optional<AcceptanceStatus> acceptance_status;
  std::optional<std::string> blocked_reason;
  std::optional<BlockedReasonClass> blocked_reason_class;
  std::optional<int> blocking_predicate;  // 0 on success, else lowest failed index
  std::optional<PacketKind> missing_packet_type;
  std::string protocol_expected;
  std::string protocol_applied;
  std::optional<std::uint64_t> latency_ms;  // not claimed by accounting; stays null
  std::optional<Origin> origin;  // always stamped by the scribe; split reports refuse absence
  Tier tier = Tier::standard;
  std::string cluster_id;
};

nlohmann::ordered_json event_to_json(const Event& e);
Event event_from_json(const nlohmann::json& j);
std::string event_line(const Event& e);

struct LedgerSegment {
  std::uint64_t index = 0;
  bool archived = false;
  std::vector<Event> events;
};

// Rotation-aware append-only ledger. Appends go to the single active segment;
// rotation archives it (immutable thereafter) and opens the next one.
// Reconstruction is the seq-ordered projection across every segment, so the
// rotation schedule never changes what a reader sees.
class Ledger {
 public:
  Ledger();

  std::uint64_t append(Event e);            // assigns seq; refuses when sealed
  const LedgerSegment& rotate();            // archives active, opens successor
  void seal();                              // no further appends (drill/testing)
  bool appendable() const { return !sealed_; }

  std::vector<Event> reconstruct(const std::string& session_id) const;
  std::vector<Event> all_events() const;
  std::uint64_t head_seq() const { return next_seq_ - 1; }
  std::size_t event_count() const;

  const std::vector<LedgerSegment>& segments() const { return segments_; }
  // Digest of an archived segment's serialized form (immutability checks).
  std::string segment_digest(std::size_t segment_index) const;

  void save(const std::filesystem::path& dir) const;
  static Ledger load(const std::filesystem::path& dir);

 private:
  std::vector<LedgerSegment> segments_;  // active segment is always last
  std::uint64_t next_seq_ = 1;
  bool sealed_ = false;
};

// Flat event-file helpers (accounting inputs are files or ledger dirs).
std::vector<Event> read_event_lines(const std::filesystem::path& file);
void write_event_lines(const std::filesystem::path& file, const std::vector<Event>& events);

}  // namespace gatekit
