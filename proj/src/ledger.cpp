#include "gatekit/ledger.hpp"

#include <algorithm>
#include <fstream>

#include "gatekit/digest.hpp"
#include "gatekit/errors.hpp"

namespace gatekit {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json event_to_json(const Event& e) {
  ordered_json j;
  j["seq"] = e.seq;
  j["run_id"] = e.run_id;
  j["task_id"] = e.task_id;
  j["session_id"] = e.session_id;
  j["event_type"] = e.event_type;
  if (e.parent_event_id) j["parent_event_id"] = *e.parent_event_id;
  j["stage_from"] = e.stage_from;
  j["stage_to"] = e.stage_to;
  j["owner"] = e.owner;
  j["accountable"] = e.accountable;
  if (e.claim_packet_id) j["claim_packet_id"] = *e.claim_packet_id;
  if (e.evidence_packet_id) j["evidence_packet_id"] = *e.evidence_packet_id;
  if (e.recovery_packet_id) j["recovery_packet_id"] = *e.recovery_packet_id;
  if (e.outcome) j["outcome"] = to_string(*e.outcome);
  if (e.acceptance_status) j["acceptance_status"] = to_string(*e.acceptance_status);
  if (e.blocked_reason) j["blocked_reason"] = *e.blocked_reason;
  if (e.blocked_reason_class) j["blocked_reason_class"] = to_string(*e.blocked_reason_class);
  if (e.blocking_predicate) j["blocking_predicate"] = *e.blocking_predicate;
  if (e.missing_packet_type) j["missing_packet_type"] = to_string(*e.missing_packet_type);
  j["protocol_expected"] = e.protocol_expected;
  j["protocol_applied"] = e.protocol_applied;
  if (e.latency_ms) j["latency_ms"] = *e.latency_ms;
  if (e.origin) j["origin"] = to_string(*e.origin);
  j["tier"] = to_string(e.tier);
  j["cluster_id"] = e.cluster_id;
  return j;
}

Event event_from_json(const json& j) {
  Event e;
  e.seq = j.at("seq").get<std::uint64_t>();
  e.run_id = j.at("run_id").get<std::string>();
  e.task_id = j.at("task_id").get<std::string>();
  e.session_id = j.at("session_id").get<std::string>();
  e.event_type = j.at("event_type").get<std::string>();
  if (j.contains("parent_event_id")) e.parent_event_id = j.at("parent_event_id").get<std::uint64_t>();
  e.stage_from = j.at("stage_from").get<std::string>();
  e.stage_to = j.at("stage_to").get<std::string>();
  e.owner = j.at("owner").get<std::string>();
  e.accountable = j.at("accountable").get<std::string>();
  if (j.contains("claim_packet_id")) e.claim_packet_id = j.at("claim_packet_id").get<std::string>();
  if (j.contains("evidence_packet_id"))
    e.evidence_packet_id = j.at("evidence_packet_id").get<std::string>();
  if (j.contains("recovery_packet_id"))
    e.recovery_packet_id = j.at("recovery_packet_id").get<std::string>();
  if (j.contains("outcome")) e.outcome = outcome_from(j.at("outcome").get<std::string>());
  if (j.contains("acceptance_status"))
    e.acceptance_status = acceptance_status_from(j.at("acceptance_status").get<std::string>());
  if (j.contains("blocked_reason")) e.blocked_reason = j.at("blocked_reason").get<std::string>();
  if (j.contains("blocked_reason_class"))
    e.blocked_reason_class = blocked_reason_class_from(j.at("blocked_reason_class").get<std::string>());
  if (j.contains("blocking_predicate")) e.blocking_predicate = j.at("blocking_predicate").get<int>();
  if (j.contains("missing_packet_type"))
    e.missing_packet_type = packet_kind_from(j.at("missing_packet_type").get<std::string>());
  e.protocol_expected = j.at("protocol_expected").get<std::string>();
  e.protocol_applied = j.at("protocol_applied").get<std::string>();
  if (j.contains("latency_ms")) e.latency_ms = j.at("latency_ms").get<std::uint64_t>();
  if (j.contains("origin")) e.origin = origin_from(j.at("origin").get<std::string>());
  e.tier = tier_from(j.at("tier").get<std::string>());
  e.cluster_id = j.at("cluster_id").get<std::string>();
  return e;
}

std::string event_line(const Event& e) { return event_to_json(e).dump(); }

Ledger::Ledger() { segments_.push_back(LedgerSegment{0, false, {}}); }

std::uint64_t Ledger::append(Event e) {
  if (sealed_) fail(Errc::sealed_ledger, "append refused: no appendable segment");
  e.seq = next_seq_++;
  segments_.back().events.push_back(std::move(e));
  return segments_.back().events.back().seq;
}

const LedgerSegment& Ledger::rotate() {
  if (sealed_) fail(Errc::sealed_ledger, "rotate refused: ledger sealed");
  if (segments_.back().events.empty()) fail(Errc::empty_active, "rotate of empty active segment");
  segments_.back().archived = true;
  const LedgerSegment& archived = segments_.back();
  segments_.push_back(LedgerSegment{archived.index + 1, false, {}});
  return segments_[segments_.size() - 2];
}

void Ledger::seal() {
  if (!segments_.back().events.empty()) segments_.back().archived = true;
  sealed_ = true;
}

std::vector<Event> Ledger::reconstruct(const std::string& session_id) const {
  std::vector<Event> out;
  for (const auto& seg : segments_)
    for (const auto& e : seg.events)
      if (e.session_id == session_id) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) { return a.seq < b.seq; });
  return out;
}

std::vector<Event> Ledger::all_events() const {
  std::vector<Event> out;
  for (const auto& seg : segments_) out.insert(out.end(), seg.events.begin(), seg.events.end());
  std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) { return a.seq < b.seq; });
  return out;
}

std::size_t Ledger::event_count() const {
  std::size_t n = 0;
  for (const auto& seg : segments_) n += seg.events.size();
  return n;
}

std::string Ledger::segment_digest(std::size_t segment_index) const {
  std::string bytes;
  for (const auto& e : segments_.at(segment_index).events) {
    bytes += event_line(e);
    bytes += '\n';
  }
  return sha256_hex(bytes);
}

void Ledger::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& seg : segments_) {
    std::filesystem::path file =
        seg.archived ? dir / ("events." + std::to_string(seg.index) + ".archived")
                     : dir / "events.active.jsonl";
    std::ofstream out(file);
    for (const auto& e : seg.events) out << event_line(e) << '\n';
  }
}

namespace {

std::vector<Event> read_events_stream(std::istream& in) {
  std::vector<Event> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(event_from_json(json::parse(line)));
  }
  return out;
}

}  // namespace

Ledger Ledger::load(const std::filesystem::path& dir) {
  Ledger ledger;
  ledger.segments_.clear();
  std::vector<std::pair<std::uint64_t, std::filesystem::path>> archived;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("events.") && name.ends_with(".archived")) {
      const std::string num = name.substr(7, name.size() - 7 - 9);
      archived.emplace_back(std::stoull(num), entry.path());
    }
  }
  std::sort(archived.begin(), archived.end());
  std::uint64_t max_seq = 0;
  for (const auto& [index, path] : archived) {
    std::ifstream in(path);
    LedgerSegment seg{index, true, read_events_stream(in)};
    for (const auto& e : seg.events) max_seq = std::max(max_seq, e.seq);
    ledger.segments_.push_back(std::move(seg));
  }
  LedgerSegment active{archived.empty() ? 0 : archived.back().first + 1, false, {}};
  std::filesystem::path active_file = dir / "events.active.jsonl";
  if (std::filesystem::exists(active_file)) {
    std::ifstream in(active_file);
    active.events = read_events_stream(in);
    for (const auto& e : active.events) max_seq = std::max(max_seq, e.seq);
  }
  ledger.segments_.push_back(std::move(active));
  ledger.next_seq_ = max_seq + 1;
  return ledger;
}

std::vector<Event> read_event_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(Errc::invalid_input, "cannot open event file " + file.string());
  return read_events_stream(in);
}

void write_event_lines(const std::filesystem::path& file, const std::vector<Event>& events) {
  std::ofstream out(file);
  for (const auto& e : events) out << event_line(e) << '\n';
}

}  // namespace gatekit
