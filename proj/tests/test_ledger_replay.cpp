#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "gatekit/errors.hpp"
#include "gatekit/ledger.hpp"
#include "gatekit/replay.hpp"
#include "gatekit/rng.hpp"

#include "helpers.hpp"

using namespace gatekit;
using gatekit::testing::errc_of;
using gatekit::testing::scratch_dir;
using gatekit::testing::typed_event;

namespace {

std::string dump_all(const Ledger& ledger) {
  std::string out;
  for (const auto& e : ledger.all_events()) out += event_line(e) + "\n";
  return out;
}

Event sample_event(int i) {
  Event e;
  e.task_id = "T" + std::to_string(i % 7);
  e.session_id = "S" + std::to_string(i % 3);
  e.event_type = ev::diagnostic_review;
  e.origin = Origin::synthetic;
  return e;
}

// Canonical six-event session: create, claim, evidence, verify pair, completion.
std::vector<Event> canonical_session(const std::string& sid = "S1") {
  std::vector<Event> out;
  std::uint64_t seq = 0;
  auto add = [&](const char* type, std::optional<Outcome> outcome = {}) {
    Event e;
    e.seq = ++seq;
    e.task_id = "T1";
    e.session_id = sid;
    e.event_type = type;
    e.outcome = outcome;
    out.push_back(e);
  };
  add(ev::task_created);
  add(ev::claim_packet_created);
  add(ev::evidence_packet_created);
  add(ev::verify_started);
  add(ev::verify_completed, Outcome::success);
  add(ev::task_completed);
  return out;
}

}  // namespace

TEST_CASE("appends assign dense increasing sequence numbers") {
  Ledger ledger;
  CHECK(ledger.head_seq() == 0);
  CHECK(ledger.append(sample_event(0)) == 1);
  CHECK(ledger.append(sample_event(1)) == 2);
  CHECK(ledger.append(sample_event(2)) == 3);
  CHECK(ledger.head_seq() == 3);
  CHECK(ledger.event_count() == 3);
  auto events = ledger.all_events();
  for (std::size_t i = 0; i < events.size(); ++i) CHECK(events[i].seq == i + 1);
}

TEST_CASE("sealing stops appends and rotation needs a nonempty active segment") {
  Ledger ledger;
  CHECK(errc_of([&] { ledger.rotate(); }) == Errc::empty_active);

  ledger.append(sample_event(0));
  auto& archived = ledger.rotate();
  CHECK(archived.archived);
  CHECK(ledger.segments().size() == 2);
  CHECK(ledger.append(sample_event(1)) == 2);  // sequence continues across segments

  ledger.seal();
  CHECK_FALSE(ledger.appendable());
  CHECK(errc_of([&] { ledger.append(sample_event(2)); }) == Errc::sealed_ledger);
  CHECK(ledger.event_count() == 2);
}

TEST_CASE("rotation schedules never change what a reader reconstructs") {
  std::vector<Event> stream;
  for (int i = 0; i < 60; ++i) stream.push_back(sample_event(i));

  Ledger flat;
  for (const auto& e : stream) flat.append(e);

  Ledger every7;
  for (int i = 0; i < 60; ++i) {
    every7.append(stream[i]);
    if (i % 7 == 6) every7.rotate();
  }

  CounterRng rng(99);
  Ledger random_rotation;
  for (int i = 0; i < 60; ++i) {
    random_rotation.append(stream[i]);
    if (rng.chance(1, 4)) random_rotation.rotate();
  }

  CHECK(dump_all(every7) == dump_all(flat));
  CHECK(dump_all(random_rotation) == dump_all(flat));
  CHECK(every7.segments().size() > 1);
  for (const auto& sid : {"S0", "S1", "S2"}) {
    auto a = flat.reconstruct(sid);
    auto b = random_rotation.reconstruct(sid);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(event_line(a[i]) == event_line(b[i]));
    // Reconstruction is seq-ordered and single-session.
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].seq < a[i].seq);
    for (const auto& e : a) CHECK(e.session_id == sid);
  }
}

TEST_CASE("archived segments keep their digest as the ledger grows") {
  Ledger ledger;
  for (int i = 0; i < 10; ++i) ledger.append(sample_event(i));
  ledger.rotate();
  const auto digest0 = ledger.segment_digest(0);

  for (int i = 10; i < 30; ++i) ledger.append(sample_event(i));
  ledger.rotate();
  for (int i = 30; i < 35; ++i) ledger.append(sample_event(i));

  CHECK(ledger.segment_digest(0) == digest0);
  CHECK(ledger.segment_digest(1) != digest0);
}

TEST_CASE("a saved ledger reloads byte-identically and keeps appending") {
  Ledger ledger;
  for (int i = 0; i < 25; ++i) {
    ledger.append(sample_event(i));
    if (i % 9 == 8) ledger.rotate();
  }
  auto dir = scratch_dir("ledger_roundtrip");
  ledger.save(dir);

  auto loaded = Ledger::load(dir);
  CHECK(dump_all(loaded) == dump_all(ledger));
  CHECK(loaded.head_seq() == ledger.head_seq());
  CHECK(loaded.segments().size() == ledger.segments().size());
  CHECK(loaded.append(sample_event(99)) == ledger.head_seq() + 1);
}

TEST_CASE("event json round-trips populated and sparse rows alike") {
  Event full;
  full.seq = 42;
  full.run_id = "run";
  full.task_id = "T9";
  full.session_id = "S9";
  full.event_type = ev::verify_completed;
  full.parent_event_id = 41;
  full.stage_from = "verify_pending";
  full.stage_to = "blocked";
  full.owner = "admission_verifier";
  full.accountable = "runtime_coordinator";
  full.claim_packet_id = "CID";
  full.evidence_packet_id = "EID";
  full.recovery_packet_id = "RID";
  full.outcome = Outcome::blocked;
  full.acceptance_status = AcceptanceStatus::withheld;
  full.blocked_reason = "verify_blocked";
  full.blocked_reason_class = BlockedReasonClass::owner_gap;
  full.blocking_predicate = 5;
  full.missing_packet_type = PacketKind::evidence;
  full.protocol_expected = "standard";
  full.protocol_applied = "standard";
  full.origin = Origin::production;
  full.tier = Tier::deep;
  full.cluster_id = "C3";

  auto round = event_from_json(event_to_json(full));
  CHECK(event_line(round) == event_line(full));
  CHECK(round.parent_event_id == full.parent_event_id);
  CHECK(round.outcome == full.outcome);
  CHECK(round.blocked_reason_class == full.blocked_reason_class);
  CHECK(round.missing_packet_type == full.missing_packet_type);
  CHECK(round.origin == full.origin);

  Event sparse;
  sparse.seq = 1;
  sparse.task_id = "T";
  sparse.event_type = ev::task_created;
  auto round2 = event_from_json(event_to_json(sparse));
  CHECK_FALSE(round2.outcome.has_value());
  CHECK_FALSE(round2.origin.has_value());  // absence survives the round trip
  CHECK_FALSE(round2.parent_event_id.has_value());
  CHECK(event_line(round2) == event_line(sparse));

  auto dir = scratch_dir("event_lines");
  write_event_lines(dir / "events.jsonl", {full, sparse});
  auto back = read_event_lines(dir / "events.jsonl");
  REQUIRE(back.size() == 2);
  CHECK(event_line(back[0]) == event_line(full));
  CHECK(event_line(back[1]) == event_line(sparse));
}

TEST_CASE("the pack registry serves builtin packs and refuses unknown names") {
  auto registry = PackRegistry::with_builtin();
  CHECK(registry.has("standard_v1"));
  const auto& pack = registry.get("standard_v1");
  CHECK(pack.expected_event_template.size() == 6);
  CHECK(errc_of([&] { registry.get("nonexistent"); }) == Errc::unknown_pack);

  auto path = reporting_path_types(pack);
  // Template plus recovery/refresh/rollback extensions; review steps excluded.
  CHECK(path.size() == 11);
  for (const char* t : {ev::rollback_enqueued, ev::rollback_approved, ev::rollback_denied,
                        ev::diagnostic_review, ev::escalation_board})
    CHECK(std::find(path.begin(), path.end(), t) == path.end());
}

TEST_CASE("the composition identity holds on the canonical path") {
  auto pack = standard_pack();
  auto r = replay_accounting(canonical_session(), pack);
  CHECK(r.observed == 6);
  CHECK(r.expected == 6);
  CHECK(r.identity_holds);
  CHECK(r.session_id == "S1");

  // Strict mode pins the bare template.
  auto strict = replay_accounting(canonical_session(), pack, true);
  CHECK(strict.expected == 6);
  CHECK(strict.identity_holds);
}

TEST_CASE("recovery and skip branches extend the expected count exactly") {
  auto pack = standard_pack();

  auto session = canonical_session();
  session.pop_back();  // completion comes after the recovery cycle below
  auto add = [&](const char* type, std::optional<Outcome> outcome = {}) {
    Event e;
    e.seq = session.back().seq + 1;
    e.task_id = "T1";
    e.session_id = "S1";
    e.event_type = type;
    e.outcome = outcome;
    session.push_back(e);
  };
  // First verdict becomes blocked instead of success.
  session[4].outcome = Outcome::blocked;
  add(ev::recovery_packet_created);
  add(ev::recovery_closed);
  add(ev::verify_started);
  add(ev::verify_completed, Outcome::success);
  add(ev::task_completed);

  auto r = replay_accounting(session, pack);
  CHECK(r.observed == 10);
  CHECK(r.expected == 10);  // one claim, one evidence, one recovery, completion
  CHECK(r.identity_holds);
  CHECK_FALSE(replay_accounting(session, pack, true).identity_holds);

  // Skip verdicts demand their own re-verify pair.
  std::vector<Event> skip;
  std::uint64_t seq = 0;
  auto put = [&](const char* type, std::optional<Outcome> outcome = {}) {
    Event e;
    e.seq = ++seq;
    e.task_id = "T1";
    e.session_id = "S2";
    e.event_type = type;
    e.outcome = outcome;
    skip.push_back(e);
  };
  put(ev::task_created);
  put(ev::claim_packet_created);
  put(ev::verify_started);
  put(ev::verify_completed, Outcome::skipped);
  put(ev::evidence_packet_created);
  put(ev::verify_started);
  put(ev::verify_completed, Outcome::success);
  put(ev::task_completed);
  auto rs = replay_accounting(skip, pack);
  CHECK(rs.observed == 8);
  CHECK(rs.expected == 8);
  CHECK(rs.identity_holds);
}

TEST_CASE("deleting any verification event breaks the identity") {
  auto pack = standard_pack();
  auto sessions = {canonical_session("S1")};
  for (const auto& base : sessions) {
    for (std::size_t drop = 0; drop < base.size(); ++drop) {
      if (base[drop].event_type != ev::verify_started &&
          base[drop].event_type != ev::verify_completed)
        continue;
      auto mutant = base;
      mutant.erase(mutant.begin() + static_cast<std::ptrdiff_t>(drop));
      auto r = replay_accounting(mutant, pack);
      INFO("dropped index ", drop, " type ", base[drop].event_type);
      CHECK_FALSE(r.identity_holds);
    }
  }

  // Dropping the claim removes one observed row but two expected ones.
  auto mutant = canonical_session();
  mutant.erase(mutant.begin() + 1);
  CHECK_FALSE(replay_accounting(mutant, pack).identity_holds);
}

TEST_CASE("review artifacts stay off the reporting path but are listed") {
  auto pack = standard_pack();
  auto session = canonical_session();
  auto add = [&](const char* type) {
    Event e;
    e.seq = session.back().seq + 1;
    e.task_id = "T1";
    e.session_id = "S1";
    e.event_type = type;
    session.push_back(e);
  };
  add(ev::rollback_enqueued);
  add(ev::rollback_approved);
  add(ev::diagnostic_review);
  add(ev::diagnostic_review);  // duplicates are listed once

  auto r = replay_accounting(session, pack);
  CHECK(r.observed == 6);  // unchanged by review artifacts
  CHECK(r.identity_holds);
  REQUIRE(r.off_path_types.size() == 3);
  CHECK(std::find(r.off_path_types.begin(), r.off_path_types.end(),
                  std::string(ev::rollback_enqueued)) != r.off_path_types.end());
  CHECK(std::find(r.off_path_types.begin(), r.off_path_types.end(),
                  std::string(ev::diagnostic_review)) != r.off_path_types.end());
}

TEST_CASE("rollback executions count toward the expected composition") {
  auto pack = standard_pack();
  std::vector<Event> session;
  std::uint64_t seq = 0;
  auto put = [&](const char* type, std::optional<Outcome> outcome = {}) {
    Event e;
    e.seq = ++seq;
    e.task_id = "T1";
    e.session_id = "S3";
    e.event_type = type;
    e.outcome = outcome;
    session.push_back(e);
  };
  put(ev::task_created);
  put(ev::claim_packet_created);
  put(ev::evidence_packet_created);
  put(ev::verify_started);
  put(ev::verify_completed, Outcome::failed);
  put(ev::rollback_enqueued);
  put(ev::rollback_approved);
  put(ev::rollback_executed);

  auto r = replay_accounting(session, pack);
  CHECK(r.observed == 6);  // enqueue/approve are review artifacts
  CHECK(r.expected == 6);  // 1 + claim + evidence + pair + execution
  CHECK(r.identity_holds);

  bool saw_rollback = false;
  for (const auto& b : r.branch_profile)
    if (b.label == "rollback_execution") {
      saw_rollback = true;
      CHECK(b.count == 1);
    }
  CHECK(saw_rollback);
}
