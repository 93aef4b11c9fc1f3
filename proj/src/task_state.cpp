#include "gatekit/task_state.hpp"

#include <fstream>

#include "gatekit/digest.hpp"
#include "gatekit/errors.hpp"

namespace gatekit {

using nlohmann::json;

json task_to_json(const TaskState& t) {
  json advisories = json::array();
  for (const auto& a : t.header.advisory_signals)
    advisories.push_back({{"severity", to_string(a.severity)},
                          {"treated", a.treated},
                          {"dismissed_under_policy", a.dismissed_under_policy},
                          {"note", a.note}});
  json history = json::array();
  for (const auto& h : t.history)
    history.push_back({{"from", to_string(h.from)},
                       {"to", to_string(h.to)},
                       {"trigger", h.trigger},
                       {"seq", h.seq}});
  return json{{"task_id", t.task_id},
              {"session_id", t.session_id},
              {"task_class", t.task_class},
              {"objective", t.objective},
              {"success_criteria", t.success_criteria},
              {"owner", t.owner},
              {"accountable", t.accountable},
              {"open_questions", t.open_questions},
              {"tier", to_string(t.risk.tier)},
              {"rollback_profile", to_string(t.risk.rollback_profile)},
              {"memory_refs", t.memory_refs},
              {"branch", to_string(t.branch)},
              {"header",
               {{"tier", to_string(t.header.tier)},
                {"task_class", t.header.task_class},
                {"owner", t.header.owner},
                {"accountable", t.header.accountable},
                {"verify_state", to_string(t.header.verify_state)},
                {"stale_ground", t.header.stale_ground},
                {"advisory_signals", advisories},
                {"veto_active", t.header.veto_active}}},
              {"history", history},
              {"origin", to_string(t.origin)},
              {"cluster_id", t.cluster_id},
              {"protocol", t.protocol}};
}

TaskState task_from_json(const json& j) {
  TaskState t;
  t.task_id = j.at("task_id").get<std::string>();
  t.session_id = j.at("session_id").get<std::string>();
  t.task_class = j.at("task_class").get<std::string>();
  t.objective = j.at("objective").get<std::string>();
  for (const auto& s : j.at("success_criteria")) t.success_criteria.push_back(s.get<std::string>());
  t.owner = j.at("owner").get<std::string>();
  t.accountable = j.at("accountable").get<std::string>();
  for (const auto& s : j.at("open_questions")) t.open_questions.push_back(s.get<std::string>());
  t.risk.tier = tier_from(j.at("tier").get<std::string>());
  t.risk.rollback_profile = rollback_profile_from(j.at("rollback_profile").get<std::string>());
  for (const auto& s : j.at("memory_refs")) t.memory_refs.push_back(s.get<std::string>());
  t.branch = branch_state_from(j.at("branch").get<std::string>());
  const auto& h = j.at("header");
  t.header.tier = tier_from(h.at("tier").get<std::string>());
  t.header.task_class = h.at("task_class").get<std::string>();
  t.header.owner = h.at("owner").get<std::string>();
  t.header.accountable = h.at("accountable").get<std::string>();
  t.header.verify_state = verify_state_from(h.at("verify_state").get<std::string>());
  t.header.stale_ground = h.at("stale_ground").get<bool>();
  for (const auto& a : h.at("advisory_signals"))
    t.header.advisory_signals.push_back({severity_from(a.at("severity").get<std::string>()),
                                         a.at("treated").get<bool>(),
                                         a.at("dismissed_under_policy").get<bool>(),
                                         a.at("note").get<std::string>()});
  t.header.veto_active = h.at("veto_active").get<bool>();
  for (const auto& r : j.at("history"))
    t.history.push_back({branch_state_from(r.at("from").get<std::string>()),
                         branch_state_from(r.at("to").get<std::string>()),
                         r.at("trigger").get<std::string>(), r.at("seq").get<std::uint64_t>()});
  t.origin = origin_from(j.at("origin").get<std::string>());
  t.cluster_id = j.at("cluster_id").get<std::string>();
  t.protocol = j.at("protocol").get<std::string>();
  return t;
}

void WorkProductStore::put(const std::string& task_id, std::string content) {
  blobs_[task_id] = std::move(content);
}

std::string WorkProductStore::digest(const std::string& task_id) const {
  auto it = blobs_.find(task_id);
  return sha256_hex(it == blobs_.end() ? std::string_view{} : std::string_view{it->second});
}

std::string WorkProductStore::whole_digest() const {
  std::string chain = sha256_hex("");
  for (const auto& [task, blob] : blobs_) chain = sha256_hex(chain + task + ":" + blob);
  return chain;
}

void WorkProductStore::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  for (const auto& [task, blob] : blobs_)
    out << json{{"task_id", task}, {"content", blob}}.dump() << '\n';
}

WorkProductStore WorkProductStore::load(const std::filesystem::path& file) {
  WorkProductStore store;
  std::ifstream in(file);
  if (!in) fail(Errc::invalid_input, "cannot open work products " + file.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    store.put(j.at("task_id").get<std::string>(), j.at("content").get<std::string>());
  }
  return store;
}

}  // namespace gatekit
