#include "gatekit/policy.hpp"

#include <fstream>

#include "gatekit/errors.hpp"

namespace gatekit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(Errc::invalid_input, "policy key '" + key + "' expects true/false, got '" + v + "'");
}

}  // namespace

PolicyConfig PolicyConfig::from_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(Errc::invalid_input, "cannot open policy file " + file.string());
  PolicyConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::invalid_input, "policy line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "evidence_floor") {
      cfg.gate.evidence_floor = evidence_quality_from(value);
    } else if (key == "deep_requires_diagnostic_first") {
      cfg.gate.deep_requires_diagnostic_first = parse_bool(value, key);
    } else if (key == "advisory_dismissal_requires_record") {
      cfg.gate.advisory_dismissal_requires_record = parse_bool(value, key);
    } else if (key == "max_retries") {
      cfg.recovery.max_retries = std::stoull(value);
    } else if (key.starts_with("recoverable.")) {
      cfg.recovery.class_recoverable[error_class_from(key.substr(12))] = parse_bool(value, key);
    } else {
      fail(Errc::invalid_input, "unknown policy key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace gatekit
