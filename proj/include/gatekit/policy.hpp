#pragma once

#include <cstdint>
#include <filesystem>
#include <map>

#include "gatekit/types.hpp"

namespace gatekit {

struct GatePolicy {
  EvidenceQuality evidence_floor = EvidenceQuality::adequate;
  bool deep_requires_diagnostic_first = true;
  bool advisory_dismissal_requires_record = true;
};

// Branch-recoverability policy. Unless configured otherwise every error class
// is recoverable; a verification failure on a deep-tier branch with a declared
// rollback profile is unrecoverable in scope, and the retry ceiling converts
// exhausted branches to unrecoverable regardless of class.
struct RecoveryPolicy {
  std::uint64_t max_retries = 3;
  std::map<ErrorClass, bool> class_recoverable;

  bool recoverable(ErrorClass error_class, Tier tier, RollbackProfile profile,
                   std::uint64_t retry_count) const {
    if (retry_count >= max_retries) return false;
    if (error_class == ErrorClass::verification_failure && tier == Tier::deep &&
        profile == RollbackProfile::declared)
      return false;
    auto it = class_recoverable.find(error_class);
    return it == class_recoverable.end() ? true : it->second;
  }
};

struct PolicyConfig {
  GatePolicy gate;
  RecoveryPolicy recovery;

  // key = value lines, '#' comments. Unknown keys are refused.
  static PolicyConfig from_file(const std::filesystem::path& file);
};

}  // namespace gatekit
