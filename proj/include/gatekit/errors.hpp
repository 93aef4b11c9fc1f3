#pragma once

#include <stdexcept>
#include <string>

namespace gatekit {

// Error codes for refused operations. Admission predicate evaluation never
// throws; these cover construction, store discipline, lifecycle legality and
// tool input validation.
enum class Errc {
  empty_objective,
  empty_criteria,
  missing_ownership,
  stale_base,
  superseded_ground,
  dangling_ref,
  unknown_packet,
  empty_request,
  illegal_transition,
  ownerless_next_action,
  board_before_diagnostic,
  sealed_ledger,
  empty_active,
  unknown_pack,
  empty_slice,
  missing_origin,
  denominator_mismatch,
  inconsistent_branch,
  ledger_unavailable,
  missing_recovery_owner,
  missing_next_action,
  cycle_already_closed,
  unknown_trigger,
  unreviewed_execution,
  invalid_proportions,
  slice_label_mismatch,
  invalid_input,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

}  // namespace gatekit
