#include "gatekit/errors.hpp"

namespace gatekit {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::empty_objective: return "empty_objective";
    case Errc::empty_criteria: return "empty_criteria";
    case Errc::missing_ownership: return "missing_ownership";
    case Errc::stale_base: return "stale_base";
    case Errc::superseded_ground: return "superseded_ground";
    case Errc::dangling_ref: return "dangling_ref";
    case Errc::unknown_packet: return "unknown_packet";
    case Errc::empty_request: return "empty_request";
    case Errc::illegal_transition: return "illegal_transition";
    case Errc::ownerless_next_action: return "ownerless_next_action";
    case Errc::board_before_diagnostic: return "board_before_diagnostic";
    case Errc::sealed_ledger: return "sealed_ledger";
    case Errc::empty_active: return "empty_active";
    case Errc::unknown_pack: return "unknown_pack";
    case Errc::empty_slice: return "empty_slice";
    case Errc::missing_origin: return "missing_origin";
    case Errc::denominator_mismatch: return "denominator_mismatch";
    case Errc::inconsistent_branch: return "inconsistent_branch";
    case Errc::ledger_unavailable: return "ledger_unavailable";
    case Errc::missing_recovery_owner: return "missing_recovery_owner";
    case Errc::missing_next_action: return "missing_next_action";
    case Errc::cycle_already_closed: return "cycle_already_closed";
    case Errc::unknown_trigger: return "unknown_trigger";
    case Errc::unreviewed_execution: return "unreviewed_execution";
    case Errc::invalid_proportions: return "invalid_proportions";
    case Errc::slice_label_mismatch: return "slice_label_mismatch";
    case Errc::invalid_input: return "invalid_input";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace gatekit
