#pragma once

#include <string>
#include <vector>

namespace gatekit {

struct LaneRole {
  std::string name;
  bool can_claim = false;
  bool can_verify = false;
  bool can_escalate = false;
  bool holds_veto = false;
};

// Role registry with separation-of-duties checks: exactly one role may verify,
// and a verifying role never claims. Registration enforces both.
class LaneRegistry {
 public:
  void add(LaneRole role);
  const LaneRole* find(const std::string& name) const;
  const LaneRole& verifier() const;
  const std::vector<LaneRole>& roles() const { return roles_; }

  // The default lane set used by the scenario runner.
  static LaneRegistry standard();

 private:
  std::vector<LaneRole> roles_;
};

namespace lanes {
inline constexpr const char* coordinator = "runtime_coordinator";
inline constexpr const char* worker = "implementation_worker";
inline constexpr const char* verifier = "admission_verifier";
inline constexpr const char* diagnostic = "diagnostic_reviewer";
inline constexpr const char* board = "escalation_board";
inline constexpr const char* retriever = "evidence_retriever";
inline constexpr const char* analyst = "discovery_analyst";
inline constexpr const char* designer = "design_specialist";
inline constexpr const char* steward = "state_integrity_steward";
}  // namespace lanes

}  // namespace gatekit
