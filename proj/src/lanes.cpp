#include "gatekit/lanes.hpp"

#include "gatekit/errors.hpp"

namespace gatekit {

void LaneRegistry::add(LaneRole role) {
  if (role.can_verify && role.can_claim)
    fail(Errc::invalid_input, "role '" + role.name + "' cannot both claim and verify");
  if (role.can_verify)
    for (const auto& r : roles_)
      if (r.can_verify)
        fail(Errc::invalid_input, "second verifying role '" + role.name + "' refused");
  roles_.push_back(std::move(role));
}

const LaneRole* LaneRegistry::find(const std::string& name) const {
  for (const auto& r : roles_)
    if (r.name == name) return &r;
  return nullptr;
}

const LaneRole& LaneRegistry::verifier() const {
  for (const auto& r : roles_)
    if (r.can_verify) return r;
  fail(Errc::invalid_input, "registry has no verifying role");
}

LaneRegistry LaneRegistry::standard() {
  LaneRegistry reg;
  reg.add({lanes::coordinator, false, false, true, false});
  reg.add({lanes::worker, true, false, false, false});
  reg.add({lanes::verifier, false, true, false, true});
  reg.add({lanes::diagnostic, false, false, true, false});
  reg.add({lanes::board, false, false, false, false});
  reg.add({lanes::retriever, false, false, false, false});
  reg.add({lanes::analyst, false, false, false, false});
  reg.add({lanes::designer, false, false, false, false});
  reg.add({lanes::steward, false, false, false, false});
  return reg;
}

}  // namespace gatekit
