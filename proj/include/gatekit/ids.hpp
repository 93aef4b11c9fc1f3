#pragma once

#include <cstdint>
#include <string>

#include "gatekit/rng.hpp"
#include "gatekit/types.hpp"

namespace gatekit {

struct PacketId {
  std::string value;  // 26-char sortable identifier
  PacketKind kind = PacketKind::common_ground;

  bool operator==(const PacketId& o) const { return value == o.value && kind == o.kind; }
};

// Mints 26-character identifiers: a 10-char monotonic tick prefix followed by
// 16 random chars, Crockford base32 alphabet. Lexicographic order therefore
// follows mint order within one minter. The tick is a logical clock so that
// seeded runs reproduce identical ids.
class IdMinter {
 public:
  explicit IdMinter(std::uint64_t seed) : rng_(seed) {}

  std::string mint_value();
  PacketId mint(PacketKind kind) { return PacketId{mint_value(), kind}; }

  // Persistence support: reloaded minters skip past already-issued ticks so
  // ids stay unique across save/load. Randomness differs; uniqueness holds.
  std::uint64_t ticks() const { return tick_; }
  void advance_to(std::uint64_t tick) {
    if (tick > tick_) tick_ = tick;
  }

 private:
  std::uint64_t tick_ = 0;
  CounterRng rng_;
};

}  // namespace gatekit
