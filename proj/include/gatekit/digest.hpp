#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gatekit {

// SHA-256 of the given bytes as 64 lowercase hex chars.
std::string sha256_hex(std::string_view bytes);

// Canonical field serialization for content digests. This encoding is an
// external contract: fields sorted by name, UTF-8 bytes, every component
// length-prefixed, so two writers always produce identical digest input.
//
//   field   := <len(name)> ':' name <len(payload)> ':' payload ';'
//   scalar  := raw bytes
//   u64     := decimal text
//   list    := <count> '#' item*          item := <len> ':' bytes
//
// Fields are emitted in byte-wise sorted name order regardless of add() order.
class CanonicalFields {
 public:
  void add(std::string name, std::string_view value);
  void add_u64(std::string name, std::uint64_t value);
  void add_flag(std::string name, bool value);
  void add_list(std::string name, const std::vector<std::string>& items);

  std::string encode() const;
  std::string digest() const { return sha256_hex(encode()); }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace gatekit
