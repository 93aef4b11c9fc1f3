#include "gatekit/ids.hpp"

namespace gatekit {

namespace {

constexpr char kAlphabet[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";  // Crockford base32

void encode_b32(std::uint64_t v, int chars, std::string& out) {
  for (int i = chars - 1; i >= 0; --i) out.push_back(kAlphabet[(v >> (5 * i)) & 0x1f]);
}

}  // namespace

std::string IdMinter::mint_value() {
  std::string s;
  s.reserve(26);
  encode_b32(++tick_, 10, s);          // 50-bit monotonic prefix
  encode_b32(rng_.next(), 13, s);      // 64 random bits, top 65-bit word truncated
  encode_b32(rng_.next() & 0x7fff, 3, s);
  return s;
}

}  // namespace gatekit
