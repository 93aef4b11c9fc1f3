#include "gatekit/digest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <stdexcept>

namespace gatekit {

std::string sha256_hex(std::string_view bytes) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int out_len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), out, &out_len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  s.reserve(out_len * 2);
  for (unsigned int i = 0; i < out_len; ++i) {
    s.push_back(hex[out[i] >> 4]);
    s.push_back(hex[out[i] & 0xf]);
  }
  return s;
}

namespace {

void append_prefixed(std::string& out, std::string_view bytes) {
  out += std::to_string(bytes.size());
  out += ':';
  out.append(bytes.data(), bytes.size());
}

}  // namespace

void CanonicalFields::add(std::string name, std::string_view value) {
  fields_.emplace_back(std::move(name), std::string(value));
}

void CanonicalFields::add_u64(std::string name, std::uint64_t value) {
  add(std::move(name), std::to_string(value));
}

void CanonicalFields::add_flag(std::string name, bool value) {
  add(std::move(name), value ? "1" : "0");
}

void CanonicalFields::add_list(std::string name, const std::vector<std::string>& items) {
  std::string payload = std::to_string(items.size());
  payload += '#';
  for (const auto& item : items) append_prefixed(payload, item);
  fields_.emplace_back(std::move(name), std::move(payload));
}

std::string CanonicalFields::encode() const {
  auto sorted = fields_;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [name, payload] : sorted) {
    append_prefixed(out, name);
    append_prefixed(out, payload);
    out += ';';
  }
  return out;
}

}  // namespace gatekit
