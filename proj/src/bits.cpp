#include "pls/bits.hpp"

#include <bit>

namespace pls {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string Bits::hex() const {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

std::optional<Bits> Bits::from_hex(const std::string& hex, std::size_t nbits) {
  if (hex.size() % 2 != 0) return std::nullopt;
  Bits b;
  b.bytes.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]), lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    b.bytes.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  if (nbits > b.bytes.size() * 8 || b.bytes.size() * 8 - nbits >= 8) return std::nullopt;
  b.nbits = nbits;
  return b;
}

unsigned id_field_width(std::uint64_t max_id) {
  return static_cast<unsigned>(std::bit_width(max_id));
}

}  // namespace pls
