#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pls {

// A bitstring, MSB-first within each byte. Certificates are bitstrings with
// an exact bit count so size accounting is well-defined.
struct Bits {
  std::vector<std::uint8_t> bytes;
  std::size_t nbits = 0;

  bool operator==(const Bits&) const = default;

  void append_bit(bool b) {
    if (nbits % 8 == 0) bytes.push_back(0);
    if (b) bytes.back() |= static_cast<std::uint8_t>(1u << (7 - nbits % 8));
    ++nbits;
  }

  // Appends `width` bits of `value`, most significant first.
  void append(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) append_bit((value >> i) & 1u);
  }

  bool bit(std::size_t i) const {
    return (bytes[i / 8] >> (7 - i % 8)) & 1u;
  }

  std::string hex() const;
  static std::optional<Bits> from_hex(const std::string& hex, std::size_t nbits);
};

// Sequential reader over a Bits value. read() returns nullopt past the end;
// verifiers treat that as an undecodable certificate and reject.
class BitReader {
 public:
  explicit BitReader(const Bits& b) : bits_(&b) {}

  std::optional<std::uint64_t> read(unsigned width) {
    if (pos_ + width > bits_->nbits || width > 64) return std::nullopt;
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits_->bit(pos_ + i) ? 1u : 0u);
    pos_ += width;
    return v;
  }

  bool at_end() const { return pos_ == bits_->nbits; }
  std::size_t position() const { return pos_; }

 private:
  const Bits* bits_;
  std::size_t pos_ = 0;
};

// Width in bits of the fixed id field: ceil(log2(max_id + 1)).
unsigned id_field_width(std::uint64_t max_id);

}  // namespace pls
