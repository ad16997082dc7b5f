#pragma once

// Unsigned LEB128.

#include <cstdint>
#include <span>
#include <string>

#include "msz/errors.hpp"

namespace msz {

template <class Out>
void put_varint(Out& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<typename Out::value_type>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<typename Out::value_type>(v));
}

/// Reads a varint at `pos` and advances it. Throws FormatError on truncation
/// or overlong input.
inline std::uint64_t get_varint(std::span<const std::uint8_t> in, std::size_t& pos) {
  std::uint64_t v = 0;
  for (unsigned shift = 0; shift < 64; shift += 7) {
    if (pos >= in.size()) {
      throw FormatError("truncated varint");
    }
    const std::uint8_t b = in[pos++];
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) {
      return v;
    }
  }
  throw FormatError("varint too long");
}

}  // namespace msz
