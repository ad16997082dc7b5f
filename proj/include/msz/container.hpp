#pragma once

// On-disk container:
//
//   "MSZ1"                       magic, 4 bytes
//   version                      1 byte (currently 1)
//   codec id                     1 byte (1 = categorical, 2 = bytes)
//   varint n, n bytes            codec parameters
//   payload kind                 1 byte (0 = flat, 1 = nested)
//   varint |M|                   number of (outer) symbols
//   |M| varints                  nested only: inner sizes in encoding order
//   serialized AnsState          words big-endian, then 64-bit head
//   CRC-32C                      4 bytes big-endian, over everything between
//                                the magic and the checksum
//
// Codec parameters:
//   bytes        varint max_len
//   categorical  precision bits (1 byte), varint alphabet size, then per
//                symbol varint gap (symbol - previous - 1; first symbol as is)
//                and varint mass

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "msz/ans.hpp"
#include "msz/codecs.hpp"
#include "msz/multiset.hpp"
#include "msz/nested.hpp"

namespace msz {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'S', 'Z', '1'};
inline constexpr std::uint8_t kContainerVersion = 1;

enum class CodecId : std::uint8_t { categorical = 1, bytes = 2 };
enum class PayloadKind : std::uint8_t { flat = 0, nested = 1 };

struct Container {
  CodecId codec_id = CodecId::bytes;
  std::vector<std::uint8_t> codec_params;
  PayloadKind kind = PayloadKind::flat;
  std::uint64_t size = 0;
  std::vector<std::uint64_t> inner_sizes;  // nested only, size() == size
  AnsState state;

  bool operator==(const Container&) const = default;
};

std::uint32_t crc32c(std::span<const std::uint8_t> data);

std::vector<std::uint8_t> write_container(const Container& c);
/// Throws FormatError on bad magic, version, checksum or layout.
Container read_container(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> codec_params(const ByteStringCodec& codec);
std::vector<std::uint8_t> codec_params(const QuantizedCategorical& codec);
ByteStringCodec bytes_codec_from_params(std::span<const std::uint8_t> params);
QuantizedCategorical categorical_codec_from_params(std::span<const std::uint8_t> params);

/// The multiset's own symbol frequencies as a categorical model; bits == 0
/// picks default_precision_bits(unique symbols).
QuantizedCategorical empirical_codec(const Multiset<std::uint32_t>& m, unsigned bits = 0);

std::vector<std::uint8_t> compress(const Multiset<std::string>& m, const ByteStringCodec& codec);
std::vector<std::uint8_t> compress(const Multiset<std::uint32_t>& m,
                                   const QuantizedCategorical& codec);
std::vector<std::uint8_t> compress(const NestedMultiset& nm, const ByteStringCodec& codec);

struct Archive {
  Container header;
  std::variant<Multiset<std::string>, Multiset<std::uint32_t>, NestedMultiset> content;
  /// False if the state left after decoding is not the empty state (up to
  /// synthesized zero words). Decoding itself cannot detect a mismatch, so
  /// this is advisory.
  bool residual_clean = true;
};

Archive decompress(std::span<const std::uint8_t> bytes);

}  // namespace msz
