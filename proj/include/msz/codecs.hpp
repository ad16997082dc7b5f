#pragma once

// Symbol codecs: anything that can push a symbol onto an AnsState and pop it
// back off. The multiset coder is generic over this interface.

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "msz/ans.hpp"

namespace msz {

template <class C>
concept SymbolCodec = requires(const C& codec, AnsState& state, const typename C::symbol_type& x) {
  codec.encode(state, x);
  { codec.decode(state) } -> std::same_as<typename C::symbol_type>;
  /// Exact cost of x under the codec's model, log2(1 / D(x)).
  { codec.code_length(x) } -> std::convertible_to<double>;
};

/// Integer masses >= 1 summing to `precision`. Floors the scaled weights
/// (raising zeros to one) and then settles the difference by largest
/// remainder, ties going to the lower index.
std::vector<std::uint64_t> quantize_pmf(std::span<const double> weights, std::uint64_t precision);

/// Precision for an alphabet: 4 bits of headroom over log2|A|, clamped to
/// [16, 24].
unsigned default_precision_bits(std::size_t alphabet_size);

/// Categorical distribution over a finite set of integers with masses
/// quantized to precision 2^bits.
class QuantizedCategorical {
 public:
  using symbol_type = std::uint32_t;

  static constexpr unsigned kDefaultPrecisionBits = 16;

  /// `alphabet` strictly increasing, masses >= 1 summing to 2^precision_bits.
  QuantizedCategorical(std::vector<symbol_type> alphabet, std::vector<std::uint64_t> masses,
                       unsigned precision_bits = kDefaultPrecisionBits);

  static QuantizedCategorical from_weights(std::vector<symbol_type> alphabet,
                                           std::span<const double> weights,
                                           unsigned precision_bits = kDefaultPrecisionBits);

  std::span<const symbol_type> alphabet() const noexcept { return alphabet_; }
  std::span<const std::uint64_t> masses() const noexcept { return masses_; }
  unsigned precision_bits() const noexcept { return precision_bits_; }
  std::uint64_t precision() const noexcept { return std::uint64_t{1} << precision_bits_; }

  /// Throws NotFoundError for symbols outside the alphabet.
  CodeTriple forward_lookup(symbol_type x) const;

  struct Slot {
    symbol_type symbol;
    CodeTriple triple;
  };
  /// Guide-table bucket, then binary search within it.
  Slot reverse_lookup(std::uint64_t index) const;

  void encode(AnsState& state, symbol_type x) const;
  symbol_type decode(AnsState& state) const;
  double code_length(symbol_type x) const;
  /// D(x) = p_x / N
  double probability(symbol_type x) const;

  bool operator==(const QuantizedCategorical&) const = default;

 private:
  std::size_t index_of(symbol_type x) const;

  std::vector<symbol_type> alphabet_;
  std::vector<std::uint64_t> masses_;
  std::vector<std::uint64_t> cdf_;  // cdf_[i] = sum of masses_[0..i)
  // guide_[b]: index of the symbol holding slot b << guide_shift_, so a
  // reverse lookup searches only between two neighbouring entries.
  std::vector<std::uint32_t> guide_;
  unsigned guide_shift_ = 0;
  unsigned precision_bits_;
  bool contiguous_ = false;
};

/// Variable-length byte strings: the bytes under a uniform distribution over
/// 256 values, followed by the length under a uniform distribution over
/// [0, max_len].
class ByteStringCodec {
 public:
  using symbol_type = std::string;

  explicit ByteStringCodec(std::uint64_t max_len);

  std::uint64_t max_len() const noexcept { return max_len_; }

  /// Throws CapacityError if payload.size() > max_len.
  void encode(AnsState& state, const std::string& payload) const;
  std::string decode(AnsState& state) const;
  double code_length(const std::string& payload) const;

  bool operator==(const ByteStringCodec&) const = default;

 private:
  std::uint64_t max_len_;
};

}  // namespace msz
