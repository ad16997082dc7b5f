#pragma once

// Streaming (renormalized) rANS coder with a stack of 32-bit words.
//
// The state is a 64-bit head plus a LIFO stack of words holding the
// lower-order digits. Every operation takes its own precision N, which need
// not be a power of two; the multiset sampler runs with N equal to the number
// of symbols still in the multiset.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace msz {

/// Lower bound of the head interval [kHeadMin, kHeadMax).
inline constexpr std::uint64_t kHeadMin = std::uint64_t{1} << 31;
inline constexpr unsigned kWordBits = 32;
inline constexpr std::uint64_t kHeadMax = kHeadMin << kWordBits;
/// Largest precision an operation may use.
inline constexpr std::uint64_t kMaxPrecision = kHeadMin;

/// Quantized interval of one symbol: [start, start + freq) out of precision.
struct CodeTriple {
  std::uint64_t start = 0;      // c
  std::uint64_t freq = 1;       // p
  std::uint64_t precision = 1;  // N

  bool operator==(const CodeTriple&) const = default;
};

/// Throws ContractError unless freq >= 1, start + freq <= precision and
/// precision <= kMaxPrecision.
void validate(const CodeTriple& t);

class AnsState {
 public:
  /// The minimal state: head = kHeadMin, no words.
  AnsState() = default;
  /// Throws FormatError if head lies outside [kHeadMin, kHeadMax).
  AnsState(std::uint64_t head, std::vector<std::uint32_t> words);

  std::uint64_t head() const noexcept { return head_; }
  /// Bottom of the stack first.
  const std::vector<std::uint32_t>& words() const noexcept { return words_; }

  /// Pushes the symbol described by `t` onto the state.
  void encode(const CodeTriple& t);

  /// Index in [0, precision) that the next decode at this precision will
  /// land on. Does not modify the state.
  std::uint64_t peek(std::uint64_t precision) const;

  /// Inverse of encode(t). Requires peek(t.precision) in [t.start, t.start + t.freq).
  void decode(const CodeTriple& t);

  /// Serialized size: 64 + 32 * |words|.
  std::size_t length_bits() const noexcept { return 64 + kWordBits * words_.size(); }

  /// log2 of the integer the state represents (fractional bits).
  double content_bits() const noexcept;

  /// Words bottom to top as 32-bit big-endian, then the head as 64-bit
  /// big-endian.
  std::vector<std::uint8_t> serialize() const;
  static AnsState deserialize(std::span<const std::uint8_t> bytes);

  bool operator==(const AnsState&) const = default;

 private:
  void push_word();
  std::uint32_t pop_word();
  std::uint32_t top_word() const noexcept;

  std::uint64_t head_ = kHeadMin;
  std::vector<std::uint32_t> words_;
};

/// Equality up to zero words at the bottom of the stack. Those are the words
/// synthesized when an operation pops from an empty stack and pushed back by
/// its inverse.
bool equivalent(const AnsState& a, const AnsState& b);

/// Bits added to the state since state_new(): content_bits(s) - 31.
double added_bits(const AnsState& s);

}  // namespace msz
