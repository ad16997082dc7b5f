#pragma once

// Multiset compression by sampling without replacement.
//
// Encoding repeatedly *decodes* a symbol from the ANS state under the
// distribution of the remaining multiset (count / remaining total), removes it,
// and encodes it with the symbol codec. The sampling step takes bits out of the
// state, which is how the bits spent on ordering are recovered. Decoding runs
// the same steps backwards.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "msz/ans.hpp"
#include "msz/codecs.hpp"
#include "msz/errors.hpp"
#include "msz/freq_tree.hpp"
#include "msz/multiset.hpp"

namespace msz {

/// Tree work done by one encode or decode run.
struct SamplingStats {
  std::uint64_t operations = 0;   // tree lookups (one per symbol occurrence)
  std::uint64_t node_visits = 0;
  std::uint64_t max_visits = 0;   // worst single operation

  double mean_visits() const {
    return operations == 0 ? 0.0 : static_cast<double>(node_visits) / static_cast<double>(operations);
  }
};

namespace detail {

inline void check_size(std::uint64_t size) {
  if (size > kMaxPrecision) {
    throw CapacityError("multiset of " + std::to_string(size) + " symbols exceeds 2^31");
  }
}

template <class Tree>
void record(SamplingStats* stats, const Tree& tree, std::uint64_t before) {
  if (stats != nullptr) {
    const std::uint64_t v = tree.node_visits() - before;
    ++stats->operations;
    stats->node_visits += v;
    stats->max_visits = std::max(stats->max_visits, v);
  }
}

}  // namespace detail

/// Appends m to `state`.
template <SymbolCodec Codec>
void encode_multiset(AnsState& state, const Multiset<typename Codec::symbol_type>& m,
                     const Codec& codec, SamplingStats* stats = nullptr) {
  detail::check_size(m.total());
  auto tree = FreqTree<typename Codec::symbol_type>::build_balanced(m);
  while (!tree.empty()) {
    const std::uint64_t remaining = tree.total();
    const std::uint64_t before = tree.node_visits();
    const auto hit = tree.lookup_and_remove(state.peek(remaining));
    detail::record(stats, tree, before);
    state.decode({hit.start, hit.freq, remaining});
    codec.encode(state, hit.symbol);
  }
}

template <SymbolCodec Codec>
AnsState encode_multiset(const Multiset<typename Codec::symbol_type>& m, const Codec& codec,
                         SamplingStats* stats = nullptr) {
  AnsState state;
  encode_multiset(state, m, codec, stats);
  return state;
}

/// Pops a multiset of `size` symbols off `state`. A state/codec/size mismatch
/// is not detected here and yields an arbitrary multiset.
template <SymbolCodec Codec>
Multiset<typename Codec::symbol_type> decode_multiset(AnsState& state, std::uint64_t size,
                                                      const Codec& codec,
                                                      SamplingStats* stats = nullptr) {
  detail::check_size(size);
  FreqTree<typename Codec::symbol_type> tree;
  for (std::uint64_t n = 0; n < size; ++n) {
    auto x = codec.decode(state);
    const std::uint64_t before = tree.node_visits();
    const auto interval = tree.insert_and_lookup(x);
    detail::record(stats, tree, before);
    state.encode({interval.start, interval.freq, tree.total()});
  }
  return tree.to_multiset();
}

/// Encodes every occurrence in canonical order with no sampling: the cost of
/// keeping an (arbitrary) order.
template <SymbolCodec Codec>
AnsState encode_sequence(const Multiset<typename Codec::symbol_type>& m, const Codec& codec) {
  AnsState state;
  for (const auto& e : m.entries()) {
    for (std::uint64_t k = 0; k < e.count; ++k) {
      codec.encode(state, e.symbol);
    }
  }
  return state;
}

/// log2(|M|! / prod_z M(z)!)
template <class Symbol>
double permutation_bits(const Multiset<Symbol>& m) {
  double nats = std::lgamma(static_cast<double>(m.total()) + 1.0);
  for (const auto& e : m.entries()) {
    nats -= std::lgamma(static_cast<double>(e.count) + 1.0);
  }
  return std::max(0.0, nats / std::log(2.0));
}

/// log2(n!)
inline double log2_factorial(std::uint64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0);
}

/// -log2 Pr(M) for i.i.d. symbols under the codec's model.
template <SymbolCodec Codec>
double info_content(const Multiset<typename Codec::symbol_type>& m, const Codec& codec) {
  double bits = 0.0;
  for (const auto& e : m.entries()) {
    bits += static_cast<double>(e.count) * codec.code_length(e.symbol);
  }
  return bits - permutation_bits(m);
}

struct RateReport {
  double compressed_bits = 0;    // bits added to an empty state by the multiset coder
  double serialized_bits = 0;    // size of the serialized state
  double info_content_bits = 0;  // -log2 Pr(M)
  double sequence_bits = 0;      // bits added when encoding in canonical order
  double savings_bits = 0;       // sequence_bits - compressed_bits
  double permutation_bits = 0;   // log2 of the multinomial coefficient
};

template <SymbolCodec Codec>
RateReport rate_report(const Multiset<typename Codec::symbol_type>& m, const Codec& codec) {
  RateReport r;
  const AnsState compressed = encode_multiset(m, codec);
  r.compressed_bits = added_bits(compressed);
  r.serialized_bits = static_cast<double>(compressed.length_bits());
  r.sequence_bits = added_bits(encode_sequence(m, codec));
  r.savings_bits = r.sequence_bits - r.compressed_bits;
  r.permutation_bits = permutation_bits(m);
  r.info_content_bits = info_content(m, codec);
  return r;
}

}  // namespace msz
