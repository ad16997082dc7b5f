#pragma once

// Multisets of multisets: a collection of flat records, each record a
// multiset of (key, value) byte-string pairs. Encoding is depth-first: sample a
// record without replacement, then drain its pairs with the ordinary multiset
// coder, until no records are left.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msz/ans.hpp"
#include "msz/codecs.hpp"
#include "msz/multiset.hpp"

namespace msz {

struct KeyValue {
  std::string key;
  std::string value;

  auto operator<=>(const KeyValue&) const = default;
  bool operator==(const KeyValue&) const = default;
};

/// Encodes a pair as its key then its value, both with the same byte-string
/// codec (value pushed first so the key comes off first).
class PairCodec {
 public:
  using symbol_type = KeyValue;

  explicit PairCodec(ByteStringCodec bytes) : bytes_(bytes) {}

  void encode(AnsState& state, const KeyValue& kv) const {
    bytes_.encode(state, kv.value);
    bytes_.encode(state, kv.key);
  }
  KeyValue decode(AnsState& state) const {
    KeyValue kv;
    kv.key = bytes_.decode(state);
    kv.value = bytes_.decode(state);
    return kv;
  }
  double code_length(const KeyValue& kv) const {
    return bytes_.code_length(kv.key) + bytes_.code_length(kv.value);
  }

 private:
  ByteStringCodec bytes_;
};

/// One flat record. Records are ordered by their canonical serialization:
/// pairs in sorted order, each as varint(len) key varint(len) value.
class Record {
 public:
  Record() = default;
  explicit Record(Multiset<KeyValue> pairs);

  const Multiset<KeyValue>& pairs() const noexcept { return pairs_; }
  const std::string& canonical() const noexcept { return canonical_; }

  std::strong_ordering operator<=>(const Record& other) const {
    return canonical_ <=> other.canonical_;
  }
  bool operator==(const Record& other) const { return canonical_ == other.canonical_; }

 private:
  Multiset<KeyValue> pairs_;
  std::string canonical_;
};

using NestedMultiset = Multiset<Record>;

/// Inner sizes in the order the records were drained during encoding; the
/// decoder consumes them back to front.
struct NestedShape {
  std::vector<std::uint64_t> inner_sizes;

  std::uint64_t outer_size() const noexcept { return inner_sizes.size(); }
  bool operator==(const NestedShape&) const = default;
};

NestedShape encode_nested(AnsState& state, const NestedMultiset& nm, const PairCodec& codec);
NestedMultiset decode_nested(AnsState& state, const NestedShape& shape, const PairCodec& codec);

/// Every record in canonical order, every pair in canonical order, no sampling.
AnsState encode_nested_sequence(const NestedMultiset& nm, const PairCodec& codec);

/// log2|M|! + sum_i log2|J_i|!, counting repeated records once per copy.
double nested_savings_bound(const NestedMultiset& nm);

/// Parses a JSON array of flat objects. Scalars become strings: numbers in
/// their source spelling (integers in decimal), booleans as "true"/"false",
/// null as "null". Duplicate keys inside an object are kept. Throws
/// IngestError.
NestedMultiset ingest_json(std::string_view text);

/// Same parsing rules as ingest_json, records kept in file order.
std::vector<Record> parse_json_records(std::string_view text);

/// Canonical JSON array text for `nm` (records and pairs in canonical order,
/// all values as strings).
std::string to_json(const NestedMultiset& nm);

}  // namespace msz
