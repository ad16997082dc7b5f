#include "msz/nested.hpp"

#include <json.hpp>

#include "msz/errors.hpp"
#include "msz/freq_tree.hpp"
#include "msz/multiset_codec.hpp"
#include "msz/varint.hpp"

namespace msz {

Record::Record(Multiset<KeyValue> pairs) : pairs_(std::move(pairs)) {
  for (const auto& e : pairs_.entries()) {
    for (std::uint64_t k = 0; k < e.count; ++k) {
      put_varint(canonical_, e.symbol.key.size());
      canonical_ += e.symbol.key;
      put_varint(canonical_, e.symbol.value.size());
      canonical_ += e.symbol.value;
    }
  }
}

NestedShape encode_nested(AnsState& state, const NestedMultiset& nm, const PairCodec& codec) {
  detail::check_size(nm.total());
  NestedShape shape;
  shape.inner_sizes.reserve(nm.total());
  auto outer = FreqTree<Record>::build_balanced(nm);
  while (!outer.empty()) {
    const std::uint64_t remaining = outer.total();
    const auto hit = outer.lookup_and_remove(state.peek(remaining));
    state.decode({hit.start, hit.freq, remaining});
    encode_multiset(state, hit.symbol.pairs(), codec);
    shape.inner_sizes.push_back(hit.symbol.pairs().total());
  }
  return shape;
}

NestedMultiset decode_nested(AnsState& state, const NestedShape& shape, const PairCodec& codec) {
  FreqTree<Record> outer;
  for (auto it = shape.inner_sizes.rbegin(); it != shape.inner_sizes.rend(); ++it) {
    Record record(decode_multiset(state, *it, codec));
    const auto interval = outer.insert_and_lookup(record);
    state.encode({interval.start, interval.freq, outer.total()});
  }
  return outer.to_multiset();
}

AnsState encode_nested_sequence(const NestedMultiset& nm, const PairCodec& codec) {
  AnsState state;
  for (const auto& e : nm.entries()) {
    for (std::uint64_t k = 0; k < e.count; ++k) {
      for (const auto& p : e.symbol.pairs().entries()) {
        for (std::uint64_t j = 0; j < p.count; ++j) {
          codec.encode(state, p.symbol);
        }
      }
    }
  }
  return state;
}

double nested_savings_bound(const NestedMultiset& nm) {
  double bits = log2_factorial(nm.total());
  for (const auto& e : nm.entries()) {
    bits += static_cast<double>(e.count) * log2_factorial(e.symbol.pairs().total());
  }
  return bits;
}

namespace {

using nlohmann::json;

// SAX handler: the DOM would silently merge duplicate keys.
class RecordCollector : public nlohmann::json_sax<json> {
 public:
  std::vector<Record> records;

  bool null() override { return scalar("null"); }
  bool boolean(bool v) override { return scalar(v ? "true" : "false"); }
  bool number_integer(number_integer_t v) override { return scalar(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return scalar(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return scalar(s); }
  bool string(string_t& v) override { return scalar(v); }
  bool binary(binary_t&) override { return fail("binary values are not supported"); }

  bool start_object(std::size_t) override {
    if (depth_ != 1) {
      return fail(depth_ == 0 ? "root must be an array" : "nested objects are not supported");
    }
    depth_ = 2;
    pairs_.clear();
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    records.emplace_back(Multiset<KeyValue>::from_sequence(std::move(pairs_)));
    pairs_.clear();
    depth_ = 1;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ != 0) {
      return fail("nested arrays are not supported");
    }
    depth_ = 1;
    return true;
  }
  bool end_array() override {
    depth_ = 0;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw IngestError("invalid JSON at byte " + std::to_string(position) + ": " + ex.what());
  }

 private:
  bool scalar(std::string v) {
    if (depth_ != 2) {
      return fail(depth_ == 0 ? "root must be an array" : "array elements must be objects");
    }
    pairs_.push_back({key_, std::move(v)});
    return true;
  }

  bool fail(const std::string& what) {
    std::string where = "record " + std::to_string(records.size());
    if (depth_ == 2) {
      where += ", key \"" + key_ + "\"";
    }
    throw IngestError(what + " (at " + where + ")");
  }

  int depth_ = 0;
  std::string key_;
  std::vector<KeyValue> pairs_;
};

}  // namespace

std::vector<Record> parse_json_records(std::string_view text) {
  RecordCollector collector;
  json::sax_parse(text, &collector);
  return std::move(collector.records);
}

NestedMultiset ingest_json(std::string_view text) {
  return NestedMultiset::from_sequence(parse_json_records(text));
}

std::string to_json(const NestedMultiset& nm) {
  std::string out = "[";
  bool first_record = true;
  for (const auto& e : nm.entries()) {
    for (std::uint64_t k = 0; k < e.count; ++k) {
      out += first_record ? "\n  {" : ",\n  {";
      first_record = false;
      bool first_pair = true;
      for (const auto& p : e.symbol.pairs().entries()) {
        for (std::uint64_t j = 0; j < p.count; ++j) {
          if (!first_pair) out += ", ";
          first_pair = false;
          out += json(p.symbol.key).dump() + ": " + json(p.symbol.value).dump();
        }
      }
      out += "}";
    }
  }
  out += first_record ? "]\n" : "\n]\n";
  return out;
}

}  // namespace msz
