#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "msz/errors.hpp"

namespace msz {

/// Canonical frequency map: symbols strictly increasing, counts >= 1.
template <class Symbol>
class Multiset {
 public:
  struct Entry {
    Symbol symbol;
    std::uint64_t count;

    bool operator==(const Entry&) const = default;
  };

  Multiset() = default;

  /// Throws ContractError unless `entries` is canonical.
  explicit Multiset(std::vector<Entry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].count == 0) {
        throw ContractError("multiset entry with zero count");
      }
      if (i > 0 && !(entries_[i - 1].symbol < entries_[i].symbol)) {
        throw ContractError("multiset symbols are not strictly increasing");
      }
      total_ += entries_[i].count;
    }
  }

  /// Canonicalizes an arbitrary sequence (sort + run-length count).
  static Multiset from_sequence(std::vector<Symbol> symbols) {
    std::sort(symbols.begin(), symbols.end());
    std::vector<Entry> entries;
    for (auto& s : symbols) {
      if (!entries.empty() && !(entries.back().symbol < s)) {
        ++entries.back().count;
      } else {
        entries.push_back(Entry{std::move(s), 1});
      }
    }
    Multiset m;
    m.total_ = symbols.size();
    m.entries_ = std::move(entries);
    return m;
  }

  std::span<const Entry> entries() const noexcept { return entries_; }
  /// |M|
  std::uint64_t total() const noexcept { return total_; }
  /// M, the number of unique symbols.
  std::size_t unique() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Expands to the sorted sequence of all occurrences.
  std::vector<Symbol> to_sequence() const {
    std::vector<Symbol> out;
    out.reserve(total_);
    for (const auto& e : entries_) {
      out.insert(out.end(), e.count, e.symbol);
    }
    return out;
  }

  bool operator==(const Multiset& other) const { return entries_ == other.entries_; }

 private:
  std::vector<Entry> entries_;
  std::uint64_t total_ = 0;
};

}  // namespace msz
