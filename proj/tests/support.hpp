#pragma once

// Test-side oracles and seeded generators. Nothing here calls into the code
// under test except for the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "msz/multiset.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;

// ANS on an arbitrarily large natural number, no renormalization.
class ExactAns {
 public:
  ExactAns() : value_(cpp_int(1) << 31) {}
  explicit ExactAns(cpp_int v) : value_(std::move(v)) {}

  void encode(std::uint64_t c, std::uint64_t p, std::uint64_t n) {
    value_ = cpp_int(n) * (value_ / p) + c + value_ % p;
  }
  std::uint64_t peek(std::uint64_t n) const {
    return static_cast<std::uint64_t>(value_ % n);
  }
  void decode(std::uint64_t c, std::uint64_t p, std::uint64_t n) {
    const cpp_int i = value_ % n;
    value_ = cpp_int(p) * (value_ / n) + i - c;
  }
  const cpp_int& value() const { return value_; }
  double log2() const {
    const long top = static_cast<long>(boost::multiprecision::msb(value_));
    const long shift = std::max(0L, top - 52);
    return static_cast<double>(shift) + std::log2(static_cast<double>(value_ >> shift));
  }

 private:
  cpp_int value_;
};

// Linear scans over a canonical (symbol, count) list.
template <class Symbol>
std::pair<std::uint64_t, std::uint64_t> forward_scan(const msz::Multiset<Symbol>& m,
                                                     const Symbol& x) {
  std::uint64_t c = 0;
  for (const auto& e : m.entries()) {
    if (e.symbol == x) return {c, e.count};
    c += e.count;
  }
  return {c, 0};
}

template <class Symbol>
std::tuple<Symbol, std::uint64_t, std::uint64_t> reverse_scan(const msz::Multiset<Symbol>& m,
                                                              std::uint64_t i) {
  std::uint64_t c = 0;
  for (const auto& e : m.entries()) {
    if (i < c + e.count) return {e.symbol, c, e.count};
    c += e.count;
  }
  return {Symbol{}, c, 0};
}

// Every vector of n positive integers summing to total.
inline void compositions(std::size_t n, std::uint64_t total,
                         std::vector<std::vector<std::uint64_t>>& out,
                         std::vector<std::uint64_t>& prefix) {
  if (prefix.size() + 1 == n) {
    if (total >= 1) {
      prefix.push_back(total);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (std::uint64_t v = 1; v + (n - prefix.size() - 1) <= total; ++v) {
    prefix.push_back(v);
    compositions(n, total - v, out, prefix);
    prefix.pop_back();
  }
}

// Squared distance from the ideal shares weights * total / sum(weights).
inline double apportionment_error(const std::vector<double>& w,
                                  const std::vector<std::uint64_t>& m, std::uint64_t total) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  double err = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = static_cast<double>(m[i]) - w[i] * static_cast<double>(total) / sum;
    err += d * d;
  }
  return err;
}

// Minimum error over all apportionments with every mass >= 1.
inline double best_apportionment_error(const std::vector<double>& w, std::uint64_t total) {
  std::vector<std::vector<std::uint64_t>> all;
  std::vector<std::uint64_t> prefix;
  compositions(w.size(), total, all, prefix);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : all) best = std::min(best, apportionment_error(w, m, total));
  return best;
}

inline double log2_factorial(std::uint64_t n) {
  double s = 0;
  for (std::uint64_t k = 2; k <= n; ++k) s += std::log2(static_cast<double>(k));
  return s;
}

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

// A multiset over [0, alphabet) with up to `size` occurrences and a repeat
// profile picked by `profile`: 0 all unique (when possible), 1 a few heavy
// symbols, 2 geometric counts, 3 uniform draws.
inline msz::Multiset<std::uint32_t> multiset(Rng& rng, std::uint64_t size, std::uint32_t alphabet,
                                             int profile) {
  std::vector<std::uint32_t> seq;
  seq.reserve(size);
  std::uniform_int_distribution<std::uint32_t> any(0, alphabet - 1);
  switch (profile) {
    case 0: {
      std::vector<std::uint32_t> pool(alphabet);
      std::iota(pool.begin(), pool.end(), 0u);
      std::shuffle(pool.begin(), pool.end(), rng);
      for (std::uint64_t i = 0; i < size; ++i) seq.push_back(pool[i % alphabet]);
      break;
    }
    case 1: {
      const std::uint32_t heavy = std::min<std::uint32_t>(alphabet, 4);
      std::uniform_int_distribution<std::uint32_t> few(0, heavy - 1);
      for (std::uint64_t i = 0; i < size; ++i) seq.push_back(few(rng) * (alphabet / heavy));
      break;
    }
    case 2: {
      std::geometric_distribution<std::uint32_t> geo(0.05);
      for (std::uint64_t i = 0; i < size; ++i) seq.push_back(std::min(geo(rng), alphabet - 1));
      break;
    }
    default:
      for (std::uint64_t i = 0; i < size; ++i) seq.push_back(any(rng));
  }
  return msz::Multiset<std::uint32_t>::from_sequence(std::move(seq));
}

// Precision for a random ANS operation: small, power of two, or anything up
// to 2^31.
inline std::uint64_t precision(Rng& rng) {
  switch (rng() % 3) {
    case 0:
      return std::uniform_int_distribution<std::uint64_t>(1, 300)(rng);
    case 1:
      return std::uint64_t{1} << std::uniform_int_distribution<int>(0, 31)(rng);
    default:
      return std::uniform_int_distribution<std::uint64_t>(1, std::uint64_t{1} << 31)(rng);
  }
}

// A random partition of [0, n) into at most `parts` intervals; interval j is
// [starts[j], starts[j + 1]).
struct Partition {
  std::uint64_t n = 1;
  std::vector<std::uint64_t> starts;

  std::size_t size() const { return starts.size() - 1; }
  std::uint64_t start(std::size_t j) const { return starts[j]; }
  std::uint64_t freq(std::size_t j) const { return starts[j + 1] - starts[j]; }
  std::size_t find(std::uint64_t i) const {
    return static_cast<std::size_t>(std::upper_bound(starts.begin(), starts.end(), i) -
                                    starts.begin()) - 1;
  }
};

inline Partition partition(Rng& rng, std::uint64_t n, std::size_t parts) {
  Partition p;
  p.n = n;
  p.starts = {0, n};
  for (std::size_t k = 1; k < parts && n > 1; ++k) {
    p.starts.push_back(std::uniform_int_distribution<std::uint64_t>(1, n - 1)(rng));
  }
  std::sort(p.starts.begin(), p.starts.end());
  p.starts.erase(std::unique(p.starts.begin(), p.starts.end()), p.starts.end());
  return p;
}

inline std::string bytes(Rng& rng, std::size_t len) {
  std::uniform_int_distribution<int> byte(0, 255);
  std::string s(len, '\0');
  for (char& ch : s) ch = static_cast<char>(byte(rng));
  return s;
}

}  // namespace gen
