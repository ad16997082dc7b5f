#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "msz/multiset_codec.hpp"
#include "support.hpp"

using msz::AnsState;
using msz::Multiset;
using msz::QuantizedCategorical;

namespace {

// Uniform over {a, b, c} as an exact (non-power-of-two) distribution.
struct Uniform3 {
  using symbol_type = char;
  void encode(AnsState& s, char x) const { s.encode({static_cast<std::uint64_t>(x - 'a'), 1, 3}); }
  char decode(AnsState& s) const {
    const auto i = s.peek(3);
    s.decode({i, 1, 3});
    return static_cast<char>('a' + i);
  }
  double code_length(char) const { return std::log2(3.0); }
};

template <class Codec>
void check_round_trip(const Multiset<typename Codec::symbol_type>& m, const Codec& codec) {
  AnsState s = msz::encode_multiset(m, codec);
  const auto bytes = s.serialize();
  AnsState r = AnsState::deserialize(bytes);
  REQUIRE(msz::decode_multiset(r, m.total(), codec) == m);
  REQUIRE(msz::equivalent(r, AnsState{}));
}

}  // namespace

TEST_CASE("three-symbol example") {
  const auto m = Multiset<char>::from_sequence({'c', 'a', 'a'});
  check_round_trip(m, Uniform3{});

  // Probability of the multiset: count the sequences over {a, b, c} of
  // length 3 that carry the same symbols.
  int hits = 0;
  for (char x : {'a', 'b', 'c'})
    for (char y : {'a', 'b', 'c'})
      for (char z : {'a', 'b', 'c'}) hits += Multiset<char>::from_sequence({x, y, z}) == m;
  CHECK(hits == 3);
  const double info = -std::log2(hits / 27.0);
  CHECK(info == doctest::Approx(std::log2(9.0)));
  CHECK(msz::info_content(m, Uniform3{}) == doctest::Approx(info));
  CHECK(msz::permutation_bits(m) == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("permutation bits") {
  CHECK(msz::permutation_bits(Multiset<char>::from_sequence({'a', 'b', 'c'})) ==
        doctest::Approx(std::log2(6.0)));
  CHECK(msz::permutation_bits(Multiset<char>({{'z', 40}})) == doctest::Approx(0.0));
  gen::Rng rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = gen::multiset(rng, 1 + rng() % 300, 50, trial % 4);
    double expected = oracle::log2_factorial(m.total());
    for (const auto& e : m.entries()) expected -= oracle::log2_factorial(e.count);
    CHECK(msz::permutation_bits(m) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("info content") {
  const QuantizedCategorical half({0, 1}, {1 << 15, 1 << 15});
  CHECK(msz::info_content(Multiset<std::uint32_t>({{1, 1}}), half) == doctest::Approx(1.0));

  // All-unique: sum of code lengths minus log2 |M|!.
  gen::Rng rng(31);
  std::vector<double> w(1000);
  for (auto& x : w) x = std::uniform_real_distribution<double>(0.1, 1)(rng);
  std::vector<std::uint32_t> alphabet(1000);
  std::iota(alphabet.begin(), alphabet.end(), 0u);
  const auto codec = QuantizedCategorical::from_weights(alphabet, w, 20);
  const auto m = gen::multiset(rng, 300, 1000, 0);
  double terms = 0;
  for (const auto& e : m.entries()) terms += -std::log2(codec.probability(e.symbol));
  CHECK(msz::info_content(m, codec) == doctest::Approx(terms - oracle::log2_factorial(300)));
}

TEST_CASE("empty and single-symbol multisets") {
  const Uniform3 codec;
  AnsState s = msz::encode_multiset(Multiset<char>{}, codec);
  CHECK(s == AnsState{});
  CHECK(msz::decode_multiset(s, 0, codec).empty());

  const auto one = Multiset<char>({{'b', 1}});
  AnsState a = msz::encode_multiset(one, codec);
  AnsState b;
  codec.encode(b, 'b');
  CHECK(a == b);
  CHECK(codec.decode(b) == 'b');
}

TEST_CASE("exhaustive small multisets over three symbols") {
  const Uniform3 codec;
  int count = 0;
  for (int n = 0; n <= 6; ++n) {
    for (int na = 0; na <= n; ++na) {
      for (int nb = 0; na + nb <= n; ++nb) {
        std::vector<Multiset<char>::Entry> entries;
        if (na) entries.push_back({'a', static_cast<std::uint64_t>(na)});
        if (nb) entries.push_back({'b', static_cast<std::uint64_t>(nb)});
        if (n - na - nb) entries.push_back({'c', static_cast<std::uint64_t>(n - na - nb)});
        check_round_trip(Multiset<char>(entries), codec);
        ++count;
      }
    }
  }
  CHECK(count == 84);
}

TEST_CASE("random round trips") {
  gen::Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t alphabet = 2 + static_cast<std::uint32_t>(rng() % 5000);
    std::vector<double> w(alphabet);
    for (auto& x : w) x = std::exp(std::uniform_real_distribution<double>(-4, 0)(rng));
    std::vector<std::uint32_t> symbols(alphabet);
    std::iota(symbols.begin(), symbols.end(), 0u);
    const auto codec = QuantizedCategorical::from_weights(symbols, w,
                                                          msz::default_precision_bits(alphabet));
    check_round_trip(gen::multiset(rng, 1 + rng() % 1500, alphabet, trial % 4), codec);
  }
  const msz::ByteStringCodec bytes(40);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> items;
    for (int k = 0, n = 1 + static_cast<int>(rng() % 200); k < n; ++k) {
      items.push_back(gen::bytes(rng, rng() % 4));
    }
    check_round_trip(Multiset<std::string>::from_sequence(items), bytes);
  }
}

TEST_CASE("input order does not matter") {
  gen::Rng rng(33);
  const msz::ByteStringCodec codec(16);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> items;
    for (int k = 0; k < 100; ++k) items.push_back(gen::bytes(rng, 1 + rng() % 2));
    const auto reference = msz::encode_multiset(Multiset<std::string>::from_sequence(items), codec);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(items.begin(), items.end(), rng);
      CHECK(msz::encode_multiset(Multiset<std::string>::from_sequence(items), codec).serialize() ==
            reference.serialize());
    }
  }
}

TEST_CASE("each sampling step is undone by re-encoding") {
  gen::Rng rng(34);
  const auto m = gen::multiset(rng, 400, 100, 3);
  auto tree = msz::FreqTree<std::uint32_t>::build_balanced(m);
  AnsState s(0x123456789ABCull, {1, 2, 3});
  while (!tree.empty()) {
    const AnsState before = s;
    const std::uint64_t n = tree.total();
    const auto hit = tree.lookup_and_remove(s.peek(n));
    s.decode({hit.start, hit.freq, n});
    AnsState undo = s;
    undo.encode({hit.start, hit.freq, n});
    REQUIRE(msz::equivalent(undo, before));
  }
}

TEST_CASE("rate report") {
  gen::Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t alphabet = 1 << 12;
    std::vector<double> w(alphabet);
    for (auto& x : w) x = std::uniform_real_distribution<double>(0.01, 1)(rng);
    std::vector<std::uint32_t> symbols(alphabet);
    std::iota(symbols.begin(), symbols.end(), 0u);
    const auto codec = QuantizedCategorical::from_weights(symbols, w, 18);
    const auto m = gen::multiset(rng, 1 + rng() % 3000, alphabet, trial % 4);
    const auto r = msz::rate_report(m, codec);
    CHECK(r.savings_bits == doctest::Approx(r.sequence_bits - r.compressed_bits));
    CHECK(r.permutation_bits >= 0);
    CHECK(r.compressed_bits <= r.info_content_bits + 64 + 2 * m.total() * 2.2e-5);
    CHECK(r.compressed_bits >= r.info_content_bits - 1);
    CHECK(r.serialized_bits >= r.compressed_bits);
    if (trial % 4 == 0 && m.total() >= 16) {
      CHECK(r.savings_bits >= 0);
    }
  }
}

TEST_CASE("capacity") {
  CHECK_THROWS_AS(msz::detail::check_size((std::uint64_t{1} << 31) + 1), msz::CapacityError);
  CHECK_NOTHROW(msz::detail::check_size(std::uint64_t{1} << 31));
}
