#include "msz/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "msz/errors.hpp"
#include "msz/multiset_codec.hpp"

namespace msz::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Independent 64-bit seed for one job; std::seed_seq is fully specified, so
// this is stable across standard libraries.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  for (const std::uint64_t p : parts) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

}  // namespace

void validate(const BenchConfig& cfg) {
  if (cfg.unique == 0) {
    throw ContractError("unique symbol count must be positive");
  }
  if (cfg.repetitions == 0) {
    throw ContractError("repetitions must be at least 1");
  }
  for (const std::uint64_t a : cfg.alphabet_sizes) {
    if (cfg.unique > a) {
      throw ContractError("unique count " + std::to_string(cfg.unique) + " exceeds alphabet size " +
                          std::to_string(a));
    }
    if (a > (std::uint64_t{1} << 24)) {
      throw ContractError("alphabet size above 2^24 is not supported");
    }
  }
  for (const std::uint64_t m : cfg.multiset_sizes) {
    if (cfg.unique > m) {
      throw ContractError("unique count " + std::to_string(cfg.unique) + " exceeds multiset size " +
                          std::to_string(m));
    }
  }
}

std::vector<double> gen_dirichlet_source(std::size_t alphabet_size, std::uint64_t seed) {
  if (alphabet_size == 0) {
    throw ContractError("empty alphabet");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> pmf(alphabet_size);
  double total = 0.0;
  for (std::size_t k = 0; k < alphabet_size; ++k) {
    std::gamma_distribution<double> gamma(static_cast<double>(k + 1), 1.0);
    pmf[k] = gamma(rng);
    total += pmf[k];
  }
  for (double& p : pmf) {
    p /= total;
  }
  return pmf;
}

Multiset<std::uint32_t> gen_fixed_unique_multiset(std::span<const double> pmf, std::size_t unique,
                                                  std::uint64_t size, std::uint64_t seed) {
  if (unique == 0 ? size != 0 : (unique > pmf.size() || unique > size)) {
    throw ContractError("infeasible fixed-unique multiset: " + std::to_string(unique) +
                        " unique symbols, size " + std::to_string(size) + ", alphabet " +
                        std::to_string(pmf.size()));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // Largest log(u) / w wins; zero weights sort last.
  std::vector<std::pair<double, std::uint32_t>> keys(pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const double u = uniform(rng);
    const double key = pmf[i] > 0 ? std::log(u) / pmf[i] : -std::numeric_limits<double>::infinity();
    keys[i] = {key, static_cast<std::uint32_t>(i)};
  }
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(unique), keys.end(),
                    [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : a.second < b.second;
                    });
  std::vector<std::uint32_t> support;
  support.reserve(unique);
  for (std::size_t i = 0; i < unique; ++i) {
    support.push_back(keys[i].second);
  }
  std::sort(support.begin(), support.end());

  std::vector<double> weights;
  weights.reserve(unique);
  for (const std::uint32_t s : support) {
    weights.push_back(pmf[s]);
  }
  std::vector<std::uint64_t> counts(unique, 1);
  if (unique > 0 && size > unique) {
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    for (std::uint64_t i = unique; i < size; ++i) {
      ++counts[draw(rng)];
    }
  }
  std::vector<Multiset<std::uint32_t>::Entry> entries;
  entries.reserve(unique);
  for (std::size_t i = 0; i < unique; ++i) {
    entries.push_back({support[i], counts[i]});
  }
  return Multiset<std::uint32_t>(std::move(entries));
}

SyntheticCase make_synthetic_case(std::size_t alphabet_size, std::uint64_t size, std::size_t unique,
                                  std::uint64_t seed) {
  const auto pmf = gen_dirichlet_source(alphabet_size, derive_seed({seed, 1}));
  std::vector<std::uint32_t> alphabet(alphabet_size);
  std::iota(alphabet.begin(), alphabet.end(), 0u);
  return SyntheticCase{
      QuantizedCategorical::from_weights(std::move(alphabet), pmf, default_precision_bits(alphabet_size)),
      gen_fixed_unique_multiset(pmf, unique, size, derive_seed({seed, 2}))};
}

SyntheticRow run_synthetic_case(const SyntheticCase& c) {
  SyntheticRow row;
  row.alphabet_size = c.codec.alphabet().size();
  row.multiset_size = c.multiset.total();
  row.unique = c.multiset.unique();
  row.precision_bits = c.codec.precision_bits();

  SamplingStats enc;
  SamplingStats dec;
  auto t0 = Clock::now();
  AnsState state = encode_multiset(c.multiset, c.codec, &enc);
  row.encode_seconds = seconds_since(t0);

  row.compressed_bits = added_bits(state);
  row.serialized_bits = static_cast<double>(state.length_bits());

  t0 = Clock::now();
  const auto decoded = decode_multiset(state, c.multiset.total(), c.codec, &dec);
  row.decode_seconds = seconds_since(t0);

  row.roundtrip_ok = decoded == c.multiset && equivalent(state, AnsState{});
  row.info_bits = info_content(c.multiset, c.codec);
  row.sequence_bits = added_bits(encode_sequence(c.multiset, c.codec));
  row.encode_visits_per_op = enc.mean_visits();
  row.decode_visits_per_op = dec.mean_visits();
  row.encode_max_visits = enc.max_visits;
  return row;
}

std::vector<SyntheticRow> run_synthetic(const BenchConfig& cfg) {
  validate(cfg);
  std::vector<SyntheticRow> rows;
  for (const std::uint64_t a : cfg.alphabet_sizes) {
    for (const std::uint64_t m : cfg.multiset_sizes) {
      for (unsigned rep = 0; rep < cfg.repetitions; ++rep) {
        const std::uint64_t seed = derive_seed({cfg.seed, a, m, rep});
        auto row = run_synthetic_case(make_synthetic_case(a, m, cfg.unique, seed));
        row.repetition = rep;
        row.seed = seed;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const SyntheticRow> rows) {
  out << "alphabet_size,multiset_size,unique,repetition,seed,precision_bits,info_bits,"
         "compressed_bits,sequence_bits,serialized_bits,encode_seconds,decode_seconds,"
         "encode_visits_per_op,decode_visits_per_op,encode_max_visits,roundtrip_ok\n";
  const auto old = out.precision(12);
  for (const auto& r : rows) {
    out << r.alphabet_size << ',' << r.multiset_size << ',' << r.unique << ',' << r.repetition
        << ',' << r.seed << ',' << r.precision_bits << ',' << r.info_bits << ','
        << r.compressed_bits << ',' << r.sequence_bits << ',' << r.serialized_bits << ','
        << r.encode_seconds << ',' << r.decode_seconds << ',' << r.encode_visits_per_op << ','
        << r.decode_visits_per_op << ',' << r.encode_max_visits << ','
        << (r.roundtrip_ok ? 1 : 0) << '\n';
  }
  out.precision(old);
}

std::vector<JsonRow> run_json(std::span<const Record> records, const ByteStringCodec& codec,
                              unsigned repetitions) {
  if (repetitions == 0) {
    throw ContractError("repetitions must be at least 1");
  }
  std::vector<std::uint64_t> prefixes;
  for (std::uint64_t n = 1; n < records.size(); n *= 2) {
    prefixes.push_back(n);
  }
  prefixes.push_back(records.size());

  const PairCodec pairs(codec);
  std::vector<JsonRow> rows;
  for (const std::uint64_t n : prefixes) {
    const auto nm = NestedMultiset::from_sequence(
        std::vector<Record>(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(n)));
    const double bound = nested_savings_bound(nm);
    const double sequence = added_bits(encode_nested_sequence(nm, pairs));
    for (unsigned rep = 0; rep < repetitions; ++rep) {
      JsonRow row;
      row.records = n;
      row.repetition = rep;
      row.bound_bits = bound;
      row.sequence_bits = sequence;

      AnsState state;
      auto t0 = Clock::now();
      const auto shape = encode_nested(state, nm, pairs);
      row.encode_seconds = seconds_since(t0);
      row.compressed_bits = added_bits(state);
      row.savings_bits = sequence - row.compressed_bits;

      t0 = Clock::now();
      const auto decoded = decode_nested(state, shape, pairs);
      row.decode_seconds = seconds_since(t0);
      row.roundtrip_ok = decoded == nm && equivalent(state, AnsState{});
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const JsonRow> rows) {
  out << "records,repetition,bound_bits,savings_bits,compressed_bits,sequence_bits,"
         "encode_seconds,decode_seconds,roundtrip_ok\n";
  const auto old = out.precision(12);
  for (const auto& r : rows) {
    out << r.records << ',' << r.repetition << ',' << r.bound_bits << ',' << r.savings_bits << ','
        << r.compressed_bits << ',' << r.sequence_bits << ',' << r.encode_seconds << ','
        << r.decode_seconds << ',' << (r.roundtrip_ok ? 1 : 0) << '\n';
  }
  out.precision(old);
}

}  // namespace msz::bench
