#pragma once

// Synthetic and JSON benchmarks. All random draws use std::mt19937_64 seeded
// from the config, so a run is reproducible with the same binary; the time
// columns are the only non-deterministic output.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "msz/codecs.hpp"
#include "msz/multiset.hpp"
#include "msz/nested.hpp"

namespace msz::bench {

struct BenchConfig {
  std::size_t unique = 512;                    // M
  std::vector<std::uint64_t> multiset_sizes;   // |M|
  std::vector<std::uint64_t> alphabet_sizes;   // |A|
  std::uint64_t seed = 0;
  unsigned repetitions = 1;
};

/// Throws ContractError if some (|A|, |M|) pair cannot hold `unique` symbols.
void validate(const BenchConfig& cfg);

/// Draw from Dirichlet(alpha_k = k), k = 1..alphabet_size, by normalizing
/// independent Gamma(k, 1) variates.
std::vector<double> gen_dirichlet_source(std::size_t alphabet_size, std::uint64_t seed);

/// A multiset over {0, ..., pmf.size() - 1} with exactly `unique` distinct
/// symbols and `size` occurrences. The support is drawn by weighted sampling
/// without replacement (Efraimidis-Spirakis keys); each support symbol gets
/// one occurrence and the remaining size - unique occurrences are drawn i.i.d.
/// from the pmf restricted to the support.
Multiset<std::uint32_t> gen_fixed_unique_multiset(std::span<const double> pmf, std::size_t unique,
                                                  std::uint64_t size, std::uint64_t seed);

struct SyntheticRow {
  std::uint64_t alphabet_size = 0;
  std::uint64_t multiset_size = 0;
  std::uint64_t unique = 0;
  unsigned repetition = 0;
  std::uint64_t seed = 0;
  unsigned precision_bits = 0;
  double info_bits = 0;
  double compressed_bits = 0;
  double sequence_bits = 0;
  double serialized_bits = 0;
  double encode_seconds = 0;
  double decode_seconds = 0;
  double encode_visits_per_op = 0;
  double decode_visits_per_op = 0;
  std::uint64_t encode_max_visits = 0;
  bool roundtrip_ok = false;
};

struct SyntheticCase {
  QuantizedCategorical codec;
  Multiset<std::uint32_t> multiset;
};

SyntheticCase make_synthetic_case(std::size_t alphabet_size, std::uint64_t size, std::size_t unique,
                                  std::uint64_t seed);

/// Encodes and decodes one case, timing both directions.
SyntheticRow run_synthetic_case(const SyntheticCase& c);

/// One row per (|A|, |M|, repetition).
std::vector<SyntheticRow> run_synthetic(const BenchConfig& cfg);

void write_csv(std::ostream& out, std::span<const SyntheticRow> rows);

struct JsonRow {
  std::uint64_t records = 0;
  unsigned repetition = 0;
  double bound_bits = 0;
  double savings_bits = 0;
  double compressed_bits = 0;
  double sequence_bits = 0;
  double encode_seconds = 0;
  double decode_seconds = 0;
  bool roundtrip_ok = false;
};

/// Runs the nested codec over growing prefixes (powers of two, then the full
/// collection) of `records`, taken in the given order.
std::vector<JsonRow> run_json(std::span<const Record> records, const ByteStringCodec& codec,
                              unsigned repetitions);

void write_csv(std::ostream& out, std::span<const JsonRow> rows);

}  // namespace msz::bench
