#include <doctest.h>

#include <numeric>
#include <sstream>

#include "msz/bench.hpp"
#include "msz/errors.hpp"

using namespace msz::bench;

namespace {

std::size_t columns(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

// CSV text with the two time columns blanked.
std::string without_times(const std::string& csv, std::size_t enc_col, std::size_t dec_col) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    cells[enc_col] = cells[dec_col] = "";
    for (const auto& c : cells) out += c + ",";
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("Dirichlet source") {
  const auto a = gen_dirichlet_source(1000, 7);
  CHECK(a.size() == 1000);
  CHECK(std::accumulate(a.begin(), a.end(), 0.0) == doctest::Approx(1.0));
  CHECK(*std::min_element(a.begin(), a.end()) > 0.0);
  CHECK(gen_dirichlet_source(1000, 7) == a);
  CHECK(gen_dirichlet_source(1000, 8) != a);
  // alpha_k = k: the mean of p_k grows linearly in k.
  double low = 0, high = 0;
  for (std::size_t k = 0; k < 100; ++k) low += a[k];
  for (std::size_t k = 900; k < 1000; ++k) high += a[k];
  CHECK(high > 5 * low);
}

TEST_CASE("fixed-unique multisets") {
  const auto pmf = gen_dirichlet_source(600, 1);
  for (const std::size_t unique : {std::size_t{1}, std::size_t{17}, std::size_t{512}}) {
    const auto m = gen_fixed_unique_multiset(pmf, unique, 2000, 3);
    CHECK(m.unique() == unique);
    CHECK(m.total() == 2000);
    CHECK(gen_fixed_unique_multiset(pmf, unique, 2000, 3) == m);
  }
  const auto all = gen_fixed_unique_multiset(pmf, 300, 300, 4);
  CHECK(all.unique() == 300);
  for (const auto& e : all.entries()) CHECK(e.count == 1);
  CHECK(gen_fixed_unique_multiset(pmf, 1, 50, 5).entries()[0].count == 50);
  CHECK_THROWS_AS(gen_fixed_unique_multiset(pmf, 601, 700, 1), msz::ContractError);
  CHECK_THROWS_AS(gen_fixed_unique_multiset(pmf, 10, 9, 1), msz::ContractError);
}

TEST_CASE("config validation") {
  BenchConfig cfg;
  cfg.unique = 512;
  cfg.alphabet_sizes = {256};
  cfg.multiset_sizes = {1024};
  CHECK_THROWS_AS(validate(cfg), msz::ContractError);
  cfg.alphabet_sizes = {1024};
  cfg.multiset_sizes = {100};
  CHECK_THROWS_AS(validate(cfg), msz::ContractError);
  cfg.multiset_sizes = {1024};
  cfg.repetitions = 0;
  CHECK_THROWS_AS(validate(cfg), msz::ContractError);
  cfg.repetitions = 1;
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("synthetic rows are seed-deterministic") {
  BenchConfig cfg;
  cfg.unique = 64;
  cfg.alphabet_sizes = {128, 4096};
  cfg.multiset_sizes = {256, 1024};
  cfg.repetitions = 2;
  cfg.seed = 99;
  const auto rows = run_synthetic(cfg);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) {
    CHECK(r.roundtrip_ok);
    CHECK(r.unique == 64);
    CHECK(r.compressed_bits <= r.info_bits + 64 + 2 * r.multiset_size * 2.2e-5);
    CHECK(r.encode_max_visits <= 8);
  }
  std::ostringstream a, b;
  write_csv(a, rows);
  write_csv(b, run_synthetic(cfg));
  const std::string header = a.str().substr(0, a.str().find('\n'));
  CHECK(columns(header) == 16);
  CHECK(without_times(a.str(), 10, 11) == without_times(b.str(), 10, 11));
  cfg.seed = 100;
  std::ostringstream c;
  write_csv(c, run_synthetic(cfg));
  CHECK(without_times(a.str(), 10, 11) != without_times(c.str(), 10, 11));
}

TEST_CASE("JSON benchmark rows") {
  std::string text = "[";
  for (int i = 0; i < 40; ++i) {
    text += (i ? "," : "") + std::string("{\"id\":") + std::to_string(i) + ",\"x\":\"y\"}";
  }
  text += "]";
  const auto records = msz::parse_json_records(text);
  const auto rows = run_json(records, msz::ByteStringCodec(8), 2);
  // prefixes 1, 2, 4, 8, 16, 32, 40
  REQUIRE(rows.size() == 14);
  CHECK(rows.back().records == 40);
  for (const auto& r : rows) {
    CHECK(r.roundtrip_ok);
    CHECK(r.savings_bits <= r.bound_bits + 1);
    CHECK(r.bound_bits == doctest::Approx(msz::nested_savings_bound(msz::NestedMultiset::from_sequence(
                             std::vector<msz::Record>(records.begin(), records.begin() + r.records)))));
  }
  for (std::size_t i = 2; i < rows.size(); i += 2) CHECK(rows[i].savings_bits > rows[i - 2].savings_bits);
  std::ostringstream out;
  write_csv(out, rows);
  CHECK(columns(out.str().substr(0, out.str().find('\n'))) == 9);
}
