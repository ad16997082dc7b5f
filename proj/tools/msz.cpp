// msz: compress a set of files (or integers, or JSON records) without paying
// for their order.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "msz/bench.hpp"
#include "msz/container.hpp"
#include "msz/errors.hpp"
#include "msz/multiset_codec.hpp"
#include "msz/nested.hpp"

namespace fs = std::filesystem;
using namespace msz;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

// Regular files named on the command line, plus the regular files directly
// inside any named directory.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& name : inputs) {
    const fs::path p(name);
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw std::runtime_error("cannot read " + name + ": not a file or directory");
    }
  }
  return files;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::vector<std::uint32_t> parse_integers(const std::string& text, const fs::path& source) {
  std::vector<std::uint32_t> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token[0] == '-' || v > UINT32_MAX) {
      throw std::runtime_error(source.string() + ": \"" + token +
                               "\" is not an integer in [0, 2^32)");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

struct CompressOptions {
  std::vector<std::string> inputs;
  std::string output;
  std::string codec = "bytes";
  unsigned precision = 0;
  std::uint64_t max_len = 0;
  bool nested = false;
};

void print_report(double compressed, double reference, const char* reference_name,
                  double sequence, std::size_t container_bytes) {
  std::cout << std::fixed << std::setprecision(2) << "compressed_bits: " << compressed << '\n'
            << reference_name << ": " << reference << '\n'
            << "sequence_bits: " << sequence << '\n'
            << "savings_bits: " << sequence - compressed << '\n'
            << "container_bytes: " << container_bytes << '\n';
}

int cmd_compress(const CompressOptions& opt) {
  std::vector<std::uint8_t> bytes;
  if (opt.nested) {
    if (opt.codec != "bytes") {
      throw std::runtime_error("--nested requires --codec bytes");
    }
    if (opt.inputs.size() != 1) {
      throw std::runtime_error("--nested takes exactly one JSON file");
    }
    const auto nm = ingest_json(read_file(opt.inputs[0]));
    std::uint64_t max_len = opt.max_len;
    if (max_len == 0) {
      for (const auto& e : nm.entries()) {
        for (const auto& p : e.symbol.pairs().entries()) {
          max_len = std::max<std::uint64_t>({max_len, p.symbol.key.size(), p.symbol.value.size()});
        }
      }
    }
    const ByteStringCodec codec(max_len);
    const PairCodec pairs(codec);
    bytes = compress(nm, codec);
    AnsState state;
    encode_nested(state, nm, pairs);
    print_report(added_bits(state), nested_savings_bound(nm), "bound_bits",
                 added_bits(encode_nested_sequence(nm, pairs)), bytes.size());
  } else if (opt.codec == "bytes") {
    std::vector<std::string> payloads;
    std::uint64_t longest = 0;
    for (const auto& f : expand_inputs(opt.inputs)) {
      payloads.push_back(read_file(f));
      longest = std::max<std::uint64_t>(longest, payloads.back().size());
    }
    const ByteStringCodec codec(opt.max_len == 0 ? longest : opt.max_len);
    const auto m = Multiset<std::string>::from_sequence(std::move(payloads));
    bytes = compress(m, codec);
    const auto r = rate_report(m, codec);
    print_report(r.compressed_bits, r.info_content_bits, "info_bits", r.sequence_bits,
                 bytes.size());
  } else {
    std::vector<std::uint32_t> symbols;
    for (const auto& f : expand_inputs(opt.inputs)) {
      const auto part = parse_integers(read_file(f), f);
      symbols.insert(symbols.end(), part.begin(), part.end());
    }
    const auto m = Multiset<std::uint32_t>::from_sequence(std::move(symbols));
    if (m.empty()) {
      throw std::runtime_error("no integers in the input");
    }
    const auto codec = empirical_codec(m, opt.precision);
    bytes = compress(m, codec);
    const auto r = rate_report(m, codec);
    print_report(r.compressed_bits, r.info_content_bits, "info_bits", r.sequence_bits,
                 bytes.size());
  }
  write_file(opt.output, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  return 0;
}

std::vector<std::uint8_t> read_container_file(const std::string& path) {
  const std::string raw = read_file(path);
  return {raw.begin(), raw.end()};
}

int cmd_decompress(const std::string& input, const std::string& output) {
  const auto archive = decompress(read_container_file(input));
  if (!archive.residual_clean) {
    std::cerr << "msz: warning: leftover state after decoding; the container may not match its "
                 "codec parameters\n";
  }
  const fs::path dir(output);
  if (fs::exists(dir) && !(fs::is_directory(dir) && fs::is_empty(dir))) {
    throw std::runtime_error(output + " exists and is not an empty directory");
  }
  fs::create_directories(dir);

  if (const auto* m = std::get_if<Multiset<std::string>>(&archive.content)) {
    for (const auto& e : m->entries()) {
      const std::string name = sha256_hex(e.symbol);
      for (std::uint64_t k = 0; k < e.count; ++k) {
        write_file(dir / (k == 0 ? name : name + "." + std::to_string(k)), e.symbol);
      }
    }
  } else if (const auto* ints = std::get_if<Multiset<std::uint32_t>>(&archive.content)) {
    if (!ints->empty()) {
      std::ostringstream text;
      for (const std::uint32_t x : ints->to_sequence()) text << x << '\n';
      write_file(dir / "symbols.txt", text.str());
    }
  } else {
    const auto& nm = std::get<NestedMultiset>(archive.content);
    if (!nm.empty()) {
      write_file(dir / "records.json", to_json(nm));
    }
  }
  return 0;
}

int cmd_info(const std::string& input) {
  const auto bytes = read_container_file(input);
  const auto c = read_container(bytes);
  std::cout << "version: " << int{kContainerVersion} << '\n'
            << "payload: " << (c.kind == PayloadKind::nested ? "nested" : "flat") << '\n';
  if (c.codec_id == CodecId::bytes) {
    std::cout << "codec: bytes\n"
              << "max_len: " << bytes_codec_from_params(c.codec_params).max_len() << '\n';
  } else {
    const auto codec = categorical_codec_from_params(c.codec_params);
    std::cout << "codec: categorical\n"
              << "precision_bits: " << codec.precision_bits() << '\n'
              << "alphabet_size: " << codec.alphabet().size() << '\n';
  }
  std::cout << "symbols: " << c.size << '\n';
  if (c.kind == PayloadKind::nested) {
    std::uint64_t pairs = 0;
    for (const std::uint64_t s : c.inner_sizes) pairs += s;
    std::cout << "pairs: " << pairs << '\n';
  }
  std::cout << "state_words: " << c.state.words().size() << '\n'
            << std::fixed << std::setprecision(2) << "state_bits: " << added_bits(c.state) << '\n'
            << "container_bytes: " << bytes.size() << '\n'
            << "checksum: ok\n";
  return 0;
}

template <class Row>
void emit_csv(const std::string& path, const std::vector<Row>& rows) {
  if (path.empty() || path == "-") {
    bench::write_csv(std::cout, rows);
    return;
  }
  std::ofstream out(path);
  bench::write_csv(out, rows);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-free compression of multisets"};
  app.require_subcommand(1);

  CompressOptions copt;
  auto* compress_cmd = app.add_subcommand("compress", "Compress files into a container");
  compress_cmd->add_option("inputs", copt.inputs, "Files or directories (one JSON file with --nested)")
      ->required();
  compress_cmd->add_option("-o,--output", copt.output, "Container to write")->required();
  compress_cmd->add_option("--codec", copt.codec, "Symbol codec")
      ->check(CLI::IsMember({"categorical", "bytes"}));
  compress_cmd->add_option("--precision", copt.precision,
                           "Categorical precision in bits (default: from alphabet size)")
      ->check(CLI::Range(1, 31));
  compress_cmd->add_option("--max-len", copt.max_len,
                           "Byte-string length limit (default: longest input)");
  compress_cmd->add_flag("--nested", copt.nested, "Input is a JSON array of flat records");

  std::string input;
  std::string output;
  auto* decompress_cmd = app.add_subcommand("decompress", "Restore a container into a directory");
  decompress_cmd->add_option("input", input, "Container file")->required()->check(CLI::ExistingFile);
  decompress_cmd->add_option("-o,--output", output, "Directory to create")->required();

  auto* info_cmd = app.add_subcommand("info", "Describe a container");
  info_cmd->add_option("input", input, "Container file")->required()->check(CLI::ExistingFile);

  bench::BenchConfig bcfg;
  bcfg.multiset_sizes = {1024, 2048, 4096, 8192, 16384};
  bcfg.alphabet_sizes = {1024, 16384, 262144};
  std::string csv;
  auto* synth_cmd = app.add_subcommand("bench-synthetic", "Synthetic Dirichlet benchmark");
  synth_cmd->add_option("--unique", bcfg.unique, "Distinct symbols per multiset")
      ->capture_default_str();
  synth_cmd->add_option("--sizes", bcfg.multiset_sizes, "Multiset sizes")
      ->delimiter(',')
      ->capture_default_str();
  synth_cmd->add_option("--alphabets", bcfg.alphabet_sizes, "Alphabet sizes")
      ->delimiter(',')
      ->capture_default_str();
  synth_cmd->add_option("--seed", bcfg.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--repetitions", bcfg.repetitions, "Runs per configuration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--csv", csv, "CSV output path (default: stdout)");

  std::string json_path;
  unsigned json_reps = 1;
  std::uint64_t json_max_len = 0;
  auto* json_cmd = app.add_subcommand("bench-json", "Nested benchmark over a JSON record file");
  json_cmd->add_option("input", json_path, "JSON array of flat records")
      ->required()
      ->check(CLI::ExistingFile);
  json_cmd->add_option("--repetitions", json_reps, "Runs per prefix")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  json_cmd->add_option("--max-len", json_max_len, "Byte-string length limit (default: longest)");
  json_cmd->add_option("--csv", csv, "CSV output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compress_cmd) return cmd_compress(copt);
    if (*decompress_cmd) return cmd_decompress(input, output);
    if (*info_cmd) return cmd_info(input);
    if (*synth_cmd) {
      emit_csv(csv, bench::run_synthetic(bcfg));
      return 0;
    }
    const auto records = parse_json_records(read_file(json_path));
    std::uint64_t max_len = json_max_len;
    if (max_len == 0) {
      for (const auto& r : records) {
        for (const auto& p : r.pairs().entries()) {
          max_len = std::max<std::uint64_t>({max_len, p.symbol.key.size(), p.symbol.value.size()});
        }
      }
    }
    emit_csv(csv, bench::run_json(records, ByteStringCodec(max_len), json_reps));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "msz: error: " << e.what() << '\n';
    return 1;
  }
}
