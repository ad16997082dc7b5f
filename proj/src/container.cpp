#include "msz/container.hpp"

#include <algorithm>

#include <boost/crc.hpp>

#include "msz/errors.hpp"
#include "msz/multiset_codec.hpp"
#include "msz/varint.hpp"

namespace msz {

std::uint32_t crc32c(std::span<const std::uint8_t> data) {
  boost::crc_optimal<32, 0x1EDC6F41, 0xFFFFFFFF, 0xFFFFFFFF, true, true> crc;
  crc.process_bytes(data.data(), data.size());
  return crc.checksum();
}

std::vector<std::uint8_t> write_container(const Container& c) {
  if (c.kind == PayloadKind::nested && c.inner_sizes.size() != c.size) {
    throw ContractError("nested container needs one inner size per record");
  }
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(kContainerVersion);
  out.push_back(static_cast<std::uint8_t>(c.codec_id));
  put_varint(out, c.codec_params.size());
  out.insert(out.end(), c.codec_params.begin(), c.codec_params.end());
  out.push_back(static_cast<std::uint8_t>(c.kind));
  put_varint(out, c.size);
  if (c.kind == PayloadKind::nested) {
    for (const std::uint64_t s : c.inner_sizes) {
      put_varint(out, s);
    }
  }
  const auto state = c.state.serialize();
  out.insert(out.end(), state.begin(), state.end());
  const std::uint32_t crc = crc32c(std::span(out).subspan(kMagic.size()));
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(crc >> shift));
  }
  return out;
}

Container read_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw FormatError("not an MSZ1 container (bad magic)");
  }
  if (bytes.size() < kMagic.size() + 4) {
    throw FormatError("container truncated");
  }
  const auto body = bytes.subspan(kMagic.size(), bytes.size() - kMagic.size() - 4);
  std::uint32_t stored = 0;
  for (const std::uint8_t b : bytes.last(4)) {
    stored = (stored << 8) | b;
  }
  if (crc32c(body) != stored) {
    throw FormatError("container checksum mismatch");
  }

  std::size_t pos = 0;
  auto byte = [&]() -> std::uint8_t {
    if (pos >= body.size()) throw FormatError("container truncated");
    return body[pos++];
  };
  Container c;
  if (const std::uint8_t version = byte(); version != kContainerVersion) {
    throw FormatError("unsupported container version " + std::to_string(version));
  }
  const std::uint8_t codec = byte();
  if (codec != static_cast<std::uint8_t>(CodecId::categorical) &&
      codec != static_cast<std::uint8_t>(CodecId::bytes)) {
    throw FormatError("unknown codec id " + std::to_string(codec));
  }
  c.codec_id = static_cast<CodecId>(codec);
  const std::uint64_t n_params = get_varint(body, pos);
  if (n_params > body.size() - pos) {
    throw FormatError("container truncated in codec parameters");
  }
  c.codec_params.assign(body.begin() + static_cast<std::ptrdiff_t>(pos),
                        body.begin() + static_cast<std::ptrdiff_t>(pos + n_params));
  pos += n_params;
  const std::uint8_t kind = byte();
  if (kind > 1) {
    throw FormatError("unknown payload kind " + std::to_string(kind));
  }
  c.kind = static_cast<PayloadKind>(kind);
  c.size = get_varint(body, pos);
  if (c.kind == PayloadKind::nested) {
    if (c.size > body.size() - pos) {
      throw FormatError("container truncated in inner sizes");
    }
    c.inner_sizes.reserve(c.size);
    for (std::uint64_t i = 0; i < c.size; ++i) {
      c.inner_sizes.push_back(get_varint(body, pos));
    }
  }
  c.state = AnsState::deserialize(body.subspan(pos));
  return c;
}

std::vector<std::uint8_t> codec_params(const ByteStringCodec& codec) {
  std::vector<std::uint8_t> out;
  put_varint(out, codec.max_len());
  return out;
}

std::vector<std::uint8_t> codec_params(const QuantizedCategorical& codec) {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(codec.precision_bits()));
  const auto alphabet = codec.alphabet();
  const auto masses = codec.masses();
  put_varint(out, alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    put_varint(out, i == 0 ? alphabet[0] : alphabet[i] - alphabet[i - 1] - 1);
    put_varint(out, masses[i]);
  }
  return out;
}

ByteStringCodec bytes_codec_from_params(std::span<const std::uint8_t> params) {
  std::size_t pos = 0;
  const std::uint64_t max_len = get_varint(params, pos);
  if (pos != params.size()) {
    throw FormatError("trailing bytes in byte-string codec parameters");
  }
  try {
    return ByteStringCodec(max_len);
  } catch (const CapacityError& e) {
    throw FormatError(e.what());
  }
}

QuantizedCategorical categorical_codec_from_params(std::span<const std::uint8_t> params) {
  if (params.empty()) {
    throw FormatError("missing categorical codec parameters");
  }
  std::size_t pos = 1;
  const unsigned bits = params[0];
  const std::uint64_t n = get_varint(params, pos);
  if (n > params.size()) {
    throw FormatError("categorical alphabet size exceeds parameter block");
  }
  std::vector<std::uint32_t> alphabet;
  std::vector<std::uint64_t> masses;
  alphabet.reserve(n);
  masses.reserve(n);
  std::uint64_t symbol = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t gap = get_varint(params, pos);
    symbol = i == 0 ? gap : symbol + gap + 1;
    if (symbol > UINT32_MAX) {
      throw FormatError("categorical symbol out of range");
    }
    alphabet.push_back(static_cast<std::uint32_t>(symbol));
    masses.push_back(get_varint(params, pos));
  }
  if (pos != params.size()) {
    throw FormatError("trailing bytes in categorical codec parameters");
  }
  try {
    return QuantizedCategorical(std::move(alphabet), std::move(masses), bits);
  } catch (const ContractError& e) {
    throw FormatError(std::string("invalid categorical parameters: ") + e.what());
  }
}

QuantizedCategorical empirical_codec(const Multiset<std::uint32_t>& m, unsigned bits) {
  if (m.empty()) {
    throw ContractError("empirical model of an empty multiset");
  }
  std::vector<std::uint32_t> alphabet;
  std::vector<double> weights;
  for (const auto& e : m.entries()) {
    alphabet.push_back(e.symbol);
    weights.push_back(static_cast<double>(e.count));
  }
  return QuantizedCategorical::from_weights(std::move(alphabet), weights,
                                            bits != 0 ? bits : default_precision_bits(m.unique()));
}

std::vector<std::uint8_t> compress(const Multiset<std::string>& m, const ByteStringCodec& codec) {
  Container c;
  c.codec_id = CodecId::bytes;
  c.codec_params = codec_params(codec);
  c.size = m.total();
  c.state = encode_multiset(m, codec);
  return write_container(c);
}

std::vector<std::uint8_t> compress(const Multiset<std::uint32_t>& m,
                                   const QuantizedCategorical& codec) {
  Container c;
  c.codec_id = CodecId::categorical;
  c.codec_params = codec_params(codec);
  c.size = m.total();
  c.state = encode_multiset(m, codec);
  return write_container(c);
}

std::vector<std::uint8_t> compress(const NestedMultiset& nm, const ByteStringCodec& codec) {
  Container c;
  c.codec_id = CodecId::bytes;
  c.codec_params = codec_params(codec);
  c.kind = PayloadKind::nested;
  c.size = nm.total();
  c.inner_sizes = encode_nested(c.state, nm, PairCodec(codec)).inner_sizes;
  return write_container(c);
}

Archive decompress(std::span<const std::uint8_t> bytes) {
  Archive a;
  a.header = read_container(bytes);
  AnsState state = a.header.state;
  if (a.header.kind == PayloadKind::nested) {
    if (a.header.codec_id != CodecId::bytes) {
      throw FormatError("nested payloads require the byte-string codec");
    }
    const auto codec = bytes_codec_from_params(a.header.codec_params);
    a.content = decode_nested(state, NestedShape{a.header.inner_sizes}, PairCodec(codec));
  } else if (a.header.codec_id == CodecId::bytes) {
    a.content = decode_multiset(state, a.header.size, bytes_codec_from_params(a.header.codec_params));
  } else {
    a.content = decode_multiset(state, a.header.size,
                                categorical_codec_from_params(a.header.codec_params));
  }
  a.residual_clean = equivalent(state, AnsState{});
  return a;
}

}  // namespace msz
