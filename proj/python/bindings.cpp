#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "msz/ans.hpp"
#include "msz/bench.hpp"
#include "msz/container.hpp"
#include "msz/errors.hpp"
#include "msz/multiset_codec.hpp"
#include "msz/nested.hpp"

namespace py = pybind11;
using namespace msz;

namespace {

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
  return {reinterpret_cast<const char*>(v.data()), v.size()};
}

std::vector<std::uint8_t> from_bytes(const py::bytes& b) {
  const std::string_view s = b;
  return {s.begin(), s.end()};
}

ByteStringCodec bytes_codec_for(const std::vector<std::string>& payloads,
                                std::optional<std::uint64_t> max_len) {
  if (max_len) return ByteStringCodec(*max_len);
  std::uint64_t longest = 0;
  for (const auto& p : payloads) longest = std::max<std::uint64_t>(longest, p.size());
  return ByteStringCodec(longest);
}

std::uint64_t longest_field(const NestedMultiset& nm) {
  std::uint64_t longest = 0;
  for (const auto& e : nm.entries()) {
    for (const auto& p : e.symbol.pairs().entries()) {
      longest = std::max<std::uint64_t>({longest, p.symbol.key.size(), p.symbol.value.size()});
    }
  }
  return longest;
}

py::dict report_dict(const RateReport& r) {
  py::dict d;
  d["compressed_bits"] = r.compressed_bits;
  d["serialized_bits"] = r.serialized_bits;
  d["info_content_bits"] = r.info_content_bits;
  d["sequence_bits"] = r.sequence_bits;
  d["savings_bits"] = r.savings_bits;
  d["permutation_bits"] = r.permutation_bits;
  return d;
}

}  // namespace

PYBIND11_MODULE(_msz, m) {
  m.doc() = "Multiset compression: ANS coder, multiset codec and container format.";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);
  py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_KeyError);

  py::class_<AnsState>(m, "AnsState")
      .def(py::init<>())
      .def_property_readonly("head", &AnsState::head)
      .def_property_readonly("words", [](const AnsState& s) {
        return std::vector<std::uint32_t>(s.words().begin(), s.words().end());
      })
      .def("encode", [](AnsState& s, std::uint64_t start, std::uint64_t freq,
                        std::uint64_t precision) { s.encode({start, freq, precision}); },
           py::arg("start"), py::arg("freq"), py::arg("precision"))
      .def("decode", [](AnsState& s, std::uint64_t start, std::uint64_t freq,
                        std::uint64_t precision) { s.decode({start, freq, precision}); },
           py::arg("start"), py::arg("freq"), py::arg("precision"))
      .def("peek", &AnsState::peek, py::arg("precision"))
      .def("content_bits", &AnsState::content_bits)
      .def("length_bits", &AnsState::length_bits)
      .def("serialize", [](const AnsState& s) { return to_bytes(s.serialize()); })
      .def_static("deserialize", [](const py::bytes& b) {
        const auto v = from_bytes(b);
        return AnsState::deserialize(v);
      })
      .def("__eq__", [](const AnsState& a, const AnsState& b) { return a == b; });

  m.def("compress_bytes",
        [](const std::vector<std::string>& payloads, std::optional<std::uint64_t> max_len) {
          const auto codec = bytes_codec_for(payloads, max_len);
          return to_bytes(compress(Multiset<std::string>::from_sequence(payloads), codec));
        },
        py::arg("payloads"), py::arg("max_len") = py::none(),
        "Compress a collection of byte strings; order is discarded.");

  m.def("compress_ints",
        [](const std::vector<std::uint32_t>& symbols, unsigned precision) {
          const auto ms = Multiset<std::uint32_t>::from_sequence(symbols);
          return to_bytes(compress(ms, empirical_codec(ms, precision)));
        },
        py::arg("symbols"), py::arg("precision") = 0,
        "Compress integers under their own empirical distribution.");

  m.def("compress_json",
        [](std::string_view text, std::optional<std::uint64_t> max_len) {
          const auto nm = ingest_json(text);
          return to_bytes(compress(nm, ByteStringCodec(max_len.value_or(longest_field(nm)))));
        },
        py::arg("text"), py::arg("max_len") = py::none(),
        "Compress a JSON array of flat records as a multiset of multisets.");

  m.def("decompress",
        [](const py::bytes& data) -> py::object {
          const auto archive = decompress(from_bytes(data));
          if (const auto* s = std::get_if<Multiset<std::string>>(&archive.content)) {
            py::list out;
            for (const auto& x : s->to_sequence()) out.append(py::bytes(x));
            return out;
          }
          if (const auto* ints = std::get_if<Multiset<std::uint32_t>>(&archive.content)) {
            return py::cast(ints->to_sequence());
          }
          return py::str(to_json(std::get<NestedMultiset>(archive.content)));
        },
        py::arg("data"),
        "Sorted list of bytes, sorted list of ints, or canonical JSON text.");

  m.def("info",
        [](const py::bytes& data) {
          const auto c = read_container(from_bytes(data));
          py::dict d;
          d["codec"] = c.codec_id == CodecId::bytes ? "bytes" : "categorical";
          d["nested"] = c.kind == PayloadKind::nested;
          d["size"] = c.size;
          d["inner_sizes"] = c.inner_sizes;
          d["state_bits"] = added_bits(c.state);
          return d;
        },
        py::arg("data"));

  m.def("rate_report_bytes",
        [](const std::vector<std::string>& payloads, std::optional<std::uint64_t> max_len) {
          const auto codec = bytes_codec_for(payloads, max_len);
          return report_dict(rate_report(Multiset<std::string>::from_sequence(payloads), codec));
        },
        py::arg("payloads"), py::arg("max_len") = py::none());

  m.def("rate_report_ints",
        [](const std::vector<std::uint32_t>& symbols, unsigned precision) {
          const auto ms = Multiset<std::uint32_t>::from_sequence(symbols);
          return report_dict(rate_report(ms, empirical_codec(ms, precision)));
        },
        py::arg("symbols"), py::arg("precision") = 0);

  m.def("nested_savings_bound",
        [](std::string_view text) { return nested_savings_bound(ingest_json(text)); },
        py::arg("text"));

  m.def("dirichlet_source", &bench::gen_dirichlet_source, py::arg("alphabet_size"),
        py::arg("seed"));

  m.def("fixed_unique_multiset",
        [](const std::vector<double>& pmf, std::size_t unique, std::uint64_t size,
           std::uint64_t seed) {
          const auto ms = bench::gen_fixed_unique_multiset(pmf, unique, size, seed);
          py::dict d;
          for (const auto& e : ms.entries()) {
            d[py::int_(e.symbol)] = e.count;
          }
          return d;
        },
        py::arg("pmf"), py::arg("unique"), py::arg("size"), py::arg("seed"));
}
