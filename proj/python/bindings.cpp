#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <mutex>
#include <sstream>

#include "fbar/addressing.hpp"
#include "fbar/codec.hpp"
#include "fbar/errors.hpp"
#include "fbar/metrics.hpp"
#include "fbar/pairops.hpp"
#include "fbar/transtable.hpp"

namespace py = pybind11;
using namespace fbar;

namespace {

std::span<const std::uint8_t> view(const py::bytes& b, std::string& hold) {
  hold = b;
  return {reinterpret_cast<const std::uint8_t*>(hold.data()), hold.size()};
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
  return {reinterpret_cast<const char*>(v.data()), v.size()};
}

const Tables& cached_tables(Mode mode, Layout layout) {
  static std::mutex mu;
  static std::map<std::pair<Mode, Layout>, Tables> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({mode, layout});
  if (it == cache.end()) it = cache.emplace(std::pair{mode, layout}, Tables::generate(mode, layout)).first;
  return it->second;
}

py::dict report_dict(const MetricsReport& r) {
  py::dict d;
  d["input_size"] = r.input_size;
  d["paper_size_1tt"] = r.paper_size_1tt;
  d["paper_size_4tt"] = r.paper_size_4tt;
  d["paper_accounted"] = r.paper_accounted;
  d["honest_size"] = r.honest_size;
  d["artifact_size"] = r.artifact_size;
  d["space_savings_paper"] = r.space_savings_paper;
  d["fbar_H"] = r.fbar_H;
  d["shannon_H0"] = r.shannon_H0;
  d["empirical_H"] = r.empirical_H;
  d["manipulation_total"] = r.manipulation_total.count;
  d["elapsed"] = r.elapsed;
  d["throughput"] = r.throughput;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fbar, m) {
  m.doc() = "Pair-address codec: translation tables, grid artifacts and audits.";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_ValueError);
  py::register_exception<ModeMismatch>(m, "ModeMismatch", PyExc_ValueError);

  m.def("decode_byte", [](const std::string& stage1, const std::string& stage2) {
    return decode_byte(StageCombo::parse(stage1), ZnCombo::parse(stage2));
  }, py::arg("stage1"), py::arg("stage2"), "Apply two stage combos to the pure byte 0xFF.");

  m.def("canonical_factor", [](std::uint8_t b) {
    const auto [ip, zn] = canonical_factor(b);
    return std::pair{ip.str(), zn.str()};
  }, py::arg("byte"));

  m.def("address_of_pair", [](std::uint8_t x, std::uint8_t y, const std::string& layout) {
    const auto a = address_of_pair(x, y, parse_layout(layout));
    return std::tuple{a.i, a.j, a.k, a.l};
  }, py::arg("x"), py::arg("y"), py::arg("layout") = "interleaved", "1-based (i, j, k, l).");

  m.def("row_of_address", [](unsigned i, unsigned j, unsigned k, unsigned l) {
    return row_of_address(FlagAddress::make(i, j, k, l)).value();
  }, py::arg("i"), py::arg("j"), py::arg("k"), py::arg("l"), "Zero-based row.");

  m.def("pair_of_row", [](std::uint32_t row, const std::string& layout) {
    if (row >= kRowCount) throw py::value_error("row out of range");
    const auto p = pair_of_row(RowIndex(static_cast<std::uint16_t>(row)), parse_layout(layout));
    return py::bytes(reinterpret_cast<const char*>(p.data()), 2);
  }, py::arg("row"), py::arg("layout") = "interleaved");

  py::class_<TranslationTable>(m, "TranslationTable")
      .def_static("generate", [](const std::string& layout) { return TranslationTable::generate(parse_layout(layout)); },
                  py::arg("layout") = "interleaved")
      .def_static("load", [](const py::bytes& data) {
        std::string hold;
        return load_table(view(data, hold));
      }, py::arg("data"), "Load a text or binary table.")
      .def("__len__", &TranslationTable::size)
      .def_property_readonly("layout", [](const TranslationTable& t) { return to_string(t.layout()); })
      .def("verify", [](const TranslationTable& t) {
        std::vector<std::string> out;
        for (const auto& v : verify_tt(t).violations) out.push_back(v.message);
        return out;
      }, "Violation messages; empty when the table verifies.")
      .def("serialize", [](const TranslationTable& t, const std::string& format) {
        std::ostringstream out;
        if (format == "text") {
          serialize_text(t, out);
        } else if (format == "binary") {
          serialize_binary(t, out);
        } else {
          throw py::value_error("format must be 'text' or 'binary'");
        }
        return py::bytes(out.str());
      }, py::arg("format") = "binary")
      .def("lookup", [](const TranslationTable& t, std::uint32_t row) -> py::object {
        if (row >= kRowCount) return py::none();
        const auto p = t.lookup(RowIndex(static_cast<std::uint16_t>(row)));
        if (!p) return py::none();
        return py::bytes(reinterpret_cast<const char*>(p->data()), 2);
      }, py::arg("row"));

  m.def("compress", [](const py::bytes& data, const std::string& mode, const std::string& format,
                       const std::string& layout) {
    std::string hold;
    const auto& tables = cached_tables(parse_mode(mode), parse_layout(layout));
    CompressResult r;
    {
      py::gil_scoped_release release;
      r = compress({view(data, hold), parse_format(format), &tables});
    }
    return std::pair{to_bytes(r.artifact), report_dict(r.report)};
  }, py::arg("data"), py::arg("mode") = "1tt", py::arg("format") = "paper", py::arg("layout") = "interleaved",
     "Returns (artifact, report).");

  m.def("decompress", [](const py::bytes& artifact, const std::string& mode, const std::string& layout) {
    std::string hold;
    const auto& tables = cached_tables(parse_mode(mode), parse_layout(layout));
    return to_bytes(decompress({view(artifact, hold), &tables}));
  }, py::arg("artifact"), py::arg("mode") = "1tt", py::arg("layout") = "interleaved");

  m.def("paper_size", [](std::size_t n, const std::string& mode) { return paper_size(n, parse_mode(mode)); },
        py::arg("n"), py::arg("mode") = "1tt");
  m.def("empirical_entropy", [](const py::bytes& data) {
    std::string hold;
    return empirical_entropy(view(data, hold));
  }, py::arg("data"));
  m.def("fbar_H", [](std::int64_t num, std::int64_t den) { return fbar_H({num, den}); },
        py::arg("num"), py::arg("den") = 1, "log2 of output bytes per 8 input bytes.");
  m.def("savings_from_H", &savings_from_H, py::arg("H"));
  m.def("manipulation_distance", [](std::uint64_t units, bool decompressed) {
    return manipulation_distance(units, decompressed).count;
  }, py::arg("units"), py::arg("decompressed") = false);

  m.def("pigeonhole_audit", [](const TranslationTable& t) {
    const auto r = pigeonhole_audit(t);
    py::dict d;
    d["bijection_ok"] = r.bijection_ok;
    d["addressing_bijective"] = r.addressing_bijective;
    d["offending_rows"] = r.offending_rows;
    if (r.collision_witness) {
      d["witness"] = py::make_tuple(to_bytes(r.collision_witness->input_a), to_bytes(r.collision_witness->input_b),
                                    to_bytes(r.collision_witness->occupant_stream));
    } else {
      d["witness"] = py::none();
    }
    d["address_bits"] = r.channel_bits.address;
    return d;
  }, py::arg("table"));
}
