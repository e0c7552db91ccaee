// fbar: translation-table compressor command line.
//
// Exit codes:
//   0   success
//   1   verification or audit failure, or a round trip that did not match
//   2   I/O error (unreadable input, unwritable output)
//   3   malformed artifact or table file
//   4   artifact mode/layout does not match the tables
//   5   no translation table available
//   64  usage error

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fbar/codec.hpp"
#include "fbar/errors.hpp"
#include "fbar/metrics.hpp"
#include "fbar/transtable.hpp"

namespace fs = std::filesystem;
using namespace fbar;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,
  kIo = 2,
  kFormat = 3,
  kMismatch = 4,
  kNoTable = 5,
  kUsage = 64,
};

struct MissingTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string(), 0);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string(), 0);
  return data;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string(), 0);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string(), 0);
}

// "dir/tt.bin" -> "dir/tt-2.bin"
fs::path indexed_path(const fs::path& path, int k) {
  fs::path out = path;
  out.replace_filename(path.stem().string() + "-" + std::to_string(k) + path.extension().string());
  return out;
}

std::shared_ptr<const TranslationTable> load_table_file(const fs::path& path) {
  return std::make_shared<const TranslationTable>(load_table(read_file(path)));
}

fs::path find_default(const fs::path& dir, const std::string& stem) {
  for (const char* ext : {".bin", ".txt"}) {
    const fs::path p = dir / (stem + ext);
    if (fs::exists(p)) return p;
  }
  throw MissingTable("no " + stem + ".bin or " + stem + ".txt in " + dir.string());
}

// Explicit --tt paths win; otherwise FBAR_TT_DIR holds tt.bin (1-TT) or
// tt-1.bin .. tt-4.bin (4-TT). A single path in 4-TT mode is used four times.
Tables resolve_tables(const std::vector<std::string>& paths, Mode mode) {
  std::vector<fs::path> files(paths.begin(), paths.end());
  if (files.empty()) {
    const char* dir = std::getenv("FBAR_TT_DIR");
    if (!dir || !*dir) throw MissingTable("no translation table: pass --tt or set FBAR_TT_DIR");
    if (mode == Mode::tt1) {
      files.push_back(find_default(dir, "tt"));
    } else {
      for (int k = 1; k <= 4; ++k) files.push_back(find_default(dir, "tt-" + std::to_string(k)));
    }
  }
  for (const auto& f : files) {
    if (!fs::exists(f)) throw MissingTable("translation table not found: " + f.string());
  }

  if (mode == Mode::tt1) {
    if (files.size() != 1) throw CLI::ValidationError("--tt", "1tt mode takes one table");
    return Tables(load_table_file(files[0]));
  }
  TtSet4 set;
  if (files.size() == 1) {
    const auto table = load_table_file(files[0]);
    set.tables = {table, table, table, table};
  } else if (files.size() == 4) {
    for (std::size_t k = 0; k < 4; ++k) set.tables[k] = load_table_file(files[k]);
  } else {
    throw CLI::ValidationError("--tt", "4tt mode takes one or four tables");
  }
  return Tables(set);
}

std::string printable(std::span<const std::uint8_t> bytes) {
  std::ostringstream out;
  out << '"';
  for (auto b : bytes) {
    if (b >= 32 && b < 127 && b != '"' && b != '\\') {
      out << static_cast<char>(b);
    } else {
      out << "\\x" << std::hex << std::setw(2) << std::setfill('0') << int{b} << std::dec;
    }
  }
  out << '"';
  return out.str();
}

double kib(std::size_t bytes) { return static_cast<double>(bytes) / 1024.0; }

// ---------------------------------------------------------------- commands

struct GenTtOptions {
  std::string out;
  std::string format = "binary";
  int count = 1;
  std::string layout = "interleaved";
};

int cmd_gen_tt(const GenTtOptions& o) {
  const auto table = TranslationTable::generate(parse_layout(o.layout));
  require_verified(table);
  for (int k = 1; k <= o.count; ++k) {
    const fs::path path = o.count == 1 ? fs::path(o.out) : indexed_path(o.out, k);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path.string(), 0);
    const std::size_t n = o.format == "text" ? serialize_text(table, out) : serialize_binary(table, out);
    out.close();
    // each written table must load back and verify on its own
    require_verified(load_table(read_file(path)));
    std::cout << path.string() << ": " << n << " bytes, " << o.format << ", "
              << to_string(table.layout()) << ", verified\n";
  }
  return kOk;
}

struct CodecOptions {
  std::string input;
  std::string out;
  std::string mode = "1tt";
  std::string format = "paper";
  std::string layout;
  std::string report = "table";
  std::vector<std::string> tt;
};

void print_report(const MetricsReport& r, const std::string& style) {
  std::cout << (style == "kv" ? render_kv(r) : render_table(r));
}

int cmd_compress(const CodecOptions& o) {
  const Mode mode = parse_mode(o.mode);
  const Tables tables = resolve_tables(o.tt, mode);
  if (!o.layout.empty() && parse_layout(o.layout) != tables.layout()) {
    throw ModeMismatch("requested " + o.layout + " layout but the table uses " +
                       to_string(tables.layout()));
  }
  const auto input = read_file(o.input);
  const auto result = compress({input, parse_format(o.format), &tables});
  write_file(o.out, result.artifact);
  print_report(result.report, o.report);
  return kOk;
}

int cmd_decompress(const CodecOptions& o) {
  const auto artifact = read_file(o.input);
  const RowStream header = parse_artifact(artifact);
  const Tables tables = resolve_tables(o.tt, header.mode);

  const auto start = std::chrono::steady_clock::now();
  const auto output = decompress({artifact, &tables});
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file(o.out, output);

  if (o.report == "kv") {
    std::cout << "artifact_size=" << artifact.size() << "\noutput_size=" << output.size()
              << "\nmode=" << to_string(header.mode) << "\nelapsed=" << elapsed << '\n';
  } else {
    std::cout << "decompressed " << artifact.size() << " -> " << output.size() << " bytes ("
              << to_string(header.mode) << ", " << std::fixed << std::setprecision(4) << elapsed
              << " s)\n";
  }
  return kOk;
}

struct AuditOptions {
  std::vector<std::string> tt;
  std::string artifact;
  std::string original;
};

int cmd_audit(const AuditOptions& o) {
  const auto table = [&] {
    if (o.tt.size() > 1) throw CLI::ValidationError("--tt", "audit checks one table");
    std::vector<std::string> one(o.tt.begin(), o.tt.end());
    if (one.empty()) {
      const char* dir = std::getenv("FBAR_TT_DIR");
      if (!dir || !*dir) throw MissingTable("no translation table: pass --tt or set FBAR_TT_DIR");
      one.push_back(find_default(dir, "tt").string());
    }
    if (!fs::exists(one[0])) throw MissingTable("translation table not found: " + one[0]);
    return load_table_file(one[0]);
  }();

  const auto verify = verify_tt(*table);
  const auto audit = pigeonhole_audit(*table);

  std::cout << "bijection over 65536 pairs: " << (audit.bijection_ok ? "OK" : "FAILED") << '\n';
  if (!audit.offending_rows.empty()) {
    std::cout << "offending rows:";
    for (auto r : audit.offending_rows) std::cout << ' ' << r + 1;
    std::cout << '\n';
  }
  std::cout << "table verification: ";
  if (verify.ok()) {
    std::cout << "OK\n";
  } else {
    std::cout << verify.violations.size() << " violation(s)\n";
    for (std::size_t k = 0; k < verify.violations.size() && k < 10; ++k) {
      std::cout << "  " << verify.violations[k].message << '\n';
    }
  }
  if (audit.collision_witness) {
    const auto& w = *audit.collision_witness;
    std::cout << "occupant-only collision: inputs " << printable(w.input_a) << " and "
              << printable(w.input_b) << " both give occupant stream " << printable(w.occupant_stream)
              << '\n';
  }
  const auto& bits = audit.channel_bits;
  std::cout << "address channel carries " << bits.address << " bits/pair\n"
            << "occupant stream carries " << bits.occupant << " bits/pair\n"
            << "grid region carries " << bits.grid_region << " bits/artifact\n";

  bool ok = audit.bijection_ok && verify.ok();

  if (!o.artifact.empty()) {
    if (o.original.empty()) throw CLI::ValidationError("--original", "required with --artifact");
    const auto artifact = read_file(o.artifact);
    const auto original = read_file(o.original);
    const RowStream header = parse_artifact(artifact);
    const Tables tables = header.mode == Mode::tt1 ? Tables(table) : Tables(TtSet4{{table, table, table, table}});
    const auto a = audit_artifact(original, artifact, tables);
    std::cout << "artifact: input " << a.input_size << " B, occupant stream " << a.paper_accounted
              << " B, honest payload " << a.honest_payload << " B ("
              << (a.honest_covers_input ? ">=" : "<") << " input)\n";
    if (a.collision_witness) {
      std::cout << "artifact: a different input of " << a.collision_witness->input_b.size()
                << " bytes yields the identical occupant stream\n";
    }
    ok = ok && a.honest_covers_input;
  }
  return ok ? kOk : kFailed;
}

struct BenchOptions {
  std::vector<std::string> files;
  std::vector<std::string> tt;
  std::string report = "table";
};

int cmd_bench(const BenchOptions& o) {
  const Tables t1 = resolve_tables(o.tt.empty() ? o.tt : std::vector<std::string>{o.tt.front()}, Mode::tt1);
  const auto shared = std::make_shared<const TranslationTable>(t1.at(0));
  const Tables t4(TtSet4{{shared, shared, shared, shared}});

  struct Totals {
    std::size_t size = 0, p1 = 0, p4 = 0, honest = 0;
    double c1 = 0, c4 = 0, d1 = 0, d4 = 0;
  } total;
  bool ok = true;
  const bool kv = o.report == "kv";

  auto timed = [](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto value = fn();
    return std::make_pair(std::move(value),
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };

  if (!kv) {
    std::cout << std::left << std::setw(4) << "No." << std::setw(16) << "File" << std::right
              << std::setw(10) << "Size KB" << std::setw(18) << "LDC s 1TT:4TT" << std::setw(18)
              << "LDD s 1TT:4TT" << std::setw(20) << "Paper KB 1TT:4TT" << std::setw(12)
              << "Honest KB" << std::setw(10) << "H bpB" << std::setw(12) << "MB/s" << '\n';
  }
  std::cout << std::fixed;
  for (std::size_t k = 0; k < o.files.size(); ++k) {
    const std::string name = fs::path(o.files[k]).filename().string();
    std::vector<std::uint8_t> data;
    try {
      data = read_file(o.files[k]);
    } catch (const IoError& e) {
      ok = false;
      if (kv) {
        std::cout << "file=" << name << " status=failed\n";
      } else {
        std::cout << std::left << std::setw(4) << k + 1 << std::setw(16) << name << "FAILED: " << e.what() << '\n';
      }
      continue;
    }
    auto [r1, c1] = timed([&] { return compress({data, Format::paper, &t1}); });
    auto [r4, c4] = timed([&] { return compress({data, Format::paper, &t4}); });
    auto [o1, d1] = timed([&] { return decompress({r1.artifact, &t1}); });
    auto [o4, d4] = timed([&] { return decompress({r4.artifact, &t4}); });
    const bool round_trip = o1 == data && o4 == data;
    ok = ok && round_trip;

    const std::size_t p1 = paper_size(data.size(), Mode::tt1);
    const std::size_t p4 = paper_size(data.size(), Mode::tt4);
    const double mbps = c1 + d1 > 0 ? 2.0 * static_cast<double>(data.size()) / (c1 + d1) / 1e6 : 0.0;
    total.size += data.size();
    total.p1 += p1;
    total.p4 += p4;
    total.honest += r1.report.honest_size;
    total.c1 += c1;
    total.c4 += c4;
    total.d1 += d1;
    total.d4 += d4;

    if (kv) {
      std::cout << std::setprecision(4) << "file=" << name << " size=" << data.size()
                << " ldc_1tt=" << c1 << " ldc_4tt=" << c4 << " ldd_1tt=" << d1 << " ldd_4tt=" << d4
                << " paper_1tt=" << p1 << " paper_4tt=" << p4 << " honest=" << r1.report.honest_size
                << " empirical_H=" << r1.report.empirical_H << " throughput_mbps=" << mbps
                << " round_trip=" << (round_trip ? "ok" : "FAILED") << '\n';
    } else {
      std::ostringstream ldc, ldd, paper;
      ldc << std::fixed << std::setprecision(3) << c1 << ':' << c4;
      ldd << std::fixed << std::setprecision(3) << d1 << ':' << d4;
      paper << std::fixed << std::setprecision(2) << kib(p1) << ':' << kib(p4);
      std::cout << std::left << std::setw(4) << k + 1 << std::setw(16) << name << std::right
                << std::setprecision(2) << std::setw(10) << kib(data.size()) << std::setw(18) << ldc.str()
                << std::setw(18) << ldd.str() << std::setw(20) << paper.str() << std::setw(12)
                << kib(r1.report.honest_size) << std::setw(10) << std::setprecision(3)
                << r1.report.empirical_H << std::setw(12) << std::setprecision(2) << mbps
                << (round_trip ? "" : "  ROUND TRIP FAILED") << '\n';
    }
  }

  if (kv) {
    std::cout << std::setprecision(4) << "file=Total size=" << total.size << " ldc_1tt=" << total.c1
              << " ldc_4tt=" << total.c4 << " ldd_1tt=" << total.d1 << " ldd_4tt=" << total.d4
              << " paper_1tt=" << total.p1 << " paper_4tt=" << total.p4 << " honest=" << total.honest << '\n';
  } else {
    std::ostringstream ldc, ldd, paper;
    ldc << std::fixed << std::setprecision(3) << total.c1 << ':' << total.c4;
    ldd << std::fixed << std::setprecision(3) << total.d1 << ':' << total.d4;
    paper << std::fixed << std::setprecision(2) << kib(total.p1) << ':' << kib(total.p4);
    std::cout << std::left << std::setw(4) << "" << std::setw(16) << "Total" << std::right
              << std::setprecision(2) << std::setw(10) << kib(total.size) << std::setw(18) << ldc.str()
              << std::setw(18) << ldd.str() << std::setw(20) << paper.str() << std::setw(12)
              << kib(total.honest) << '\n';
  }
  if (!ok) return kIo;
  return kOk;
}

struct EntropyOptions {
  std::vector<std::string> files;
  std::string report = "table";
};

int cmd_entropy(const EntropyOptions& o) {
  int status = kOk;
  std::cout << std::fixed << std::setprecision(4);
  for (const auto& f : o.files) {
    std::vector<std::uint8_t> data;
    try {
      data = read_file(f);
    } catch (const IoError& e) {
      std::cerr << "fbar: " << e.what() << '\n';
      status = kIo;
      continue;
    }
    const std::size_t m = distinct_symbols(data);
    const double h0 = m > 0 ? shannon_order0(m) : 0.0;
    const double h = empirical_entropy(data);
    if (o.report == "kv") {
      std::cout << "file=" << f << " size=" << data.size() << " symbols=" << m << " shannon_H0=" << h0
                << " empirical_H=" << h << '\n';
    } else {
      std::cout << f << ": " << data.size() << " bytes, " << m << " symbols, H0 " << h0
                << " bpc, empirical H " << h << " bits/byte\n";
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translation-table compressor: tables, codec, audit and benchmarks"};
  app.require_subcommand(1);

  const std::vector<std::string> modes{"1tt", "4tt"};
  const std::vector<std::string> formats{"paper", "honest"};
  const std::vector<std::string> reports{"table", "kv"};
  const std::vector<std::string> layouts{"interleaved", "grouped"};

  GenTtOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-tt", "Generate and verify translation table(s)");
  gen_cmd->add_option("--out", gen.out, "Output path (with --count 4, -1..-4 is inserted before the extension)")
      ->required();
  gen_cmd->add_option("--format", gen.format, "text (8 MiB) or binary")
      ->check(CLI::IsMember({"text", "binary"}));
  gen_cmd->add_option("--count", gen.count, "1, or 4 for a 4-TT set")->check(CLI::IsMember({1, 4}));
  gen_cmd->add_option("--layout", gen.layout)->check(CLI::IsMember(layouts));

  CodecOptions comp;
  auto* comp_cmd = app.add_subcommand("compress", "Compress a file");
  comp_cmd->add_option("input", comp.input)->required();
  comp_cmd->add_option("--out", comp.out)->required();
  comp_cmd->add_option("--mode", comp.mode)->check(CLI::IsMember(modes));
  comp_cmd->add_option("--format", comp.format)->check(CLI::IsMember(formats));
  comp_cmd->add_option("--layout", comp.layout, "Fail unless the table uses this layout")
      ->check(CLI::IsMember(layouts));
  comp_cmd->add_option("--report", comp.report)->check(CLI::IsMember(reports));
  comp_cmd->add_option("--tt", comp.tt, "Table file(s); defaults to $FBAR_TT_DIR");

  CodecOptions decomp;
  auto* decomp_cmd = app.add_subcommand("decompress", "Decompress an artifact");
  decomp_cmd->add_option("input", decomp.input)->required();
  decomp_cmd->add_option("--out", decomp.out)->required();
  decomp_cmd->add_option("--report", decomp.report)->check(CLI::IsMember(reports));
  decomp_cmd->add_option("--tt", decomp.tt, "Table file(s); defaults to $FBAR_TT_DIR");

  AuditOptions aud;
  auto* audit_cmd = app.add_subcommand("audit", "Audit a table and, optionally, one artifact");
  audit_cmd->add_option("--tt", aud.tt, "Table file; defaults to $FBAR_TT_DIR");
  audit_cmd->add_option("--artifact", aud.artifact);
  audit_cmd->add_option("--original", aud.original);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compress and decompress each file in both modes");
  bench_cmd->add_option("files", bench.files)->required();
  bench_cmd->add_option("--tt", bench.tt, "Table file; defaults to $FBAR_TT_DIR");
  bench_cmd->add_option("--report", bench.report)->check(CLI::IsMember(reports));

  EntropyOptions ent;
  auto* ent_cmd = app.add_subcommand("entropy", "Order-0 entropy of each file");
  ent_cmd->add_option("files", ent.files)->required();
  ent_cmd->add_option("--report", ent.report)->check(CLI::IsMember(reports));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen_tt(gen);
    if (*comp_cmd) return cmd_compress(comp);
    if (*decomp_cmd) return cmd_decompress(decomp);
    if (*audit_cmd) return cmd_audit(aud);
    if (*bench_cmd) return cmd_bench(bench);
    if (*ent_cmd) return cmd_entropy(ent);
  } catch (const MissingTable& e) {
    std::cerr << "fbar: " << e.what() << '\n';
    return kNoTable;
  } catch (const IoError& e) {
    std::cerr << "fbar: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "fbar: " << e.what() << " (offset " << e.offset() << ")\n";
    return kFormat;
  } catch (const ModeMismatch& e) {
    std::cerr << "fbar: " << e.what() << '\n';
    return kMismatch;
  } catch (const VerificationError& e) {
    std::cerr << "fbar: " << e.what();
    if (e.row()) std::cerr << " [row " << *e.row() + 1 << "]";
    std::cerr << '\n';
    return kFailed;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "fbar: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
