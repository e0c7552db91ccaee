#include "fbar/metrics.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "fbar/codec.hpp"
#include "fbar/transtable.hpp"

namespace fbar {

namespace {

// The reported 1-TT sizes count one block byte per 96 occupant entries
// (95 printable characters plus the control character).
constexpr std::size_t kReportedBlockEntries = 96;
constexpr std::size_t kMaxOffendingRows = 64;

std::size_t ceil_div(std::size_t a, std::size_t b) noexcept { return (a + b - 1) / b; }

std::vector<std::uint8_t> occupants_for(std::span<const std::uint8_t> input, Layout layout) {
  RowStream s;
  s.layout = layout;
  for (std::size_t k = 0; k + 1 < input.size(); k += 2) {
    s.rows.push_back(row_of_pair(input[k], input[k + 1], layout));
  }
  return build_grid(std::move(s)).occupant_stream;
}

}  // namespace

std::size_t paper_size(std::size_t n, Mode mode) noexcept {
  if (mode == Mode::tt4) return ceil_div(n, 8);
  const std::size_t chars = ceil_div(n, 2);
  return chars + ceil_div(chars, kReportedBlockEntries);
}

double shannon_order0(std::size_t m) {
  if (m == 0) throw std::domain_error("alphabet size must be at least 1");
  return std::log2(static_cast<double>(m));
}

std::size_t distinct_symbols(std::span<const std::uint8_t> data) noexcept {
  std::array<bool, 256> seen{};
  std::size_t m = 0;
  for (auto b : data) {
    if (!seen[b]) {
      seen[b] = true;
      ++m;
    }
  }
  return m;
}

double empirical_entropy(std::span<const std::uint8_t> data) noexcept {
  if (data.empty()) return 0.0;
  std::array<std::size_t, 256> freq{};
  for (auto b : data) ++freq[b];
  const double total = static_cast<double>(data.size());
  double h = 0.0;
  for (auto f : freq) {
    if (f == 0) continue;
    const double p = static_cast<double>(f) / total;
    h -= p * std::log2(p);
  }
  return h > 0.0 ? h : 0.0;
}

double fbar_H(ByteRatio ratio) {
  if (ratio.num <= 0 || ratio.den <= 0) throw std::domain_error("ratio must be positive");
  // Separate logs keep power-of-two ratios exact.
  return std::log2(static_cast<double>(ratio.num)) - std::log2(static_cast<double>(ratio.den));
}

double savings_from_H(double H) noexcept { return 1.0 - std::exp2(H) / 8.0; }

double savings_from_ratio(ByteRatio ratio) {
  if (ratio.num <= 0 || ratio.den <= 0) throw std::domain_error("ratio must be positive");
  return static_cast<double>(8 * ratio.den - ratio.num) / static_cast<double>(8 * ratio.den);
}

ManipulationCount manipulation_distance(std::uint64_t compressed_units, bool decompressed) noexcept {
  return decompressed ? ManipulationCount{0} : count_manipulations(compressed_units);
}

ChannelBits channel_tally(std::size_t n, Mode mode) noexcept {
  const std::size_t pairs = n / 2;
  std::size_t occupant_bytes = 0;
  if (mode == Mode::tt4) {
    occupant_bytes = ceil_div(pairs, kRowsPerChunk);
  } else if (pairs > 0) {
    occupant_bytes = pairs + ceil_div(pairs, kBlockPairs) - 1;
  }
  return {8 * occupant_bytes, 16 * pairs, 8 * (n % 2), 8 * kGridRegionSize};
}

AuditReport pigeonhole_audit(const TranslationTable& tt) {
  AuditReport report;

  // Canonical addressing, independent of any table.
  {
    std::vector<std::uint8_t> seen(kRowCount, 0);
    bool ok = true;
    for (unsigned x = 0; x < 256; ++x) {
      for (unsigned x2 = 0; x2 < 256; ++x2) {
        const auto row = row_of_pair(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(x2),
                                     tt.layout());
        const BytePair back = pair_of_row(row, tt.layout());
        if (seen[row.value()]++ || back[0] != x || back[1] != x2) ok = false;
      }
    }
    report.addressing_bijective = ok;
  }

  // The table itself: every row present, every original held exactly once.
  std::vector<std::uint32_t> holders(kRowCount, 0);
  for (std::uint32_t r = 0; r < kRowCount; ++r) {
    if (auto o = tt.lookup(RowIndex(static_cast<std::uint16_t>(r)))) {
      ++holders[((*o)[0] << 8) | (*o)[1]];
    }
  }
  bool table_ok = tt.size() == kRowCount;
  for (std::uint32_t r = 0; r < kRowCount; ++r) {
    const auto o = tt.lookup(RowIndex(static_cast<std::uint16_t>(r)));
    if (!o || holders[((*o)[0] << 8) | (*o)[1]] != 1) {
      table_ok = false;
      if (report.offending_rows.size() < kMaxOffendingRows) report.offending_rows.push_back(r);
    }
  }
  report.bijection_ok = table_ok && report.addressing_bijective;

  const std::vector<std::uint8_t> a{'a', 'a'};
  const std::vector<std::uint8_t> b{'b', 'b'};
  const auto occ_a = occupants_for(a, tt.layout());
  const auto occ_b = occupants_for(b, tt.layout());
  if (occ_a == occ_b) report.collision_witness = CollisionWitness{a, b, occ_a};

  report.channel_bits = channel_tally(2, Mode::tt1);
  return report;
}

ArtifactAudit audit_artifact(std::span<const std::uint8_t> original,
                             std::span<const std::uint8_t> artifact, const Tables& tables) {
  const RowStream stream = parse_artifact(artifact);
  const GridArtifact grid = build_grid(stream);

  ArtifactAudit audit;
  audit.input_size = original.size();
  audit.paper_accounted = grid.paper_accounted_size();
  audit.honest_payload = grid.honest_payload_size();
  audit.honest_covers_input = audit.honest_payload >= audit.input_size;

  if (stream.rows.empty()) {
    // No pairs, so the occupant stream is empty for any input of length < 2.
    std::vector<std::uint8_t> other{0x00};
    if (!original.empty()) other[0] = static_cast<std::uint8_t>(original[0] ^ 1);
    audit.collision_witness = CollisionWitness{{original.begin(), original.end()}, other, {}};
  } else {
    // Flipping the low bit of every row is a fixed-point-free bijection on
    // rows, so equal rows stay equal and block boundaries do not move.
    RowStream other = stream;
    for (auto& row : other.rows) row = RowIndex(static_cast<std::uint16_t>(row.value() ^ 1));
    const GridArtifact other_grid = build_grid(other);
    if (other_grid.occupant_stream == grid.occupant_stream) {
      audit.collision_witness = CollisionWitness{
          {original.begin(), original.end()}, decode_rows(other, tables), grid.occupant_stream};
    }
  }
  return audit;
}

std::string render_kv(const MetricsReport& r) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "input_size=" << r.input_size << '\n'
      << "paper_size_1tt=" << r.paper_size_1tt << '\n'
      << "paper_size_4tt=" << r.paper_size_4tt << '\n'
      << "paper_accounted=" << r.paper_accounted << '\n'
      << "honest_size=" << r.honest_size << '\n'
      << "artifact_size=" << r.artifact_size << '\n'
      << "space_savings_paper=" << r.space_savings_paper << '\n'
      << "fbar_H=" << r.fbar_H << '\n'
      << "shannon_H0=" << r.shannon_H0 << '\n'
      << "empirical_H=" << r.empirical_H << '\n'
      << "manipulation_total=" << r.manipulation_total.count << '\n'
      << "elapsed=" << r.elapsed << '\n'
      << "throughput=" << r.throughput << '\n';
  return out.str();
}

std::string render_table(const MetricsReport& r) {
  std::ostringstream out;
  auto line = [&](const char* label, const auto& value, const char* unit) {
    out << std::left << std::setw(28) << label << std::right << std::setw(14) << value << ' '
        << unit << '\n';
  };
  out << std::fixed << std::setprecision(4);
  line("input size", r.input_size, "B");
  line("paper size 1TT", r.paper_size_1tt, "B");
  line("paper size 4TT", r.paper_size_4tt, "B");
  line("occupant stream (paper)", r.paper_accounted, "B");
  line("address channel (honest)", r.honest_size, "B");
  line("artifact on disk", r.artifact_size, "B");
  line("space savings (paper)", r.space_savings_paper * 100.0, "%");
  line("FBAR H", r.fbar_H, "bpB");
  line("Shannon H0", r.shannon_H0, "bpc");
  line("empirical H", r.empirical_H, "bits/byte");
  line("manipulations", r.manipulation_total.count, "mho");
  line("elapsed", r.elapsed, "s");
  line("throughput", r.throughput, "B/s");
  return out.str();
}

}  // namespace fbar
