#include "fbar/gridfile.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "byteio.hpp"
#include "fbar/errors.hpp"
#include "fbar/transtable.hpp"

namespace fbar {

namespace {

constexpr char kGridMagic[4] = {'F', 'B', 'G', 'R'};
constexpr char kHonestMagic[4] = {'F', 'B', 'H', 'N'};
constexpr std::uint8_t kSeparatorCycle = 31;
// Assignment starts at 'a' and wraps through the rest of the alphabet.
constexpr std::size_t kFirstOccupantOffset = 'a' - 32;

std::uint8_t occupant_char(std::size_t ordinal) noexcept {
  return occupant_alphabet()[(kFirstOccupantOffset + ordinal) % occupant_alphabet().size()];
}

std::uint8_t separator_code(std::size_t separator_index) noexcept {
  return static_cast<std::uint8_t>(separator_index % kSeparatorCycle + 1);
}

std::size_t chunk_count(std::size_t rows) noexcept {
  return (rows + kRowsPerChunk - 1) / kRowsPerChunk;
}

void put_header(std::vector<std::uint8_t>& out, const char (&magic)[4], const RowStream& s) {
  out.insert(out.end(), std::begin(magic), std::end(magic));
  out.push_back(kArtifactVersion);
  out.push_back(static_cast<std::uint8_t>(s.mode));
  out.push_back(static_cast<std::uint8_t>(s.layout));
  detail::put_u64(out, s.rows.size());
}

void put_rows(std::vector<std::uint8_t>& out, const RowStream& s, bool length_prefix) {
  if (length_prefix) detail::put_u64(out, s.rows.size() * 2);
  for (auto row : s.rows) detail::put_u16(out, row.value());
}

void put_tail(std::vector<std::uint8_t>& out, const RowStream& s) {
  if (s.tail) {
    out.push_back(kTailMarker);
    out.push_back(*s.tail);
  }
}

// Reads magic, version, mode, layout and row count.
RowStream read_header(detail::Reader& in, const char (&magic)[4], const char* what,
                      std::uint64_t& row_count) {
  const auto m = in.take(4, "magic");
  if (!std::equal(m.begin(), m.end(), std::begin(magic))) {
    throw FormatError(std::string("bad magic: not a ") + what, 0);
  }
  const auto version = in.u8("header");
  if (version != kArtifactVersion) {
    throw FormatError("unsupported artifact version " + std::to_string(version), 4);
  }
  RowStream s;
  const auto mode = in.u8("header");
  if (mode != 1 && mode != 4) throw FormatError("bad mode byte " + std::to_string(mode), 5);
  s.mode = static_cast<Mode>(mode);
  const auto layout = in.u8("header");
  if (layout > 1) throw FormatError("bad layout byte " + std::to_string(layout), 6);
  s.layout = static_cast<Layout>(layout);
  row_count = in.u64("header");
  return s;
}

void read_rows(detail::Reader& in, RowStream& s, std::uint64_t row_count) {
  if (row_count > in.remaining() / 2) {
    throw FormatError("address channel length mismatch: header declares " +
                          std::to_string(row_count) + " rows but only " +
                          std::to_string(in.remaining()) + " bytes remain",
                      in.offset());
  }
  s.rows.reserve(row_count);
  for (std::uint64_t k = 0; k < row_count; ++k) s.rows.emplace_back(in.u16("address channel"));
}

void read_tail(detail::Reader& in, RowStream& s) {
  if (in.remaining() == 0) return;
  const std::size_t at = in.offset();
  if (in.remaining() != 2 || in.u8("tail") != kTailMarker) {
    throw FormatError("malformed tail section", at);
  }
  s.tail = in.u8("tail");
}

// Walks the occupant stream and checks ordinals and separators; returns the
// number of occupant characters.
std::size_t check_occupants(std::span<const std::uint8_t> occ, std::size_t base, Mode mode) {
  std::size_t ordinal = 0;
  std::size_t separators = 0;
  std::size_t chars = 0;
  for (std::size_t k = 0; k < occ.size(); ++k) {
    const std::uint8_t c = occ[k];
    const std::size_t block = separators + (mode == Mode::tt4 ? chars / kBlockPairs : 0);
    if (c < 32) {
      if (mode == Mode::tt4) throw FormatError("separator in a 4-TT occupant stream", base + k, block);
      if (ordinal == 0) throw FormatError("empty block", base + k, block);
      if (c != separator_code(separators)) {
        throw FormatError("block separator out of sequence: expected " +
                              std::to_string(separator_code(separators)) + ", found " +
                              std::to_string(c),
                          base + k, block);
      }
      ++separators;
      ordinal = 0;
      continue;
    }
    if (mode == Mode::tt1 && ordinal == kBlockPairs) {
      throw FormatError("block holds more than 95 occupant chars", base + k, block);
    }
    const std::uint8_t expected = occupant_char(mode == Mode::tt4 ? chars : ordinal);
    if (c != expected) {
      throw FormatError(std::string("occupant ordinal gap: expected '") +
                            static_cast<char>(expected) + "', found byte " + std::to_string(c),
                        base + k, block);
    }
    ++ordinal;
    ++chars;
  }
  return chars;
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::tt4 ? "4tt" : "1tt"; }
std::string to_string(Format format) { return format == Format::honest ? "honest" : "paper"; }

Mode parse_mode(const std::string& name) {
  if (name == "1tt") return Mode::tt1;
  if (name == "4tt") return Mode::tt4;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

Format parse_format(const std::string& name) {
  if (name == "paper") return Format::paper;
  if (name == "honest") return Format::honest;
  throw std::invalid_argument("unknown format '" + name + "'");
}

std::size_t GridArtifact::honest_payload_size() const noexcept {
  return stream.rows.size() * 2 + (stream.tail ? 1 : 0);
}

GridArtifact build_grid(RowStream stream) {
  GridArtifact g;
  g.grid_region.assign(kGridRegionSize, 0);
  const auto& rows = stream.rows;

  if (stream.mode == Mode::tt1) {
    std::vector<std::uint16_t> block_rows;
    std::size_t separators = 0;
    g.occupant_stream.reserve(rows.size() + rows.size() / kBlockPairs + 1);
    for (auto row : rows) {
      const bool full = block_rows.size() == kBlockPairs;
      if (full || g.grid_region[row.value()] != 0) {
        for (auto r : block_rows) g.grid_region[r] = 0;
        block_rows.clear();
        g.occupant_stream.push_back(separator_code(separators++));
      }
      const std::uint8_t c = occupant_char(block_rows.size());
      g.grid_region[row.value()] = c;
      g.occupant_stream.push_back(c);
      block_rows.push_back(row.value());
    }
    g.blocks = rows.empty() ? 0 : separators + 1;
  } else {
    const std::size_t chunks = chunk_count(rows.size());
    g.occupant_stream.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) g.occupant_stream.push_back(occupant_char(c));
    g.blocks = (chunks + kBlockPairs - 1) / kBlockPairs;
    if (chunks > 0) {
      for (std::size_t c = (g.blocks - 1) * kBlockPairs; c < chunks; ++c) {
        auto& slot = g.grid_region[rows[c * kRowsPerChunk].value()];
        if (slot == 0) slot = occupant_char(c);
      }
    }
  }
  g.stream = std::move(stream);
  return g;
}

std::size_t write_artifact(const GridArtifact& artifact, std::ostream& sink) {
  const auto& s = artifact.stream;
  std::vector<std::uint8_t> head;
  put_header(head, kGridMagic, s);

  std::vector<std::uint8_t> body;
  detail::put_u64(body, artifact.occupant_stream.size());
  body.insert(body.end(), artifact.occupant_stream.begin(), artifact.occupant_stream.end());
  put_rows(body, s, true);
  put_tail(body, s);

  std::size_t written = 0;
  detail::write_all(sink, head, written);
  detail::write_all(sink, artifact.grid_region, written);
  detail::write_all(sink, body, written);
  return written;
}

GridArtifact write_grid(RowStream stream, std::ostream& sink) {
  GridArtifact g = build_grid(std::move(stream));
  write_artifact(g, sink);
  return g;
}

std::size_t write_honest(const RowStream& stream, std::ostream& sink) {
  std::vector<std::uint8_t> out;
  out.reserve(kHonestHeaderSize + stream.rows.size() * 2 + 2);
  put_header(out, kHonestMagic, stream);
  put_rows(out, stream, false);
  put_tail(out, stream);
  std::size_t written = 0;
  detail::write_all(sink, out, written);
  return written;
}

GridArtifact parse_grid(std::span<const std::uint8_t> bytes) {
  detail::Reader in(bytes);
  std::uint64_t row_count = 0;
  RowStream s = read_header(in, kGridMagic, "grid file", row_count);

  const std::size_t grid_at = in.offset();
  const auto grid = in.take(kGridRegionSize, "grid region");

  const auto occ_len = in.u64("occupant stream length");
  if (occ_len > in.remaining()) {
    throw FormatError("occupant stream length exceeds file", in.offset());
  }
  const std::size_t occ_at = in.offset();
  const auto occ = in.take(static_cast<std::size_t>(occ_len), "occupant stream");
  const std::size_t chars = check_occupants(occ, occ_at, s.mode);

  const std::size_t addr_at = in.offset();
  const auto addr_len = in.u64("address channel length");
  if (addr_len != row_count * 2) {
    throw FormatError("address channel length mismatch: " + std::to_string(addr_len) +
                          " bytes for " + std::to_string(row_count) + " rows",
                      addr_at);
  }
  read_rows(in, s, row_count);
  read_tail(in, s);

  const std::size_t expected_chars = s.mode == Mode::tt1 ? s.rows.size() : chunk_count(s.rows.size());
  if (chars != expected_chars) {
    throw FormatError("occupant stream holds " + std::to_string(chars) + " chars but the address "
                      "channel needs " + std::to_string(expected_chars),
                      occ_at + occ.size());
  }

  GridArtifact rebuilt = build_grid(std::move(s));
  const auto occ_diff = std::mismatch(occ.begin(), occ.end(), rebuilt.occupant_stream.begin(),
                                      rebuilt.occupant_stream.end());
  if (occ_diff.first != occ.end() || occ_diff.second != rebuilt.occupant_stream.end()) {
    throw FormatError("block boundaries disagree with the address channel",
                      occ_at + static_cast<std::size_t>(occ_diff.first - occ.begin()));
  }
  const auto grid_diff = std::mismatch(grid.begin(), grid.end(), rebuilt.grid_region.begin());
  if (grid_diff.first != grid.end()) {
    throw FormatError("grid region disagrees with the final block",
                      grid_at + static_cast<std::size_t>(grid_diff.first - grid.begin()),
                      rebuilt.blocks == 0 ? 0 : rebuilt.blocks - 1);
  }
  return rebuilt;
}

RowStream parse_honest(std::span<const std::uint8_t> bytes) {
  detail::Reader in(bytes);
  std::uint64_t row_count = 0;
  RowStream s = read_header(in, kHonestMagic, "honest artifact", row_count);
  read_rows(in, s, row_count);
  read_tail(in, s);
  return s;
}

Format sniff_format(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4) {
    if (std::equal(bytes.begin(), bytes.begin() + 4, std::begin(kGridMagic))) return Format::paper;
    if (std::equal(bytes.begin(), bytes.begin() + 4, std::begin(kHonestMagic))) return Format::honest;
  }
  throw FormatError("bad magic: not an artifact", 0);
}

RowStream parse_artifact(std::span<const std::uint8_t> bytes) {
  if (sniff_format(bytes) == Format::paper) return parse_grid(bytes).stream;
  return parse_honest(bytes);
}

}  // namespace fbar
