#pragma once

// Compressed artifact formats.
//
// Paper format (grid file):
//   "FBGR" | version u8 | mode u8 (1 or 4) | layout u8 | row count u64
//   | grid region, 65,536 bytes
//   | occupant stream length u64 | occupant stream
//   | address channel length u64 (bytes) | rows, u16 big-endian each
//   | tail: nothing, or 0x00 followed by the final odd byte
//
// Honest format (self-contained, decodable with only a table):
//   "FBHN" | version u8 | mode u8 | layout u8 | row count u64 | rows | tail
//
// The occupant stream assigns the n-th pair of a block the n-th character of
// the occupant alphabet. In 1-TT mode a block holds at most 95 pairs and is
// closed by a control byte 1..31 (cycling); a block also closes early when a
// row would land on a grid slot already taken in the same block. The final
// block is left open. In 4-TT mode one character stands for a chunk of up to
// four rows; blocks are implicit (every 95 chunks) and carry no separators.
//
// The grid region holds the final block's occupant characters at their row
// slots (the first row of each chunk in 4-TT mode); all other slots are zero.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "fbar/addressing.hpp"

namespace fbar {

enum class Mode : std::uint8_t { tt1 = 1, tt4 = 4 };
enum class Format : std::uint8_t { paper, honest };

std::string to_string(Mode mode);
std::string to_string(Format format);
/// "1tt"/"4tt" and "paper"/"honest"; throw std::invalid_argument.
Mode parse_mode(const std::string& name);
Format parse_format(const std::string& name);

inline constexpr std::uint8_t kArtifactVersion = 1;
inline constexpr std::size_t kGridRegionSize = 65536;
inline constexpr std::size_t kBlockPairs = 95;
inline constexpr std::size_t kRowsPerChunk = 4;
inline constexpr std::size_t kPaperHeaderSize = 15;
inline constexpr std::size_t kHonestHeaderSize = 15;
inline constexpr std::uint8_t kTailMarker = 0x00;

/// Rows plus the optional lone trailing byte: everything a decoder needs.
struct RowStream {
  Mode mode = Mode::tt1;
  Layout layout = Layout::interleaved;
  std::vector<RowIndex> rows;
  std::optional<std::uint8_t> tail;

  friend bool operator==(const RowStream&, const RowStream&) = default;
};

struct GridArtifact {
  RowStream stream;
  std::vector<std::uint8_t> grid_region;  // kGridRegionSize bytes
  std::vector<std::uint8_t> occupant_stream;
  std::size_t blocks = 0;

  /// Occupant characters and separators only.
  std::size_t paper_accounted_size() const noexcept { return occupant_stream.size(); }
  /// Address channel bytes plus the tail byte.
  std::size_t honest_payload_size() const noexcept;
};

/// Lays out occupant characters, separators and the grid region.
GridArtifact build_grid(RowStream stream);

/// Serializes `artifact`; returns bytes written, throws IoError.
std::size_t write_artifact(const GridArtifact& artifact, std::ostream& sink);

/// build_grid followed by write_artifact.
GridArtifact write_grid(RowStream stream, std::ostream& sink);

/// Returns bytes written, throws IoError.
std::size_t write_honest(const RowStream& stream, std::ostream& sink);

/// Inverse of write_grid. Validates the occupant ordinals, separators, block
/// count and grid region against the address channel. Throws FormatError.
GridArtifact parse_grid(std::span<const std::uint8_t> bytes);

/// Inverse of write_honest. Throws FormatError.
RowStream parse_honest(std::span<const std::uint8_t> bytes);

/// Format named by the leading magic; throws FormatError if neither.
Format sniff_format(std::span<const std::uint8_t> bytes);

/// Either format.
RowStream parse_artifact(std::span<const std::uint8_t> bytes);

}  // namespace fbar
