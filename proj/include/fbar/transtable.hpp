#pragma once

// The translation table (TT): 65,536 rows, each naming the original byte pair
// that its flag address stands for.
//
// Text form: 65,536 fixed rows of exactly 128 bytes (8 MiB total):
//
//   cols   0..4    row number (1-based), left aligned
//   col    5       space
//   cols   6..16   address "IxJxKxL", left aligned
//   col    17      space
//   cols  18..112  occupant alphabet (codes 32..126)
//   col   113      space
//   cols 114..119  original pair; non-printables and '\' as "\HH"
//   cols 120..126  spaces
//   col   127      '\n'
//
// Binary form: "FBTT", version byte, then 65,536 records of
// (row: u16 big-endian, original: 2 bytes). Addresses are recomputed.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fbar/addressing.hpp"

namespace fbar {

inline constexpr std::size_t kTextRowWidth = 128;
inline constexpr std::size_t kTextTableSize = kRowCount * kTextRowWidth;
inline constexpr std::uint8_t kBinaryTableVersion = 1;
inline constexpr std::size_t kBinaryHeaderSize = 5;
inline constexpr std::size_t kBinaryRecordSize = 4;

/// The 95 printable characters 32..126 in code order.
const std::array<std::uint8_t, 95>& occupant_alphabet();

struct TtRecord {
  RowIndex row;
  BytePair original{};

  FlagAddress address() const noexcept { return address_of_row(row); }
  friend bool operator==(const TtRecord&, const TtRecord&) = default;
};

/// Immutable once built. Holds whatever records it was given, valid or not;
/// run verify_tt before trusting lookups.
class TranslationTable {
 public:
  TranslationTable(std::vector<TtRecord> records, Layout layout);

  static TranslationTable generate(Layout layout = Layout::interleaved);

  std::span<const TtRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  Layout layout() const noexcept { return layout_; }

  /// Original pair stored at `row`, if any record claims it.
  std::optional<BytePair> lookup(RowIndex row) const noexcept;
  /// Row holding `pair`, if any.
  std::optional<RowIndex> find(BytePair pair) const noexcept;

  friend bool operator==(const TranslationTable& a, const TranslationTable& b) {
    return a.layout_ == b.layout_ && a.records_ == b.records_;
  }

 private:
  std::vector<TtRecord> records_;
  Layout layout_;
  std::vector<std::int32_t> by_row_;   // row -> record position, -1 if absent
  std::vector<std::int32_t> by_pair_;  // (x << 8 | x') -> record position
};

struct TtViolation {
  enum class Kind { count, duplicate_row, mismatch, duplicate_original };

  Kind kind;
  std::optional<std::uint32_t> row;  // zero-based
  std::string message;
};

struct TtReport {
  std::vector<TtViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks record count, one record per row, original == pair_of_row(row)
/// under the table's layout, and distinct originals.
TtReport verify_tt(const TranslationTable& tt);

/// Throws VerificationError naming the first offending row.
void require_verified(const TranslationTable& tt);

/// Layout whose canonical mapping agrees with more records (ties: interleaved).
Layout infer_layout(std::span<const TtRecord> records);

/// Both throw IoError on sink failure and return bytes written.
std::size_t serialize_text(const TranslationTable& tt, std::ostream& sink);
std::size_t serialize_binary(const TranslationTable& tt, std::ostream& sink);

/// Both throw FormatError with the byte offset of the first problem.
/// Layout is inferred from the records.
TranslationTable load_text(std::span<const std::uint8_t> bytes);
TranslationTable load_binary(std::span<const std::uint8_t> bytes);

/// Picks the reader by the leading magic.
TranslationTable load_table(std::span<const std::uint8_t> bytes);

/// Four tables for 4-TT mode. All four carry the same canonical mapping.
struct TtSet4 {
  std::array<std::shared_ptr<const TranslationTable>, 4> tables;

  static TtSet4 generate(Layout layout = Layout::interleaved);
};

}  // namespace fbar
