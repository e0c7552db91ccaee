#pragma once

// Compression (LDC) and decompression (LDD) pipelines.
//
// 1-TT: every two input bytes become one row of the table and one occupant
// character. 4-TT: every eight input bytes become four rows, one per table,
// and one occupant character. An odd final byte travels as the tail.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fbar/gridfile.hpp"
#include "fbar/metrics.hpp"
#include "fbar/transtable.hpp"

namespace fbar {

/// One table (1-TT) or four (4-TT), verified on construction.
class Tables {
 public:
  /// Throws VerificationError if the table does not verify.
  explicit Tables(std::shared_ptr<const TranslationTable> table);
  /// Throws VerificationError if any table fails, ModeMismatch if their
  /// layouts differ.
  explicit Tables(const TtSet4& set);

  /// Freshly generated canonical tables.
  static Tables generate(Mode mode, Layout layout = Layout::interleaved);

  Mode mode() const noexcept { return tables_.size() == 4 ? Mode::tt4 : Mode::tt1; }
  Layout layout() const noexcept { return tables_.front()->layout(); }
  std::size_t count() const noexcept { return tables_.size(); }
  const TranslationTable& at(std::size_t k) const { return *tables_.at(k); }

 private:
  std::vector<std::shared_ptr<const TranslationTable>> tables_;
};

struct CompressJob {
  std::span<const std::uint8_t> input;
  Format format = Format::paper;
  const Tables* tables = nullptr;  // its mode selects 1-TT or 4-TT
};

struct CompressResult {
  std::vector<std::uint8_t> artifact;
  MetricsReport report;
};

struct DecompressJob {
  std::span<const std::uint8_t> artifact;
  const Tables* tables = nullptr;
};

struct Chunk4 {
  std::size_t ordinal = 0;  // 1-based within its 95-chunk block
  std::array<RowIndex, kRowsPerChunk> rows{};
  std::size_t row_count = 0;
};

/// Rows for every complete pair of `input`, in order, plus the odd byte.
RowStream encode_rows(std::span<const std::uint8_t> input, const Tables& tables);

/// Bytes for a row stream; throws FormatError on an unmapped row.
std::vector<std::uint8_t> decode_rows(const RowStream& stream, const Tables& tables);

/// Groups `input` into chunks of eight bytes (the last may be shorter and
/// hold fewer rows). Table t maps pair t of each chunk. An odd final byte is
/// returned through `tail`. Throws ModeMismatch unless `tables` holds four.
std::vector<Chunk4> chunk_4tt(std::span<const std::uint8_t> input, const Tables& tables,
                              std::optional<std::uint8_t>* tail = nullptr);

/// Artifact bytes are returned in memory. Throws std::invalid_argument
/// without tables.
CompressResult compress(const CompressJob& job);

/// Throws FormatError for malformed artifacts and ModeMismatch when the
/// artifact header does not match the supplied tables.
std::vector<std::uint8_t> decompress(const DecompressJob& job);

}  // namespace fbar
