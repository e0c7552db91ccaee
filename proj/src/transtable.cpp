#include "fbar/transtable.hpp"

#include <algorithm>
#include <cstring>
#include <ostream>

#include "byteio.hpp"
#include "fbar/errors.hpp"

namespace fbar {

namespace {

constexpr char kBinaryMagic[4] = {'F', 'B', 'T', 'T'};

constexpr std::size_t kColRow = 0;
constexpr std::size_t kColAddress = 6;
constexpr std::size_t kColAlphabet = 18;
constexpr std::size_t kColOriginal = 114;
constexpr std::size_t kOriginalWidth = 6;

constexpr char kHex[] = "0123456789ABCDEF";

void put_escaped(std::string& out, std::uint8_t b) {
  if (b >= 32 && b <= 126 && b != '\\') {
    out.push_back(static_cast<char>(b));
  } else {
    out.push_back('\\');
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
}

int hex_value(std::uint8_t c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::string format_text_row(const TtRecord& rec) {
  std::string row(kTextRowWidth, ' ');
  const std::string number = std::to_string(rec.row.one_based());
  row.replace(kColRow, number.size(), number);
  const std::string address = rec.address().str();
  row.replace(kColAddress, address.size(), address);
  const auto& alphabet = occupant_alphabet();
  std::memcpy(row.data() + kColAlphabet, alphabet.data(), alphabet.size());
  std::string original;
  put_escaped(original, rec.original[0]);
  put_escaped(original, rec.original[1]);
  row.replace(kColOriginal, original.size(), original);
  row.back() = '\n';
  return row;
}

// Parses a left-aligned field that is followed only by spaces.
std::string_view field(std::span<const std::uint8_t> row, std::size_t col, std::size_t width) {
  std::string_view s(reinterpret_cast<const char*>(row.data()) + col, width);
  const auto end = s.find(' ');
  return end == std::string_view::npos ? s : s.substr(0, end);
}

TtRecord parse_text_row(std::span<const std::uint8_t> row, std::size_t base) {
  if (row[kTextRowWidth - 1] != '\n') {
    throw FormatError("text row not newline-terminated", base + kTextRowWidth - 1);
  }

  const auto number = field(row, kColRow, 5);
  std::uint32_t paper_row = 0;
  if (number.empty()) throw FormatError("missing row number", base);
  for (char c : number) {
    if (c < '0' || c > '9') throw FormatError("bad row number", base);
    paper_row = paper_row * 10 + static_cast<std::uint32_t>(c - '0');
  }
  if (paper_row < 1 || paper_row > kRowCount) throw FormatError("row number out of range", base);
  const RowIndex index(static_cast<std::uint16_t>(paper_row - 1));

  if (field(row, kColAddress, 11) != address_of_row(index).str()) {
    throw FormatError("address does not match row " + std::to_string(paper_row),
                      base + kColAddress);
  }

  const auto& alphabet = occupant_alphabet();
  if (!std::equal(alphabet.begin(), alphabet.end(), row.begin() + kColAlphabet)) {
    throw FormatError("occupant alphabet column corrupted", base + kColAlphabet);
  }

  TtRecord rec{index, {}};
  std::size_t col = kColOriginal;
  for (auto& out : rec.original) {
    if (col >= kColOriginal + kOriginalWidth) throw FormatError("original field overflow", base + col);
    if (row[col] == '\\') {
      const int hi = col + 2 < kTextRowWidth ? hex_value(row[col + 1]) : -1;
      const int lo = col + 2 < kTextRowWidth ? hex_value(row[col + 2]) : -1;
      if (hi < 0 || lo < 0) throw FormatError("bad escape in original", base + col);
      out = static_cast<std::uint8_t>(hi * 16 + lo);
      col += 3;
    } else {
      out = row[col];
      col += 1;
    }
  }
  for (; col < kTextRowWidth - 1; ++col) {
    if (row[col] != ' ') throw FormatError("unexpected data after original", base + col);
  }
  return rec;
}

}  // namespace

const std::array<std::uint8_t, 95>& occupant_alphabet() {
  static const auto alphabet = [] {
    std::array<std::uint8_t, 95> a{};
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = static_cast<std::uint8_t>(32 + k);
    return a;
  }();
  return alphabet;
}

TranslationTable::TranslationTable(std::vector<TtRecord> records, Layout layout)
    : records_(std::move(records)),
      layout_(layout),
      by_row_(kRowCount, -1),
      by_pair_(kRowCount, -1) {
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const auto& rec = records_[k];
    by_row_[rec.row.value()] = static_cast<std::int32_t>(k);
    by_pair_[(rec.original[0] << 8) | rec.original[1]] = static_cast<std::int32_t>(k);
  }
}

TranslationTable TranslationTable::generate(Layout layout) {
  std::vector<TtRecord> records;
  records.reserve(kRowCount);
  for (std::uint32_t r = 0; r < kRowCount; ++r) {
    const RowIndex row(static_cast<std::uint16_t>(r));
    records.push_back({row, pair_of_row(row, layout)});
  }
  return TranslationTable(std::move(records), layout);
}

std::optional<BytePair> TranslationTable::lookup(RowIndex row) const noexcept {
  const auto k = by_row_[row.value()];
  if (k < 0) return std::nullopt;
  return records_[static_cast<std::size_t>(k)].original;
}

std::optional<RowIndex> TranslationTable::find(BytePair pair) const noexcept {
  const auto k = by_pair_[(pair[0] << 8) | pair[1]];
  if (k < 0) return std::nullopt;
  return records_[static_cast<std::size_t>(k)].row;
}

TtReport verify_tt(const TranslationTable& tt) {
  TtReport report;
  auto add = [&](TtViolation::Kind kind, std::optional<std::uint32_t> row, std::string msg) {
    report.violations.push_back({kind, row, std::move(msg)});
  };

  if (tt.size() != kRowCount) {
    add(TtViolation::Kind::count, std::nullopt,
        "expected " + std::to_string(kRowCount) + " records, found " + std::to_string(tt.size()));
  }

  std::vector<std::uint8_t> row_seen(kRowCount, 0);
  std::vector<std::int64_t> original_at(kRowCount, -1);
  for (const auto& rec : tt.records()) {
    const std::uint32_t r = rec.row.value();
    if (row_seen[r]++) {
      add(TtViolation::Kind::duplicate_row, r,
          "row " + std::to_string(r + 1) + " appears more than once");
    }
    const BytePair expected = pair_of_row(rec.row, tt.layout());
    if (rec.original != expected) {
      add(TtViolation::Kind::mismatch, r,
          "row " + std::to_string(r + 1) + " (" + rec.address().str() +
              ") holds the wrong original pair");
    }
    const std::size_t key = (std::size_t{rec.original[0]} << 8) | rec.original[1];
    if (original_at[key] >= 0) {
      add(TtViolation::Kind::duplicate_original, r,
          "row " + std::to_string(r + 1) + " repeats the original of row " +
              std::to_string(original_at[key] + 1));
    } else {
      original_at[key] = r;
    }
  }
  return report;
}

void require_verified(const TranslationTable& tt) {
  const auto report = verify_tt(tt);
  if (report.ok()) return;
  const auto& first = report.violations.front();
  throw VerificationError("translation table failed verification: " + first.message +
                              " (" + std::to_string(report.violations.size()) + " violations)",
                          first.row);
}

Layout infer_layout(std::span<const TtRecord> records) {
  std::size_t interleaved = 0;
  std::size_t grouped = 0;
  for (const auto& rec : records) {
    interleaved += rec.original == pair_of_row(rec.row, Layout::interleaved);
    grouped += rec.original == pair_of_row(rec.row, Layout::grouped);
  }
  return grouped > interleaved ? Layout::grouped : Layout::interleaved;
}

std::size_t serialize_text(const TranslationTable& tt, std::ostream& sink) {
  std::size_t written = 0;
  for (const auto& rec : tt.records()) {
    const std::string row = format_text_row(rec);
    detail::write_all(
        sink, {reinterpret_cast<const std::uint8_t*>(row.data()), row.size()}, written);
  }
  sink.flush();
  if (!sink) throw IoError("flush failed", written);
  return written;
}

std::size_t serialize_binary(const TranslationTable& tt, std::ostream& sink) {
  std::vector<std::uint8_t> out;
  out.reserve(kBinaryHeaderSize + tt.size() * kBinaryRecordSize);
  out.insert(out.end(), std::begin(kBinaryMagic), std::end(kBinaryMagic));
  out.push_back(kBinaryTableVersion);
  for (const auto& rec : tt.records()) {
    detail::put_u16(out, rec.row.value());
    out.push_back(rec.original[0]);
    out.push_back(rec.original[1]);
  }
  std::size_t written = 0;
  detail::write_all(sink, out, written);
  sink.flush();
  if (!sink) throw IoError("flush failed", written);
  return written;
}

TranslationTable load_text(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % kTextRowWidth != 0) {
    throw FormatError("text table truncated inside a row", bytes.size() - bytes.size() % kTextRowWidth);
  }
  std::vector<TtRecord> records;
  records.reserve(bytes.size() / kTextRowWidth);
  for (std::size_t base = 0; base < bytes.size(); base += kTextRowWidth) {
    records.push_back(parse_text_row(bytes.subspan(base, kTextRowWidth), base));
  }
  const Layout layout = infer_layout(records);
  return TranslationTable(std::move(records), layout);
}

TranslationTable load_binary(std::span<const std::uint8_t> bytes) {
  detail::Reader in(bytes);
  const auto magic = in.take(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), std::begin(kBinaryMagic))) {
    throw FormatError("bad magic: not a binary translation table", 0);
  }
  const auto version = in.u8("version");
  if (version != kBinaryTableVersion) {
    throw FormatError("unsupported table version " + std::to_string(version), 4);
  }
  const std::size_t expected = kBinaryHeaderSize + kRowCount * kBinaryRecordSize;
  if (bytes.size() > expected) {
    throw FormatError("row count mismatch: " + std::to_string(bytes.size() - expected) +
                          " trailing bytes after 65536 records",
                      expected);
  }
  std::vector<TtRecord> records;
  records.reserve(kRowCount);
  for (std::uint32_t k = 0; k < kRowCount; ++k) {
    const std::size_t at = in.offset();
    if (in.remaining() < kBinaryRecordSize) {
      throw FormatError("truncated at record " + std::to_string(k) + " of 65536", at);
    }
    const RowIndex row(in.u16("record"));
    const auto a = in.u8("record");
    const auto b = in.u8("record");
    records.push_back({row, {a, b}});
  }
  const Layout layout = infer_layout(records);
  return TranslationTable(std::move(records), layout);
}

TranslationTable load_table(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, std::begin(kBinaryMagic))) {
    return load_binary(bytes);
  }
  return load_text(bytes);
}

TtSet4 TtSet4::generate(Layout layout) {
  auto table = std::make_shared<const TranslationTable>(TranslationTable::generate(layout));
  TtSet4 set;
  set.tables = {table, std::make_shared<const TranslationTable>(*table),
                std::make_shared<const TranslationTable>(*table),
                std::make_shared<const TranslationTable>(*table)};
  return set;
}

}  // namespace fbar
