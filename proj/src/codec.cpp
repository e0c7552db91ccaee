#include "fbar/codec.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "fbar/errors.hpp"

namespace fbar {

namespace {

std::size_t table_for_pair(const Tables& tables, std::size_t pair_index) noexcept {
  return tables.mode() == Mode::tt4 ? pair_index % kRowsPerChunk : 0;
}

std::vector<std::uint8_t> to_bytes(const std::ostringstream& out) {
  const std::string s = out.str();
  return {s.begin(), s.end()};
}

}  // namespace

Tables::Tables(std::shared_ptr<const TranslationTable> table) {
  if (!table) throw std::invalid_argument("null translation table");
  require_verified(*table);
  tables_.push_back(std::move(table));
}

Tables::Tables(const TtSet4& set) {
  for (const auto& table : set.tables) {
    if (!table) throw std::invalid_argument("null translation table in 4-TT set");
    require_verified(*table);
    if (table->layout() != set.tables.front()->layout()) {
      throw ModeMismatch("4-TT tables disagree on layout");
    }
    tables_.push_back(table);
  }
}

Tables Tables::generate(Mode mode, Layout layout) {
  if (mode == Mode::tt4) return Tables(TtSet4::generate(layout));
  return Tables(std::make_shared<const TranslationTable>(TranslationTable::generate(layout)));
}

RowStream encode_rows(std::span<const std::uint8_t> input, const Tables& tables) {
  RowStream s;
  s.mode = tables.mode();
  s.layout = tables.layout();
  const std::size_t pairs = input.size() / 2;
  s.rows.reserve(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    const BytePair pair{input[2 * k], input[2 * k + 1]};
    // verified tables map every pair
    s.rows.push_back(*tables.at(table_for_pair(tables, k)).find(pair));
  }
  if (input.size() % 2) s.tail = input.back();
  return s;
}

std::vector<std::uint8_t> decode_rows(const RowStream& stream, const Tables& tables) {
  std::vector<std::uint8_t> out;
  out.reserve(stream.rows.size() * 2 + 1);
  for (std::size_t k = 0; k < stream.rows.size(); ++k) {
    const auto pair = tables.at(table_for_pair(tables, k)).lookup(stream.rows[k]);
    if (!pair) {
      throw FormatError("row " + std::to_string(stream.rows[k].one_based()) + " is not in the table",
                        k * 2);
    }
    out.push_back((*pair)[0]);
    out.push_back((*pair)[1]);
  }
  if (stream.tail) out.push_back(*stream.tail);
  return out;
}

std::vector<Chunk4> chunk_4tt(std::span<const std::uint8_t> input, const Tables& tables,
                              std::optional<std::uint8_t>* tail) {
  if (tables.mode() != Mode::tt4) throw ModeMismatch("4-TT chunking needs four tables");
  const RowStream s = encode_rows(input, tables);
  std::vector<Chunk4> chunks;
  chunks.reserve((s.rows.size() + kRowsPerChunk - 1) / kRowsPerChunk);
  for (std::size_t k = 0; k < s.rows.size(); ++k) {
    if (k % kRowsPerChunk == 0) {
      chunks.push_back({chunks.size() % kBlockPairs + 1, {}, 0});
    }
    auto& chunk = chunks.back();
    chunk.rows[chunk.row_count++] = s.rows[k];
  }
  if (tail) *tail = s.tail;
  return chunks;
}

CompressResult compress(const CompressJob& job) {
  if (!job.tables) throw std::invalid_argument("compress needs translation tables");
  const Tables& tables = *job.tables;
  const auto start = std::chrono::steady_clock::now();

  RowStream stream = encode_rows(job.input, tables);
  const std::size_t pairs = stream.rows.size();
  const bool has_tail = stream.tail.has_value();

  std::ostringstream out;
  std::size_t accounted = 0;
  if (job.format == Format::paper) {
    accounted = write_grid(std::move(stream), out).paper_accounted_size();
  } else {
    write_honest(stream, out);
    accounted = build_grid(std::move(stream)).paper_accounted_size();
  }

  CompressResult result;
  result.artifact = to_bytes(out);
  const auto stop = std::chrono::steady_clock::now();

  auto& r = result.report;
  const std::size_t n = job.input.size();
  r.input_size = n;
  r.paper_size_1tt = paper_size(n, Mode::tt1);
  r.paper_size_4tt = paper_size(n, Mode::tt4);
  r.paper_accounted = accounted;
  r.honest_size = pairs * 2 + (has_tail ? 1 : 0);
  r.artifact_size = result.artifact.size();
  if (n > 0) {
    r.space_savings_paper = 1.0 - static_cast<double>(accounted) / static_cast<double>(n);
    if (accounted > 0) {
      r.fbar_H = fbar_H({static_cast<std::int64_t>(8 * accounted), static_cast<std::int64_t>(n)});
    }
    r.shannon_H0 = shannon_order0(distinct_symbols(job.input));
  }
  r.empirical_H = empirical_entropy(job.input);
  r.manipulation_total = count_manipulations(pairs);
  r.elapsed = std::chrono::duration<double>(stop - start).count();
  r.throughput = r.elapsed > 0 ? static_cast<double>(n) / r.elapsed : 0.0;
  return result;
}

std::vector<std::uint8_t> decompress(const DecompressJob& job) {
  if (!job.tables) throw std::invalid_argument("decompress needs translation tables");
  const RowStream stream = parse_artifact(job.artifact);
  if (stream.mode != job.tables->mode()) {
    throw ModeMismatch("artifact is " + to_string(stream.mode) + " but " +
                       std::to_string(job.tables->count()) + " table(s) were supplied");
  }
  if (stream.layout != job.tables->layout()) {
    throw ModeMismatch("artifact uses the " + to_string(stream.layout) +
                       " layout but the tables use " + to_string(job.tables->layout()));
  }
  return decode_rows(stream, *job.tables);
}

}  // namespace fbar
