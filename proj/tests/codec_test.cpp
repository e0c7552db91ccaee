#include "fbar/codec.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fbar/errors.hpp"

using namespace fbar;

namespace {

std::vector<std::uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

const Tables& tables1() {
  static const Tables t = Tables::generate(Mode::tt1);
  return t;
}

const Tables& tables4() {
  static const Tables t = Tables::generate(Mode::tt4);
  return t;
}

CompressResult run(const std::vector<std::uint8_t>& in, const Tables& t, Format f = Format::paper) {
  return compress({in, f, &t});
}

std::vector<std::uint8_t> back(const CompressResult& r, const Tables& t) {
  return decompress({r.artifact, &t});
}

}  // namespace

TEST(Codec, ResolvedOneTT) {
  const auto in = bytes("resolved");
  const auto r = run(in, tables1());
  EXPECT_EQ(r.report.paper_accounted, 4u);
  EXPECT_DOUBLE_EQ(r.report.space_savings_paper, 0.5);
  EXPECT_DOUBLE_EQ(r.report.fbar_H, 2.0);
  EXPECT_EQ(r.report.honest_size, 8u);
  EXPECT_EQ(r.report.manipulation_total.count, 32u);
  const auto grid = parse_grid(r.artifact);
  EXPECT_EQ(std::string(grid.occupant_stream.begin(), grid.occupant_stream.end()), "abcd");
  EXPECT_EQ(back(r, tables1()), in);
}

TEST(Codec, EightBytesFourTT) {
  const auto in = bytes("resolved");
  const auto r = run(in, tables4());
  EXPECT_EQ(r.report.paper_accounted, 1u);
  EXPECT_DOUBLE_EQ(r.report.space_savings_paper, 0.875);
  EXPECT_DOUBLE_EQ(r.report.fbar_H, 0.0);
  EXPECT_EQ(back(r, tables4()), in);
}

TEST(Codec, Empty) {
  for (const Tables* t : {&tables1(), &tables4()}) {
    for (auto f : {Format::paper, Format::honest}) {
      const auto r = run({}, *t, f);
      EXPECT_EQ(r.report.paper_accounted, 0u);
      EXPECT_EQ(r.report.honest_size, 0u);
      EXPECT_TRUE(back(r, *t).empty());
    }
  }
}

TEST(Codec, AtDollarDecodesThroughItsCombos) {
  const auto r = run(bytes("@$"), tables1(), Format::honest);
  const auto stream = parse_honest(r.artifact);
  ASSERT_EQ(stream.rows.size(), 1u);
  const auto a = address_of_row(stream.rows[0]);
  EXPECT_EQ(a, FlagAddress::make(12, 12, 11, 15));
  const auto& ip = ip_alphabet();
  const auto& zn = zn_alphabet();
  EXPECT_EQ(ip[a.i - 1].str(), "ippp");
  EXPECT_EQ(zn[a.j - 1].str(), "znnn");
  EXPECT_EQ(ip[a.k - 1].str(), "piip");
  EXPECT_EQ(zn[a.l - 1].str(), "nnzn");
  EXPECT_EQ(decode_byte(ip[a.i - 1], zn[a.j - 1]), 0x40);
  EXPECT_EQ(decode_byte(ip[a.k - 1], zn[a.l - 1]), 0x24);
  EXPECT_EQ(back(r, tables1()), bytes("@$"));
}

TEST(Codec, Chunk4TT) {
  std::optional<std::uint8_t> tail;
  const auto chunks = chunk_4tt(bytes("resolved"), tables4(), &tail);
  ASSERT_EQ(chunks.size(), 1u);
  EXPECT_EQ(chunks[0].ordinal, 1u);
  EXPECT_EQ(chunks[0].row_count, 4u);
  EXPECT_EQ(chunks[0].rows[0], row_of_pair('r', 'e'));
  EXPECT_EQ(chunks[0].rows[1], row_of_pair('s', 'o'));
  EXPECT_EQ(chunks[0].rows[2], row_of_pair('l', 'v'));
  EXPECT_EQ(chunks[0].rows[3], row_of_pair('e', 'd'));
  EXPECT_FALSE(tail);

  EXPECT_EQ(chunk_4tt(std::vector<std::uint8_t>(16, 'x'), tables4()).size(), 2u);

  const auto nine = chunk_4tt(bytes("resolved!"), tables4(), &tail);
  EXPECT_EQ(nine.size(), 1u);
  EXPECT_EQ(tail, '!');

  const auto many = chunk_4tt(std::vector<std::uint8_t>(8 * 96, 'x'), tables4());
  EXPECT_EQ(many[94].ordinal, 95u);
  EXPECT_EQ(many[95].ordinal, 1u);

  EXPECT_THROW(chunk_4tt(bytes("resolved"), tables1()), ModeMismatch);
}

TEST(Codec, RoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 4096)(rng);
    std::vector<std::uint8_t> in(n);
    const int alphabet = trial % 3 == 0 ? 4 : 256;
    for (auto& b : in) b = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, alphabet - 1)(rng));
    for (const Tables* t : {&tables1(), &tables4()}) {
      for (auto f : {Format::paper, Format::honest}) {
        ASSERT_EQ(back(run(in, *t, f), *t), in) << "n=" << n;
      }
    }
  }
}

TEST(Codec, DeterministicAndModeEquivalent) {
  const auto in = bytes("The quick brown fox jumps over the lazy dog.");
  EXPECT_EQ(run(in, tables1()).artifact, run(in, tables1()).artifact);
  EXPECT_EQ(back(run(in, tables1()), tables1()), back(run(in, tables4()), tables4()));
}

TEST(Codec, GroupedLayoutRoundTrip) {
  const Tables grouped = Tables::generate(Mode::tt1, Layout::grouped);
  const auto in = bytes("grouped layout works too");
  const auto r = run(in, grouped);
  EXPECT_EQ(back(r, grouped), in);
  EXPECT_THROW(back(r, tables1()), ModeMismatch);
}

TEST(Codec, ModeMismatch) {
  const auto r = run(bytes("resolved"), tables1());
  EXPECT_THROW(back(r, tables4()), ModeMismatch);
  const auto r4 = run(bytes("resolved"), tables4(), Format::honest);
  EXPECT_THROW(back(r4, tables1()), ModeMismatch);
}

TEST(Codec, RejectsUnverifiedTables) {
  const auto tt = TranslationTable::generate();
  std::vector<TtRecord> records(tt.records().begin(), tt.records().end());
  std::swap(records[0], records[1]);  // record order does not matter
  EXPECT_NO_THROW(Tables(std::make_shared<const TranslationTable>(records, Layout::interleaved)));
  records[5].original[0] ^= 4;
  EXPECT_THROW(Tables(std::make_shared<const TranslationTable>(records, Layout::interleaved)),
               VerificationError);
}

TEST(Codec, MalformedArtifact) {
  auto r = run(bytes("resolved"), tables1());
  r.artifact[0] = 'Q';
  EXPECT_THROW(back(r, tables1()), FormatError);
}

TEST(Codec, NeedsTables) {
  EXPECT_THROW(compress({{}, Format::paper, nullptr}), std::invalid_argument);
  EXPECT_THROW(decompress({{}, nullptr}), std::invalid_argument);
}
