#include "fbar/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fbar/codec.hpp"

using namespace fbar;

TEST(Metrics, PaperSizeReportedRows) {
  // 60.16 KiB and 10.02 KiB inputs.
  EXPECT_EQ(paper_size(61604, Mode::tt1), 31123u);
  EXPECT_EQ(paper_size(61604, Mode::tt4), 7701u);
  EXPECT_EQ(paper_size(10260, Mode::tt1), 5184u);
  EXPECT_EQ(paper_size(10260, Mode::tt4), 1283u);
  EXPECT_EQ(paper_size(0, Mode::tt1), 0u);
  EXPECT_EQ(paper_size(0, Mode::tt4), 0u);
  EXPECT_EQ(paper_size(8, Mode::tt4), 1u);
}

TEST(Metrics, PaperSizeMonotoneWithLimitRatio) {
  std::size_t prev1 = 0;
  std::size_t prev4 = 0;
  for (std::size_t n = 0; n < 5000; ++n) {
    ASSERT_GE(paper_size(n, Mode::tt1), prev1);
    ASSERT_GE(paper_size(n, Mode::tt4), prev4);
    ASSERT_LE(paper_size(n, Mode::tt4), paper_size(n, Mode::tt1));
    if (n >= 2) ASSERT_LE(paper_size(n, Mode::tt1), n);
    prev1 = paper_size(n, Mode::tt1);
    prev4 = paper_size(n, Mode::tt4);
  }
  const std::size_t big = 1'000'000'000;
  EXPECT_NEAR(static_cast<double>(paper_size(big, Mode::tt1)) / big, 0.5 + 1.0 / 192, 1e-6);
}

TEST(Metrics, ShannonOrder0) {
  EXPECT_NEAR(shannon_order0(27), 4.7549, 1e-4);
  EXPECT_DOUBLE_EQ(shannon_order0(2), 1.0);
  EXPECT_DOUBLE_EQ(shannon_order0(256), 8.0);
  EXPECT_THROW(shannon_order0(0), std::domain_error);
}

TEST(Metrics, EmpiricalEntropy) {
  EXPECT_DOUBLE_EQ(empirical_entropy(std::vector<std::uint8_t>(100, 'a')), 0.0);
  EXPECT_DOUBLE_EQ(empirical_entropy(std::vector<std::uint8_t>{}), 0.0);
  EXPECT_DOUBLE_EQ(empirical_entropy(std::vector<std::uint8_t>{'a', 'b', 'a', 'b'}), 1.0);
  std::vector<std::uint8_t> uniform;
  for (int rep = 0; rep < 3; ++rep) {
    for (int b = 0; b < 256; ++b) uniform.push_back(static_cast<std::uint8_t>(b));
  }
  EXPECT_DOUBLE_EQ(empirical_entropy(uniform), 8.0);
}

TEST(Metrics, EmpiricalEntropyBounded) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint8_t> data(std::uniform_int_distribution<int>(0, 2000)(rng));
    const int span = std::uniform_int_distribution<int>(1, 256)(rng);
    for (auto& b : data) b = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, span - 1)(rng));
    const double h = empirical_entropy(data);
    ASSERT_GE(h, 0.0);
    ASSERT_LE(h, 8.0);
  }
}

TEST(Metrics, EntropyLadder) {
  const struct {
    ByteRatio ratio;
    double H;
    double savings;
  } ladder[] = {{{8, 1}, 3, 0.0}, {{4, 1}, 2, 0.5}, {{2, 1}, 1, 0.75}, {{1, 1}, 0, 0.875}, {{1, 2}, -1, 0.9375}};
  for (const auto& rung : ladder) {
    EXPECT_EQ(fbar_H(rung.ratio), rung.H);
    EXPECT_EQ(savings_from_H(rung.H), rung.savings);
    EXPECT_EQ(savings_from_ratio(rung.ratio), rung.savings);
  }
  EXPECT_LT(fbar_H({1, 2}), 0.0);
  EXPECT_THROW(fbar_H({0, 1}), std::domain_error);
  EXPECT_THROW(fbar_H({-1, 1}), std::domain_error);
  EXPECT_THROW(savings_from_ratio({0, 1}), std::domain_error);
}

TEST(Metrics, ManipulationDistance) {
  EXPECT_EQ(manipulation_distance(2, false).count, 16u);
  EXPECT_EQ(manipulation_distance(2, true).count, 0u);
  EXPECT_EQ(manipulation_distance(0, false).count, 0u);
}

TEST(Metrics, ChannelTally) {
  const auto bits = channel_tally(8, Mode::tt1);
  EXPECT_EQ(bits.occupant, 8u * 4);
  EXPECT_EQ(bits.address, 16u * 4);
  EXPECT_EQ(bits.tail, 0u);
  EXPECT_EQ(bits.grid_region, 8u * 65536);
  EXPECT_EQ(channel_tally(9, Mode::tt4).occupant, 8u);
  EXPECT_EQ(channel_tally(9, Mode::tt4).tail, 8u);
}

TEST(Metrics, PigeonholeAuditCanonical) {
  const auto report = pigeonhole_audit(TranslationTable::generate());
  EXPECT_TRUE(report.bijection_ok);
  EXPECT_TRUE(report.addressing_bijective);
  EXPECT_TRUE(report.offending_rows.empty());
  ASSERT_TRUE(report.collision_witness);
  EXPECT_EQ(report.collision_witness->input_a, (std::vector<std::uint8_t>{'a', 'a'}));
  EXPECT_EQ(report.collision_witness->input_b, (std::vector<std::uint8_t>{'b', 'b'}));
  EXPECT_EQ(report.collision_witness->occupant_stream, (std::vector<std::uint8_t>{'a'}));
  EXPECT_EQ(report.channel_bits.address, 16u);
}

TEST(Metrics, PigeonholeAuditCatchesSingleRecordFlips) {
  const auto tt = TranslationTable::generate();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<TtRecord> records(tt.records().begin(), tt.records().end());
    const auto victim = std::uniform_int_distribution<std::size_t>(0, kRowCount - 1)(rng);
    records[victim].original[trial % 2] ^= static_cast<std::uint8_t>(1u << (trial % 8));
    const auto report = pigeonhole_audit(TranslationTable(std::move(records), Layout::interleaved));
    EXPECT_FALSE(report.bijection_ok);
    EXPECT_NE(std::find(report.offending_rows.begin(), report.offending_rows.end(), victim),
              report.offending_rows.end());
  }
}

TEST(Metrics, AuditArtifact) {
  const Tables tables = Tables::generate(Mode::tt1);
  const std::string text = "honest accounting needs the address channel";
  const std::vector<std::uint8_t> in(text.begin(), text.end());
  for (auto f : {Format::paper, Format::honest}) {
    const auto r = compress({in, f, &tables});
    const auto audit = audit_artifact(in, r.artifact, tables);
    EXPECT_EQ(audit.input_size, in.size());
    EXPECT_EQ(audit.honest_payload, in.size());
    EXPECT_TRUE(audit.honest_covers_input);
    EXPECT_GE(audit.paper_accounted, in.size() / 2);  // repeated pairs add separators
    ASSERT_TRUE(audit.collision_witness);
    EXPECT_NE(audit.collision_witness->input_b, in);
    EXPECT_EQ(audit.collision_witness->input_b.size(), in.size());
    const auto other = compress({audit.collision_witness->input_b, Format::paper, &tables});
    EXPECT_EQ(parse_grid(other.artifact).occupant_stream, audit.collision_witness->occupant_stream);
  }
  for (const std::vector<std::uint8_t>& tiny : {std::vector<std::uint8_t>{}, std::vector<std::uint8_t>{'x'}}) {
    const auto audit = audit_artifact(tiny, compress({tiny, Format::paper, &tables}).artifact, tables);
    ASSERT_TRUE(audit.collision_witness);
    EXPECT_NE(audit.collision_witness->input_b, tiny);
    EXPECT_TRUE(audit.collision_witness->occupant_stream.empty());
    EXPECT_TRUE(parse_grid(compress({audit.collision_witness->input_b, Format::paper, &tables}).artifact)
                    .occupant_stream.empty());
  }
}

TEST(Metrics, Rendering) {
  MetricsReport r;
  r.input_size = 8;
  r.paper_accounted = 4;
  const auto kv = render_kv(r);
  EXPECT_NE(kv.find("input_size=8\n"), std::string::npos);
  EXPECT_NE(kv.find("paper_accounted=4\n"), std::string::npos);
  EXPECT_NE(render_table(r).find("input size"), std::string::npos);
}
