#include "fbar/addressing.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "oracle.hpp"

using namespace fbar;

TEST(Addressing, ComboIndex) {
  EXPECT_EQ(combo_index(IpCombo::parse("iiii")), 1u);
  EXPECT_EQ(combo_index(IpCombo::parse("ippi")), 7u);
  EXPECT_EQ(combo_index(ZnCombo::parse("nnnn")), 16u);
  for (int k = 0; k < 16; ++k) {
    EXPECT_EQ(ip_alphabet()[k].str(), oracle::kIpWords[k]);
    EXPECT_EQ(zn_alphabet()[k].str(), oracle::kZnWords[k]);
  }
}

TEST(Addressing, AddressOfPairExamples) {
  // Frozen from the brute-force oracle.
  EXPECT_EQ(address_of_pair('r', 'e'), FlagAddress::make(7, 6, 1, 4));
  EXPECT_EQ(address_of_pair('s', 'o'), FlagAddress::make(12, 3, 6, 4));
  EXPECT_EQ(address_of_pair('@', '$'), FlagAddress::make(12, 12, 11, 15));
  EXPECT_EQ(row_of_pair('@', '$').value(), 48046);
}

TEST(Addressing, PrintedFirstAndThirdCoordinates) {
  const struct {
    const char* pair;
    unsigned i, k;
  } cases[] = {{"re", 7, 1}, {"so", 12, 6}, {"lv", 6, 4}, {"ed", 1, 2}};
  for (const auto& c : cases) {
    const auto a = address_of_pair(c.pair[0], c.pair[1]);
    EXPECT_EQ(a.i, c.i) << c.pair;
    EXPECT_EQ(a.k, c.k) << c.pair;
  }
}

TEST(Addressing, RowLinearization) {
  EXPECT_EQ(row_of_address(FlagAddress::make(1, 1, 1, 1)).value(), 0);
  EXPECT_EQ(row_of_address(FlagAddress::make(16, 16, 16, 16)).value(), 65535);
  EXPECT_EQ(row_of_address(FlagAddress::make(16, 16, 16, 15)).value(), 65534);
  EXPECT_EQ(row_of_address(FlagAddress::make(16, 16, 16, 15)).one_based(), 65535u);
}

TEST(Addressing, PairOfRowExamples) {
  EXPECT_EQ(pair_of_row(RowIndex(0)), (BytePair{0x55, 0x55}));
  EXPECT_EQ(pair_of_row(RowIndex(65535)), (BytePair{0x00, 0x00}));
  EXPECT_EQ(pair_of_row(row_of_pair('@', '$')), (BytePair{'@', '$'}));
}

TEST(Addressing, ExhaustiveBijectionAgainstOracle) {
  // The oracle is slow per byte, so precompute the per-byte address halves.
  std::vector<std::array<int, 2>> half(256);
  for (int b = 0; b < 256; ++b) {
    const auto f = oracle::factorizations(static_cast<std::uint8_t>(b)).at(0);
    half[b] = {oracle::index_of(oracle::kIpWords, f.first), oracle::index_of(oracle::kZnWords, f.second)};
  }
  std::vector<bool> seen(kRowCount, false);
  for (int x = 0; x < 256; ++x) {
    for (int y = 0; y < 256; ++y) {
      const int expected = oracle::row({half[x][0], half[x][1], half[y][0], half[y][1]});
      const auto row = row_of_pair(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y));
      ASSERT_EQ(row.value(), expected);
      ASSERT_FALSE(seen[row.value()]);
      seen[row.value()] = true;
      ASSERT_EQ(pair_of_row(row), (BytePair{static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)}));
    }
  }
}

TEST(Addressing, AddressRowInverse) {
  for (std::uint32_t r = 0; r < kRowCount; ++r) {
    const RowIndex row(static_cast<std::uint16_t>(r));
    ASSERT_EQ(row_of_address(address_of_row(row)), row);
  }
}

TEST(Addressing, GroupedLayoutIsAlsoABijection) {
  std::vector<bool> seen(kRowCount, false);
  for (int x = 0; x < 256; ++x) {
    for (int y = 0; y < 256; ++y) {
      const auto a = address_of_pair(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y),
                                     Layout::grouped);
      const auto inter = address_of_pair(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y));
      ASSERT_EQ(a.i, inter.i);
      ASSERT_EQ(a.j, inter.k);
      ASSERT_EQ(a.k, inter.j);
      const auto row = row_of_address(a);
      ASSERT_FALSE(seen[row.value()]);
      seen[row.value()] = true;
      ASSERT_EQ(pair_of_row(row, Layout::grouped),
                (BytePair{static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)}));
    }
  }
}

TEST(Addressing, Validation) {
  EXPECT_THROW(FlagAddress::make(0, 1, 1, 1), std::out_of_range);
  EXPECT_THROW(FlagAddress::make(1, 1, 1, 17), std::out_of_range);
  EXPECT_EQ(FlagAddress::make(7, 11, 1, 13).str(), "7x11x1x13");
  EXPECT_EQ(parse_layout("grouped"), Layout::grouped);
  EXPECT_THROW(parse_layout("diagonal"), std::invalid_argument);
}
