#pragma once

// 4D flag addresses. A two-byte input (x, x') is factored into four combos,
// each with a 1-based index into its 16-element alphabet; those four indices
// are the address (i, j, k, l) and linearize to one of 65,536 rows.

#include <array>
#include <cstdint>
#include <string>

#include "fbar/pairops.hpp"

namespace fbar {

using BytePair = std::array<std::uint8_t, 2>;

inline constexpr std::uint32_t kRowCount = 65536;

/// Which combo feeds which address coordinate.
enum class Layout : std::uint8_t {
  /// i = ip(x), j = zn(x), k = ip(x'), l = zn(x')
  interleaved = 0,
  /// i = ip(x), j = ip(x'), k = zn(x), l = zn(x')
  grouped = 1,
};

std::string to_string(Layout layout);
/// Accepts "interleaved" or "grouped"; throws std::invalid_argument.
Layout parse_layout(const std::string& name);

/// Zero-based row of the 65,536-row field. Reports print value() + 1.
class RowIndex {
 public:
  constexpr RowIndex() = default;
  constexpr explicit RowIndex(std::uint16_t value) : value_(value) {}

  constexpr std::uint16_t value() const noexcept { return value_; }
  constexpr std::uint32_t one_based() const noexcept { return std::uint32_t{value_} + 1; }

  friend constexpr auto operator<=>(RowIndex, RowIndex) = default;

 private:
  std::uint16_t value_ = 0;
};

struct FlagAddress {
  std::uint8_t i = 1;
  std::uint8_t j = 1;
  std::uint8_t k = 1;
  std::uint8_t l = 1;

  /// Throws std::out_of_range unless every coordinate is in 1..16.
  static FlagAddress make(unsigned i, unsigned j, unsigned k, unsigned l);

  /// "IxJxKxL"
  std::string str() const;

  friend constexpr bool operator==(const FlagAddress&, const FlagAddress&) = default;
};

/// The two 16-element alphabets, in their canonical listing order.
const std::array<IpCombo, 16>& ip_alphabet();
const std::array<ZnCombo, 16>& zn_alphabet();

/// 1-based position in the alphabet.
unsigned combo_index(const IpCombo& combo) noexcept;
unsigned combo_index(const ZnCombo& combo) noexcept;

FlagAddress address_of_pair(std::uint8_t x, std::uint8_t x2,
                            Layout layout = Layout::interleaved) noexcept;
BytePair pair_of_address(const FlagAddress& address,
                         Layout layout = Layout::interleaved) noexcept;

/// l varies fastest.
RowIndex row_of_address(const FlagAddress& address) noexcept;
FlagAddress address_of_row(RowIndex row) noexcept;

BytePair pair_of_row(RowIndex row, Layout layout = Layout::interleaved) noexcept;
RowIndex row_of_pair(std::uint8_t x, std::uint8_t x2,
                     Layout layout = Layout::interleaved) noexcept;

}  // namespace fbar
