#pragma once

// Bit-pair operator algebra. A byte is viewed as four 2-bit pairs, most
// significant pair first. Four operators act on a pair:
//
//   z  pass             n  negate both bits
//   i  impure (01/10)   p  pure (00/11)
//
// Every byte is regenerated from the pure byte 0xFF by a stage-1 combo
// (normally i/p only) followed by a stage-2 combo (z/n only).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace fbar {

enum class PairOp : std::uint8_t { z, n, i, p };

char to_char(PairOp op) noexcept;

/// The byte every decode starts from.
inline constexpr std::uint8_t kPureByte = 0xFF;

/// A 2-bit value 0..3.
class BitPair {
 public:
  constexpr BitPair() = default;
  /// Throws std::out_of_range for values above 3.
  explicit BitPair(unsigned value);

  constexpr std::uint8_t value() const noexcept { return value_; }
  friend constexpr bool operator==(BitPair, BitPair) = default;

 private:
  std::uint8_t value_ = 0;
};

/// Pair `index` of a byte, 0 being the most significant.
BitPair pair_at(std::uint8_t byte, unsigned index) noexcept;

/// Four operators applied to a byte's pairs, most significant first.
class StageCombo {
 public:
  constexpr StageCombo() = default;
  constexpr explicit StageCombo(std::array<PairOp, 4> ops) : ops_(ops) {}
  /// Parses a four-letter word over {z,n,i,p}; throws std::invalid_argument.
  static StageCombo parse(std::string_view word);

  constexpr const std::array<PairOp, 4>& ops() const noexcept { return ops_; }
  std::string str() const;

  friend constexpr bool operator==(const StageCombo&, const StageCombo&) = default;

 private:
  std::array<PairOp, 4> ops_{PairOp::z, PairOp::z, PairOp::z, PairOp::z};
};

/// Stage combo restricted to {i, p}.
class IpCombo {
 public:
  constexpr IpCombo() : combo_({PairOp::i, PairOp::i, PairOp::i, PairOp::i}) {}
  /// Throws std::invalid_argument if any op is z or n.
  explicit IpCombo(StageCombo combo);
  static IpCombo parse(std::string_view word) { return IpCombo(StageCombo::parse(word)); }

  constexpr const StageCombo& combo() const noexcept { return combo_; }
  operator const StageCombo&() const noexcept { return combo_; }
  std::string str() const { return combo_.str(); }

  friend constexpr bool operator==(const IpCombo&, const IpCombo&) = default;

 private:
  StageCombo combo_;
};

/// Stage combo restricted to {z, n}.
class ZnCombo {
 public:
  constexpr ZnCombo() = default;
  /// Throws std::invalid_argument if any op is i or p.
  explicit ZnCombo(StageCombo combo);
  static ZnCombo parse(std::string_view word) { return ZnCombo(StageCombo::parse(word)); }

  constexpr const StageCombo& combo() const noexcept { return combo_; }
  operator const StageCombo&() const noexcept { return combo_; }
  std::string str() const { return combo_.str(); }

  friend constexpr bool operator==(const ZnCombo&, const ZnCombo&) = default;

 private:
  StageCombo combo_;
};

/// Composed per-pair manipulations.
struct ManipulationCount {
  std::uint64_t count = 0;

  friend constexpr bool operator==(ManipulationCount, ManipulationCount) = default;
  friend constexpr ManipulationCount operator+(ManipulationCount a, ManipulationCount b) {
    return {a.count + b.count};
  }
};

inline constexpr ManipulationCount kManipulationsPerByte{4};

/// Generative application. z and p pass a pair, n negates it, i toggles its
/// high bit (so 11 becomes 01). Total on all bytes; on the pure byte this is
/// the only reading that regenerates every pair value.
std::uint8_t apply_stage1(const StageCombo& combo, std::uint8_t input) noexcept;

/// z passes, n negates.
std::uint8_t apply_stage2(const ZnCombo& combo, std::uint8_t input) noexcept;

/// apply_stage2(stage2, apply_stage1(stage1, 0xFF)).
std::uint8_t decode_byte(const StageCombo& stage1, const ZnCombo& stage2) noexcept;

/// The unique (IpCombo, ZnCombo) that decode_byte maps to `b`.
std::pair<IpCombo, ZnCombo> canonical_factor(std::uint8_t b) noexcept;

/// Closure reading of i and p: a pair collapses to its low bit, and the
/// operator is i for 01/10 and p for 00/11.
std::pair<PairOp, std::uint8_t> closure_classify(BitPair pair) noexcept;

/// 8 per 2-character unit.
ManipulationCount count_manipulations(std::uint64_t char_pair_units) noexcept;

}  // namespace fbar
