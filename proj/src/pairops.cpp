#include "fbar/pairops.hpp"

#include <stdexcept>

namespace fbar {

namespace {

// XOR mask each operator applies to a pair in the generative reading.
constexpr std::uint8_t mask_of(PairOp op) noexcept {
  switch (op) {
    case PairOp::n: return 0b11;
    case PairOp::i: return 0b10;
    case PairOp::z:
    case PairOp::p: return 0b00;
  }
  return 0;
}

std::uint8_t apply_masks(const StageCombo& combo, std::uint8_t input) noexcept {
  std::uint8_t out = input;
  for (unsigned k = 0; k < 4; ++k) {
    const unsigned shift = 6 - 2 * k;
    out ^= static_cast<std::uint8_t>(mask_of(combo.ops()[k]) << shift);
  }
  return out;
}

bool in_alphabet(const StageCombo& combo, PairOp a, PairOp b) {
  for (PairOp op : combo.ops()) {
    if (op != a && op != b) return false;
  }
  return true;
}

}  // namespace

char to_char(PairOp op) noexcept {
  switch (op) {
    case PairOp::z: return 'z';
    case PairOp::n: return 'n';
    case PairOp::i: return 'i';
    case PairOp::p: return 'p';
  }
  return '?';
}

BitPair::BitPair(unsigned value) {
  if (value > 3) throw std::out_of_range("bit pair value out of range: " + std::to_string(value));
  value_ = static_cast<std::uint8_t>(value);
}

BitPair pair_at(std::uint8_t byte, unsigned index) noexcept {
  return BitPair((byte >> (6 - 2 * (index & 3))) & 0b11);
}

StageCombo StageCombo::parse(std::string_view word) {
  if (word.size() != 4) {
    throw std::invalid_argument("stage combo must have four operators: '" + std::string(word) + "'");
  }
  std::array<PairOp, 4> ops{};
  for (std::size_t k = 0; k < 4; ++k) {
    switch (word[k]) {
      case 'z': ops[k] = PairOp::z; break;
      case 'n': ops[k] = PairOp::n; break;
      case 'i': ops[k] = PairOp::i; break;
      case 'p': ops[k] = PairOp::p; break;
      default:
        throw std::invalid_argument("unknown pair operator '" + std::string(1, word[k]) + "'");
    }
  }
  return StageCombo(ops);
}

std::string StageCombo::str() const {
  std::string s(4, ' ');
  for (std::size_t k = 0; k < 4; ++k) s[k] = to_char(ops_[k]);
  return s;
}

IpCombo::IpCombo(StageCombo combo) : combo_(combo) {
  if (!in_alphabet(combo, PairOp::i, PairOp::p)) {
    throw std::invalid_argument("not an ip combo: " + combo.str());
  }
}

ZnCombo::ZnCombo(StageCombo combo) : combo_(combo) {
  if (!in_alphabet(combo, PairOp::z, PairOp::n)) {
    throw std::invalid_argument("not a zn combo: " + combo.str());
  }
}

std::uint8_t apply_stage1(const StageCombo& combo, std::uint8_t input) noexcept {
  return apply_masks(combo, input);
}

std::uint8_t apply_stage2(const ZnCombo& combo, std::uint8_t input) noexcept {
  return apply_masks(combo.combo(), input);
}

std::uint8_t decode_byte(const StageCombo& stage1, const ZnCombo& stage2) noexcept {
  return apply_stage2(stage2, apply_stage1(stage1, kPureByte));
}

std::pair<IpCombo, ZnCombo> canonical_factor(std::uint8_t b) noexcept {
  // 01 <- (i,z)   10 <- (i,n)   11 <- (p,z)   00 <- (p,n)
  std::array<PairOp, 4> s1{};
  std::array<PairOp, 4> s2{};
  for (unsigned k = 0; k < 4; ++k) {
    const std::uint8_t v = pair_at(b, k).value();
    const bool impure = v == 0b01 || v == 0b10;
    s1[k] = impure ? PairOp::i : PairOp::p;
    s2[k] = (v == 0b01 || v == 0b11) ? PairOp::z : PairOp::n;
  }
  return {IpCombo(StageCombo(s1)), ZnCombo(StageCombo(s2))};
}

std::pair<PairOp, std::uint8_t> closure_classify(BitPair pair) noexcept {
  const std::uint8_t v = pair.value();
  const bool impure = v == 0b01 || v == 0b10;
  return {impure ? PairOp::i : PairOp::p, static_cast<std::uint8_t>(v & 1)};
}

ManipulationCount count_manipulations(std::uint64_t char_pair_units) noexcept {
  return {2 * kManipulationsPerByte.count * char_pair_units};
}

}  // namespace fbar
