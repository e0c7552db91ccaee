#include "fbar/addressing.hpp"

#include <stdexcept>

namespace fbar {

namespace {

struct ByteIndexTables {
  // byte -> 0-based alphabet positions
  std::array<std::uint8_t, 256> ip{};
  std::array<std::uint8_t, 256> zn{};
  // [ip][zn] -> byte
  std::array<std::array<std::uint8_t, 16>, 16> byte{};
};

const ByteIndexTables& byte_tables() {
  static const ByteIndexTables tables = [] {
    ByteIndexTables t;
    for (unsigned b = 0; b < 256; ++b) {
      const auto [s1, s2] = canonical_factor(static_cast<std::uint8_t>(b));
      t.ip[b] = static_cast<std::uint8_t>(combo_index(s1) - 1);
      t.zn[b] = static_cast<std::uint8_t>(combo_index(s2) - 1);
      t.byte[t.ip[b]][t.zn[b]] = static_cast<std::uint8_t>(b);
    }
    return t;
  }();
  return tables;
}

template <typename Combo, std::size_t N>
std::array<Combo, N> parse_all(const std::array<const char*, N>& words) {
  std::array<Combo, N> out{};
  for (std::size_t k = 0; k < N; ++k) out[k] = Combo::parse(words[k]);
  return out;
}

}  // namespace

std::string to_string(Layout layout) {
  return layout == Layout::grouped ? "grouped" : "interleaved";
}

Layout parse_layout(const std::string& name) {
  if (name == "interleaved") return Layout::interleaved;
  if (name == "grouped") return Layout::grouped;
  throw std::invalid_argument("unknown layout '" + name + "'");
}

FlagAddress FlagAddress::make(unsigned i, unsigned j, unsigned k, unsigned l) {
  for (unsigned c : {i, j, k, l}) {
    if (c < 1 || c > 16) throw std::out_of_range("flag address coordinate out of 1..16");
  }
  return {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
          static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(l)};
}

std::string FlagAddress::str() const {
  return std::to_string(i) + "x" + std::to_string(j) + "x" + std::to_string(k) + "x" +
         std::to_string(l);
}

const std::array<IpCombo, 16>& ip_alphabet() {
  static const auto alphabet = parse_all<IpCombo>(std::array<const char*, 16>{
      "iiii", "iiip", "iipi", "ipii", "piii", "iipp", "ippi", "ppii",
      "pipi", "ipip", "piip", "ippp", "pipp", "ppip", "pppi", "pppp"});
  return alphabet;
}

const std::array<ZnCombo, 16>& zn_alphabet() {
  static const auto alphabet = parse_all<ZnCombo>(std::array<const char*, 16>{
      "zzzz", "zzzn", "zznz", "znzz", "nzzz", "zznn", "znnz", "nnzz",
      "nznz", "znzn", "nzzn", "znnn", "nnnz", "nznn", "nnzn", "nnnn"});
  return alphabet;
}

unsigned combo_index(const IpCombo& combo) noexcept {
  const auto& alphabet = ip_alphabet();
  for (unsigned k = 0; k < alphabet.size(); ++k) {
    if (alphabet[k] == combo) return k + 1;
  }
  return 0;  // unreachable: the alphabet covers all 16 ip combos
}

unsigned combo_index(const ZnCombo& combo) noexcept {
  const auto& alphabet = zn_alphabet();
  for (unsigned k = 0; k < alphabet.size(); ++k) {
    if (alphabet[k] == combo) return k + 1;
  }
  return 0;
}

FlagAddress address_of_pair(std::uint8_t x, std::uint8_t x2, Layout layout) noexcept {
  const auto& t = byte_tables();
  const auto ip1 = static_cast<std::uint8_t>(t.ip[x] + 1);
  const auto zn1 = static_cast<std::uint8_t>(t.zn[x] + 1);
  const auto ip2 = static_cast<std::uint8_t>(t.ip[x2] + 1);
  const auto zn2 = static_cast<std::uint8_t>(t.zn[x2] + 1);
  if (layout == Layout::grouped) return {ip1, ip2, zn1, zn2};
  return {ip1, zn1, ip2, zn2};
}

BytePair pair_of_address(const FlagAddress& a, Layout layout) noexcept {
  const auto& t = byte_tables();
  if (layout == Layout::grouped) {
    return {t.byte[a.i - 1][a.k - 1], t.byte[a.j - 1][a.l - 1]};
  }
  return {t.byte[a.i - 1][a.j - 1], t.byte[a.k - 1][a.l - 1]};
}

RowIndex row_of_address(const FlagAddress& a) noexcept {
  const unsigned row = (a.i - 1u) * 4096u + (a.j - 1u) * 256u + (a.k - 1u) * 16u + (a.l - 1u);
  return RowIndex(static_cast<std::uint16_t>(row));
}

FlagAddress address_of_row(RowIndex row) noexcept {
  const unsigned r = row.value();
  return {static_cast<std::uint8_t>((r >> 12) + 1), static_cast<std::uint8_t>(((r >> 8) & 15) + 1),
          static_cast<std::uint8_t>(((r >> 4) & 15) + 1), static_cast<std::uint8_t>((r & 15) + 1)};
}

BytePair pair_of_row(RowIndex row, Layout layout) noexcept {
  return pair_of_address(address_of_row(row), layout);
}

RowIndex row_of_pair(std::uint8_t x, std::uint8_t x2, Layout layout) noexcept {
  return row_of_address(address_of_pair(x, x2, layout));
}

}  // namespace fbar
