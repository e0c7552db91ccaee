#pragma once

// Big-endian helpers shared by the table and artifact formats.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fbar/errors.hpp"

namespace fbar::detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

/// Bounds-checked reader; every failure reports the current offset.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (remaining() < n) {
      throw FormatError(std::string("truncated ") + what + ": need " + std::to_string(n) +
                            " bytes, have " + std::to_string(remaining()),
                        bytes_.size());
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint8_t u8(const char* what) { return take(1, what)[0]; }

  std::uint16_t u16(const char* what) {
    auto b = take(2, what);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
  }

  std::uint64_t u64(const char* what) {
    auto b = take(8, what);
    std::uint64_t v = 0;
    for (auto c : b) v = (v << 8) | c;
    return v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

/// Writes `bytes` and adds them to `written`; throws IoError on failure.
inline void write_all(std::ostream& sink, std::span<const std::uint8_t> bytes,
                      std::size_t& written) {
  sink.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!sink) throw IoError("write failed after " + std::to_string(written) + " bytes", written);
  written += bytes.size();
}

}  // namespace fbar::detail
