#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fbar {

/// Malformed table or artifact bytes. `offset` is the byte position in the
/// source at which parsing stopped; `block` is set for occupant-stream errors.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t offset,
              std::optional<std::size_t> block = std::nullopt)
      : std::runtime_error(what), offset_(offset), block_(block) {}

  std::size_t offset() const noexcept { return offset_; }
  std::optional<std::size_t> block() const noexcept { return block_; }

 private:
  std::size_t offset_;
  std::optional<std::size_t> block_;
};

/// A sink rejected a write. `bytes_written` counts what made it out first.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::size_t bytes_written)
      : std::runtime_error(what), bytes_written_(bytes_written) {}

  std::size_t bytes_written() const noexcept { return bytes_written_; }

 private:
  std::size_t bytes_written_;
};

/// A translation table failed verification before use.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, std::optional<std::uint32_t> row)
      : std::runtime_error(what), row_(row) {}

  std::optional<std::uint32_t> row() const noexcept { return row_; }

 private:
  std::optional<std::uint32_t> row_;
};

/// Artifact header and supplied tables disagree on mode or layout.
class ModeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fbar
