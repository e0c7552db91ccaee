#pragma once

// Size, entropy and accounting metrics, plus the independent audit of what
// each serialized channel actually carries.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fbar/gridfile.hpp"
#include "fbar/pairops.hpp"

namespace fbar {

class Tables;
class TranslationTable;

struct MetricsReport {
  std::size_t input_size = 0;
  std::size_t paper_size_1tt = 0;  // reported-size formula
  std::size_t paper_size_4tt = 0;
  std::size_t paper_accounted = 0;  // occupant stream actually written
  std::size_t honest_size = 0;      // address channel + tail
  std::size_t artifact_size = 0;    // every byte on disk
  double space_savings_paper = 0;
  double fbar_H = 0;      // bpB, from the written occupant stream
  double shannon_H0 = 0;  // bpc, log2 of distinct symbols
  double empirical_H = 0; // bits/byte
  ManipulationCount manipulation_total;
  double elapsed = 0;     // seconds
  double throughput = 0;  // bytes/second
};

/// Compressed size under the reported accounting: 1-TT counts one byte per
/// pair plus one block byte per 96 occupant entries; 4-TT counts one byte per
/// 8 input bytes.
std::size_t paper_size(std::size_t n, Mode mode) noexcept;

/// log2(m). Throws std::domain_error for m == 0.
double shannon_order0(std::size_t m);

std::size_t distinct_symbols(std::span<const std::uint8_t> data) noexcept;

/// Order-0 entropy of the byte frequencies; 0 for empty input.
double empirical_entropy(std::span<const std::uint8_t> data) noexcept;

/// Output bytes per 8 input bytes, as an exact fraction num/den.
struct ByteRatio {
  std::int64_t num = 8;
  std::int64_t den = 1;
};

/// H = log2(B) for 8:B. Throws std::domain_error for B <= 0.
double fbar_H(ByteRatio ratio);
/// 1 - 2^H / 8.
double savings_from_H(double H) noexcept;
/// 1 - B/8, computed exactly. Throws std::domain_error for B <= 0.
double savings_from_ratio(ByteRatio ratio);

/// 8 per unit before decompression, 0 after.
ManipulationCount manipulation_distance(std::uint64_t compressed_units, bool decompressed) noexcept;

struct ChannelBits {
  std::uint64_t occupant = 0;
  std::uint64_t address = 0;
  std::uint64_t tail = 0;
  std::uint64_t grid_region = 0;
};

/// Bits each channel carries for an n-byte input without row collisions.
ChannelBits channel_tally(std::size_t n, Mode mode) noexcept;

/// Two distinct inputs whose occupant streams are identical.
struct CollisionWitness {
  std::vector<std::uint8_t> input_a;
  std::vector<std::uint8_t> input_b;
  std::vector<std::uint8_t> occupant_stream;
};

struct AuditReport {
  bool bijection_ok = false;
  bool addressing_bijective = false;
  std::vector<std::uint32_t> offending_rows;  // zero-based, capped
  std::optional<CollisionWitness> collision_witness;
  ChannelBits channel_bits;  // for one two-byte pair
};

/// Enumerates all 65,536 pairs through the table and, independently, through
/// the canonical addressing; builds an occupant-only collision witness from
/// the inputs "aa" and "bb".
AuditReport pigeonhole_audit(const TranslationTable& tt);

struct ArtifactAudit {
  std::size_t input_size = 0;
  std::size_t paper_accounted = 0;
  std::size_t honest_payload = 0;
  bool honest_covers_input = false;
  /// Input that differs from the original yet yields the same occupant
  /// stream.
  std::optional<CollisionWitness> collision_witness;
};

/// Audits one artifact against its original input.
ArtifactAudit audit_artifact(std::span<const std::uint8_t> original,
                             std::span<const std::uint8_t> artifact, const Tables& tables);

std::string render_kv(const MetricsReport& report);
std::string render_table(const MetricsReport& report);

}  // namespace fbar
