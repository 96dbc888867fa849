// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PUFAGE_BITCORE_HPP
#define PUFAGE_BITCORE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pufage {

// A cell address doubles as the challenge: reading cell `a` of the scanned
// region yields one response bit.
using CellAddress = std::uint32_t;

enum class AgingRole : std::uint8_t {
  kPreAging = 0,
  kPostAging = 1,
};

// Packed power-up bit vector. Bit i lives in byte i/8 at bit position i%8,
// independent of host endianness, so serialized readouts are bit-exact
// across platforms.
class ResponseVector {
 public:
  ResponseVector() = default;
  explicit ResponseVector(std::size_t length);

  std::size_t length() const { return length_; }
  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool value);

  // 64-bit view of the packed bits; unused high bits of the last word are
  // always zero.
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const ResponseVector&, const ResponseVector&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t length_ = 0;
};

// Repeated readouts of one device region under a single environment.
struct ReadoutSet {
  std::vector<ResponseVector> readouts;
  double temperature_k = 298.15;
  double voltage_mv = 3250.0;
  double effective_age_hours = 0.0;
  AgingRole role = AgingRole::kPreAging;

  std::size_t cell_count() const {
    return readouts.empty() ? 0 : readouts.front().length();
  }
  // Throws std::invalid_argument on mixed lengths or a pre-aging set that
  // claims a nonzero age.
  void validate() const;
};

std::size_t hamming_distance(const ResponseVector& a, const ResponseVector& b);

double fractional_hamming(const ResponseVector& a, const ResponseVector& b);

// Distance between two pre-aging re-evaluations of the same challenge set.
std::size_t intra_a_distance(const ResponseVector& reference, const ResponseVector& reeval,
                             AgingRole reference_role, AgingRole reeval_role);

// Distance between the pre-aging and post-aging responses to the same
// challenge set.
std::size_t inter_a_distance(const ResponseVector& pre, const ResponseVector& post,
                             AgingRole pre_role, AgingRole post_role);

// Binomial flip-probability estimator: mean fractional Hamming distance
// between `reference` and every readout in `observations`. With pre-aging
// observations this estimates p_intraA, with post-aging ones p_interA.
double estimate_p(const ResponseVector& reference, const ReadoutSet& observations);

// Projects a full readout onto a list of addresses, preserving list order.
ResponseVector project(const ResponseVector& full, std::span<const CellAddress> addresses);

}  // namespace pufage

#endif  // PUFAGE_BITCORE_HPP
