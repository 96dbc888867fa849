// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/bitcore.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace pufage {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_same_length(const ResponseVector& a, const ResponseVector& b) {
  require(a.length() == b.length(),
          "response length mismatch: " + std::to_string(a.length()) + " vs " +
              std::to_string(b.length()));
}

}  // namespace

ResponseVector::ResponseVector(std::size_t length)
    : words_((length + 63) / 64, 0), length_(length) {}

bool ResponseVector::bit(std::size_t i) const {
  require(i < length_, "bit index " + std::to_string(i) + " out of range [0, " +
                           std::to_string(length_) + ")");
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void ResponseVector::set_bit(std::size_t i, bool value) {
  require(i < length_, "bit index " + std::to_string(i) + " out of range [0, " +
                           std::to_string(length_) + ")");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void ReadoutSet::validate() const {
  for (const auto& r : readouts) {
    require(r.length() == readouts.front().length(),
            "readout set mixes response lengths");
  }
  require(effective_age_hours >= 0.0, "effective age must be non-negative");
  require(role != AgingRole::kPreAging || effective_age_hours == 0.0,
          "pre-aging readout set cannot carry a nonzero effective age");
}

std::size_t hamming_distance(const ResponseVector& a, const ResponseVector& b) {
  require_same_length(a, b);
  std::size_t distance = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    distance += std::popcount(wa[i] ^ wb[i]);
  }
  return distance;
}

double fractional_hamming(const ResponseVector& a, const ResponseVector& b) {
  require(a.length() > 0, "fractional Hamming distance needs nonzero length");
  return static_cast<double>(hamming_distance(a, b)) / static_cast<double>(a.length());
}

std::size_t intra_a_distance(const ResponseVector& reference, const ResponseVector& reeval,
                             AgingRole reference_role, AgingRole reeval_role) {
  require(reference_role == AgingRole::kPreAging && reeval_role == AgingRole::kPreAging,
          "intraA-distance requires two pre-aging readouts");
  return hamming_distance(reference, reeval);
}

std::size_t inter_a_distance(const ResponseVector& pre, const ResponseVector& post,
                             AgingRole pre_role, AgingRole post_role) {
  require(pre_role == AgingRole::kPreAging, "interA-distance: first readout must be pre-aging");
  require(post_role == AgingRole::kPostAging,
          "interA-distance: second readout must be post-aging");
  return hamming_distance(pre, post);
}

double estimate_p(const ResponseVector& reference, const ReadoutSet& observations) {
  require(!observations.readouts.empty(), "estimate_p needs at least one observation");
  double sum = 0.0;
  for (const auto& obs : observations.readouts) {
    sum += fractional_hamming(reference, obs);
  }
  return sum / static_cast<double>(observations.readouts.size());
}

ResponseVector project(const ResponseVector& full, std::span<const CellAddress> addresses) {
  ResponseVector out(addresses.size());
  for (std::size_t i = 0; i < addresses.size(); ++i) {
    out.set_bit(i, full.bit(addresses[i]));
  }
  return out;
}

}  // namespace pufage
