// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PUFAGE_RNG_HPP
#define PUFAGE_RNG_HPP

#include <array>
#include <cstdint>

namespace pufage {

// Counter-based random streams (Philox-4x32-10). Every draw is a pure
// function of (seed, stream, element, draw), so results never depend on
// evaluation order or thread count.
namespace rng {

std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed,
                                        const std::array<std::uint32_t, 4>& counter);

// Uniform double in the open interval (0, 1).
double uniform01(std::uint64_t seed, std::uint32_t stream, std::uint64_t element,
                 std::uint32_t draw = 0);

// Standard normal via Box-Muller on one Philox block.
double normal(std::uint64_t seed, std::uint32_t stream, std::uint64_t element,
              std::uint32_t draw = 0);

// Stable sub-seed derivation, used to fan a user seed out into per-readout
// evaluation seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t tag, std::uint64_t index);

}  // namespace rng
}  // namespace pufage

#endif  // PUFAGE_RNG_HPP
