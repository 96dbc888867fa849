// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/rng.hpp"

#include <cmath>

namespace pufage::rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

inline double to_open01(std::uint64_t u) {
  // 53 bits, shifted into (0, 1): never returns 0 or 1.
  return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

// Inverse normal CDF, rational approximation (P. Acklam), absolute error
// below 1.2e-9 over the full open interval. Plenty for Monte-Carlo work and
// several times cheaper than a Box-Muller pair.
double inverse_normal_cdf(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed,
                                        const std::array<std::uint32_t, 4>& counter) {
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  std::array<std::uint32_t, 4> c = counter;
  for (int r = 0; r < 10; ++r) {
    round_once(c, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

double uniform01(std::uint64_t seed, std::uint32_t stream, std::uint64_t element,
                 std::uint32_t draw) {
  const auto out = philox4x32(
      seed, {stream, static_cast<std::uint32_t>(element),
             static_cast<std::uint32_t>(element >> 32), draw});
  const std::uint64_t u =
      (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  return to_open01(u);
}

double normal(std::uint64_t seed, std::uint32_t stream, std::uint64_t element,
              std::uint32_t draw) {
  return inverse_normal_cdf(uniform01(seed, stream, element, draw));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t tag, std::uint64_t index) {
  const auto out = philox4x32(
      seed, {0xDEADBEEFu ^ tag, static_cast<std::uint32_t>(index),
             static_cast<std::uint32_t>(index >> 32), 0x5EEDu});
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace pufage::rng
