// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/aging_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pufage/rng.hpp"

namespace pufage {

namespace {

enum Stream : std::uint32_t {
  kStreamMismatch = 0,
  kStreamTempSens = 1,
  kStreamAgingRate = 2,
  kStreamNoise = 3,
};

// Share of the aging-rate draw aligned with the cell's thermal opposition.
constexpr double kAgingThermalCoupling = 0.9;

constexpr std::uint32_t kTagTemperatureSweep = 0x7E3Cu;
constexpr std::uint64_t kCalibrationDeviceSeed = 0x0CA1B7A7Edull;
constexpr std::uint32_t kTagCalibrationEval = 0xCA1Bu;

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void ModelConfig::validate() const {
  require(sigma_mismatch_v > 0.0, "sigma_mismatch_v must be positive");
  require(sigma_noise_v > 0.0, "sigma_noise_v must be positive");
  require(sigma_temp_sens_v_per_k > 0.0, "sigma_temp_sens_v_per_k must be positive");
  require(sigma_aging_rate_v > 0.0, "sigma_aging_rate_v must be positive");
  require(time_exponent > 0.0 && time_exponent < 1.0,
          "time_exponent must lie in (0, 1)");
  require(reference_temperature_k > 0.0, "reference temperature must be positive kelvin");
  require(reference_voltage_mv > 0.0, "reference voltage must be positive");
}

void StressProfile::validate() const {
  require(t_stress_k > 0.0 && t_nominal_k > 0.0, "temperatures must be positive kelvin");
  require(v_nominal_mv > 0.0, "nominal voltage must be positive");
  require(v_stress_mv > 0.0, "stress voltage must be positive");
  require(m > 0.0, "time exponent must be positive");
  require(boltzmann_ev_per_k > 0.0, "Boltzmann constant must be positive");
}

DeviceModel new_device(std::uint64_t seed, const ModelConfig& config, std::size_t cell_count) {
  config.validate();
  require(cell_count >= 1, "cell_count must be >= 1");

  DeviceModel device;
  device.seed = seed;
  device.config = config;
  device.effective_age_hours = 0.0;
  device.cells.resize(cell_count);

  const double mix = std::sqrt(1.0 - kAgingThermalCoupling * kAgingThermalCoupling);
  for (std::size_t i = 0; i < cell_count; ++i) {
    const double z_m = rng::normal(seed, kStreamMismatch, i);
    const double z_c = rng::normal(seed, kStreamTempSens, i);
    const double z_r = rng::normal(seed, kStreamAgingRate, i);

    CellParams& cell = device.cells[i];
    cell.mismatch_v = config.sigma_mismatch_v * z_m;
    cell.temp_sensitivity_v_per_k = config.sigma_temp_sens_v_per_k * z_c;
    // Thermal opposition of this cell, in standard units: positive when the
    // temperature term fights the established power-up preference.
    const double opposition = -sign_of(z_m) * z_c;
    cell.aging_rate_v = config.sigma_aging_rate_v *
                        std::fabs(kAgingThermalCoupling * opposition + mix * z_r);
    cell.accumulated_shift_v = 0.0;
  }
  return device;
}

ResponseVector power_up(const DeviceModel& device, double temperature_k,
                        std::uint64_t eval_seed) {
  require(temperature_k > 0.0, "temperature must be positive kelvin");
  const double dt = temperature_k - device.config.reference_temperature_k;
  const double sigma_noise = device.config.sigma_noise_v;
  const std::size_t cells = device.cell_count();

  ResponseVector out(cells);
  const auto words = out.words();
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    const CellParams& cell = device.cells[i];
    const double noise = sigma_noise * rng::normal(eval_seed, kStreamNoise, i);
    const double argument = cell.mismatch_v + cell.temp_sensitivity_v_per_k * dt -
                            sign_of(cell.mismatch_v) * cell.accumulated_shift_v + noise;
    word |= static_cast<std::uint64_t>(argument > 0.0) << (i % 64);
    if (i % 64 == 63) {
      words[i / 64] = word;
      word = 0;
    }
  }
  if (cells % 64 != 0) {
    words[cells / 64] = word;
  }
  return out;
}

double acceleration_factor(const StressProfile& profile) {
  profile.validate();
  const double voltage_term =
      std::pow(profile.v_stress_mv / profile.v_nominal_mv, profile.alpha / profile.m);
  const double thermal_term =
      std::exp((profile.e_aa_ev / profile.boltzmann_ev_per_k) *
               (1.0 / profile.t_stress_k - 1.0 / profile.t_nominal_k) / profile.m);
  return voltage_term * thermal_term;
}

DeviceModel age_with_factor(const DeviceModel& device, double stress_hours, double factor) {
  require(stress_hours >= 0.0, "stress_hours must be non-negative");
  require(factor > 0.0, "acceleration factor must be positive");
  if (stress_hours == 0.0) return device;

  DeviceModel aged = device;
  aged.effective_age_hours = device.effective_age_hours + stress_hours * factor;
  const double t_pow = std::pow(aged.effective_age_hours, device.config.time_exponent);
  for (auto& cell : aged.cells) {
    cell.accumulated_shift_v = cell.aging_rate_v * t_pow;
  }
  return aged;
}

DeviceModel age(const DeviceModel& device, double stress_hours, const StressProfile& profile) {
  return age_with_factor(device, stress_hours, acceleration_factor(profile));
}

ModelConfig calibrate(const ModelConfig& config, double target_p_intra, std::size_t trials) {
  config.validate();
  require(target_p_intra > 0.0 && target_p_intra < 0.5,
          "target p_intra must lie in (0, 0.5)");
  require(trials >= 1, "trials must be >= 1");

  constexpr int kReevals = 4;
  const auto measure = [&](double sigma_noise) {
    ModelConfig candidate = config;
    candidate.sigma_noise_v = sigma_noise;
    const DeviceModel device = new_device(kCalibrationDeviceSeed, candidate, trials);
    const double t_ref = candidate.reference_temperature_k;
    const ResponseVector reference =
        power_up(device, t_ref, rng::derive_seed(kCalibrationDeviceSeed, kTagCalibrationEval, 0));
    double sum = 0.0;
    for (int j = 1; j <= kReevals; ++j) {
      const ResponseVector reeval =
          power_up(device, t_ref, rng::derive_seed(kCalibrationDeviceSeed, kTagCalibrationEval,
                                                   static_cast<std::uint64_t>(j)));
      sum += fractional_hamming(reference, reeval);
    }
    return sum / kReevals;
  };

  double lo = config.sigma_mismatch_v * 1e-9;
  double hi = config.sigma_mismatch_v * 8.0;
  double mid = config.sigma_noise_v;
  for (int iter = 0; iter < 64; ++iter) {
    const double measured = measure(mid);
    if (std::fabs(measured - target_p_intra) <= 0.005) {
      ModelConfig out = config;
      out.sigma_noise_v = mid;
      return out;
    }
    if (measured < target_p_intra) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
  }
  throw std::runtime_error("calibration failed: target p_intra " +
                           std::to_string(target_p_intra) +
                           " not reachable within 64 bisection steps");
}

std::vector<ReadoutSet> temperature_readout_set(const DeviceModel& device,
                                                std::span<const double> temperatures_k,
                                                std::size_t repeats, std::uint64_t seed) {
  require(repeats >= 1, "repeats must be >= 1");
  std::vector<ReadoutSet> sets;
  sets.reserve(temperatures_k.size());
  for (std::size_t t = 0; t < temperatures_k.size(); ++t) {
    ReadoutSet set;
    set.temperature_k = temperatures_k[t];
    set.voltage_mv = device.config.reference_voltage_mv;
    set.effective_age_hours = device.effective_age_hours;
    set.role = device.effective_age_hours > 0.0 ? AgingRole::kPostAging : AgingRole::kPreAging;
    set.readouts.reserve(repeats);
    for (std::size_t j = 0; j < repeats; ++j) {
      const std::uint64_t eval_seed =
          rng::derive_seed(seed, kTagTemperatureSweep, t * 0x10000ull + j);
      set.readouts.push_back(power_up(device, temperatures_k[t], eval_seed));
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace pufage
