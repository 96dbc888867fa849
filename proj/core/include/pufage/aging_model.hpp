// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PUFAGE_AGING_MODEL_HPP
#define PUFAGE_AGING_MODEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pufage/bitcore.hpp"

namespace pufage {

// Statistical knobs of the simulated SRAM region. The shipped defaults are
// calibrated so a fresh device shows ~6% repeat-readout flips at the
// reference corner and a ~1% population-level increase after three weeks of
// effective degradation; calibrate() is the normative way to re-derive the
// noise scale for other targets.
struct ModelConfig {
  double sigma_mismatch_v = 0.030;
  double sigma_noise_v = 4.03e-3;
  double sigma_temp_sens_v_per_k = 1.2e-4;
  double sigma_aging_rate_v = 4.38e-4;  // volts per hour^time_exponent
  double time_exponent = 0.25;
  double reference_temperature_k = 298.15;
  double reference_voltage_mv = 3250.0;

  void validate() const;
};

// Thermal over-stress description for mapping oven hours onto effective
// hours of nominal-condition degradation.
struct StressProfile {
  double v_stress_mv = 3250.0;
  double v_nominal_mv = 3250.0;
  double t_stress_k = 353.15;
  double t_nominal_k = 298.15;
  double alpha = 3.5;          // gate voltage exponent
  double m = 0.25;             // time exponent
  double e_aa_ev = -0.02;      // apparent activation energy
  double boltzmann_ev_per_k = 8.62e-5;

  void validate() const;
};

struct CellParams {
  double mismatch_v = 0.0;           // effective threshold-voltage imbalance
  double temp_sensitivity_v_per_k = 0.0;
  double aging_rate_v = 0.0;         // volts per hour^m, >= 0
  double accumulated_shift_v = 0.0;  // current degradation magnitude, >= 0
};

struct DeviceModel {
  std::vector<CellParams> cells;
  std::uint64_t seed = 0;
  ModelConfig config;
  double effective_age_hours = 0.0;

  std::size_t cell_count() const { return cells.size(); }
};

// Instantiates a device from a seed. Per-cell parameters come from
// counter-based streams, so the same (seed, index) always yields the same
// cell regardless of device size or evaluation order. The aging-rate draw
// is correlated with how strongly the cell's thermal response opposes its
// power-up preference -- the same stress mechanism drives both -- while its
// marginal stays half-normal and the temperature-sensitivity marginal stays
// normal.
DeviceModel new_device(std::uint64_t seed, const ModelConfig& config, std::size_t cell_count);

// One full power-up readout. Cell i reads 1 iff
//   mismatch + temp_sensitivity*(T - T_ref) - sign(mismatch)*shift + noise > 0
// with fresh noise drawn per (eval_seed, i). The shift term pushes every
// cell away from its established preference.
ResponseVector power_up(const DeviceModel& device, double temperature_k,
                        std::uint64_t eval_seed);

// (V_stress/V_nominal)^(alpha/m) * exp((E_aa/k) * (1/T_stress - 1/T_nominal) / m),
// evaluated literally.
double acceleration_factor(const StressProfile& profile);

// Applies stress_hours of over-stress: effective age grows by
// stress_hours * AF(profile) and every cell's accumulated shift becomes
// aging_rate * effective_age^m. Splitting a stress interval changes nothing.
DeviceModel age(const DeviceModel& device, double stress_hours, const StressProfile& profile);

// Same, with an externally supplied acceleration factor.
DeviceModel age_with_factor(const DeviceModel& device, double stress_hours, double factor);

// Bisects the noise scale until a fresh device's measured repeat-readout
// flip rate at the reference corner lands within +-0.005 of the target.
// `trials` is the Monte-Carlo cell count. Throws std::runtime_error if 64
// bisection steps cannot reach the target.
ModelConfig calibrate(const ModelConfig& config, double target_p_intra, std::size_t trials);

// One readout set per temperature, each holding `repeats` power-ups under
// evaluation seeds fanned out from `seed`.
std::vector<ReadoutSet> temperature_readout_set(const DeviceModel& device,
                                                std::span<const double> temperatures_k,
                                                std::size_t repeats, std::uint64_t seed);

}  // namespace pufage

#endif  // PUFAGE_AGING_MODEL_HPP
