// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PUFAGE_RUN_CONFIG_HPP
#define PUFAGE_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "pufage/aging_model.hpp"
#include "pufage/asr.hpp"

namespace pufage {

// Everything a simulation run depends on. Saving and re-running a RunConfig
// reproduces every output byte for byte.
struct RunConfig {
  std::uint64_t seed = 1;
  std::uint32_t cell_count = 262144;
  std::string output_dir = "out";
  std::string device_id;  // empty: derived from the seed
  // Replaces the computed acceleration factor when mapping stress hours to
  // effective hours (the literal formula value stays reported alongside).
  std::optional<double> af_override;
  ModelConfig model;
  SelectionConfig selection;
  StressProfile stress;

  void validate() const;
};

// Plain-text round-trip: `key: value` lines under [run], [model],
// [selection] and [stress] sections, '#' comments. Unknown sections or keys
// are rejected by name.
std::string render_run_config(const RunConfig& config);
RunConfig parse_run_config(const std::string& text);

void save_run_config(const RunConfig& config, const std::filesystem::path& path);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace pufage

#endif  // PUFAGE_RUN_CONFIG_HPP
