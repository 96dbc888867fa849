// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/run_config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pufage {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& value, const std::string& where) {
  double out = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw std::invalid_argument(where + ": not a number: '" + value + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& value, const std::string& where) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw std::invalid_argument(where + ": not an unsigned integer: '" + value + "'");
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  selection.validate();
  stress.validate();
  if (cell_count < 1) throw std::invalid_argument("cell_count must be >= 1");
  if (af_override && !(*af_override > 0.0)) {
    throw std::invalid_argument("af_override must be positive");
  }
  if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
}

std::string render_run_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "seed: " << c.seed << "\n";
  out << "cell_count: " << c.cell_count << "\n";
  out << "output_dir: " << c.output_dir << "\n";
  if (!c.device_id.empty()) out << "device_id: " << c.device_id << "\n";
  if (c.af_override) out << "af_override: " << fmt_double(*c.af_override) << "\n";
  out << "\n[model]\n";
  out << "sigma_mismatch_v: " << fmt_double(c.model.sigma_mismatch_v) << "\n";
  out << "sigma_noise_v: " << fmt_double(c.model.sigma_noise_v) << "\n";
  out << "sigma_temp_sens_v_per_k: " << fmt_double(c.model.sigma_temp_sens_v_per_k) << "\n";
  out << "sigma_aging_rate_v: " << fmt_double(c.model.sigma_aging_rate_v) << "\n";
  out << "time_exponent: " << fmt_double(c.model.time_exponent) << "\n";
  out << "reference_temperature_k: " << fmt_double(c.model.reference_temperature_k) << "\n";
  out << "reference_voltage_mv: " << fmt_double(c.model.reference_voltage_mv) << "\n";
  out << "\n[selection]\n";
  out << "n_reevals: " << c.selection.n_reevals << "\n";
  out << "rt_k: " << fmt_double(c.selection.rt_k) << "\n";
  out << "ht_k: " << fmt_double(c.selection.ht_k) << "\n";
  out << "\n[stress]\n";
  out << "v_stress_mv: " << fmt_double(c.stress.v_stress_mv) << "\n";
  out << "v_nominal_mv: " << fmt_double(c.stress.v_nominal_mv) << "\n";
  out << "t_stress_k: " << fmt_double(c.stress.t_stress_k) << "\n";
  out << "t_nominal_k: " << fmt_double(c.stress.t_nominal_k) << "\n";
  out << "alpha: " << fmt_double(c.stress.alpha) << "\n";
  out << "m: " << fmt_double(c.stress.m) << "\n";
  out << "e_aa_ev: " << fmt_double(c.stress.e_aa_ev) << "\n";
  out << "boltzmann_ev_per_k: " << fmt_double(c.stress.boltzmann_ev_per_k) << "\n";
  return out.str();
}

RunConfig parse_run_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": malformed section header: " + line);
      }
      section = line.substr(1, line.size() - 2);
      if (section != "run" && section != "model" && section != "selection" &&
          section != "stress") {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown section [" +
                                    section + "]");
      }
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 'key: value', got: " + line);
    }
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    const std::string where = section + "." + key;

    if (section == "run") {
      if (key == "seed") {
        config.seed = parse_u64(value, where);
      } else if (key == "cell_count") {
        config.cell_count = static_cast<std::uint32_t>(parse_u64(value, where));
      } else if (key == "output_dir") {
        config.output_dir = value;
      } else if (key == "device_id") {
        config.device_id = value;
      } else if (key == "af_override") {
        config.af_override = parse_double(value, where);
      } else {
        throw std::invalid_argument("unknown config field " + where);
      }
    } else if (section == "model") {
      if (key == "sigma_mismatch_v") {
        config.model.sigma_mismatch_v = parse_double(value, where);
      } else if (key == "sigma_noise_v") {
        config.model.sigma_noise_v = parse_double(value, where);
      } else if (key == "sigma_temp_sens_v_per_k") {
        config.model.sigma_temp_sens_v_per_k = parse_double(value, where);
      } else if (key == "sigma_aging_rate_v") {
        config.model.sigma_aging_rate_v = parse_double(value, where);
      } else if (key == "time_exponent") {
        config.model.time_exponent = parse_double(value, where);
      } else if (key == "reference_temperature_k") {
        config.model.reference_temperature_k = parse_double(value, where);
      } else if (key == "reference_voltage_mv") {
        config.model.reference_voltage_mv = parse_double(value, where);
      } else {
        throw std::invalid_argument("unknown config field " + where);
      }
    } else if (section == "selection") {
      if (key == "n_reevals") {
        config.selection.n_reevals = static_cast<std::size_t>(parse_u64(value, where));
      } else if (key == "rt_k") {
        config.selection.rt_k = parse_double(value, where);
      } else if (key == "ht_k") {
        config.selection.ht_k = parse_double(value, where);
      } else {
        throw std::invalid_argument("unknown config field " + where);
      }
    } else if (section == "stress") {
      if (key == "v_stress_mv") {
        config.stress.v_stress_mv = parse_double(value, where);
      } else if (key == "v_nominal_mv") {
        config.stress.v_nominal_mv = parse_double(value, where);
      } else if (key == "t_stress_k") {
        config.stress.t_stress_k = parse_double(value, where);
      } else if (key == "t_nominal_k") {
        config.stress.t_nominal_k = parse_double(value, where);
      } else if (key == "alpha") {
        config.stress.alpha = parse_double(value, where);
      } else if (key == "m") {
        config.stress.m = parse_double(value, where);
      } else if (key == "e_aa_ev") {
        config.stress.e_aa_ev = parse_double(value, where);
      } else if (key == "boltzmann_ev_per_k") {
        config.stress.boltzmann_ev_per_k = parse_double(value, where);
      } else {
        throw std::invalid_argument("unknown config field " + where);
      }
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": key outside any section: " + line);
    }
  }

  config.validate();
  return config;
}

void save_run_config(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << render_run_config(config);
  if (!out) throw std::runtime_error("write failure on " + path.string());
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace pufage
