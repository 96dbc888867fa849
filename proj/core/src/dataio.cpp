// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/dataio.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace pufage {

namespace {

using ordered_json = nlohmann::ordered_json;

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint16_t load_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t load_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::uint64_t load_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::size_t payload_bytes_per_readout(std::size_t cell_count) {
  return (cell_count + 7) / 8;
}

void pack_readout(const ResponseVector& readout, std::vector<std::uint8_t>& out) {
  const std::size_t bytes = payload_bytes_per_readout(readout.length());
  const auto words = readout.words();
  for (std::size_t b = 0; b < bytes; ++b) {
    out.push_back(static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8))));
  }
}

ResponseVector unpack_readout(const std::uint8_t* data, std::size_t cell_count) {
  ResponseVector out(cell_count);
  const std::size_t bytes = payload_bytes_per_readout(cell_count);
  auto words = out.words();
  for (std::size_t b = 0; b < bytes; ++b) {
    words[b / 8] |= static_cast<std::uint64_t>(data[b]) << (8 * (b % 8));
  }
  // clear padding bits past cell_count
  if (cell_count % 64 != 0) {
    words[words.size() - 1] &= (std::uint64_t{1} << (cell_count % 64)) - 1;
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

std::vector<std::uint8_t> encode_readouts(const ReadoutSet& set, const std::string& device_id) {
  set.validate();
  if (set.readouts.empty()) throw std::invalid_argument("refusing to write an empty readout set");
  if (device_id.size() > kDeviceIdBytes) {
    throw std::invalid_argument("device id longer than " + std::to_string(kDeviceIdBytes) +
                                " bytes: " + device_id);
  }
  if (set.readouts.size() > 0xFFFF) {
    throw std::invalid_argument("readout count exceeds format limit of 65535");
  }
  if (!(set.temperature_k >= 0.0) || set.temperature_k > 4294967.0 / 1000.0) {
    throw std::invalid_argument("temperature not encodable as u32 millikelvin: " +
                                std::to_string(set.temperature_k));
  }
  if (!(set.voltage_mv >= 0.0) || set.voltage_mv > 65535.0) {
    throw std::invalid_argument("voltage not encodable as u16 millivolts: " +
                                std::to_string(set.voltage_mv));
  }

  std::vector<std::uint8_t> out;
  const std::size_t cell_count = set.cell_count();
  out.reserve(kReadoutHeaderSize + set.readouts.size() * payload_bytes_per_readout(cell_count));

  out.insert(out.end(), kReadoutMagic, kReadoutMagic + 4);
  append_u16(out, kReadoutVersion);
  for (std::size_t i = 0; i < kDeviceIdBytes; ++i) {
    out.push_back(i < device_id.size() ? static_cast<std::uint8_t>(device_id[i]) : 0);
  }
  append_u32(out, static_cast<std::uint32_t>(std::llround(set.temperature_k * 1000.0)));
  append_u16(out, static_cast<std::uint16_t>(std::llround(set.voltage_mv)));
  out.push_back(static_cast<std::uint8_t>(set.role));
  append_u64(out, static_cast<std::uint64_t>(std::llround(set.effective_age_hours * 100.0)));
  append_u16(out, static_cast<std::uint16_t>(set.readouts.size()));
  append_u32(out, static_cast<std::uint32_t>(cell_count));

  for (const auto& readout : set.readouts) {
    pack_readout(readout, out);
  }
  return out;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001B3ull;
  }
  return hash;
}

void write_readouts(const ReadoutSet& set, const std::string& device_id,
                    const std::filesystem::path& path) {
  write_file(path, encode_readouts(set, device_id));
}

std::pair<ReadoutSet, std::string> read_readouts(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (bytes.size() < kReadoutHeaderSize) {
    throw ParseError(path.string() + ": not a readout file (only " +
                     std::to_string(bytes.size()) + " bytes)");
  }
  if (std::memcmp(bytes.data(), kReadoutMagic, 4) != 0) {
    throw ParseError(path.string() + ": not a readout file (bad magic)");
  }
  const std::uint16_t version = load_u16(bytes.data() + 4);
  if (version != kReadoutVersion) {
    throw ParseError(path.string() + ": unsupported version " + std::to_string(version));
  }

  std::string device_id(reinterpret_cast<const char*>(bytes.data() + 6), kDeviceIdBytes);
  device_id.erase(device_id.find_last_not_of('\0') + 1);

  ReadoutSet set;
  set.temperature_k = static_cast<double>(load_u32(bytes.data() + 22)) / 1000.0;
  set.voltage_mv = static_cast<double>(load_u16(bytes.data() + 26));
  const std::uint8_t role = bytes[28];
  if (role > 1) throw ParseError(path.string() + ": invalid role byte " + std::to_string(role));
  set.role = static_cast<AgingRole>(role);
  set.effective_age_hours = static_cast<double>(load_u64(bytes.data() + 29)) / 100.0;
  const std::uint16_t readout_count = load_u16(bytes.data() + 37);
  const std::uint32_t cell_count = load_u32(bytes.data() + 39);

  const std::size_t per_readout = payload_bytes_per_readout(cell_count);
  const std::size_t expected = kReadoutHeaderSize + readout_count * per_readout;
  if (bytes.size() != expected) {
    throw ParseError(path.string() + ": payload length mismatch, expected " +
                     std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));
  }

  set.readouts.reserve(readout_count);
  for (std::size_t r = 0; r < readout_count; ++r) {
    set.readouts.push_back(
        unpack_readout(bytes.data() + kReadoutHeaderSize + r * per_readout, cell_count));
  }
  set.validate();
  return {std::move(set), std::move(device_id)};
}

std::uint64_t payload_checksum(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (bytes.size() < kReadoutHeaderSize) {
    throw ParseError(path.string() + ": not a readout file (only " +
                     std::to_string(bytes.size()) + " bytes)");
  }
  return fnv1a64(std::span(bytes).subspan(kReadoutHeaderSize));
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  ordered_json doc;
  doc["entries"] = ordered_json::array();
  for (const auto& e : manifest.entries) {
    ordered_json entry;
    entry["path"] = e.path;
    entry["role"] = e.role == AgingRole::kPreAging ? "pre-aging" : "post-aging";
    entry["temperature_k"] = e.temperature_k;
    entry["device_id"] = e.device_id;
    entry["checksum"] = e.checksum;
    doc["entries"].push_back(std::move(entry));
  }
  const std::string text = doc.dump(2) + "\n";
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Manifest read_manifest(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError(path.string() + ": entries: missing or not an array");
  }

  Manifest manifest;
  const auto base = path.parent_path();
  std::size_t index = 0;
  for (const auto& item : doc["entries"]) {
    const std::string where = path.string() + ": entries[" + std::to_string(index++) + "]";
    if (!item.is_object()) throw ParseError(where + ": not an object");
    Manifest::Entry entry;
    try {
      entry.path = item.at("path").get<std::string>();
      const std::string role = item.at("role").get<std::string>();
      if (role == "pre-aging") {
        entry.role = AgingRole::kPreAging;
      } else if (role == "post-aging") {
        entry.role = AgingRole::kPostAging;
      } else {
        throw ParseError(where + ".role: unknown value '" + role + "'");
      }
      entry.temperature_k = item.at("temperature_k").get<double>();
      entry.device_id = item.at("device_id").get<std::string>();
      entry.checksum = item.at("checksum").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    const std::uint64_t actual = payload_checksum(base / entry.path);
    if (actual != entry.checksum) {
      throw ParseError(where + ": checksum mismatch for " + entry.path + " (stored " +
                       std::to_string(entry.checksum) + ", actual " + std::to_string(actual) +
                       ")");
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

std::string profile_to_json(const EnrollmentProfile& profile) {
  profile.validate();
  ordered_json doc;
  doc["device_id"] = profile.device_id;
  doc["selection"] = {{"N", profile.selection.n_reevals},
                      {"rt_k", profile.selection.rt_k},
                      {"ht_k", profile.selection.ht_k}};
  doc["p_intra_est"] = profile.p_intra_est;
  doc["p_intra_in_sample"] = profile.p_intra_in_sample;
  if (profile.p_inter_est) {
    doc["p_inter_est"] = *profile.p_inter_est;
  } else {
    doc["p_inter_est"] = nullptr;
  }
  doc["asrs"] = ordered_json::array();
  for (const AsrRecord& r : profile.asrs) {
    doc["asrs"].push_back({r.address, r.reference_bit});
  }
  doc["created_at"] = profile.created_at;
  return doc.dump(2) + "\n";
}

EnrollmentProfile profile_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("profile: ") + e.what());
  }

  const auto need = [&](const ordered_json& node, const char* key,
                        const std::string& where) -> const ordered_json& {
    if (!node.contains(key)) throw ParseError(where + key + ": missing");
    return node.at(key);
  };

  EnrollmentProfile profile;
  try {
    profile.device_id = need(doc, "device_id", "").get<std::string>();
    const auto& sel = need(doc, "selection", "");
    profile.selection.n_reevals = need(sel, "N", "selection.").get<std::size_t>();
    profile.selection.rt_k = need(sel, "rt_k", "selection.").get<double>();
    profile.selection.ht_k = need(sel, "ht_k", "selection.").get<double>();
    profile.p_intra_est = need(doc, "p_intra_est", "").get<double>();
    profile.p_intra_in_sample = need(doc, "p_intra_in_sample", "").get<bool>();
    const auto& inter = need(doc, "p_inter_est", "");
    if (!inter.is_null()) profile.p_inter_est = inter.get<double>();
    profile.created_at = need(doc, "created_at", "").get<std::string>();

    const auto& asrs = need(doc, "asrs", "");
    if (!asrs.is_array()) throw ParseError("asrs: not an array");
    std::size_t i = 0;
    for (const auto& item : asrs) {
      const std::string where = "asrs[" + std::to_string(i) + "]";
      if (!item.is_array() || item.size() != 2) {
        throw ParseError(where + ": expected [address, reference_bit]");
      }
      AsrRecord record;
      record.address = item.at(0).get<CellAddress>();
      const auto bit = item.at(1).get<std::uint32_t>();
      if (bit > 1) throw ParseError(where + ".reference_bit: must be 0 or 1, got " +
                                    std::to_string(bit));
      record.reference_bit = static_cast<std::uint8_t>(bit);
      if (!profile.asrs.empty() && profile.asrs.back().address >= record.address) {
        throw ParseError(where + ".address: duplicate or out-of-order address " +
                         std::to_string(record.address));
      }
      profile.asrs.push_back(record);
      ++i;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("profile: ") + e.what());
  }

  try {
    profile.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("profile: ") + e.what());
  }
  return profile;
}

void write_profile(const EnrollmentProfile& profile, const std::filesystem::path& path) {
  const std::string text = profile_to_json(profile);
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

EnrollmentProfile read_profile(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  try {
    return profile_from_json(std::string(bytes.begin(), bytes.end()));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace pufage
