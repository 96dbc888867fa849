// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PUFAGE_DATAIO_HPP
#define PUFAGE_DATAIO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pufage/asr.hpp"
#include "pufage/bitcore.hpp"

namespace pufage {

// Readout dump format (.srpf), all integers little-endian:
//   magic "SRPF" | version u16 | device_id 16 bytes (zero padded)
//   | temperature_mk u32 | voltage_mv u16 | role u8
//   | effective_age_centihours u64 | readout_count u16 | cell_count u32
// followed by readout_count payload blocks of ceil(cell_count/8) bytes,
// bit i of a readout at byte i/8, bit position i%8.
inline constexpr char kReadoutMagic[4] = {'S', 'R', 'P', 'F'};
inline constexpr std::uint16_t kReadoutVersion = 1;
inline constexpr std::size_t kReadoutHeaderSize = 43;
inline constexpr std::size_t kDeviceIdBytes = 16;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

void write_readouts(const ReadoutSet& set, const std::string& device_id,
                    const std::filesystem::path& path);

std::pair<ReadoutSet, std::string> read_readouts(const std::filesystem::path& path);

// Checksum of a readout file's payload section (the packed readout bytes
// after the header), as stored in manifests.
std::uint64_t payload_checksum(const std::filesystem::path& path);

struct Manifest {
  struct Entry {
    std::string path;  // relative to the manifest's directory
    AgingRole role = AgingRole::kPreAging;
    double temperature_k = 0.0;
    std::string device_id;
    std::uint64_t checksum = 0;
  };
  std::vector<Entry> entries;
};

void write_manifest(const Manifest& manifest, const std::filesystem::path& path);

// Loads a manifest and verifies every entry's payload checksum against the
// referenced file. Throws ParseError on mismatch.
Manifest read_manifest(const std::filesystem::path& path);

// Enrollment profiles are UTF-8 JSON with a fixed key order:
// device_id, selection {N, rt_k, ht_k}, p_intra_est, p_intra_in_sample,
// p_inter_est (nullable), asrs as [address, reference_bit] pairs,
// created_at. Reals use shortest round-trip decimals.
void write_profile(const EnrollmentProfile& profile, const std::filesystem::path& path);
EnrollmentProfile read_profile(const std::filesystem::path& path);

// String-level codecs behind the file functions, handy for tests.
std::string profile_to_json(const EnrollmentProfile& profile);
EnrollmentProfile profile_from_json(const std::string& text);

}  // namespace pufage

#endif  // PUFAGE_DATAIO_HPP
