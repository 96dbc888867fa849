// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/dataio.hpp"

#include <fstream>
#include <random>

#include <doctest.h>

#include "test_util.hpp"

using namespace pufage;
using pufage::test::TempDir;

namespace {

std::mt19937_64 g_gen(2026);

// Random set with metadata restricted to the wire grid (millikelvin,
// centihours, integral millivolts), so round-trips are value-exact.
ReadoutSet random_set(std::size_t max_cells = 200) {
  ReadoutSet set;
  const std::size_t cells = 1 + g_gen() % max_cells;
  const std::size_t count = 1 + g_gen() % 5;
  for (std::size_t r = 0; r < count; ++r) {
    set.readouts.push_back(pufage::test::random_vector(g_gen, cells));
  }
  set.temperature_k = static_cast<double>(200000 + g_gen() % 200000) / 1000.0;
  set.voltage_mv = static_cast<double>(1000 + g_gen() % 4000);
  set.role = (g_gen() % 2) ? AgingRole::kPostAging : AgingRole::kPreAging;
  set.effective_age_hours =
      set.role == AgingRole::kPreAging ? 0.0 : static_cast<double>(g_gen() % 1000000) / 100.0;
  return set;
}

std::string random_device_id() {
  static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789-";
  const std::size_t len = g_gen() % 17;
  std::string id;
  for (std::size_t i = 0; i < len; ++i) id.push_back(alphabet[g_gen() % (sizeof alphabet - 1)]);
  return id;
}

EnrollmentProfile random_profile() {
  EnrollmentProfile profile;
  profile.device_id = random_device_id();
  profile.selection.n_reevals = 1 + g_gen() % 12;
  profile.selection.rt_k = 298.15;
  profile.selection.ht_k = 353.15;
  const std::size_t count = 1 + g_gen() % 64;
  CellAddress address = 0;
  for (std::size_t i = 0; i < count; ++i) {
    address += 1 + g_gen() % 50;
    profile.asrs.push_back({address, static_cast<std::uint8_t>(g_gen() % 2)});
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  profile.p_intra_est = unit(g_gen);
  profile.p_intra_in_sample = g_gen() % 2;
  if (g_gen() % 2) profile.p_inter_est = unit(g_gen);
  profile.created_at = "2026-08-08T12:00:00Z";
  return profile;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_SUITE_BEGIN("dataio");

TEST_CASE("readout files round-trip exactly") {
  TempDir dir("readout_roundtrip");
  const auto path = dir.path() / "set.srpf";
  for (int trial = 0; trial < 1000; ++trial) {
    const ReadoutSet original = random_set();
    const std::string device_id = random_device_id();
    write_readouts(original, device_id, path);
    const auto [loaded, loaded_id] = read_readouts(path);
    REQUIRE(loaded_id == device_id);
    REQUIRE(loaded.readouts == original.readouts);
    REQUIRE(loaded.temperature_k == original.temperature_k);
    REQUIRE(loaded.voltage_mv == original.voltage_mv);
    REQUIRE(loaded.role == original.role);
    REQUIRE(loaded.effective_age_hours == original.effective_age_hours);
  }
}

TEST_CASE("payload size matches the header arithmetic") {
  TempDir dir("payload_size");
  ReadoutSet set;
  for (int r = 0; r < 9; ++r) {
    set.readouts.emplace_back(262144);
  }
  const auto path = dir.path() / "big.srpf";
  write_readouts(set, "dev", path);
  CHECK(std::filesystem::file_size(path) == kReadoutHeaderSize + 9 * 32768);
}

TEST_CASE("truncated payload names expected and actual sizes") {
  TempDir dir("truncated");
  const auto path = dir.path() / "set.srpf";
  ReadoutSet set;
  set.readouts = {pufage::test::bits("10110101"), pufage::test::bits("00110101")};
  write_readouts(set, "dev", path);

  auto bytes = slurp(path);
  bytes.pop_back();
  spit(path, bytes);
  CHECK_THROWS_WITH_AS(read_readouts(path), doctest::Contains("length mismatch"), ParseError);
  CHECK_THROWS_WITH_AS(read_readouts(path), doctest::Contains("expected 45"), ParseError);
}

TEST_CASE("wrong magic and unsupported versions are distinguished") {
  TempDir dir("magic");
  const auto path = dir.path() / "set.srpf";
  ReadoutSet set;
  set.readouts = {pufage::test::bits("1011")};
  write_readouts(set, "dev", path);

  auto bytes = slurp(path);
  auto corrupted = bytes;
  corrupted[0] = 'X';
  spit(path, corrupted);
  CHECK_THROWS_WITH_AS(read_readouts(path), doctest::Contains("not a readout file"), ParseError);

  corrupted = bytes;
  corrupted[4] = 2;  // version low byte
  spit(path, corrupted);
  CHECK_THROWS_WITH_AS(read_readouts(path), doctest::Contains("unsupported version 2"),
                       ParseError);

  corrupted = bytes;
  corrupted[28] = 7;  // role byte
  spit(path, corrupted);
  CHECK_THROWS_WITH_AS(read_readouts(path), doctest::Contains("invalid role"), ParseError);
}

TEST_CASE("writer rejects invalid inputs") {
  TempDir dir("writer_reject");
  ReadoutSet empty;
  CHECK_THROWS_AS(write_readouts(empty, "dev", dir.path() / "x.srpf"), std::invalid_argument);

  ReadoutSet set;
  set.readouts = {pufage::test::bits("1")};
  CHECK_THROWS_AS(write_readouts(set, "this-device-id-is-way-too-long", dir.path() / "x.srpf"),
                  std::invalid_argument);

  ReadoutSet cold = set;
  cold.temperature_k = -10.0;
  CHECK_THROWS_WITH_AS(write_readouts(cold, "dev", dir.path() / "x.srpf"),
                       doctest::Contains("millikelvin"), std::invalid_argument);

  ReadoutSet hot_wire = set;
  hot_wire.voltage_mv = 70000.0;
  CHECK_THROWS_WITH_AS(write_readouts(hot_wire, "dev", dir.path() / "x.srpf"),
                       doctest::Contains("millivolts"), std::invalid_argument);
}

TEST_CASE("missing files surface as io errors with the path") {
  CHECK_THROWS_WITH_AS(read_readouts("/nonexistent/nowhere.srpf"),
                       doctest::Contains("/nonexistent/nowhere.srpf"), IoError);
}

TEST_CASE("fnv1a64 matches frozen reference values") {
  const std::uint8_t empty[] = {0};
  CHECK(fnv1a64({empty, 0}) == 0xCBF29CE484222325ull);
  const std::uint8_t a[] = {'a'};
  CHECK(fnv1a64({a, 1}) == 0xAF63DC4C8601EC8Cull);
  const std::uint8_t foobar[] = {'f', 'o', 'o', 'b', 'a', 'r'};
  CHECK(fnv1a64({foobar, 6}) == 0x85944171F73967E8ull);
}

TEST_CASE("manifest round-trip verifies checksums") {
  TempDir dir("manifest");
  ReadoutSet set;
  set.readouts = {pufage::test::bits("10110101"), pufage::test::bits("11110000")};
  write_readouts(set, "dev-a", dir.path() / "a.srpf");

  Manifest manifest;
  manifest.entries.push_back(
      {"a.srpf", set.role, set.temperature_k, "dev-a", payload_checksum(dir.path() / "a.srpf")});
  write_manifest(manifest, dir.path() / "manifest.json");

  const Manifest loaded = read_manifest(dir.path() / "manifest.json");
  REQUIRE(loaded.entries.size() == 1);
  CHECK(loaded.entries[0].path == "a.srpf");
  CHECK(loaded.entries[0].device_id == "dev-a");
  CHECK(loaded.entries[0].checksum == manifest.entries[0].checksum);

  // flip one payload bit: the checksum check must fire
  auto bytes = slurp(dir.path() / "a.srpf");
  bytes.back() ^= 1;
  spit(dir.path() / "a.srpf", bytes);
  CHECK_THROWS_WITH_AS(read_manifest(dir.path() / "manifest.json"),
                       doctest::Contains("checksum mismatch"), ParseError);
}

TEST_CASE("profiles round-trip exactly") {
  TempDir dir("profile_roundtrip");
  const auto path = dir.path() / "profile.json";
  for (int trial = 0; trial < 1000; ++trial) {
    const EnrollmentProfile original = random_profile();
    write_profile(original, path);
    const EnrollmentProfile loaded = read_profile(path);
    REQUIRE(loaded.device_id == original.device_id);
    REQUIRE(loaded.selection.n_reevals == original.selection.n_reevals);
    REQUIRE(loaded.selection.rt_k == original.selection.rt_k);
    REQUIRE(loaded.selection.ht_k == original.selection.ht_k);
    REQUIRE(loaded.p_intra_est == original.p_intra_est);
    REQUIRE(loaded.p_intra_in_sample == original.p_intra_in_sample);
    REQUIRE(loaded.p_inter_est == original.p_inter_est);
    REQUIRE(loaded.asrs == original.asrs);
    REQUIRE(loaded.created_at == original.created_at);
  }
}

TEST_CASE("profile keys keep their documented order") {
  EnrollmentProfile profile = random_profile();
  profile.p_inter_est.reset();
  const std::string text = profile_to_json(profile);
  const auto pos = [&](const char* key) { return text.find(key); };
  CHECK(pos("\"device_id\"") < pos("\"selection\""));
  CHECK(pos("\"selection\"") < pos("\"p_intra_est\""));
  CHECK(pos("\"p_intra_est\"") < pos("\"p_intra_in_sample\""));
  CHECK(pos("\"p_intra_in_sample\"") < pos("\"p_inter_est\""));
  CHECK(pos("\"p_inter_est\"") < pos("\"asrs\""));
  CHECK(pos("\"asrs\"") < pos("\"created_at\""));
  CHECK(text.find("\"p_inter_est\": null") != std::string::npos);
}

TEST_CASE("profile schema violations carry field paths") {
  EnrollmentProfile twice = random_profile();
  twice.asrs.push_back(twice.asrs.back());
  CHECK_THROWS_AS(profile_to_json(twice), std::invalid_argument);

  std::string hand_built = R"({
    "device_id": "d",
    "selection": {"N": 3, "rt_k": 298.15, "ht_k": 353.15},
    "p_intra_est": 0.1,
    "p_intra_in_sample": false,
    "p_inter_est": null,
    "asrs": [[4, 1], [4, 0]],
    "created_at": "1970-01-01T00:00:00Z"
  })";
  CHECK_THROWS_WITH_AS(profile_from_json(hand_built), doctest::Contains("asrs[1]"), ParseError);

  std::string bad_bit = hand_built;
  bad_bit.replace(bad_bit.find("[4, 0]"), 6, "[9, 2]");
  CHECK_THROWS_WITH_AS(profile_from_json(bad_bit), doctest::Contains("reference_bit"),
                       ParseError);

  std::string missing = hand_built;
  missing.replace(missing.find("\"p_intra_est\""), 13, "\"p_intra_estX\"");
  CHECK_THROWS_WITH_AS(profile_from_json(missing), doctest::Contains("p_intra_est"), ParseError);
}

TEST_CASE("golden readout file parses to the frozen fixture") {
  const auto [set, device_id] = read_readouts(std::filesystem::path(PUFAGE_GOLDEN_DIR) /
                                              "readout_v1.srpf");
  CHECK(device_id == "golden-dev");
  CHECK(set.temperature_k == 298.15);
  CHECK(set.voltage_mv == 3250.0);
  CHECK(set.role == AgingRole::kPreAging);
  CHECK(set.effective_age_hours == 0.0);
  REQUIRE(set.readouts.size() == 2);
  REQUIRE(set.readouts[0].length() == 24);
  CHECK(set.readouts[0] == pufage::test::bits("1011_0010_0000_1111_0101_0101"));
  CHECK(set.readouts[1] == pufage::test::bits("0000_0000_1111_1111_0011_0011"));
  CHECK(payload_checksum(std::filesystem::path(PUFAGE_GOLDEN_DIR) / "readout_v1.srpf") ==
        fnv1a64(std::span<const std::uint8_t>(
            std::array<std::uint8_t, 6>{0x4D, 0xF0, 0xAA, 0x00, 0xFF, 0xCC}.data(), 6)));
}

TEST_CASE("golden profile parses to the frozen fixture") {
  const EnrollmentProfile profile =
      read_profile(std::filesystem::path(PUFAGE_GOLDEN_DIR) / "profile_v1.json");
  CHECK(profile.device_id == "golden-dev");
  CHECK(profile.selection.n_reevals == 9);
  CHECK(profile.p_intra_est == 0.0926);
  REQUIRE(profile.p_inter_est.has_value());
  CHECK(*profile.p_inter_est == 0.1578);
  REQUIRE(profile.asrs.size() == 3);
  CHECK(profile.asrs[0] == AsrRecord{7, 1});
  CHECK(profile.asrs[1] == AsrRecord{100, 0});
  CHECK(profile.asrs[2] == AsrRecord{262143, 1});
  CHECK(profile.created_at == "2026-01-15T09:30:00Z");
}

TEST_SUITE_END();
