// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PUFAGE_ASR_HPP
#define PUFAGE_ASR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pufage/bitcore.hpp"
#include "pufage/detection.hpp"

namespace pufage {

// Provisioning parameters: every response is re-evaluated n_reevals times at
// the room corner and n_reevals times at the hot corner.
struct SelectionConfig {
  std::size_t n_reevals = 9;
  double rt_k = 298.15;
  double ht_k = 353.15;

  void validate() const;
};

// One selected aging-sensitive response: its address and the unanimous
// room-temperature value stored as the reference.
struct AsrRecord {
  CellAddress address = 0;
  std::uint8_t reference_bit = 0;

  friend bool operator==(const AsrRecord&, const AsrRecord&) = default;
};

struct EnrollmentProfile {
  std::string device_id;
  SelectionConfig selection;
  std::vector<AsrRecord> asrs;  // addresses strictly increasing
  double p_intra_est = 0.0;
  // True when no estimation readouts beyond the selection set were
  // available, so p_intra_est was measured in-sample (biased low: the
  // selection readouts are unanimous on every ASR by construction).
  bool p_intra_in_sample = false;
  std::optional<double> p_inter_est;
  std::string created_at;  // ISO-8601

  void validate() const;
};

// Algorithm: a cell is selected iff its n_reevals RT bits are unanimous,
// its n_reevals HT bits are unanimous, and the two unanimous values differ
// (either direction). Output is sorted by address.
std::vector<AsrRecord> select_asrs(const ReadoutSet& rt_readouts, const ReadoutSet& ht_readouts,
                                   const SelectionConfig& config);

// Runs selection on the first n_reevals readouts of each corner and
// estimates p_intra over the selected addresses from any RT readouts beyond
// the selection set (falling back, flagged, to the selection readouts
// themselves). Throws std::runtime_error when no cell qualifies.
EnrollmentProfile enroll(const std::string& device_id, const ReadoutSet& rt_readouts,
                         const ReadoutSet& ht_readouts, const SelectionConfig& config,
                         const std::string& created_at = "1970-01-01T00:00:00Z");

// Fills p_inter_est from post-aging room-temperature readouts of the full
// region (projection onto the ASR addresses happens here).
EnrollmentProfile characterize(EnrollmentProfile profile, const ReadoutSet& post_aging_readouts);

// Projects the probe onto the first plan.n ASR addresses, rebuilds the
// reference from the stored bits and classifies at the plan's equal-error
// threshold.
ClassifyReport detect_device(const EnrollmentProfile& profile, const ResponseVector& probe,
                             const DetectionPlan& plan);

}  // namespace pufage

#endif  // PUFAGE_ASR_HPP
