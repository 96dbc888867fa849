// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/asr.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pufage {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Word-wise unanimity over a set of readouts: and-reduction holds the
// all-ones cells, nor-reduction the all-zeros cells.
struct Unanimity {
  std::vector<std::uint64_t> all_one;
  std::vector<std::uint64_t> all_zero;
};

Unanimity reduce(const std::vector<ResponseVector>& readouts, std::size_t count) {
  const std::size_t words = readouts.front().words().size();
  Unanimity u;
  u.all_one.assign(words, ~std::uint64_t{0});
  u.all_zero.assign(words, ~std::uint64_t{0});
  for (std::size_t r = 0; r < count; ++r) {
    const auto w = readouts[r].words();
    for (std::size_t i = 0; i < words; ++i) {
      u.all_one[i] &= w[i];
      u.all_zero[i] &= ~w[i];
    }
  }
  return u;
}

double disagreement_over_asrs(const std::vector<AsrRecord>& asrs,
                              const ReadoutSet& readouts, std::size_t first,
                              std::size_t count) {
  std::size_t disagreements = 0;
  for (std::size_t r = first; r < first + count; ++r) {
    const ResponseVector& readout = readouts.readouts[r];
    for (const AsrRecord& asr : asrs) {
      disagreements += readout.bit(asr.address) != (asr.reference_bit != 0);
    }
  }
  return static_cast<double>(disagreements) /
         (static_cast<double>(count) * static_cast<double>(asrs.size()));
}

}  // namespace

void SelectionConfig::validate() const {
  require(n_reevals >= 1, "n_reevals must be >= 1");
  require(ht_k > rt_k, "hot corner must be hotter than room corner");
  require(rt_k > 0.0, "temperatures must be positive kelvin");
}

void EnrollmentProfile::validate() const {
  selection.validate();
  require(!asrs.empty(), "profile holds no aging-sensitive responses");
  for (std::size_t i = 1; i < asrs.size(); ++i) {
    require(asrs[i - 1].address < asrs[i].address,
            "ASR addresses must be strictly increasing");
  }
  for (const AsrRecord& r : asrs) {
    require(r.reference_bit <= 1, "reference bits must be 0 or 1");
  }
  require(p_intra_est >= 0.0 && p_intra_est <= 1.0, "p_intra_est out of [0, 1]");
  if (p_inter_est) {
    require(*p_inter_est >= 0.0 && *p_inter_est <= 1.0, "p_inter_est out of [0, 1]");
  }
}

std::vector<AsrRecord> select_asrs(const ReadoutSet& rt_readouts, const ReadoutSet& ht_readouts,
                                   const SelectionConfig& config) {
  config.validate();
  rt_readouts.validate();
  ht_readouts.validate();
  const std::size_t n = config.n_reevals;
  require(rt_readouts.readouts.size() == n,
          "RT set must hold exactly n_reevals=" + std::to_string(n) + " readouts, got " +
              std::to_string(rt_readouts.readouts.size()));
  require(ht_readouts.readouts.size() == n,
          "HT set must hold exactly n_reevals=" + std::to_string(n) + " readouts, got " +
              std::to_string(ht_readouts.readouts.size()));
  require(rt_readouts.role == AgingRole::kPreAging && ht_readouts.role == AgingRole::kPreAging,
          "selection requires pre-aging readouts");
  const std::size_t length = rt_readouts.cell_count();
  require(length == ht_readouts.cell_count(),
          "RT and HT readouts must cover the same cells");

  const Unanimity rt = reduce(rt_readouts.readouts, n);
  const Unanimity ht = reduce(ht_readouts.readouts, n);

  std::vector<AsrRecord> selected;
  const std::size_t words = rt.all_one.size();
  for (std::size_t w = 0; w < words; ++w) {
    // opposite unanimous values, either direction
    const std::uint64_t ref_one = rt.all_one[w] & ht.all_zero[w];
    const std::uint64_t ref_zero = rt.all_zero[w] & ht.all_one[w];
    std::uint64_t mask = ref_one | ref_zero;
    // mask off padding past the vector length
    if (w == words - 1 && (length % 64) != 0) {
      mask &= (std::uint64_t{1} << (length % 64)) - 1;
    }
    while (mask != 0) {
      const int b = std::countr_zero(mask);
      mask &= mask - 1;
      const auto address = static_cast<CellAddress>(w * 64 + static_cast<std::size_t>(b));
      const std::uint8_t bit = (ref_one >> b) & 1u;
      selected.push_back(AsrRecord{address, bit});
    }
  }
  return selected;
}

EnrollmentProfile enroll(const std::string& device_id, const ReadoutSet& rt_readouts,
                         const ReadoutSet& ht_readouts, const SelectionConfig& config,
                         const std::string& created_at) {
  config.validate();
  const std::size_t n = config.n_reevals;
  require(rt_readouts.readouts.size() >= n,
          "RT set holds " + std::to_string(rt_readouts.readouts.size()) +
              " readouts, need at least n_reevals=" + std::to_string(n));
  require(ht_readouts.readouts.size() >= n,
          "HT set holds " + std::to_string(ht_readouts.readouts.size()) +
              " readouts, need at least n_reevals=" + std::to_string(n));

  // Selection consumes the first n re-evaluations of each corner.
  ReadoutSet selection_rt = rt_readouts;
  selection_rt.readouts.assign(rt_readouts.readouts.begin(),
                               rt_readouts.readouts.begin() + static_cast<std::ptrdiff_t>(n));
  ReadoutSet selection_ht = ht_readouts;
  selection_ht.readouts.assign(ht_readouts.readouts.begin(),
                               ht_readouts.readouts.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<AsrRecord> asrs = select_asrs(selection_rt, selection_ht, config);
  if (asrs.empty()) {
    throw std::runtime_error(
        "no aging-sensitive cells selected; lower n_reevals or widen the cell region");
  }

  EnrollmentProfile profile;
  profile.device_id = device_id;
  profile.selection = config;
  profile.asrs = std::move(asrs);
  profile.created_at = created_at;

  const std::size_t extra = rt_readouts.readouts.size() - n;
  if (extra > 0) {
    profile.p_intra_in_sample = false;
    profile.p_intra_est = disagreement_over_asrs(profile.asrs, rt_readouts, n, extra);
  } else {
    profile.p_intra_in_sample = true;
    profile.p_intra_est = disagreement_over_asrs(profile.asrs, rt_readouts, 0, n);
  }
  return profile;
}

EnrollmentProfile characterize(EnrollmentProfile profile,
                               const ReadoutSet& post_aging_readouts) {
  profile.validate();
  post_aging_readouts.validate();
  require(!post_aging_readouts.readouts.empty(), "characterization needs readouts");
  require(post_aging_readouts.role == AgingRole::kPostAging,
          "characterization requires post-aging readouts");
  require(std::fabs(post_aging_readouts.temperature_k - profile.selection.rt_k) < 1e-3,
          "characterization readouts must be taken at the room corner");
  require(post_aging_readouts.cell_count() > profile.asrs.back().address,
          "characterization readouts shorter than the enrolled region");

  profile.p_inter_est = disagreement_over_asrs(profile.asrs, post_aging_readouts, 0,
                                               post_aging_readouts.readouts.size());
  return profile;
}

ClassifyReport detect_device(const EnrollmentProfile& profile, const ResponseVector& probe,
                             const DetectionPlan& plan) {
  profile.validate();
  const auto n = static_cast<std::size_t>(plan.n);
  if (profile.asrs.size() < n) {
    throw std::invalid_argument("profile holds " + std::to_string(profile.asrs.size()) +
                                " ASRs, plan needs n=" + std::to_string(plan.n));
  }
  require(probe.length() > profile.asrs[n - 1].address,
          "probe shorter than the enrolled region");

  std::vector<CellAddress> addresses(n);
  ResponseVector reference(n);
  for (std::size_t i = 0; i < n; ++i) {
    addresses[i] = profile.asrs[i].address;
    reference.set_bit(i, profile.asrs[i].reference_bit != 0);
  }
  const ResponseVector projected = project(probe, addresses);
  return classify(reference, projected, plan.n_eer, plan.model);
}

}  // namespace pufage
