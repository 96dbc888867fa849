// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PUFAGE_DETECTION_HPP
#define PUFAGE_DETECTION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pufage/bitcore.hpp"

namespace pufage {

// Binomial flip probabilities of a device population: p_intra for repeated
// fresh readouts, p_inter for a fresh reference against an aged readout.
struct ErrorModel {
  double p_intra = 0.0;
  double p_inter = 0.0;

  // Throws std::invalid_argument unless both probabilities lie strictly
  // inside (0, 1). Planning additionally requires p_intra < p_inter.
  void validate() const;
};

// Threshold conventions
// ---------------------
// far()/frr() evaluate the binomial tails of the rule that ACCEPTS a device
// at Hamming distance <= n_th:
//     frr(n, n_th) = P[Binom(n, p_intra) >  n_th]   (fresh device rejected)
//     far(n, n_th) = P[Binom(n, p_inter) <= n_th]   (aged device accepted)
// Operating points found by eer_search()/minimal_n() express the same
// decision boundary as the smallest REJECTED distance: an OperatingPoint
// with threshold t rejects at HD >= t, so its error rates are
// far(n, t - 1) and frr(n, t - 1). This matches how published
// detection-capability tables quote n_EER.

double far(const ErrorModel& model, std::int64_t n, std::int64_t n_th);
double frr(const ErrorModel& model, std::int64_t n, std::int64_t n_th);

// Natural-log versions; safe for tails far below DBL_MIN.
double log_far(const ErrorModel& model, std::int64_t n, std::int64_t n_th);
double log_frr(const ErrorModel& model, std::int64_t n, std::int64_t n_th);

struct OperatingPoint {
  std::int64_t n = 0;
  std::int64_t n_th = 0;  // smallest rejected Hamming distance
  double far = 0.0;
  double frr = 0.0;
  double log10_far = 0.0;
  double log10_frr = 0.0;

  double eer() const { return far > frr ? far : frr; }
};

struct DetectionPlan {
  ErrorModel model;
  double target_eer = 0.0;
  std::int64_t n = 0;
  std::int64_t n_eer = 0;
  double eer = 0.0;
  double far = 0.0;
  double frr = 0.0;
  double log10_far = 0.0;
  double log10_frr = 0.0;
};

// Raised by minimal_n when no response length up to the ceiling reaches the
// target equal error rate.
class InfeasiblePlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Equal-error threshold for a fixed response length: minimizes
// max(FAR, FRR) over all thresholds, ties broken toward the smaller
// threshold.
OperatingPoint eer_search(const ErrorModel& model, std::int64_t n);

// Smallest response length whose equal error rate is below target_eer.
// The search is exact: no shorter length qualifies, which matters because
// EER(n) is only monotone in trend, not step by step.
DetectionPlan minimal_n(const ErrorModel& model, double target_eer,
                        std::int64_t n_ceiling = 1'000'000);

struct PlanCell {
  std::string label;
  ErrorModel model;
  double target = 0.0;
  std::optional<DetectionPlan> plan;  // empty if infeasible
  std::string error;                  // infeasibility note
};

std::vector<PlanCell> plan_table(
    std::span<const std::pair<std::string, ErrorModel>> models,
    std::span<const double> targets, std::int64_t n_ceiling = 1'000'000);

// Aligned fixed-width table, one row per model, one column block per target.
std::string render_plan_table_text(std::span<const PlanCell> cells);
// One row per (model, target) pair:
// label,p_intra,p_inter,diff,target,n,n_eer,log10_far,log10_frr
std::string render_plan_table_csv(std::span<const PlanCell> cells);

enum class Verdict : std::uint8_t {
  kNew = 0,
  kRecycled = 1,
};

struct ClassifyReport {
  Verdict verdict = Verdict::kNew;
  std::size_t hd = 0;
  std::size_t n = 0;
  std::int64_t n_th = 0;
  // Tail probabilities evaluated at the observed distance: how often an
  // aged device lands at or below it, and how often a fresh one exceeds it.
  double far_at_hd = 0.0;
  double frr_at_hd = 0.0;
};

// Threshold rule: recycled iff hamming_distance(reference, probe) > n_th.
ClassifyReport classify(const ResponseVector& reference, const ResponseVector& probe,
                        std::int64_t n_th, const ErrorModel& model);

}  // namespace pufage

#endif  // PUFAGE_DETECTION_HPP
