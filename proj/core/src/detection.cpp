// SPDX-FileCopyrightText: Copyright 2026 The pufage authors
// SPDX-License-Identifier: Apache-2.0

#include "pufage/detection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pufage {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn10 = 2.302585092994045684;

// Width of the window swept when certifying minimality of n. The equal
// error rate dips below a target up to a few dozen lengths before it stays
// below for good; 64 covers the widest observed gap several times over.
constexpr std::int64_t kMinimalityWindow = 64;

void check_threshold(std::int64_t n, std::int64_t n_th) {
  if (n < 1) throw std::invalid_argument("response length n must be >= 1");
  if (n_th < 0 || n_th > n) {
    throw std::invalid_argument("threshold n_th=" + std::to_string(n_th) +
                                " out of range [0, " + std::to_string(n) + "]");
  }
}

double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp((a < b ? a : b) - m));
}

// log P[Binom(n, p) >= k] via a max-shifted Kahan sum over the term
// recurrence t_{i+1} = t_i * (n-i)/(i+1) * p/(1-p). Summing the tail
// directly avoids the cancellation a complement would introduce, and the
// log-term accumulation is itself compensated so the drift over 10^5 steps
// stays below the ten-significant-digit contract.
double log_binom_upper_tail(std::int64_t n, std::int64_t k, double p) {
  if (k <= 0) return 0.0;
  if (k > n) return kNegInf;
  const double log_odds = std::log(p) - std::log1p(-p);

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - k + 1));
  double lt = static_cast<double>(n) * std::log1p(-p);  // log term at i = 0
  double lt_comp = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double inc =
        std::log(static_cast<double>(n - i) / static_cast<double>(i + 1)) + log_odds;
    const double y = inc - lt_comp;
    const double s = lt + y;
    lt_comp = (s - lt) - y;
    lt = s;
    if (i + 1 >= k) terms.push_back(lt);
  }

  const double max_lt = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0, comp = 0.0;  // Kahan
  for (double t : terms) {
    const double x = std::exp(t - max_lt);
    const double y = x - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  const double result = max_lt + std::log(sum);
  return result > 0.0 ? 0.0 : result;
}

// log P[Binom(n, p) <= k] through the exact mirror identity
// P[X <= k] = P[n - X >= n - k] with n - X ~ Binom(n, 1 - p).
double log_binom_lower_tail(std::int64_t n, std::int64_t k, double p) {
  if (k < 0) return kNegInf;
  if (k >= n) return 0.0;
  return log_binom_upper_tail(n, n - k, 1.0 - p);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string format_log10(double log10_value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", log10_value);
  return buf;
}

}  // namespace

void ErrorModel::validate() const {
  if (!(p_intra > 0.0 && p_intra < 1.0)) {
    throw std::invalid_argument("p_intra must lie strictly inside (0, 1), got " +
                                format_double(p_intra));
  }
  if (!(p_inter > 0.0 && p_inter < 1.0)) {
    throw std::invalid_argument("p_inter must lie strictly inside (0, 1), got " +
                                format_double(p_inter));
  }
}

double log_frr(const ErrorModel& model, std::int64_t n, std::int64_t n_th) {
  model.validate();
  check_threshold(n, n_th);
  return log_binom_upper_tail(n, n_th + 1, model.p_intra);
}

double log_far(const ErrorModel& model, std::int64_t n, std::int64_t n_th) {
  model.validate();
  check_threshold(n, n_th);
  return log_binom_lower_tail(n, n_th, model.p_inter);
}

double frr(const ErrorModel& model, std::int64_t n, std::int64_t n_th) {
  return std::exp(log_frr(model, n, n_th));
}

double far(const ErrorModel& model, std::int64_t n, std::int64_t n_th) {
  return std::exp(log_far(model, n, n_th));
}

OperatingPoint eer_search(const ErrorModel& model, std::int64_t n) {
  model.validate();
  if (n < 1) throw std::invalid_argument("response length n must be >= 1");

  const double log_pi = std::log(model.p_intra);
  const double log_1mpi = std::log1p(-model.p_intra);
  const double log_pe = std::log(model.p_inter);
  const double log_1mpe = std::log1p(-model.p_inter);

  // frr_at[t] = log P[Binom(n, p_intra) > t], accumulated from the top.
  std::vector<double> frr_at(static_cast<std::size_t>(n) + 1);
  frr_at[static_cast<std::size_t>(n)] = kNegInf;
  {
    double lt = static_cast<double>(n) * log_pi;  // log term at i = n
    double acc = lt;
    for (std::int64_t t = n - 1; t >= 0; --t) {
      frr_at[static_cast<std::size_t>(t)] = acc;
      if (t > 0) {
        lt += std::log(static_cast<double>(t + 1) / static_cast<double>(n - t)) -
              log_pi + log_1mpi;
        acc = logaddexp(acc, lt);
      }
    }
  }

  // Sweep thresholds upward, accumulating log P[Binom(n, p_inter) <= t].
  std::int64_t best_t = 0;
  double best_max = std::numeric_limits<double>::infinity();
  double best_far = kNegInf, best_frr = kNegInf;
  double lt = static_cast<double>(n) * log_1mpe;  // inter term at i = 0
  double far_acc = lt;
  for (std::int64_t t = 0; t <= n; ++t) {
    if (t > 0) {
      lt += std::log(static_cast<double>(n - t + 1) / static_cast<double>(t)) +
            log_pe - log_1mpe;
      far_acc = logaddexp(far_acc, lt);
    }
    const double f = far_acc < 0.0 ? far_acc : 0.0;
    const double r = frr_at[static_cast<std::size_t>(t)];
    const double m = f > r ? f : r;
    if (m < best_max) {  // strict: ties resolve to the smallest threshold
      best_max = m;
      best_t = t;
      best_far = f;
      best_frr = r;
    }
  }

  OperatingPoint op;
  op.n = n;
  op.n_th = best_t + 1;  // smallest rejected distance
  op.far = std::exp(best_far);
  op.frr = std::exp(best_frr);
  op.log10_far = best_far / kLn10;
  op.log10_frr = best_frr / kLn10;
  return op;
}

namespace {

bool qualifies(const ErrorModel& model, std::int64_t n, double target) {
  return eer_search(model, n).eer() < target;
}

}  // namespace

DetectionPlan minimal_n(const ErrorModel& model, double target_eer, std::int64_t n_ceiling) {
  model.validate();
  if (!(model.p_intra < model.p_inter)) {
    throw std::invalid_argument("planning requires p_intra < p_inter, got p_intra=" +
                                format_double(model.p_intra) +
                                " p_inter=" + format_double(model.p_inter));
  }
  if (!(target_eer > 0.0 && target_eer < 0.5)) {
    throw std::invalid_argument("target EER must lie in (0, 0.5), got " +
                                format_double(target_eer));
  }
  if (n_ceiling < 1) throw std::invalid_argument("n ceiling must be >= 1");

  // Exponential bracket on the decaying trend.
  std::int64_t start = -1;
  for (std::int64_t h = 1;;) {
    if (qualifies(model, h, target_eer)) {
      start = h;
      break;
    }
    if (h >= n_ceiling) break;
    h = std::min(h * 2, n_ceiling);
  }
  if (start < 0 && eer_search(model, n_ceiling).eer() < 4.0 * target_eer) {
    // The ceiling may fall inside the sawtooth zone where isolated shorter
    // lengths still qualify; sweep the top window before giving up. The
    // sawtooth swings the EER by a few percent, so a ceiling more than 4x
    // over target cannot hide a qualifying length either.
    const std::int64_t lo_edge = std::max<std::int64_t>(1, n_ceiling - kMinimalityWindow);
    for (std::int64_t m = lo_edge; m <= n_ceiling; ++m) {
      if (qualifies(model, m, target_eer)) {
        start = m;
        break;
      }
    }
  }
  if (start < 0) {
    throw InfeasiblePlanError("target EER " + format_double(target_eer) +
                              " infeasible under ceiling n <= " + std::to_string(n_ceiling));
  }

  // Binary search against the trend: keeps `best` qualifying.
  std::int64_t best = start;
  std::int64_t lo = start / 2;
  while (lo + 1 < best) {
    const std::int64_t mid = lo + (best - lo) / 2;
    if (qualifies(model, mid, target_eer)) {
      best = mid;
    } else {
      lo = mid;
    }
  }

  // The EER is sawtoothed around its trend, so a qualifying length can sit
  // a few dozen steps below the boundary the bisection finds. Sweep windows
  // downward until one holds no qualifying length.
  for (;;) {
    const std::int64_t lo_edge = std::max<std::int64_t>(1, best - kMinimalityWindow);
    std::int64_t found = -1;
    for (std::int64_t m = lo_edge; m < best; ++m) {
      if (qualifies(model, m, target_eer)) {
        found = m;
        break;
      }
    }
    if (found < 0) break;
    best = found;
  }

  const OperatingPoint op = eer_search(model, best);
  DetectionPlan plan;
  plan.model = model;
  plan.target_eer = target_eer;
  plan.n = best;
  plan.n_eer = op.n_th;
  plan.eer = op.eer();
  plan.far = op.far;
  plan.frr = op.frr;
  plan.log10_far = op.log10_far;
  plan.log10_frr = op.log10_frr;
  return plan;
}

std::vector<PlanCell> plan_table(std::span<const std::pair<std::string, ErrorModel>> models,
                                 std::span<const double> targets, std::int64_t n_ceiling) {
  for (const auto& [label, model] : models) {
    model.validate();
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target " + format_double(targets[i]));
      }
    }
  }

  std::vector<PlanCell> cells;
  cells.reserve(models.size() * targets.size());
  for (const auto& [label, model] : models) {
    for (double target : targets) {
      PlanCell cell;
      cell.label = label;
      cell.model = model;
      cell.target = target;
      try {
        cell.plan = minimal_n(model, target, n_ceiling);
      } catch (const InfeasiblePlanError& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::string render_plan_table_text(std::span<const PlanCell> cells) {
  if (cells.empty()) return "";

  // Recover the (models x targets) grid from the flat emission order.
  std::vector<double> targets;
  for (const auto& c : cells) {
    if (!targets.empty() && c.target == targets.front()) break;
    targets.push_back(c.target);
  }
  const std::size_t n_targets = targets.size();

  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %8s %8s %7s", "label", "p_intra", "p_inter", "diff");
  out << buf;
  for (double t : targets) {
    std::snprintf(buf, sizeof buf, " | EER<%-7.0e %6s %6s %6s", t, "n_EER", "FAR*", "FRR*");
    out << buf;
  }
  out << '\n';

  for (std::size_t i = 0; i < cells.size(); i += n_targets) {
    const PlanCell& head = cells[i];
    std::snprintf(buf, sizeof buf, "%-10s %8.4f %8.4f %7.4f", head.label.c_str(),
                  head.model.p_intra, head.model.p_inter,
                  head.model.p_inter - head.model.p_intra);
    out << buf;
    for (std::size_t j = 0; j < n_targets && i + j < cells.size(); ++j) {
      const PlanCell& c = cells[i + j];
      if (c.plan) {
        std::snprintf(buf, sizeof buf, " | %12lld %6lld %6s %6s",
                      static_cast<long long>(c.plan->n),
                      static_cast<long long>(c.plan->n_eer),
                      format_log10(c.plan->log10_far).c_str(),
                      format_log10(c.plan->log10_frr).c_str());
      } else {
        std::snprintf(buf, sizeof buf, " | %12s %6s %6s %6s", "infeasible", "-", "-", "-");
      }
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string render_plan_table_csv(std::span<const PlanCell> cells) {
  std::ostringstream out;
  out << "label,p_intra,p_inter,diff,target,n,n_eer,log10_far,log10_frr\n";
  char buf[200];
  for (const auto& c : cells) {
    if (c.plan) {
      std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%.6g,%.6g,%lld,%lld,%s,%s\n",
                    c.label.c_str(), c.model.p_intra, c.model.p_inter,
                    c.model.p_inter - c.model.p_intra, c.target,
                    static_cast<long long>(c.plan->n),
                    static_cast<long long>(c.plan->n_eer),
                    format_log10(c.plan->log10_far).c_str(),
                    format_log10(c.plan->log10_frr).c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%.6g,%.6g,infeasible,,,\n",
                    c.label.c_str(), c.model.p_intra, c.model.p_inter,
                    c.model.p_inter - c.model.p_intra, c.target);
    }
    out << buf;
  }
  return out.str();
}

ClassifyReport classify(const ResponseVector& reference, const ResponseVector& probe,
                        std::int64_t n_th, const ErrorModel& model) {
  const std::size_t n = reference.length();
  if (n == 0) throw std::invalid_argument("classify needs nonzero-length responses");
  check_threshold(static_cast<std::int64_t>(n), n_th);
  const std::size_t hd = hamming_distance(reference, probe);

  ClassifyReport report;
  report.hd = hd;
  report.n = n;
  report.n_th = n_th;
  report.verdict = hd > static_cast<std::size_t>(n_th) ? Verdict::kRecycled : Verdict::kNew;
  report.far_at_hd = far(model, static_cast<std::int64_t>(n), static_cast<std::int64_t>(hd));
  report.frr_at_hd = frr(model, static_cast<std::int64_t>(n), static_cast<std::int64_t>(hd));
  return report;
}

}  // namespace pufage
