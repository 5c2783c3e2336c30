#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ddcsim/engine.hpp"

namespace ddcsim {

// Rank-based complementary cumulative distribution: values sorted ascending,
// the i-th (1-based) carrying survival probability R_i = 1 - (i-1)/(M-1).
// Ties keep their own ranks.
class CcdfCurve {
 public:
  explicit CcdfCurve(std::vector<double> sorted_values);

  std::size_t size() const { return values_.size(); }
  double value(std::size_t index) const { return values_[index]; }
  double rank_prob(std::size_t index) const {
    return 1.0 - static_cast<double>(index) /
                     static_cast<double>(values_.size() - 1);
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Builds the rank estimator from unsorted samples. Requires at least two
// samples.
CcdfCurve ccdf(std::vector<double> samples);

// Survival probability at x: R of the largest sample <= x, 1 below the
// smallest sample, 0 at or beyond the largest.
double exceedance(const CcdfCurve& curve, double x);

// Population variance (mean squared deviation from the sample mean).
double variance(std::span<const double> samples);

// Log-in-rank decimation for export: at most max_points points, dense where
// the survival probability is small, endpoints always kept.
std::vector<std::pair<double, double>> decimate_log_rank(
    const CcdfCurve& curve, std::size_t max_points);

struct RunSummary {
  double sigma2_omega = 0.0;             // variance of post-transient omega
  double mean_pending_per_device = 0.0;  // time-averaged, units of P0
  std::optional<double> mean_pending_per_ddc_device;
  std::optional<double> mean_pending_per_ceddc_device;
  double max_abs_delta_omega = 0.0;
  double r_at_epsilon = 0.0;
  double r_at_epsilon1 = 0.0;
  double r_at_0p1 = 0.0;
};

// Post-transient statistics of one run. The per-subpopulation pending means
// are absent when the corresponding subpopulation is empty.
RunSummary summarize(const RunOutput& output);

}  // namespace ddcsim
