#include "ddcsim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddcsim {

CcdfCurve::CcdfCurve(std::vector<double> sorted_values)
    : values_(std::move(sorted_values)) {
  if (values_.size() < 2)
    throw std::invalid_argument("ccdf needs at least two samples");
}

CcdfCurve ccdf(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  return CcdfCurve(std::move(samples));
}

double exceedance(const CcdfCurve& curve, double x) {
  const std::vector<double>& v = curve.values();
  auto it = std::upper_bound(v.begin(), v.end(), x);
  if (it == v.begin()) return 1.0;  // every sample exceeds x
  const std::size_t last_le = static_cast<std::size_t>(it - v.begin()) - 1;
  return curve.rank_prob(last_le);
}

double variance(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  // Welford's recurrence; an independent two-pass oracle checks this in the
  // test suite.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double x : samples) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  return m2 / static_cast<double>(n);
}

std::vector<std::pair<double, double>> decimate_log_rank(
    const CcdfCurve& curve, std::size_t max_points) {
  const std::size_t m = curve.size();
  std::vector<std::pair<double, double>> points;
  if (m <= max_points) {
    points.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      points.emplace_back(curve.value(i), curve.rank_prob(i));
    return points;
  }
  // Work in the top-rank index j = m - i (j = 1 is the largest sample, where
  // R is smallest); log spacing in j concentrates points in the tail.
  points.reserve(max_points);
  const double log_span = std::log(static_cast<double>(m));
  std::size_t prev_j = 0;
  for (std::size_t k = 0; k < max_points; ++k) {
    const double frac =
        static_cast<double>(k) / static_cast<double>(max_points - 1);
    std::size_t j = static_cast<std::size_t>(
        std::llround(std::exp(log_span * (1.0 - frac))));
    j = std::clamp<std::size_t>(j, 1, m);
    if (j == prev_j) continue;
    prev_j = j;
    const std::size_t i = m - j;
    points.emplace_back(curve.value(i), curve.rank_prob(i));
  }
  std::reverse(points.begin(), points.end());
  return points;
}

RunSummary summarize(const RunOutput& output) {
  RunSummary s;
  const std::size_t begin = output.post_transient_begin();
  const std::size_t n_samples = output.samples() - begin;

  s.sigma2_omega = variance(output.post_transient_omega());

  double pending_sum = 0.0;
  double pending_ddc_sum = 0.0;
  double pending_ceddc_sum = 0.0;
  for (std::size_t i = begin; i < output.samples(); ++i) {
    pending_sum += output.pending_consuming[i] + output.pending_saving[i];
    pending_ddc_sum += output.pending_ddc[i];
    pending_ceddc_sum += output.pending_ceddc[i];
  }
  const double p0 = output.config.fleet.rated_power;
  const double count = static_cast<double>(n_samples);
  s.mean_pending_per_device =
      p0 * pending_sum / count / output.config.fleet.count;
  if (output.config.policy.ddc > 0)
    s.mean_pending_per_ddc_device =
        p0 * pending_ddc_sum / count / output.config.policy.ddc;
  if (output.config.policy.ceddc > 0)
    s.mean_pending_per_ceddc_device =
        p0 * pending_ceddc_sum / count / output.config.policy.ceddc;

  const CcdfCurve curve = ccdf(output.abs_freq_deviations());
  s.max_abs_delta_omega = curve.value(curve.size() - 1);
  s.r_at_epsilon = exceedance(curve, output.config.ddc.epsilon);
  s.r_at_epsilon1 = exceedance(curve, output.config.ddc.epsilon1);
  s.r_at_0p1 = exceedance(curve, 0.1);
  return s;
}

}  // namespace ddcsim
