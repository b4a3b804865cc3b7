#include "yeastlink/harness/events.hpp"

#include <algorithm>
#include <cmath>

#include "yeastlink/errors.hpp"

namespace yeastlink::harness {

namespace {

struct Peak {
  std::size_t index;
  double value;
  double prominence;
};

// Strict local maxima; for plateaus the first sample of the plateau stands
// in for the peak.
std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  const std::size_t n = v.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (v[i] > v[i - 1]) {
      std::size_t j = i;
      while (j + 1 < n && v[j + 1] == v[i]) ++j;
      if (j + 1 < n && v[j + 1] < v[i]) out.push_back(i);
      i = j;
    }
  }
  return out;
}

// Extend a horizontal line at the peak level to both sides until the signal
// rises above it (or the border); the base on each side is the minimum over
// that stretch, and prominence measures the drop to the higher base.
double prominence_of(const std::vector<double>& v, std::size_t peak) {
  const double level = v[peak];
  double left_min = level;
  for (std::size_t i = peak; i-- > 0;) {
    if (v[i] > level) break;
    left_min = std::min(left_min, v[i]);
  }
  double right_min = level;
  for (std::size_t i = peak + 1; i < v.size(); ++i) {
    if (v[i] > level) break;
    right_min = std::min(right_min, v[i]);
  }
  return level - std::max(left_min, right_min);
}

}  // namespace

EventReport detect_events(const std::vector<double>& t_min,
                          const std::vector<double>& values,
                          double prominence_fraction,
                          double min_separation_min) {
  if (t_min.size() != values.size())
    throw data_error("detect_events: time/value size mismatch");
  EventReport report;
  if (t_min.size() < 3) return report;
  const double span_min = t_min.back() - t_min.front();
  if (span_min < min_separation_min)
    throw data_error("detect_events: trajectory shorter than min_separation");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double range = *hi_it - *lo_it;
  const double scale = std::max(std::abs(*hi_it), std::abs(*lo_it));
  if (range <= 1e-6 * scale) return report;  // flat up to solver noise
  const double threshold = prominence_fraction * range;

  std::vector<Peak> peaks;
  for (std::size_t idx : local_maxima(values)) {
    const double prom = prominence_of(values, idx);
    if (prom >= threshold) peaks.push_back({idx, values[idx], prom});
  }

  // Enforce separation, keeping the taller peak of any close pair.
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.value > b.value; });
  std::vector<Peak> kept;
  for (const auto& cand : peaks) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](const Peak& k) {
      return std::abs(t_min[k.index] - t_min[cand.index]) < min_separation_min;
    });
    if (!clash) kept.push_back(cand);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Peak& a, const Peak& b) { return a.index < b.index; });

  for (const auto& k : kept) report.event_times_min.push_back(t_min[k.index]);
  report.event_count = static_cast<int>(kept.size());
  report.rate_per_hour =
      span_min > 0.0 ? report.event_count / (span_min / 60.0) : 0.0;
  return report;
}

EventReport detect_events(const Trajectory& traj, std::string_view species,
                          double prominence_fraction,
                          double min_separation_min) {
  return detect_events(traj.times(), traj.column(species), prominence_fraction,
                       min_separation_min);
}

}  // namespace yeastlink::harness
