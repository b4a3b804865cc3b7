#pragma once

#include <vector>

namespace yeastlink {

// One constant-level window, [t_start, t_end) in minutes, level in nM.
struct StimulusSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  double level_nM = 0.0;
};

// Piecewise-constant input schedule. Segments are non-overlapping and
// left-closed/right-open, so back-to-back windows never double count.
// Evaluation outside every segment is zero.
class StimulusProfile {
 public:
  StimulusProfile() = default;
  explicit StimulusProfile(std::vector<StimulusSegment> segments);

  double level_at(double t_min) const;

  const std::vector<StimulusSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  // Sorted, deduplicated segment edges; integration restarts land on these.
  std::vector<double> breakpoints() const;

  // End of the last segment (0 when empty).
  double last_edge() const;

  // `count` pulses of `width_min` at `amplitude_nM`, separated by
  // `gap_min` of silence, first rising edge at `t0_min`.
  static StimulusProfile pulse_train(double amplitude_nM, double width_min,
                                     double gap_min, int count,
                                     double t0_min = 0.0);

 private:
  std::vector<StimulusSegment> segments_;
};

}  // namespace yeastlink
