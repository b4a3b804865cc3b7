#include "yeastlink/stimulus.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "yeastlink/errors.hpp"

namespace yeastlink {

StimulusProfile::StimulusProfile(std::vector<StimulusSegment> segments)
    : segments_(std::move(segments)) {
  std::sort(segments_.begin(), segments_.end(),
            [](const StimulusSegment& a, const StimulusSegment& b) {
              return a.t_start < b.t_start;
            });
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.t_start < s.t_end))
      throw config_error("stimulus segment " + std::to_string(i) +
                         ": t_start must be < t_end");
    if (!(s.level_nM >= 0.0))
      throw config_error("stimulus segment " + std::to_string(i) +
                         ": negative level");
    if (i > 0 && s.t_start < segments_[i - 1].t_end)
      throw config_error("stimulus segments overlap at t=" +
                         std::to_string(s.t_start));
  }
}

double StimulusProfile::level_at(double t_min) const {
  for (const auto& s : segments_) {
    if (t_min < s.t_start) break;
    if (t_min < s.t_end) return s.level_nM;
  }
  return 0.0;
}

std::vector<double> StimulusProfile::breakpoints() const {
  std::vector<double> edges;
  edges.reserve(2 * segments_.size());
  for (const auto& s : segments_) {
    edges.push_back(s.t_start);
    edges.push_back(s.t_end);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double StimulusProfile::last_edge() const {
  return segments_.empty() ? 0.0 : segments_.back().t_end;
}

StimulusProfile StimulusProfile::pulse_train(double amplitude_nM,
                                             double width_min, double gap_min,
                                             int count, double t0_min) {
  if (count < 1) throw config_error("pulse_train: count must be >= 1");
  if (!(width_min > 0.0)) throw config_error("pulse_train: width must be > 0");
  if (gap_min < 0.0) throw config_error("pulse_train: negative gap");
  std::vector<StimulusSegment> segs;
  segs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double start = t0_min + i * (width_min + gap_min);
    segs.push_back({start, start + width_min, amplitude_nM});
  }
  return StimulusProfile(std::move(segs));
}

}  // namespace yeastlink
