#pragma once

#include <vector>

namespace yeastlink {

// Detected output events over an observation window.
struct EventReport {
  std::vector<double> event_times_min;  // strictly increasing
  int event_count = 0;
  double rate_per_hour = 0.0;  // event_count / (window length in hours)
};

}  // namespace yeastlink
