#pragma once

#include <string_view>
#include <vector>

#include "yeastlink/events.hpp"
#include "yeastlink/trajectory.hpp"

namespace yeastlink::harness {

// Local maxima with topographic prominence >= prominence_fraction times the
// series range, at least min_separation apart (higher peaks win). Invariant
// under positive affine scaling of the values. A flat series yields zero
// events.
EventReport detect_events(const std::vector<double>& t_min,
                          const std::vector<double>& values,
                          double prominence_fraction = 0.2,
                          double min_separation_min = 30.0);

EventReport detect_events(const Trajectory& traj, std::string_view species,
                          double prominence_fraction = 0.2,
                          double min_separation_min = 30.0);

}  // namespace yeastlink::harness
