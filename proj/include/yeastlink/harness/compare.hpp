#pragma once

#include <string>
#include <vector>

#include "yeastlink/trajectory.hpp"

namespace yeastlink::harness {

// Measured curve digitized from a bench assay: fold-change means with
// standard errors over time.
struct ReferenceCurve {
  std::vector<double> t_min;
  std::vector<double> fold_change;
  std::vector<double> sem;
  std::string provenance;

  void validate() const;
  static ReferenceCurve read_csv_file(const std::string& path);
};

// Peak timing and shape agreement between a simulated series and a
// reference. Both curves are scaled to unit peak before the residual is
// computed; amplitude mismatches are reported but never gate pass/fail.
struct ComparisonReport {
  double sim_peak_t_min = 0.0;
  double ref_peak_t_min = 0.0;
  double peak_time_error_min = 0.0;
  double nrmse = 0.0;               // on unit-peak curves, overlap only
  double amplitude_ratio = 1.0;     // sim peak / ref peak (informational)
  double peak_tolerance_min = 15.0;
  bool peak_time_ok = false;
};

ComparisonReport compare_reference(const std::vector<double>& t_min,
                                   const std::vector<double>& values,
                                   const ReferenceCurve& ref,
                                   double peak_tolerance_min = 15.0);

void write_comparison_csv(const ComparisonReport& r, const std::string& path);

}  // namespace yeastlink::harness
