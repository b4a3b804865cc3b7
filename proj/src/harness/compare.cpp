#include "yeastlink/harness/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "yeastlink/errors.hpp"

namespace yeastlink::harness {

void ReferenceCurve::validate() const {
  if (t_min.size() != fold_change.size() ||
      (!sem.empty() && sem.size() != t_min.size()))
    throw data_error("reference curve: column size mismatch");
  if (t_min.empty()) throw data_error("reference curve: empty");
  for (std::size_t i = 0; i < t_min.size(); ++i) {
    if (i > 0 && !(t_min[i] > t_min[i - 1]))
      throw data_error("reference curve: times must increase");
    if (fold_change[i] < 0.0)
      throw data_error("reference curve: negative fold change");
  }
}

ReferenceCurve ReferenceCurve::read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw data_error("cannot open reference '" + path + "'");
  ReferenceCurve ref;
  std::string line;
  bool header_seen = false;
  while (std::getline(f, line)) {
    if (!line.empty() && line[0] == '#') {
      if (!ref.provenance.empty()) ref.provenance += " ";
      ref.provenance += line.substr(1);
      continue;
    }
    if (line.empty()) continue;
    if (!header_seen) {
      if (line.rfind("time_min", 0) != 0)
        throw data_error(path + ": expected 'time_min,...' header");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ','))
      row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() < 2) throw data_error(path + ": short row");
    ref.t_min.push_back(row[0]);
    ref.fold_change.push_back(row[1]);
    if (row.size() > 2) ref.sem.push_back(row[2]);
  }
  ref.validate();
  return ref;
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

}  // namespace

ComparisonReport compare_reference(const std::vector<double>& t_min,
                                   const std::vector<double>& values,
                                   const ReferenceCurve& ref,
                                   double peak_tolerance_min) {
  ref.validate();
  if (t_min.size() != values.size() || t_min.empty())
    throw data_error("compare_reference: bad simulated series");
  const double lo = std::max(t_min.front(), ref.t_min.front());
  const double hi = std::min(t_min.back(), ref.t_min.back());
  if (!(hi > lo)) throw data_error("compare_reference: no time overlap");

  ComparisonReport rep;
  rep.peak_tolerance_min = peak_tolerance_min;

  double sim_peak = -1e300, ref_peak = -1e300;
  for (std::size_t i = 0; i < t_min.size(); ++i) {
    if (t_min[i] < lo || t_min[i] > hi) continue;
    if (values[i] > sim_peak) {
      sim_peak = values[i];
      rep.sim_peak_t_min = t_min[i];
    }
  }
  for (std::size_t i = 0; i < ref.t_min.size(); ++i) {
    if (ref.t_min[i] < lo || ref.t_min[i] > hi) continue;
    if (ref.fold_change[i] > ref_peak) {
      ref_peak = ref.fold_change[i];
      rep.ref_peak_t_min = ref.t_min[i];
    }
  }
  if (!(sim_peak > 0.0) || !(ref_peak > 0.0))
    throw data_error("compare_reference: non-positive peak");

  rep.peak_time_error_min = rep.sim_peak_t_min - rep.ref_peak_t_min;
  rep.amplitude_ratio = sim_peak / ref_peak;
  rep.peak_time_ok = std::abs(rep.peak_time_error_min) <= peak_tolerance_min;

  // Residual on unit-peak curves over the reference grid inside the overlap.
  double sq = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < ref.t_min.size(); ++i) {
    const double t = ref.t_min[i];
    if (t < lo || t > hi) continue;
    const double s = interp(t_min, values, t) / sim_peak;
    const double r = ref.fold_change[i] / ref_peak;
    sq += (s - r) * (s - r);
    ++n;
  }
  rep.nrmse = n ? std::sqrt(sq / static_cast<double>(n)) : 0.0;
  return rep;
}

void write_comparison_csv(const ComparisonReport& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  f << "metric,value,gated,pass\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "peak_time_error_min,%.17g,yes,%s\n",
                r.peak_time_error_min, r.peak_time_ok ? "true" : "false");
  f << buf;
  std::snprintf(buf, sizeof(buf), "nrmse_unit_peak,%.17g,no,\n", r.nrmse);
  f << buf;
  std::snprintf(buf, sizeof(buf), "amplitude_ratio,%.17g,no,\n",
                r.amplitude_ratio);
  f << buf;
  std::snprintf(buf, sizeof(buf), "sim_peak_t_min,%.17g,no,\n", r.sim_peak_t_min);
  f << buf;
  std::snprintf(buf, sizeof(buf), "ref_peak_t_min,%.17g,no,\n", r.ref_peak_t_min);
  f << buf;
}

}  // namespace yeastlink::harness
