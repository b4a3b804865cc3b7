#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace yeastlink {

// Time-indexed, named-species concentration series. Times are strictly
// increasing minutes; one row per time point. Immutable after construction.
//
// Linear interpolation is defined only inside [front(), back()]; querying a
// stored time returns the stored row exactly.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<std::string> species, std::vector<double> times,
             std::vector<double> values_row_major);

  std::size_t n_times() const { return times_.size(); }
  std::size_t n_species() const { return species_.size(); }
  const std::vector<std::string>& species() const { return species_; }
  const std::vector<double>& times() const { return times_; }

  std::size_t species_index(std::string_view name) const;  // throws data_error
  bool has_species(std::string_view name) const;

  std::span<const double> row(std::size_t i) const;
  double value(std::size_t i, std::size_t sp) const;

  // Linear interpolation at t (minutes); throws data_error outside range.
  double value_at(double t_min, std::size_t sp) const;
  std::vector<double> row_at(double t_min) const;

  std::vector<double> column(std::string_view name) const;

  // Uniform grid [t0, t1] with step dt, linearly interpolated.
  Trajectory resampled(double dt_min) const;

  double max_value(std::string_view name, double* argmax_t = nullptr) const;

  // CSV: header "time_min,<species...>", '%.17g' values, one row per sample.
  // Reading back reproduces the stored samples bit-exactly.
  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;
  static Trajectory read_csv(std::istream& in);
  static Trajectory read_csv_file(const std::string& path);

 private:
  std::vector<std::string> species_;
  std::vector<double> times_;
  std::vector<double> values_;  // row-major, n_times x n_species
};

}  // namespace yeastlink
