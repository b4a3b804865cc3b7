#include "yeastlink/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "yeastlink/errors.hpp"

namespace yeastlink {

namespace {

std::string fmt_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Trajectory::Trajectory(std::vector<std::string> species,
                       std::vector<double> times,
                       std::vector<double> values_row_major)
    : species_(std::move(species)),
      times_(std::move(times)),
      values_(std::move(values_row_major)) {
  if (values_.size() != times_.size() * species_.size())
    throw data_error("trajectory: value matrix shape mismatch");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw data_error("trajectory: times must be strictly increasing");
  for (double v : values_)
    if (!std::isfinite(v)) throw data_error("trajectory: non-finite value");
}

std::size_t Trajectory::species_index(std::string_view name) const {
  for (std::size_t i = 0; i < species_.size(); ++i)
    if (species_[i] == name) return i;
  throw data_error("trajectory: unknown species '" + std::string(name) + "'");
}

bool Trajectory::has_species(std::string_view name) const {
  return std::any_of(species_.begin(), species_.end(),
                     [&](const std::string& s) { return s == name; });
}

std::span<const double> Trajectory::row(std::size_t i) const {
  return {values_.data() + i * species_.size(), species_.size()};
}

double Trajectory::value(std::size_t i, std::size_t sp) const {
  return values_[i * species_.size() + sp];
}

double Trajectory::value_at(double t_min, std::size_t sp) const {
  if (times_.empty()) throw data_error("trajectory: empty");
  if (t_min < times_.front() || t_min > times_.back())
    throw data_error("trajectory: t=" + std::to_string(t_min) +
                     " outside stored range");
  auto it = std::lower_bound(times_.begin(), times_.end(), t_min);
  const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  if (hi < times_.size() && times_[hi] == t_min) return value(hi, sp);
  const std::size_t lo = hi - 1;
  const double w = (t_min - times_[lo]) / (times_[hi] - times_[lo]);
  return value(lo, sp) + w * (value(hi, sp) - value(lo, sp));
}

std::vector<double> Trajectory::row_at(double t_min) const {
  std::vector<double> out(species_.size());
  for (std::size_t sp = 0; sp < species_.size(); ++sp)
    out[sp] = value_at(t_min, sp);
  return out;
}

std::vector<double> Trajectory::column(std::string_view name) const {
  const std::size_t sp = species_index(name);
  std::vector<double> out(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) out[i] = value(i, sp);
  return out;
}

Trajectory Trajectory::resampled(double dt_min) const {
  if (!(dt_min > 0.0)) throw data_error("resampled: dt must be > 0");
  if (times_.empty()) return {};
  std::vector<double> ts;
  const double t0 = times_.front(), t1 = times_.back();
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / dt_min));
  ts.reserve(n + 2);
  for (std::size_t i = 0; i <= n; ++i) ts.push_back(t0 + i * dt_min);
  if (ts.back() < t1) ts.push_back(t1);
  std::vector<double> vals;
  vals.reserve(ts.size() * species_.size());
  for (double t : ts) {
    auto r = row_at(t);
    vals.insert(vals.end(), r.begin(), r.end());
  }
  return Trajectory(species_, std::move(ts), std::move(vals));
}

double Trajectory::max_value(std::string_view name, double* argmax_t) const {
  const std::size_t sp = species_index(name);
  if (times_.empty()) throw data_error("trajectory: empty");
  double best = value(0, sp);
  double t_best = times_[0];
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (value(i, sp) > best) {
      best = value(i, sp);
      t_best = times_[i];
    }
  }
  if (argmax_t) *argmax_t = t_best;
  return best;
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "time_min";
  for (const auto& s : species_) out << ',' << s;
  out << '\n';
  for (std::size_t i = 0; i < times_.size(); ++i) {
    out << fmt_g17(times_[i]);
    for (std::size_t sp = 0; sp < species_.size(); ++sp)
      out << ',' << fmt_g17(value(i, sp));
    out << '\n';
  }
}

void Trajectory::write_csv_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  write_csv(f);
}

Trajectory Trajectory::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw data_error("csv: empty input");
  std::vector<std::string> species;
  {
    std::stringstream ss(line);
    std::string cell;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      if (first) {
        if (cell != "time_min")
          throw data_error("csv: expected 'time_min' header, got '" + cell + "'");
        first = false;
      } else {
        species.push_back(cell);
      }
    }
    if (first) throw data_error("csv: malformed header");
  }
  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      const double v = std::strtod(cell.c_str(), nullptr);
      if (col == 0)
        times.push_back(v);
      else
        values.push_back(v);
      ++col;
    }
    if (col != species.size() + 1)
      throw data_error("csv: row with wrong column count");
  }
  return Trajectory(std::move(species), std::move(times), std::move(values));
}

Trajectory Trajectory::read_csv_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "'");
  return read_csv(f);
}

}  // namespace yeastlink
