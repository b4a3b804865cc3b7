#include "yeastlink/ode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "yeastlink/errors.hpp"

namespace yeastlink::ode {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

std::vector<double> merged_edges(const OdeProblem& prob) {
  std::vector<double> edges{prob.t0};
  for (double b : prob.breakpoints)
    if (b > prob.t0 && b < prob.t1) edges.push_back(b);
  edges.push_back(prob.t1);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void check_finite(std::span<const double> v, double t, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw numeric_error(std::string("non-finite ") + what + " at t=" +
                          std::to_string(t));
}

// Cubic Hermite over one accepted step; locally 4th-order accurate.
double hermite(double theta, double h, double y0, double y1, double f0,
               double f1) {
  const double t2 = theta * theta, t3 = t2 * theta;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * h * f0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * f1;
}

class Recorder {
 public:
  Recorder(const OdeProblem& prob, double sample_dt, std::size_t dim)
      : dim_(dim) {
    if (sample_dt > 0.0) {
      uniform_ = true;
      const auto edges = merged_edges(prob);
      const auto n = static_cast<std::size_t>(
          std::floor((prob.t1 - prob.t0) / sample_dt + 1e-9));
      std::vector<double> grid;
      grid.reserve(n + edges.size() + 1);
      for (std::size_t i = 0; i <= n; ++i) grid.push_back(prob.t0 + i * sample_dt);
      grid.insert(grid.end(), edges.begin(), edges.end());
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end(),
                             [](double a, double b) {
                               return std::abs(a - b) < 1e-12;
                             }),
                 grid.end());
      pending_ = std::move(grid);
    }
  }

  void start(double t0, std::span<const double> y0) {
    if (times_.empty()) emit(t0, y0);
  }

  // Called once per accepted step [t, t+h].
  void step(double t, double h, std::span<const double> y_old,
            std::span<const double> y_new, std::span<const double> f_old,
            std::span<const double> f_new) {
    if (!uniform_) {
      emit(t + h, y_new);
      return;
    }
    while (next_ < pending_.size() && pending_[next_] <= t + h + 1e-12) {
      const double ts = std::min(pending_[next_], t + h);
      if (ts <= times_.back() + 1e-12) {
        ++next_;
        continue;
      }
      const double theta = std::clamp((ts - t) / h, 0.0, 1.0);
      row_.resize(dim_);
      for (std::size_t i = 0; i < dim_; ++i)
        row_[i] = std::max(
            0.0, hermite(theta, h, y_old[i], y_new[i], f_old[i], f_new[i]));
      emit(ts, row_);
      ++next_;
    }
  }

  Trajectory finish(std::vector<std::string> names) {
    return Trajectory(std::move(names), std::move(times_), std::move(values_));
  }

 private:
  void emit(double t, std::span<const double> y) {
    times_.push_back(t);
    values_.insert(values_.end(), y.begin(), y.end());
  }

  std::size_t dim_;
  bool uniform_ = false;
  std::vector<double> pending_;
  std::size_t next_ = 0;
  std::vector<double> row_;
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace

Trajectory integrate(const OdeProblem& prob, const SolverSettings& settings,
                     std::vector<std::string> species_names,
                     IntegrationStats* stats_out) {
  if (!(prob.t1 > prob.t0)) throw numeric_error("integrate: empty time span");
  if (!(settings.rtol > 0.0 && settings.rtol < 1.0))
    throw config_error("integrate: rtol must be in (0,1)");
  if (!(settings.atol > 0.0)) throw config_error("integrate: atol must be > 0");

  const std::size_t n = prob.y0.size();
  IntegrationStats stats;
  std::vector<double> y = prob.y0;
  check_finite(y, prob.t0, "initial state");

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n),
      ynew(n);
  const auto edges = merged_edges(prob);
  Recorder rec(prob, settings.sample_dt, n);
  rec.start(prob.t0, y);

  // Stage times never touch a segment's right edge, so a left-closed
  // piecewise input is evaluated on its own segment.
  double t_ceiling = prob.t1;
  auto eval = [&](double t, std::span<const double> yy, std::span<double> out) {
    prob.rhs(std::min(t, t_ceiling), yy, out);
    ++stats.rhs_evaluations;
    check_finite(out, t, "derivative");
  };

  for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    const double ta = edges[seg], tb = edges[seg + 1];
    double t = ta;
    t_ceiling = std::nextafter(tb, ta);
    double h = settings.h_init > 0.0
                   ? settings.h_init
                   : std::clamp(1e-4 * (tb - ta), settings.h_min * 10, settings.h_max);
    h = std::min({h, settings.h_max, tb - ta});
    eval(t, y, k1);  // fresh start in each segment; FSAL reused inside

    while (t < tb) {
      if (stats.steps_accepted + stats.steps_rejected >= settings.max_steps)
        throw numeric_error("integrate: step budget exhausted at t=" +
                            std::to_string(t));
      if (h < settings.h_min)
        throw numeric_error("integrate: stiffness failure (h underflow) at t=" +
                            std::to_string(t));
      bool hit_end = false;
      if (t + h >= tb) {
        h = tb - t;
        hit_end = true;
      }

      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
      eval(t + c2 * h, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
      eval(t + c3 * h, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      eval(t + c4 * h, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                              a54 * k4[i]);
      eval(t + c5 * h, ytmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                              a64 * k4[i] + a65 * k5[i]);
      eval(t + h, ytmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                              b5 * k5[i] + b6 * k6[i]);
      eval(t + h, ynew, k7);

      double err_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                      e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = settings.atol +
                          settings.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        const double e = (ynew[i] - y4) / sc;
        err_sq += e * e;
      }
      double err = std::sqrt(err_sq / static_cast<double>(n));
      if (!std::isfinite(err)) err = 1e10;

      if (err <= 1.0) {
        bool clamped_below_floor = false;
        if (settings.project_nonnegative) {
          for (std::size_t i = 0; i < n; ++i) {
            if (ynew[i] < 0.0) {
              if (ynew[i] < settings.projection_floor())
                clamped_below_floor = true;
              ynew[i] = 0.0;
            }
          }
        }
        if (clamped_below_floor) ++stats.projection_events;
        rec.step(t, h, y, ynew, k1, k7);
        t = hit_end ? tb : t + h;
        y.swap(ynew);
        if (clamped_below_floor)
          eval(t, y, k1);  // FSAL derivative is stale after a clamp
        else
          k1.swap(k7);
        ++stats.steps_accepted;
        const double fac =
            std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        stats.h_last = h;
        h = std::min({h * fac, settings.h_max});
      } else {
        ++stats.steps_rejected;
        const double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
        h *= fac;
      }
    }
  }

  if (stats_out) *stats_out = stats;
  return rec.finish(std::move(species_names));
}

Trajectory fixed_step_reference(const OdeProblem& prob, double h,
                                std::vector<std::string> species_names) {
  if (!(h > 0.0)) throw config_error("fixed_step_reference: h must be > 0");
  const std::size_t n = prob.y0.size();
  std::vector<double> y = prob.y0;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), ytmp(n);
  std::vector<double> times{prob.t0};
  std::vector<double> values(y.begin(), y.end());

  const auto edges = merged_edges(prob);
  double t_global = prob.t0;
  for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    const double ta = edges[seg], tb = edges[seg + 1];
    const auto steps =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((tb - ta) / h)));
    const double hs = (tb - ta) / static_cast<double>(steps);
    const double t_ceiling = std::nextafter(tb, ta);
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = ta + s * hs;
      prob.rhs(t, y, k1);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * hs * k1[i];
      prob.rhs(t + 0.5 * hs, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * hs * k2[i];
      prob.rhs(t + 0.5 * hs, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + hs * k3[i];
      prob.rhs(std::min(t + hs, t_ceiling), ytmp, k4);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] += hs / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        if (y[i] < 0.0) y[i] = 0.0;
      }
      t_global = (s + 1 == steps) ? tb : t + hs;
      check_finite(y, t_global, "state");
      times.push_back(t_global);
      values.insert(values.end(), y.begin(), y.end());
    }
  }
  return Trajectory(std::move(species_names), std::move(times),
                    std::move(values));
}

void write_stats_csv(const IntegrationStats& stats, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  f << "steps_accepted,steps_rejected,rhs_evaluations,projection_events,h_last\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%ld,%ld,%ld,%ld,%.17g\n",
                stats.steps_accepted, stats.steps_rejected,
                stats.rhs_evaluations, stats.projection_events, stats.h_last);
  f << buf;
}

}  // namespace yeastlink::ode
