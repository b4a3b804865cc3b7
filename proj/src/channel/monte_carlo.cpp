#include "yeastlink/channel/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "yeastlink/errors.hpp"

namespace yeastlink::channel {

namespace {

constexpr long kChunk = 8192;  // particles per RNG stream

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1], fully specified independent of the standard library.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

class GaussianDraw {
 public:
  double operator()(std::mt19937_64& rng) {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    have_ = true;
    return mag * std::cos(ang);
  }

 private:
  bool have_ = false;
  double spare_ = 0.0;
};

struct SamplePlan {
  std::vector<long> step_index;   // sorted
  std::vector<double> times_s;    // snapped times
};

SamplePlan plan_samples(const McSettings& s) {
  SamplePlan plan;
  std::vector<double> ts = s.sample_times_s;
  if (ts.empty()) ts.push_back(s.horizon_s);
  std::sort(ts.begin(), ts.end());
  for (double t : ts) {
    if (t < 0.0 || t > s.horizon_s + 0.5 * s.dt_s)
      throw config_error("mc: sample time outside [0, horizon]");
    const long idx = std::lround(t / s.dt_s);
    if (!plan.step_index.empty() && idx <= plan.step_index.back()) continue;
    plan.step_index.push_back(idx);
    plan.times_s.push_back(idx * s.dt_s);
  }
  return plan;
}

// Birth step per particle for a distributed emission (inverse CDF of the
// cumulative release, evaluated at stratified quantiles).
long birth_step(const EmissionSchedule& e, double quantile, double total,
                double dt) {
  double target = quantile * total;
  double acc = 0.0;
  for (std::size_t i = 1; i < e.t_s.size(); ++i) {
    const double w = 0.5 * (e.rate_mol_s[i] + e.rate_mol_s[i - 1]) *
                     (e.t_s[i] - e.t_s[i - 1]);
    if (acc + w >= target || i + 1 == e.t_s.size()) {
      const double frac = w > 0.0 ? std::clamp((target - acc) / w, 0.0, 1.0) : 0.0;
      const double t = e.t_s[i - 1] + frac * (e.t_s[i] - e.t_s[i - 1]);
      return std::lround(t / dt);
    }
    acc += w;
  }
  return std::lround(e.t_s.back() / dt);
}

}  // namespace

McSeries mc_simulate(const ChannelParams& p, const McSource& source,
                     const McSettings& settings) {
  if (settings.n_particles < 1000)
    throw config_error("mc: need at least 1000 particles");
  if (!(settings.dt_s > 0.0)) throw config_error("mc: dt must be > 0");
  if (!(p.k_alpha * settings.dt_s < 0.1))
    throw config_error("mc: k_alpha * dt must be < 0.1");
  if (!(settings.probe.radius_m > 0.0))
    throw std::domain_error("mc: probe radius must be > 0");
  if (!(p.D > 0.0)) throw config_error("mc: D must be > 0");

  const SamplePlan plan = plan_samples(settings);
  const std::size_t n_samples = plan.step_index.size();

  double total_mass = source.alpha0_mol;
  if (source.emission) {
    source.emission->validate();
    total_mass = source.emission->total_mol();
  }
  const long N = settings.n_particles;
  const double weight = total_mass / static_cast<double>(N);
  const double step_sigma = std::sqrt(2.0 * p.D * settings.dt_s);
  const double base_survival = std::exp(-p.k_alpha * settings.dt_s);
  const bool protease_on = p.k_re > 0.0 && settings.bar1_field != nullptr;
  const double r2_probe = settings.probe.radius_m * settings.probe.radius_m;

  const long n_chunks = (N + kChunk - 1) / kChunk;
  std::vector<long> in_probe(n_samples, 0), alive_count(n_samples, 0);
  std::mutex merge_mutex;
  std::atomic<long> next_chunk{0};

  auto worker = [&]() {
    std::vector<long> local_in(n_samples, 0), local_alive(n_samples, 0);
    for (;;) {
      const long c = next_chunk.fetch_add(1);
      if (c >= n_chunks) break;
      std::mt19937_64 rng(splitmix64(settings.seed ^ (0xC0FFEEULL + 7919ULL * c)));
      GaussianDraw gauss;
      const long first = c * kChunk;
      const long last = std::min(N, first + kChunk);
      for (long j = first; j < last; ++j) {
        double x = source.position_m[0], y = source.position_m[1],
               z = source.position_m[2];
        long born = 0;
        if (source.emission)
          born = birth_step(*source.emission,
                            (static_cast<double>(j) + 0.5) / N, total_mass,
                            settings.dt_s);
        bool alive = true;
        long done = born;
        for (std::size_t si = 0; si < n_samples && alive; ++si) {
          const long target = plan.step_index[si];
          while (done < target && alive) {
            double survival = base_survival;
            if (protease_on) {
              const double b = settings.bar1_field({x, y, z}, done * settings.dt_s);
              survival = std::exp(-(p.k_alpha + p.k_re * b) * settings.dt_s);
            }
            if (uniform01(rng) > survival) {
              alive = false;
              break;
            }
            x += step_sigma * gauss(rng);
            y += step_sigma * gauss(rng);
            z += step_sigma * gauss(rng);
            ++done;
          }
          if (!alive || target < born) continue;
          ++local_alive[si];
          const double dx = x - settings.probe.center_m[0];
          const double dy = y - settings.probe.center_m[1];
          const double dz = z - settings.probe.center_m[2];
          if (dx * dx + dy * dy + dz * dz <= r2_probe) ++local_in[si];
        }
      }
    }
    std::scoped_lock lock(merge_mutex);
    for (std::size_t i = 0; i < n_samples; ++i) {
      in_probe[i] += local_in[i];
      alive_count[i] += local_alive[i];
    }
  };

  int n_threads = settings.n_threads;
  if (n_threads <= 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<int>(std::min<long>(n_threads, n_chunks));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  const double vol = 4.0 / 3.0 * std::numbers::pi * r2_probe *
                     settings.probe.radius_m;
  McSeries out;
  out.t_s = plan.times_s;
  out.estimate_mol_m3.resize(n_samples);
  out.stderr_mol_m3.resize(n_samples);
  out.n_alive.assign(alive_count.begin(), alive_count.end());
  out.n_in_probe.assign(in_probe.begin(), in_probe.end());
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double c = static_cast<double>(in_probe[i]);
    out.estimate_mol_m3[i] = c * weight / vol;
    out.stderr_mol_m3[i] =
        weight * std::sqrt(std::max(0.0, c * (1.0 - c / static_cast<double>(N)))) /
        vol;
  }
  return out;
}

void write_mc_csv(const McSeries& series, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  f << "time_s,estimate_nM,stderr_nM,n_alive\n";
  char buf[160];
  for (std::size_t i = 0; i < series.t_s.size(); ++i) {
    // mol/m^3 -> nM is a factor of 1e6
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%ld\n", series.t_s[i],
                  series.estimate_mol_m3[i] * 1e6,
                  series.stderr_mol_m3[i] * 1e6, series.n_alive[i]);
    f << buf;
  }
}

}  // namespace yeastlink::channel
