#pragma once

#include <string>
#include <vector>

#include "yeastlink/harness/config.hpp"
#include "yeastlink/stimulus.hpp"

namespace yeastlink::harness {

// Unit bridges between the cell-facing (nM, min) and channel-facing
// (mol/m^3, s) domains. Round trips are exact.
inline constexpr double kNmPerMolM3 = 1.0e6;   // 1 mol/m^3 = 1e6 nM
inline constexpr double kSecPerMin = 60.0;

inline double mol_m3_to_nM(double c) { return c * kNmPerMolM3; }
inline double nM_to_mol_m3(double c) { return c / kNmPerMolM3; }
inline double min_to_s(double t) { return t * kSecPerMin; }
inline double s_to_min(double t) { return t / kSecPerMin; }

// Cell-internal release rate (nM/min over the cell volume) to a molar
// source strength (mol/s).
double release_rate_mol_s(double rate_nM_min, double cell_volume_um3);

// One labelled series for plotting.
struct PlotSeries {
  std::string label;
  std::vector<double> t_min;
  std::vector<double> values;
};

// Deterministic standalone SVG: value-vs-time polylines with the induction
// windows shaded. Byte-stable for identical inputs.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series,
                    const StimulusProfile& stimulus, double horizon_min);

// Run manifest: config hash, seed, parameter-file schemas/hashes and solver
// settings; everything needed to reproduce a run, nothing time-dependent.
struct ManifestEntry {
  std::string key;
  std::string value;
};
void write_manifest(const std::string& path,
                    const std::vector<ManifestEntry>& entries);

void ensure_dir(const std::string& path);

}  // namespace yeastlink::harness
