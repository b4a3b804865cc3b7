#include "yeastlink/harness/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "yeastlink/errors.hpp"

namespace yeastlink::harness {

double release_rate_mol_s(double rate_nM_min, double cell_volume_um3) {
  // nM/min -> mol/(m^3 min) -> mol/min over the cell volume -> mol/s
  const double volume_m3 = cell_volume_um3 * 1.0e-18;
  return nM_to_mol_m3(rate_nM_min) * volume_m3 / kSecPerMin;
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw data_error("cannot create directory '" + path + "'");
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

constexpr int kW = 860, kH = 480;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kSeriesColors[] = {"#1b7837", "#762a83", "#2166ac", "#b2182b"};

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series,
                    const StimulusProfile& stimulus, double horizon_min) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");

  double vmax = 1e-12, tmax = horizon_min;
  for (const auto& s : series)
    for (double v : s.values) vmax = std::max(vmax, v);
  vmax *= 1.05;

  auto px = [&](double t) {
    return kMarginL + (t / tmax) * (kW - kMarginL - kMarginR);
  };
  auto py = [&](double v) {
    return kH - kMarginB - (v / vmax) * (kH - kMarginT - kMarginB);
  };

  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
    << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
    << "\">\n";
  f << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";

  // induction windows (shaded), repression elsewhere left plain
  for (const auto& seg : stimulus.segments()) {
    if (seg.t_start > tmax) continue;
    const double x0 = px(seg.t_start);
    const double x1 = px(std::min(seg.t_end, tmax));
    f << "<rect x=\"" << fmt(x0) << "\" y=\"" << kMarginT << "\" width=\""
      << fmt(std::max(1.5, x1 - x0)) << "\" height=\""
      << (kH - kMarginT - kMarginB) << "\" fill=\"#c7e9c0\" opacity=\"0.8\"/>\n";
  }

  f << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
    << (kW - kMarginL - kMarginR) << "\" height=\"" << (kH - kMarginT - kMarginB)
    << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  f << "<text x=\"" << kMarginL << "\" y=\"25\" font-family=\"sans-serif\" "
       "font-size=\"15\">"
    << title << "</text>\n";

  // axis ticks: 5 on each axis
  for (int i = 0; i <= 5; ++i) {
    const double t = tmax * i / 5.0;
    const double v = vmax * i / 5.0;
    f << "<text x=\"" << fmt(px(t)) << "\" y=\"" << (kH - kMarginB + 18)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
      << fmt(t) << "</text>\n";
    f << "<text x=\"" << (kMarginL - 8) << "\" y=\"" << fmt(py(v) + 4)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << fmt(v) << "</text>\n";
  }
  f << "<text x=\"" << (kW / 2) << "\" y=\"" << (kH - 12)
    << "\" font-family=\"sans-serif\" font-size=\"12\" "
       "text-anchor=\"middle\">time [min]</text>\n";

  int color = 0;
  for (const auto& s : series) {
    f << "<polyline fill=\"none\" stroke=\""
      << kSeriesColors[color % 4] << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t i = 0; i < s.t_min.size(); ++i) {
      if (s.t_min[i] > tmax) break;
      f << fmt(px(s.t_min[i])) << ',' << fmt(py(s.values[i])) << ' ';
    }
    f << "\"/>\n";
    f << "<text x=\"" << (kMarginL + 10) << "\" y=\""
      << (kMarginT + 16 + 16 * color) << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\" fill=\"" << kSeriesColors[color % 4] << "\">"
      << s.label << "</text>\n";
    ++color;
  }
  f << "</svg>\n";
}

void write_manifest(const std::string& path,
                    const std::vector<ManifestEntry>& entries) {
  nlohmann::ordered_json j;
  for (const auto& e : entries) j[e.key] = e.value;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  f << j.dump(2) << '\n';
}

}  // namespace yeastlink::harness
