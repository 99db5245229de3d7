#include "choq/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace choq {

namespace {

// Compact viridis-like ramp.
const double kStops[5][3] = {
    {0.267, 0.005, 0.329}, {0.229, 0.322, 0.546}, {0.128, 0.567, 0.551},
    {0.369, 0.789, 0.383}, {0.993, 0.906, 0.144}};

std::string color_at(double t) {
  t = std::clamp(t, 0.0, 1.0);
  double pos = t * 4;
  int lo = std::min(3, static_cast<int>(pos));
  double frac = pos - lo;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(255 * (kStops[lo][0] + frac * (kStops[lo + 1][0] - kStops[lo][0]))),
                static_cast<int>(255 * (kStops[lo][1] + frac * (kStops[lo + 1][1] - kStops[lo][1]))),
                static_cast<int>(255 * (kStops[lo][2] + frac * (kStops[lo + 1][2] - kStops[lo][2]))));
  return buf;
}

}  // namespace

std::string svg_heatmap(const GridFunction& f, const RenderOptions& opts) {
  if (f.dim() > 2) throw ValidationError("svg heatmap supports n in {1, 2}");
  const std::int64_t side = std::int64_t{1} << f.level();
  const std::int64_t rows = f.dim() == 2 ? side : 1;
  int px = opts.cell_px > 0 ? opts.cell_px : std::max(1, static_cast<int>(512 / side));

  double vmax = 0, vmin_pos = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < f.size(); ++i) {
    double v = f[i];
    if (std::isinf(v)) continue;
    vmax = std::max(vmax, v);
    if (v > 0) vmin_pos = std::min(vmin_pos, v);
  }
  if (!std::isfinite(vmin_pos)) vmin_pos = 1;
  if (vmax <= 0) vmax = 1;

  auto scale = [&](double v) {
    if (std::isinf(v)) return 1.0;
    if (v <= 0) return -1.0;  // painted as background
    if (!opts.log_scale) return v / vmax;
    if (vmax == vmin_pos) return 1.0;
    return (std::log(v) - std::log(vmin_pos)) / (std::log(vmax) - std::log(vmin_pos));
  };

  std::ostringstream svg;
  std::int64_t w = side * px, h = rows * px + 24;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
      << "\" height=\"" << h << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << rows * px << "\" fill=\"#f2f2f2\"/>\n";
  for (std::int64_t i = 0; i < f.size(); ++i) {
    double t = scale(f[i]);
    if (t < 0) continue;
    CellIdx idx = f.coords(i);
    std::int64_t cx = f.dim() == 2 ? idx[1] : idx[0];
    std::int64_t cy = f.dim() == 2 ? side - 1 - idx[0] : 0;
    svg << "<rect x=\"" << cx * px << "\" y=\"" << cy * px << "\" width=\"" << px
        << "\" height=\"" << px << "\" fill=\"" << color_at(t) << "\"/>\n";
  }
  // Legend bar with min/max labels.
  for (int i = 0; i < 64; ++i) {
    svg << "<rect x=\"" << (w * i) / 64 << "\" y=\"" << rows * px + 8 << "\" width=\""
        << (w + 63) / 64 << "\" height=\"8\" fill=\"" << color_at(i / 63.0) << "\"/>\n";
  }
  char lo[32], hi[32];
  std::snprintf(lo, sizeof lo, "%.3g", opts.log_scale ? vmin_pos : 0.0);
  std::snprintf(hi, sizeof hi, "%.3g", vmax);
  svg << "<text x=\"0\" y=\"" << rows * px + 6 << "\" font-size=\"6\">" << lo << "</text>\n";
  svg << "<text x=\"" << w - 24 << "\" y=\"" << rows * px + 6 << "\" font-size=\"6\">" << hi
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace choq
