#pragma once

#include <string>

#include "choq/geometry.hpp"

namespace choq {

struct RenderOptions {
  bool log_scale = false;
  int cell_px = 0;  // 0 => sized so the image is ~512 px wide
};

/// Self-contained SVG 1.1 heatmap of a grid function, n in {1, 2}.
std::string svg_heatmap(const GridFunction& f, const RenderOptions& opts = {});

}  // namespace choq
