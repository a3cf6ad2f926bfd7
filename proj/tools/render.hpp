#pragma once

#include <string>
#include <vector>

#include "rhol/moebius.hpp"

namespace rhol::cli {

struct Viewport {
  cplx center{0.0};
  double half_width = 1.0;
};

/// Binary P6 image, white background, one black pixel per point inside the
/// viewport. Throws std::invalid_argument unless 16 <= pixels <= 8192.
std::string render_cloud(const std::vector<cplx>& points, const Viewport& view, int pixels);

}  // namespace rhol::cli
