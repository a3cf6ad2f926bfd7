#include "render.hpp"

#include <cmath>
#include <stdexcept>

namespace rhol::cli {

std::string render_cloud(const std::vector<cplx>& points, const Viewport& view, int pixels) {
  if (pixels < 16 || pixels > 8192) throw std::invalid_argument("pixels must lie in [16, 8192]");
  if (!(view.half_width > 0.0)) throw std::invalid_argument("viewport half-width must be positive");
  const std::string header = "P6\n" + std::to_string(pixels) + " " + std::to_string(pixels) + "\n255\n";
  const std::size_t n = static_cast<std::size_t>(pixels);
  std::string img(header.size() + 3 * n * n, static_cast<char>(255));
  img.replace(0, header.size(), header);
  const double left = view.center.real() - view.half_width;
  const double top = view.center.imag() + view.half_width;
  const double scale = pixels / (2.0 * view.half_width);
  for (const cplx& p : points) {
    const double col = std::floor((p.real() - left) * scale);
    const double row = std::floor((top - p.imag()) * scale);
    if (!(col >= 0.0 && col < pixels && row >= 0.0 && row < pixels)) continue;
    const std::size_t at = header.size() + 3 * (static_cast<std::size_t>(row) * n + static_cast<std::size_t>(col));
    img[at] = img[at + 1] = img[at + 2] = 0;
  }
  return img;
}

}  // namespace rhol::cli
