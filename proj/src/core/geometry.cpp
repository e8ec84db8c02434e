#include "esncache/core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "esncache/core/error.hpp"

namespace esncache {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::size_t nearest(Point p, std::span<const Point> candidates) {
  if (candidates.empty()) throw GeometryError("nearest: no candidates");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double dx = p.x - candidates[i].x;
    const double dy = p.y - candidates[i].y;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

LocationGrid::LocationGrid(double radius, double pitch) : radius_(radius), pitch_(pitch) {
  if (!(radius > 0.0) || !(pitch > 0.0)) throw ConfigError("grid radius and pitch must be positive");
  side_ = static_cast<std::size_t>(std::ceil(2.0 * radius / pitch));
}

std::size_t LocationGrid::encode(Point p) const {
  auto cell = [&](double v) {
    const double c = std::floor((v + radius_) / pitch_);
    return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(side_ - 1)));
  };
  return cell(p.y) * side_ + cell(p.x);
}

Point LocationGrid::decode(std::size_t code) const {
  if (code >= size()) throw GeometryError("location code out of range");
  const std::size_t row = code / side_;
  const std::size_t col = code % side_;
  return {-radius_ + (static_cast<double>(col) + 0.5) * pitch_,
          -radius_ + (static_cast<double>(row) + 0.5) * pitch_};
}

std::size_t LocationGrid::snap(double code) const {
  if (!std::isfinite(code)) return 0;
  const double r = std::round(code);
  return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(size() - 1)));
}

}  // namespace esncache
