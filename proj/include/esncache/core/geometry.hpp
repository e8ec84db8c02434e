#pragma once

#include <cstddef>
#include <span>

namespace esncache {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

// Index of the point in `candidates` closest to `p`; lowest index on ties.
std::size_t nearest(Point p, std::span<const Point> candidates);

// Square grid over [-radius, radius]^2 with row-major cell codes.
class LocationGrid {
 public:
  LocationGrid(double radius, double pitch);

  std::size_t cells_per_side() const { return side_; }
  std::size_t size() const { return side_ * side_; }
  double pitch() const { return pitch_; }

  std::size_t encode(Point p) const;
  Point decode(std::size_t code) const;
  // Rounds a continuous prediction to the nearest valid code.
  std::size_t snap(double code) const;

 private:
  double radius_;
  double pitch_;
  std::size_t side_;
};

}  // namespace esncache
