#include <doctest.h>

#include <set>
#include <vector>

#include "esncache/core/combinatorics.hpp"
#include "esncache/core/error.hpp"
#include "esncache/core/geometry.hpp"
#include "esncache/core/rng.hpp"

using namespace esncache;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == doctest::Approx(10.0));
  CHECK(binomial(50, 6) == doctest::Approx(15890700.0));
  CHECK(binomial(3, 4) == 0.0);
  CHECK(binomial(7, 0) == 1.0);
}

TEST_CASE("combinations are lexicographic and complete") {
  std::vector<std::vector<std::size_t>> seen;
  for_each_combination(5, 3, [&](const std::vector<std::size_t>& c) { seen.push_back(c); });
  CHECK(seen.size() == 10);
  CHECK(seen.front() == std::vector<std::size_t>{0, 1, 2});
  CHECK(seen.back() == std::vector<std::size_t>{2, 3, 4});
  CHECK(std::set(seen.begin(), seen.end()).size() == 10);
  CHECK(std::is_sorted(seen.begin(), seen.end()));

  int empty_calls = 0;
  for_each_combination(4, 0, [&](const std::vector<std::size_t>& c) {
    CHECK(c.empty());
    ++empty_calls;
  });
  CHECK(empty_calls == 1);
}

TEST_CASE("nearest picks the closest point and the lowest index on ties") {
  std::vector<Point> pts{{1, 0}, {-1, 0}, {0, 5}};
  CHECK(nearest({0.9, 0.1}, pts) == 0);
  CHECK(nearest({0, 0}, pts) == 0);
  CHECK(nearest({0, 4}, pts) == 2);
  CHECK_THROWS_AS(nearest({0, 0}, std::span<const Point>{}), GeometryError);
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
}

TEST_CASE("grid codes round-trip to cell centers") {
  LocationGrid grid(1000.0, 50.0);
  CHECK(grid.cells_per_side() == 40);
  for (Point p : {Point{0, 0}, Point{-999, 999}, Point{512.3, -77.0}}) {
    const auto code = grid.encode(p);
    const Point c = grid.decode(code);
    CHECK(std::abs(c.x - p.x) <= 25.0 + 1e-9);
    CHECK(std::abs(c.y - p.y) <= 25.0 + 1e-9);
    CHECK(grid.encode(c) == code);
    CHECK(grid.snap(static_cast<double>(code) + 0.3) == code);
  }
  CHECK(grid.snap(-5.0) == 0);
  CHECK(grid.snap(1e9) == grid.size() - 1);
  CHECK_THROWS_AS(LocationGrid(0.0, 1.0), ConfigError);
}

TEST_CASE("seed derivation separates purposes and indices") {
  const auto a = derive_seed(1, "fading", 0, 0);
  CHECK(a == derive_seed(1, "fading", 0, 0));
  CHECK(a != derive_seed(1, "fading", 1, 0));
  CHECK(a != derive_seed(1, "fading", 0, 1));
  CHECK(a != derive_seed(2, "fading", 0, 0));
  CHECK(a != derive_seed(1, "workload", 0, 0));
}

TEST_CASE("rng draws have the right ranges and moments") {
  Rng rng(7);
  double sum_u = 0.0, sum_e = 0.0, sum_n = 0.0, sum_n2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK_UNARY(u >= 0.0);
    CHECK_UNARY(u < 1.0);
    sum_u += u;
    sum_e += rng.exponential();
    const double z = rng.normal();
    sum_n += z;
    sum_n2 += z * z;
  }
  CHECK(sum_u / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum_e / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(sum_n / n) < 0.01);
  CHECK(sum_n2 / n == doctest::Approx(1.0).epsilon(0.01));
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 30000; ++i) ++counts[rng.index(3)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 400);
}
