#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mpic/grid.hpp"
#include "support.hpp"

using namespace mpic;

TEST_CASE("build_grid spacings") {
  const double pi = std::numbers::pi;
  GridSpec g = build_grid({2 * pi, 2 * pi, 2 * pi}, {8, 8, 8});
  for (int a = 0; a < 3; ++a) CHECK(g.spacings[a] == doctest::Approx(pi / 4).epsilon(1e-15));

  GridSpec h = build_grid({4 * pi, 4 * pi, 4 * pi}, {16, 16, 16}, 4);
  CHECK(h.size() == 4096);
  CHECK(h.spacings[0] == doctest::Approx(pi / 4).epsilon(1e-15));

  GridSpec odd = build_grid({1.7, 0.3, 5.0}, {7, 9, 11});
  for (int a = 0; a < 3; ++a)
    CHECK(std::abs(odd.spacings[a] * odd.cells[a] - odd.lengths[a]) <=
          std::nextafter(odd.lengths[a], 10.0) - odd.lengths[a]);
}

TEST_CASE("build_grid rejects bad input") {
  CHECK_THROWS_WITH_AS(build_grid({1, 1, 1}, {2, 8, 8}, 4), doctest::Contains("at least 5"),
                       std::invalid_argument);
  CHECK_THROWS_AS(build_grid({1, 1, 1}, {3, 8, 8}), std::invalid_argument);
  CHECK_THROWS_AS(build_grid({0, 1, 1}, {8, 8, 8}), std::invalid_argument);
  CHECK_THROWS_AS(build_grid({1, -1, 1}, {8, 8, 8}), std::invalid_argument);
  CHECK_THROWS_AS(build_grid({1, 1, 1}, {8, 8, 8}, 3), std::invalid_argument);
  CHECK(required_cells(2) == 4);
  CHECK(required_cells(6) == 7);
}

TEST_CASE("node coordinates") {
  GridSpec g = build_grid({2.0, 4.0, 8.0}, {4, 4, 4});
  CHECK(g.primal_node(0, 0) == 0.0);
  CHECK(g.primal_node(1, 3) == doctest::Approx(3.0));
  CHECK(g.dual_node(2, 1) == doctest::Approx(3.0));
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 4; ++m)
      CHECK(g.dual_node(a, m) == doctest::Approx(0.5 * (g.primal_node(a, m) + g.primal_node(a, m + 1))));
}

TEST_CASE("flat index round trip and periodic wrap") {
  GridSpec g = testing::raw_grid({4, 5, 6});
  std::vector<int> seen(g.size(), 0);
  for (int k = 0; k < 6; ++k)
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 4; ++i) {
        std::size_t n = g.index(i, j, k);
        REQUIRE(n < g.size());
        seen[n]++;
        CHECK(g.unflatten(n) == Idx3{i, j, k});
        CHECK(g.index(i + 4, j, k) == n);
        CHECK(g.index(i, j - 5, k) == n);
        CHECK(g.index(i - 8, j + 10, k + 6) == n);
      }
  for (int s : seen) CHECK(s == 1);
  CHECK(g.index(1, 0, 0) == 1);
  CHECK(g.index(0, 1, 0) == 4);
  CHECK(g.index(0, 0, 1) == 20);
}

TEST_CASE("dof field sizes") {
  GridSpec g = testing::raw_grid({4, 5, 6});
  for (int k = 0; k < 4; ++k) {
    DofField f(k, Side::primal, g);
    std::size_t expect = (k == 1 || k == 2) ? 3 * g.size() : g.size();
    CHECK(f.total_size() == expect);
  }
  CHECK_THROWS_AS(DofField(4, Side::dual, g), std::invalid_argument);
}

TEST_CASE("duality product") {
  GridSpec g = build_grid({1, 1, 1}, {4, 4, 4});
  DofField a(0, Side::primal, g), b(3, Side::dual, g);
  a.fill(1.0);
  b.fill(1.0);
  CHECK(duality_product(a, b) == 64.0);
  b.fill(0.0);
  CHECK(duality_product(a, b) == 0.0);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 4; ++k) {
    DofField x = testing::random_field(k, Side::primal, g, rng);
    DofField y = testing::random_field(3 - k, Side::dual, g, rng);
    DofField z = testing::random_field(3 - k, Side::dual, g, rng);
    auto fx = testing::flatten(x), fy = testing::flatten(y);
    double oracle = 0.0;
    for (std::size_t n = 0; n < fx.size(); ++n) oracle += fx[n] * fy[n];
    CHECK(duality_product(x, y) == doctest::Approx(oracle).epsilon(1e-14));
    // bilinear in the second slot
    DofField yz = y;
    yz.axpy(2.5, z);
    CHECK(duality_product(x, yz) ==
          doctest::Approx(duality_product(x, y) + 2.5 * duality_product(x, z)).epsilon(1e-13));
    // symmetric under exchanging the arrays
    DofField xs(3 - k, Side::dual, g), ys(k, Side::primal, g);
    for (int c = 0; c < x.ncomp(); ++c) {
      xs[c] = x[c];
      ys[c] = y[c];
    }
    CHECK(duality_product(ys, xs) == doctest::Approx(duality_product(x, y)).epsilon(1e-14));
  }
  DofField p1(1, Side::primal, g), d1(1, Side::dual, g);
  CHECK_THROWS_AS(duality_product(p1, d1), std::invalid_argument);
  CHECK_THROWS_AS(duality_product(d1, p1), std::invalid_argument);
}
