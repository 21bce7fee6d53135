#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fockida/error.hpp"
#include "fockida/lattice.hpp"

using namespace fockida;

TEST_CASE("unit lattice of radius 1.5 has nine points") {
  const Lattice lat = make_lattice(1.0, 0.0, 1.5);
  REQUIRE(lat.points.size() == 9);
  std::set<std::pair<int, int>> got;
  for (cplx p : lat.points) got.insert({static_cast<int>(std::lround(p.real())), static_cast<int>(std::lround(p.imag()))});
  for (int m = -1; m <= 1; ++m)
    for (int s = -1; s <= 1; ++s) CHECK(got.count({m, s}) == 1);
  CHECK(separation_constant(lat.points) == doctest::Approx(1.0));
}

TEST_CASE("lattice points follow base + spacing (m + i s)") {
  const Lattice lat = make_lattice(0.5, {0.1, -0.2}, 3.0);
  for (std::size_t i = 0; i < lat.points.size(); ++i) {
    CHECK(std::abs(lat.points[i] - (cplx{0.1, -0.2} + 0.5 * cplx(lat.m[i], lat.s[i]))) < 1e-15);
    CHECK(std::abs(lat.points[i]) <= 3.0);
  }
  CHECK(separation_constant(lat.points) == doctest::Approx(0.5));
}

TEST_CASE("covering radius") {
  for (double r : {0.5, 1.0}) {
    const double R = 6.0;
    const Lattice lat = make_lattice(r, 0.0, R);
    const double cov = covering_radius(lat, R - r, 0.02);
    CHECK(cov <= r * std::sqrt(2.0) / 2.0 + 1e-12);
    CHECK(cov <= r);
    // independent nearest-point scan on a shifted probe grid
    double worst = 0.0;
    for (double x = -(R - r); x <= R - r; x += 0.037)
      for (double y = -(R - r); y <= R - r; y += 0.037) {
        const cplx z{x, y};
        if (std::abs(z) > R - r) continue;
        double best = INFINITY;
        for (cplx p : lat.points) best = std::min(best, std::abs(z - p));
        worst = std::max(worst, best);
      }
    CHECK(worst <= r * std::sqrt(2.0) / 2.0 + 1e-12);
  }
}

TEST_CASE("splitting") {
  const Lattice lat = make_lattice(1.0, 0.0, 5.0);
  SUBCASE("K = 1 keeps the lattice") {
    const Splitting sp = split_lattice(lat, 1);
    const auto g = sp.groups(lat);
    REQUIRE(g.size() == 1);
    CHECK(g[0].size() == lat.points.size());
  }
  SUBCASE("K = 2 gives four classes at distance 2") {
    const Splitting sp = split_lattice(lat, 2);
    const auto g = sp.groups(lat);
    REQUIRE(g.size() == 4);
    for (const auto& cls : g) CHECK(separation_constant(cls) == doctest::Approx(2.0));
  }
  SUBCASE("partition and separation for several K and spacings") {
    for (double r : {0.5, 1.0, 1.3})
      for (int K = 1; K <= 4; ++K) {
        const Lattice l = make_lattice(r, {0.2, 0.1}, 6.0);
        const Splitting sp = split_lattice(l, K);
        CHECK(sp.classes() == K * K);
        std::size_t total = 0;
        std::multiset<std::pair<double, double>> seen;
        for (const auto& cls : sp.groups(l)) {
          total += cls.size();
          for (cplx p : cls) seen.insert({p.real(), p.imag()});
          if (cls.size() >= 2) CHECK(separation_constant(cls) >= K * r - 1e-12);
        }
        CHECK(total == l.points.size());
        for (cplx p : l.points) CHECK(seen.count({p.real(), p.imag()}) == 1);
      }
  }
}

TEST_CASE("separation constant") {
  const std::vector<cplx> tri = {0.0, 1.0, {0.0, 1.0}};
  CHECK(separation_constant(tri) == doctest::Approx(1.0));
  const std::vector<cplx> dup = {0.0, 2.0, 0.0};
  CHECK(separation_constant(dup) == 0.0);
  const std::vector<cplx> one = {1.0};
  CHECK_THROWS_AS(separation_constant(one), InvalidInput);
  CHECK_THROWS_AS(make_lattice(0.0, 0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(split_lattice(make_lattice(1.0, 0.0, 2.0), 0), InvalidInput);
}
