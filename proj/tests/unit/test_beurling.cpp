#include <doctest.h>

#include <cmath>

#include "fockida/beurling.hpp"
#include "fockida/error.hpp"

using namespace fockida;

namespace {

const PlaneGrid& grid() {
  static const PlaneGrid g(512, 8.0);
  return g;
}

double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += std::norm(a[i] - b[i]), den += std::norm(b[i]);
  return std::sqrt(num / den);
}

double max_diff_inside(const std::vector<cplx>& a, const std::function<cplx(cplx)>& exact, double radius) {
  const PlaneGrid& g = grid();
  double worst = 0.0;
  for (int iy = 0; iy < g.size(); ++iy)
    for (int ix = 0; ix < g.size(); ++ix) {
      const cplx z = g.point(ix, iy);
      if (std::abs(z) <= radius) worst = std::max(worst, std::abs(a[iy * g.size() + ix] - exact(z)));
    }
  return worst;
}

cplx gauss(cplx z) { return std::exp(-std::norm(z)); }

}  // namespace

TEST_CASE("plane grid") {
  const PlaneGrid& g = grid();
  CHECK(g.size() == 512);
  CHECK(g.spacing() == doctest::Approx(16.0 / 512));
  CHECK(g.point(0, 0) == cplx{-8.0, -8.0});
  CHECK_THROWS_AS(PlaneGrid(500, 8.0), InvalidInput);
  CHECK_THROWS_AS(PlaneGrid(64, 0.0), InvalidInput);
  // int e^{-2|z|^2} dv = pi/2
  CHECK(std::abs(std::pow(g.lp_norm(g.sample(gauss), 2.0), 2.0) - kPi / 2.0) < 1e-12);
}

TEST_CASE("Wirtinger derivatives") {
  const PlaneGrid& g = grid();
  SUBCASE("Gaussian") {
    const Wirtinger w = wirtinger(g, g.sample(gauss));
    CHECK(max_diff_inside(w.dbar, [](cplx z) { return -z * gauss(z); }, 8.0) < 1e-8);
    CHECK(max_diff_inside(w.d, [](cplx z) { return -std::conj(z) * gauss(z); }, 8.0) < 1e-8);
  }
  SUBCASE("conj(z) times a plateau") {
    const Wirtinger w = wirtinger(g, g.sample([](cplx z) { return std::conj(z) * plateau(z); }));
    CHECK(max_diff_inside(w.dbar, [](cplx) { return cplx{1.0}; }, 2.0) < 1e-8);
    CHECK(max_diff_inside(w.d, [](cplx) { return cplx{}; }, 2.0) < 1e-8);
  }
  SUBCASE("constant times a plateau") {
    const Wirtinger w = wirtinger(g, g.sample([](cplx z) { return cplx{2.0, -1.0} * plateau(z); }));
    CHECK(max_diff_inside(w.dbar, [](cplx) { return cplx{}; }, 2.0) < 1e-8);
    CHECK(max_diff_inside(w.d, [](cplx) { return cplx{}; }, 2.0) < 1e-8);
  }
  CHECK_THROWS_AS(wirtinger(g, g.sample([](cplx) { return cplx{1.0}; })), PeriodizationError);
  CHECK_THROWS_AS(wirtinger(g, std::vector<cplx>(10)), InvalidInput);
}

TEST_CASE("Ahlfors-Beurling transform") {
  const PlaneGrid& g = grid();
  const std::vector<cplx> dbar = g.sample([](cplx z) { return -z * gauss(z); });
  const std::vector<cplx> d = g.sample([](cplx z) { return -std::conj(z) * gauss(z); });
  const std::vector<cplx> t = ahlfors_beurling(g, dbar);
  CHECK(rel_l2(t, d) <= 1e-6);
  CHECK(std::abs(g.lp_norm(t, 2.0) - g.lp_norm(dbar, 2.0)) <= 1e-10 * g.lp_norm(dbar, 2.0));
  for (const cplx& v : ahlfors_beurling(g, std::vector<cplx>(g.size() * g.size()))) CHECK(v == cplx{});
  const std::vector<cplx> g2 = g.sample([](cplx z) { return cplx{z.real(), 0.0} * std::exp(-2.0 * std::norm(z - 1.0)); });
  const cplx a{0.5, -1.5}, b{2.0, 0.25};
  std::vector<cplx> mix(dbar.size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * dbar[i] + b * g2[i];
  const std::vector<cplx> lhs = ahlfors_beurling(g, mix), t2 = ahlfors_beurling(g, g2);
  double worst = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - (a * t[i] + b * t2[i])));
  CHECK(worst < 1e-13);
}

TEST_CASE("derivative L^p check") {
  for (double p : {1.5, 2.0, 3.0}) {
    const LpCheck bump = derivative_lp_check(symbols::bump(0.0, 1.0), p);
    CHECK(std::abs(bump.ratio - 1.0) < 1e-12);
    CHECK_FALSE(bump.windowed);
    const LpCheck step = derivative_lp_check(symbols::radial_step(1.0, 2.0), p);
    CHECK(std::abs(step.ratio - 1.0) < 1e-12);
    const LpCheck zg = derivative_lp_check(symbols::zbar_gaussian(), p);
    CHECK(std::isfinite(zg.ratio));
    CHECK(zg.ratio > 0.0);
    CHECK_FALSE(zg.violation);
  }
  const LpCheck rnd = derivative_lp_check(symbols::random_field(7, 16, 2.0), 2.0);
  CHECK(rnd.windowed);
  CHECK(rnd.ratio <= 10.0);
  const LpCheck c = derivative_lp_check(symbols::constant({1.0, 2.0}), 2.0);
  CHECK(c.constant);
  CHECK_FALSE(c.violation);
  CHECK_THROWS_AS(derivative_lp_check(symbols::zbar(), 2.0), SymbolClassError);
  CHECK_THROWS_AS(derivative_lp_check(symbols::bump(0.0, 1.0), 1.0), InvalidInput);
}
