#include <doctest.h>

#include <cmath>

#include "fockida/error.hpp"
#include "fockida/schatten.hpp"

using namespace fockida;

namespace {

const Basis& basis100() {
  static const Basis b = build_basis(Weight::standard(1.0), 100);
  return b;
}

const Basis& basis200() {
  static const Basis b = build_basis(Weight::standard(1.0), 200);
  return b;
}

SpectralReport diag_report(std::initializer_list<double> eig) {
  OperatorMatrix g;
  g.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(eig.size()), static_cast<Eigen::Index>(eig.size()));
  Eigen::Index i = 0;
  for (double e : eig) g.entries(i, i) = e, ++i;
  return singular_values(g);
}

SpectralReport values(std::vector<double> s) {
  SpectralReport r;
  r.values = std::move(s);
  r.order = static_cast<int>(r.values.size());
  return r;
}

}  // namespace

TEST_CASE("singular values from a Gram matrix") {
  const SpectralReport r = diag_report({1.0, 0.0, 4.0});
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == doctest::Approx(2.0));
  CHECK(r.values[1] == doctest::Approx(1.0));
  CHECK(r.values[2] == 0.0);
  CHECK(diag_report({1.0, -1e-12}).values[1] == 0.0);
  CHECK_THROWS_AS(diag_report({1.0, -1e-9}), TruncationError);
}

TEST_CASE("Hankel spectra with closed forms") {
  const Basis& b = basis100();
  const int n = 60;
  const SpectralReport zbar = singular_values(hankel_gram(symbols::zbar(), b, n));
  for (int j = 0; j < n - 10; ++j) CHECK(std::abs(zbar.values[j] - 1.0) < 1e-6);
  const SpectralReport z = singular_values(hankel_gram(symbols::z(), b, n));
  for (double s : z.values) CHECK(s == 0.0);
}

TEST_CASE("Schatten norms") {
  CHECK(schatten_norm(values({2.0, 0.0, 0.0}), 1.0) == doctest::Approx(2.0));
  CHECK(schatten_norm(values({1.0, 1.0}), 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(schatten_norm(values({1.0, 1.0}), 0.5) == doctest::Approx(4.0));
  CHECK_THROWS_AS(schatten_norm(values({1.0}), 0.0), InvalidInput);
  const OperatorMatrix g = hankel_gram(symbols::bump(0.0, 1.0), basis100(), 60);
  const SpectralReport r = singular_values(g);
  CHECK(std::abs(schatten_norm(r, 2.0) - std::sqrt(g.entries.trace().real())) < 1e-8);
  double prev = INFINITY;
  for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 8.0}) {
    const double v = schatten_norm(r, p);
    CHECK(v <= prev + 1e-14);
    prev = v;
  }
  SpectralReport filled = r;
  fill_norms(filled, {1.0, 2.0});
  CHECK(filled.norms.at(2.0) == doctest::Approx(schatten_norm(r, 2.0)));
}

TEST_CASE("finite-section estimates") {
  const Basis& b = basis100();
  const SpectralReport bump_n = singular_values(hankel_gram(symbols::bump(0.0, 1.0), b, 60));
  const SpectralReport bump_p = singular_values(hankel_gram(symbols::bump(0.0, 1.0), b, 50));
  const SchattenEstimate e = schatten_estimate(bump_n, bump_p, 1.0);
  CHECK_FALSE(e.divergent);
  CHECK(e.delta < 1e-10);
  const SpectralReport zbar_n = singular_values(hankel_gram(symbols::zbar(), b, 60));
  const SpectralReport zbar_p = singular_values(hankel_gram(symbols::zbar(), b, 50));
  CHECK(schatten_estimate(zbar_n, zbar_p, 2.0).divergent);
  const SpectralReport z = singular_values(hankel_gram(symbols::z(), b, 60));
  CHECK(schatten_estimate(z, z, 2.0).zero);
}

TEST_CASE("condition (C) integral and the S2 identity") {
  const Basis& b = basis200();
  const QuadratureGrid centers = center_grid(6.0, 64, 1.0, 8);
  SUBCASE("z gives zero") {
    const OscillationField k = hankel_kernel_field(symbols::z(), b, centers);
    const NormResult c = condition_c_integral(k, 2.0);
    CHECK(c.value < 1e-12);
    CHECK_FALSE(c.divergent);
  }
  SUBCASE("conj(z) diverges") {
    const OscillationField k = hankel_kernel_field(symbols::zbar(), b, centers);
    for (double v : k.values) CHECK(std::abs(v - 1.0) < 1e-8);
    CHECK(condition_c_integral(k, 2.0).divergent);
  }
  SUBCASE("bump: integral equals pi times the sum of squared singular values") {
    const Symbol f = symbols::bump(0.0, 1.0);
    const double s2 = std::pow(schatten_norm(singular_values(hankel_gram(f, basis100(), 60)), 2.0), 2.0);
    const NormResult c = condition_c_integral(hankel_kernel_field(f, b, centers), 2.0);
    CHECK_FALSE(c.divergent);
    CHECK(std::abs(c.value - kPi * s2) <= 0.02 * kPi * s2);
  }
  CHECK_THROWS_AS(hankel_kernel_field(symbols::zbar(), basis100(), center_grid(10.0, 16, 1.0, 4)), TruncationError);
}

TEST_CASE("Stroethoff quantities and the translation identity") {
  const Basis& b = basis200();
  std::vector<cplx> probes;
  for (int k = 0; k <= 16; ++k)
    for (int a = 0; a < 4; ++a) probes.push_back(std::polar(0.5 * k, 0.3 + a * kPi / 2));
  const StroethoffReport z = stroethoff_quantities(symbols::zbar(), b, probes);
  CHECK(std::abs(z.sup - 1.0) < 1e-8);
  for (double v : z.ring_max) CHECK(std::abs(v - 1.0) < 1e-8);
  const StroethoffReport bump = stroethoff_quantities(symbols::bump(0.0, 1.0), b, probes);
  for (std::size_t i = 0; i < bump.ring_radius.size(); ++i)
    if (bump.ring_radius[i] >= 6.0) CHECK(bump.ring_max[i] < 1e-3);
  for (cplx z0 : {cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{1.0, 1.0}})
    CHECK(std::abs(translate_norm(symbols::bump(0.0, 1.0), z0, basis100()) -
                   hankel_apply_to_kernel(symbols::bump(0.0, 1.0), z0, b)) <= 1e-6);
  const Weight w = Weight::radial_perturbed(1.0, [](double rho) { return 0.1 * std::cos(rho); }, 1.8, 2.2);
  CHECK_THROWS_AS(translate_norm(symbols::bump(0.0, 1.0), 0.0, build_basis(w, 20)), UnsupportedWeight);
}

TEST_CASE("equivalence reports") {
  const Basis& bh = basis100();
  const Basis& bk = basis200();
  const QuadratureGrid centers = center_grid(6.0, 64, 1.0, 8);
  auto report = [&](const Symbol& f, double p) {
    const SpectralReport at_n = singular_values(hankel_gram(f, bh, 60));
    const SpectralReport at_prev = singular_values(hankel_gram(f, bh, 50));
    return equivalence_report(at_n, at_prev, g_field(f, 0.5, 10, centers), hankel_kernel_field(f, bk, centers), p);
  };
  SUBCASE("z: all zero") {
    const EquivalenceRow r = report(symbols::z(), 2.0);
    CHECK(r.all_zero);
    CHECK(r.consistent);
    CHECK(std::isnan(r.ratio_schatten_ida));
  }
  SUBCASE("conj(z): all divergent") {
    const EquivalenceRow r = report(symbols::zbar(), 2.0);
    CHECK(r.all_divergent);
    CHECK(r.consistent);
    CHECK(std::isnan(r.ratio_ida_kernel));
  }
  SUBCASE("bump: bounded ratios") {
    const EquivalenceRow r = report(symbols::bump(0.0, 1.0), 2.0);
    CHECK(r.all_finite);
    CHECK(r.consistent);
    for (double q : {r.ratio_schatten_ida, r.ratio_schatten_kernel, r.ratio_ida_kernel}) {
      CHECK(q >= 0.1);
      CHECK(q <= 10.0);
    }
  }
}

TEST_CASE("Berger-Coburn ratios") {
  const Basis& b = basis100();
  auto spectra = [&](const Symbol& f) {
    return std::pair{singular_values(hankel_gram(f, b, 60)), singular_values(hankel_gram(f, b, 50))};
  };
  SUBCASE("real symbol") {
    const Symbol f = symbols::bump(0.0, 1.0);
    const auto [fn, fp] = spectra(f);
    const auto [cn, cp] = spectra(f.conj());
    const BergerCoburn r = berger_coburn_ratio(cn, cp, fn, fp, 2.0);
    CHECK(r.ratio == 1.0);
    CHECK(r.in_theorem);
  }
  SUBCASE("z fails") {
    const auto [fn, fp] = spectra(symbols::z());
    const auto [cn, cp] = spectra(symbols::zbar());
    for (double p : {1.5, 2.0, 4.0}) {
      const BergerCoburn r = berger_coburn_ratio(cn, cp, fn, fp, p);
      CHECK(r.failure_mode);
      CHECK(r.numerator.value > 0.0);
      CHECK(r.denominator.zero);
    }
  }
  SUBCASE("complex bump") {
    const Symbol f = symbols::complex_bump(0.0, 1.0, 1.0);
    const auto [fn, fp] = spectra(f);
    const auto [cn, cp] = spectra(f.conj());
    const BergerCoburn r = berger_coburn_ratio(cn, cp, fn, fp, 2.0);
    CHECK_FALSE(r.failure_mode);
    CHECK(r.ratio <= 10.0);
    CHECK(r.ratio >= 0.1);
  }
  SUBCASE("p outside (1, inf) is marked") {
    const auto [fn, fp] = spectra(symbols::bump(0.0, 1.0));
    CHECK_FALSE(berger_coburn_ratio(fn, fp, fn, fp, 1.0).in_theorem);
  }
}
