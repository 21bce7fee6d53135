#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fockida/error.hpp"
#include "fockida/ida.hpp"
#include "fockida/measure.hpp"
#include "fockida/symbol.hpp"

using namespace fockida;

namespace {

const double kSqrt2 = std::sqrt(2.0);

Symbol poly3() {
  return Symbol("poly3", [](cplx z) { return 1.0 + cplx{0.5, -1.0} * z + 2.0 * z * z * z; }, Growth::PolynomialGrowth,
                Smoothness::C2)
      .with_degree(3);
}

std::vector<cplx> probes() {
  std::vector<cplx> out;
  for (int k = 0; k <= 4; ++k)
    for (int a = 0; a < 6; ++a) out.push_back(std::polar(0.6 * k, 1.1 * a + 0.3 * k));
  return out;
}

}  // namespace

TEST_CASE("local fit of a holomorphic polynomial is exact") {
  const Symbol f = poly3();
  for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, -2.0}}) {
    const LocalFit fit = local_holo_fit(f, z, 0.7, 5);
    CHECK(fit.residual < 1e-12);
    for (cplx w : {z, z + 0.3, z + cplx{0.1, -0.5}}) CHECK(std::abs(fit(w) - f(w)) < 1e-11);
  }
}

TEST_CASE("local fit of conj(w)") {
  for (double r : {0.5, 1.0, 2.0})
    for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, 1.0}, cplx{-3.0, 0.5}})
      for (int d : {0, 3, 10}) {
        const LocalFit fit = local_holo_fit(symbols::zbar(), z, r, d);
        CHECK(std::abs(fit.residual - r / kSqrt2) < 1e-12);
        CHECK(std::abs(fit.coefficients[0] - std::conj(z)) < 1e-12);
        for (std::size_t k = 1; k < fit.coefficients.size(); ++k) CHECK(std::abs(fit.coefficients[k]) < 1e-12);
      }
}

TEST_CASE("local fit of |w|^2 at the origin") {
  for (double r : {0.5, 1.0}) {
    const LocalFit fit = local_holo_fit(symbols::abs_squared(), 0.0, r, 10);
    CHECK(std::abs(fit.residual - r * r / std::sqrt(12.0)) < 1e-12);
    CHECK(std::abs(fit.coefficients[0] - r * r / 2.0) < 1e-12);
  }
}

TEST_CASE("residual is monotone in d and bounded by M_2r") {
  const Symbol fs[] = {symbols::bump(0.0, 1.0), symbols::complex_bump({0.2, 0.1}, 1.0, 2.0),
                       symbols::random_field(7, 16, 2.0), symbols::radial_step(1.0, 2.0)};
  for (const Symbol& f : fs)
    for (cplx z : probes()) {
      const LocalFit fit = local_holo_fit(f, z, 0.8, 10);
      for (std::size_t k = 1; k < fit.residual_by_degree.size(); ++k)
        CHECK(fit.residual_by_degree[k] <= fit.residual_by_degree[k - 1] + 1e-14);
      const double mo = mo_value(f, z, 0.8);
      const double m2 = m2r_mean(f, z, 0.8);
      CHECK(fit.residual <= mo + 1e-14);
      CHECK(mo <= m2 + 1e-14);
    }
}

TEST_CASE("homogeneity and holomorphic invariance of G") {
  const Symbol f = symbols::complex_bump(0.0, 1.0, 2.0);
  const cplx c{-1.5, 2.0};
  const Symbol h = poly3();
  const Symbol fh("f+h", [&](cplx w) { return f(w) + h(w); }, Growth::PolynomialGrowth, Smoothness::C2);
  for (cplx z : probes()) {
    const double g = local_holo_fit(f, z, 0.6, 10).residual;
    CHECK(std::abs(local_holo_fit(f.scaled(c), z, 0.6, 10).residual - std::abs(c) * g) < 1e-13);
    CHECK(std::abs(local_holo_fit(fh, z, 0.6, 10).residual - g) < 1e-10);
  }
}

TEST_CASE("local fit input checks") {
  CHECK_THROWS_AS(local_holo_fit(symbols::zbar(), 0.0, 0.0, 3), InvalidInput);
  CHECK_THROWS_AS(local_holo_fit(symbols::zbar(), 0.0, 1.0, -1), InvalidInput);
  CHECK_THROWS_AS(local_holo_fit(symbols::zbar(), 0.0, 1.0, 40), InvalidInput);
}

TEST_CASE("degree convergence of smooth symbols") {
  CHECK(degree_convergence(symbols::zbar(), 0.3, 1.0, 10) < 1e-12);
  CHECK(degree_convergence(symbols::bump(0.0, 1.0), 0.5, 0.5, 10) < 0.01);
}

TEST_CASE("G fields") {
  const QuadratureGrid centers = center_grid(4.0, 32, 0.5, 4);
  SUBCASE("entire symbol gives zero") {
    const OscillationField g = g_field(poly3(), 0.5, 10, centers);
    for (double v : g.values) CHECK(v < 1e-12);
  }
  SUBCASE("conj(w) gives the constant r/sqrt2") {
    const OscillationField g = g_field(symbols::zbar(), 0.5, 10, centers, true);
    for (double v : g.values) CHECK(std::abs(v - 0.5 / kSqrt2) < 1e-12);
    CHECK(g.degree_delta < 1e-12);
  }
  SUBCASE("bump support") {
    const double r = 0.5;
    const OscillationField g = g_field(symbols::bump(0.0, 1.0), r, 10, centers);
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      CHECK(g.values[i] >= 0.0);
      if (std::abs(g.centers[i]) > 1.0 + r + 1e-9) CHECK(g.values[i] == 0.0);
    }
  }
}

TEST_CASE("IDA norms") {
  const QuadratureGrid centers = center_grid(5.0, 32, 0.5, 4);
  const double r = 0.5;
  const OscillationField gz = g_field(symbols::zbar(), r, 10, centers);
  SUBCASE("zero field") {
    const OscillationField g0 = g_field(poly3(), r, 10, centers);
    for (double p : {1.0, 2.0, double(INFINITY)}) {
      const NormResult n = ida_norm(g0, p);
      CHECK(n.value < 1e-10);
      CHECK_FALSE(n.divergent);
    }
  }
  SUBCASE("conj(w): bounded but not integrable") {
    const NormResult inf = ida_norm(gz, INFINITY);
    CHECK(std::abs(inf.value - r / kSqrt2) < 1e-12);
    CHECK_FALSE(inf.divergent);
    CHECK(ida_norm(gz, 2.0).divergent);
    CHECK(ida_norm(gz, 1.0).divergent);
  }
  SUBCASE("compact symbol is finite") {
    const OscillationField gb = g_field(symbols::bump(0.0, 1.0), r, 10, centers);
    for (double p : {0.5, 1.0, 2.0, 4.0}) CHECK_FALSE(ida_norm(gb, p).divergent);
  }
  SUBCASE("L^p norm of a constant field over the disk") {
    // (area * c^p)^{1/p} with a loose tail tolerance
    TailOptions loose{1.0, 1.0 + 1e-9};
    const double area = kPi * 25.0;
    CHECK(std::abs(ida_norm(gz, 2.0, loose).value - std::sqrt(area) * r / kSqrt2) < 1e-9);
  }
  CHECK_THROWS_AS(ida_norm(gz, 0.0), InvalidInput);
}

TEST_CASE("VDA check") {
  const QuadratureGrid centers = center_grid(8.0, 32, 0.5, 4);
  const double r = 0.5;
  CHECK(vda_check(g_field(symbols::bump(0.0, 1.0), r, 10, centers)).vanishing);
  CHECK(vda_check(g_field(symbols::zbar_gaussian(), r, 10, centers)).vanishing);
  const VdaReport z = vda_check(g_field(symbols::zbar(), r, 10, centers));
  CHECK_FALSE(z.vanishing);
  REQUIRE_FALSE(z.ring_max.empty());
  for (double v : z.ring_max) CHECK(std::abs(v - r / kSqrt2) < 1e-12);
}

TEST_CASE("M_2r means") {
  for (double r : {0.5, 1.0}) {
    CHECK(std::abs(m2r_mean(symbols::constant({3.0, -4.0}), 1.0, r) - 5.0) < 1e-13);
    CHECK(std::abs(m2r_mean(symbols::zbar(), 0.0, r) - r / kSqrt2) < 1e-13);
    CHECK(std::abs(m2r_mean(symbols::abs_squared(), 0.0, r) - r * r / std::sqrt(3.0)) < 1e-13);
  }
}

TEST_CASE("mean oscillation") {
  cplx avg;
  CHECK(mo_value(symbols::constant(2.0), 0.4, 1.0, &avg) < 1e-13);
  CHECK(std::abs(avg - 2.0) < 1e-13);
  CHECK(std::abs(mo_value(symbols::zbar(), 0.0, 0.7, &avg) - 0.7 / kSqrt2) < 1e-13);
  CHECK(std::abs(avg) < 1e-14);
  const QuadratureGrid centers = center_grid(3.0, 16, 0.5, 4);
  const Symbol f = symbols::complex_bump(0.0, 1.0, 2.0);
  const OscillationField mo = mo_field(f, 0.5, centers);
  const OscillationField g = g_field(f, 0.5, 10, centers);
  for (std::size_t i = 0; i < mo.values.size(); ++i) CHECK(mo.values[i] >= g.values[i] - 1e-14);
}

TEST_CASE("IMO norms") {
  const QuadratureGrid coarse = center_grid(5.0, 48, 0.5, 6);
  const QuadratureGrid fine = center_grid(5.0, 96, 0.25, 8);
  CHECK(imo_norm(symbols::constant(1.0), 2.0, 0.5, coarse).value < 1e-12);
  CHECK(imo_norm(symbols::zbar(), 2.0, 0.5, coarse).divergent);
  const NormResult a = imo_norm(symbols::bump(0.0, 1.0), 2.0, 0.5, coarse);
  const NormResult b = imo_norm(symbols::bump(0.0, 1.0), 2.0, 0.5, fine);
  CHECK_FALSE(a.divergent);
  CHECK_FALSE(b.divergent);
  CHECK(std::abs(a.value - b.value) <= 0.02 * b.value);
}

TEST_CASE("decomposition f = f1 + f2") {
  std::vector<cplx> pr;
  for (int k = 0; k <= 3; ++k)
    for (int a = 0; a < 8; ++a) pr.push_back(std::polar(0.5 * k, 0.8 * a + 0.2));
  SUBCASE("holomorphic polynomial") {
    const Decomposition dec = decompose(poly3(), 0.5, 10, 4.0);
    const DecompositionCertificate cert = certify(poly3(), dec, pr);
    for (std::size_t i = 0; i < pr.size(); ++i) {
      CHECK(std::abs(dec.f1(pr[i]) - poly3()(pr[i])) < 1e-9);
      CHECK(cert.dbar_f1[i] < 1e-9);
      CHECK(cert.m2_f2[i] < 1e-9);
    }
  }
  SUBCASE("conj(w)") {
    const double r = 0.5;
    const Decomposition dec = decompose(symbols::zbar(), r, 10, 4.0);
    const DecompositionCertificate cert = certify(symbols::zbar(), dec, pr);
    CHECK(cert.c_emp <= 10.0);
    for (std::size_t i = 0; i < pr.size(); ++i) {
      CHECK(std::abs(cert.g_2r[i] - 2.0 * r / kSqrt2) < 1e-12);
      CHECK(cert.dbar_f1[i] + cert.m2_f2[i] <= cert.c_emp * 2.0 * r / kSqrt2 + 1e-12);
    }
  }
  SUBCASE("bump certificate is local") {
    const Symbol f = symbols::bump(0.0, 1.0);
    const Decomposition dec = decompose(f, 0.5, 10, 5.0);
    std::vector<cplx> far = {3.5, {0.0, 3.5}, {-2.6, 2.6}};
    const DecompositionCertificate cert = certify(f, dec, far);
    for (std::size_t i = 0; i < far.size(); ++i) {
      CHECK(cert.dbar_f1[i] < 1e-12);
      CHECK(cert.m2_f2[i] < 1e-12);
    }
  }
}

TEST_CASE("standard deviation against the Gaussian measure") {
  CHECK(sd(symbols::constant({2.0, 1.0})) < 1e-10);
  CHECK(std::abs(sd(symbols::z()) - 1.0) < 1e-10);
  CHECK(std::abs(sd(symbols::zbar()) - 1.0) < 1e-10);
  // translates of z all have SD 1
  const OscillationField f = sd_field(symbols::z(), center_grid(2.0, 8, 1.0, 2));
  for (double v : f.values) CHECK(std::abs(v - 1.0) < 1e-10);
}

TEST_CASE("J functional") {
  CHECK(j_functional(symbols::constant(3.0), 0, 0) < 1e-10);
  // double integral of |z - w|^2 over Q^2 = 2 |Q| int_Q |z - mean|^2 = 2 * 9 * 9 * (9/12 + 9/12)
  const double exact = std::sqrt(2.0 * 9.0 * 9.0 * (0.75 + 0.75));
  CHECK(std::abs(j_functional(symbols::z(), 0, 0) - exact) < 1e-8 * exact);
  // translation invariance of |z - w| makes J(z; u) independent of u
  CHECK(std::abs(j_functional(symbols::z(), 2, -1) - exact) < 1e-8 * exact);
  const Symbol periodic("periodic", [](cplx z) { return std::exp(cplx{0.0, 2.0 * kPi / 3.0} * (z.real() + z.imag())); },
                        Growth::Bounded, Smoothness::C2);
  CHECK(std::abs(j_functional(periodic, 0, 0) - j_functional(periodic, 1, 0)) < 1e-8);
  CHECK(std::abs(j_functional(periodic, 0, 0) - j_functional(periodic, 0, 2)) < 1e-8);
}

TEST_CASE("measure averages") {
  for (double r : {0.5, 1.0, 2.0}) CHECK(std::abs(mu_hat(Measure::lebesgue(), r, {1.0, 2.0}) - kPi * r * r) < 1e-12);
  const Measure pm = Measure::point_masses({{0.0, 1.0}});
  CHECK(mu_hat(pm, 1.0, 0.5) == 1.0);
  CHECK(mu_hat(pm, 0.4, 0.5) == 0.0);
  const Measure bump = Measure::bump_density(0.0, 1.0, 1.0);
  // polar midpoint sums around z, an independent route to mu(B(z, r))
  for (auto [z, r] : {std::pair<cplx, double>{0.0, 0.5}, {0.3, 0.5}, {{0.4, -0.2}, 1.0}, {0.0, 2.0}}) {
    const int nr = 2000, nt = 512;
    double acc = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double rho = (i + 0.5) * r / nr;
      for (int j = 0; j < nt; ++j) acc += rho * bump.density_at(z + std::polar(rho, 2.0 * kPi * j / nt));
    }
    acc *= (r / nr) * (2.0 * kPi / nt);
    CHECK(std::abs(mu_hat(bump, r, z) - acc) < 1e-6);
  }
}
