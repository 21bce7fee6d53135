#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fockida/error.hpp"
#include "fockida/operators.hpp"

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

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("Toeplitz sections with closed forms") {
  const Basis& b = basis100();
  const int n = 60;
  SUBCASE("constant 1 is the identity") {
    const OperatorMatrix t = toeplitz_matrix(symbols::constant(1.0), b, n);
    CHECK(max_abs(t.entries - Eigen::MatrixXcd::Identity(n, n)) < 1e-12);
  }
  SUBCASE("conj(z) lowers the degree") {
    const OperatorMatrix t = toeplitz_matrix(symbols::zbar(), b, n);
    Eigen::MatrixXcd exact = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) exact(k - 1, k) = std::sqrt(static_cast<double>(k));
    CHECK(max_abs(t.entries - exact) < 1e-8);
  }
  SUBCASE("|z|^2 is diagonal k + 1") {
    const OperatorMatrix t = toeplitz_matrix(symbols::abs_squared(), b, n);
    Eigen::MatrixXcd exact = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) exact(k, k) = k + 1.0;
    CHECK(max_abs(t.entries - exact) < 1e-8);
    CHECK(t.hermitian);
    CHECK(max_abs(t.entries - t.entries.adjoint()) < 1e-12);
  }
  SUBCASE("FFT and dense assembly agree") {
    const Symbol f = symbols::complex_bump({0.3, -0.2}, 1.0, 2.0);
    const QuadratureGrid grid = assembly_grid(f, b, 40, 30);
    const OperatorMatrix a = toeplitz_block(f, b, 40, 30, grid);
    const OperatorMatrix d = toeplitz_block_dense(f, b, 40, 30, grid);
    CHECK(max_abs(a.entries - d.entries) < 1e-12);
  }
}

TEST_CASE("Toeplitz assembly rejects symbols outside their class") {
  const Symbol liar("liar", [](cplx z) { return cplx{std::exp(std::norm(z))}; }, Growth::Bounded, Smoothness::C2);
  CHECK_THROWS_AS(toeplitz_matrix(liar, basis100(), 20), SymbolClassError);
  CHECK_THROWS_AS(toeplitz_matrix(symbols::zbar(), basis100(), 101), InvalidInput);
  CHECK_THROWS_AS(toeplitz_matrix(Measure::lebesgue(), basis100(), 10), SymbolClassError);
}

TEST_CASE("Bergman projection") {
  const Basis& b = basis100();
  const int n = 40;
  const QuadratureGrid grid = plane_grid_for(b.weight(), 2 * n, 128);
  SUBCASE("holomorphic polynomial") {
    auto p = [](cplx z) { return 2.0 - cplx{0.0, 1.0} * z + 0.25 * z * z * z; };
    const auto c = bergman_project(p, b, n, grid);
    for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, 0.5}, cplx{-1.5, 1.0}}) CHECK(std::abs(reconstruct(c, b, z) - p(z)) < 1e-10);
  }
  SUBCASE("conj(z) projects to zero") {
    const auto c = bergman_project([](cplx z) { return std::conj(z); }, b, n, grid);
    for (const cplx& x : c) CHECK(std::abs(x) < 1e-12);
  }
  SUBCASE("|z|^2 projects to the constant 1") {
    const auto c = bergman_project([](cplx z) { return cplx{std::norm(z)}; }, b, n, grid);
    CHECK(std::abs(c[0] - std::sqrt(kPi)) < 1e-12);
    for (std::size_t k = 1; k < c.size(); ++k) CHECK(std::abs(c[k]) < 1e-12);
    CHECK(std::abs(reconstruct(c, b, {0.7, 0.2}) - 1.0) < 1e-12);
  }
  SUBCASE("projection is idempotent") {
    const Symbol f = symbols::complex_bump(0.0, 1.0, 2.0);
    const auto c1 = bergman_project(f.function(), b, n, grid);
    const auto c2 = bergman_project([&](cplx z) { return reconstruct(c1, b, z); }, b, n, grid);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(c1[k] - c2[k]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Hankel Gram matrices") {
  const Basis& b = basis100();
  const int n = 60;
  SUBCASE("z gives zero") { CHECK(max_abs(hankel_gram(symbols::z(), b, n).entries) < 1e-10); }
  SUBCASE("conj(z) gives the identity") {
    const OperatorMatrix g = hankel_gram(symbols::zbar(), b, n);
    CHECK(max_abs(g.entries - Eigen::MatrixXcd::Identity(n, n)) < 1e-6);
  }
  SUBCASE("bump is PSD with decaying spectrum") {
    const OperatorMatrix g = hankel_gram(symbols::bump(0.0, 1.0), b, n);
    CHECK(g.hermitian);
    CHECK(max_abs(g.entries - g.entries.adjoint()) < 1e-12);
    CHECK(g.psd_violation < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.entries);
    const auto& ev = es.eigenvalues();
    CHECK(ev.minCoeff() > -1e-10);
    CHECK(ev(n - 1) > 0.1);
    CHECK(ev(n - 21) < 1e-8 * ev(n - 1));
  }
  SUBCASE("suite symbols are PSD") {
    for (const Symbol& f : {symbols::complex_bump(0.0, 1.0, 2.0), symbols::radial_step(1.0, 2.0),
                            symbols::random_field(7, 16, 2.0), symbols::zbar_gaussian()})
      CHECK(hankel_gram(f, b, n).psd_violation < 1e-10);
  }
  CHECK_THROWS_AS(hankel_gram(symbols::zbar(), b, 61), InvalidInput);
}

TEST_CASE("Hankel operator on normalized kernels") {
  const Basis& b = basis200();
  SUBCASE("conj(z) is isometric") {
    for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, 1.0}, cplx{-3.0, 2.0}}) CHECK(std::abs(hankel_apply_to_kernel(symbols::zbar(), z, b) - 1.0) < 1e-8);
  }
  SUBCASE("polynomials give zero") {
    for (cplx z : {cplx{0.0, 0.0}, cplx{2.0, -1.0}}) CHECK(hankel_apply_to_kernel(symbols::z(), z, b) < 1e-7);
  }
  SUBCASE("|z|^2: ||H k_z||^2 = 1 + |z|^2") {
    for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, 1.0}, cplx{0.5, -2.0}})
      CHECK(std::abs(hankel_apply_to_kernel(symbols::abs_squared(), z, b) - std::sqrt(1.0 + std::norm(z))) < 1e-8);
  }
  SUBCASE("bump decays away from its support") {
    const Symbol f = symbols::bump(0.0, 1.0);
    for (double rho : {6.0, 7.0, 8.0})
      for (int a = 0; a < 4; ++a) CHECK(hankel_apply_to_kernel(f, std::polar(rho, 0.4 + a * kPi / 2), b) < 1e-3);
    CHECK(hankel_apply_to_kernel(f, 0.0, b) > 0.1);
  }
}

TEST_CASE("kernel routes agree") {
  const Basis& b = basis200();
  const Symbol fs[] = {symbols::bump(0.0, 1.0), symbols::complex_bump(0.0, 1.0, 2.0), symbols::radial_step(1.0, 2.0),
                       symbols::random_field(7, 16, 2.0), symbols::zbar(), symbols::abs_squared()};
  for (const Symbol& f : fs) {
    const KernelHankel grid(f, b, KernelRoute::Grid);
    const KernelHankel sec(f, b, KernelRoute::Sections);
    CHECK(grid.route() == KernelRoute::Grid);
    CHECK(sec.route() == KernelRoute::Sections);
    for (cplx z : {cplx{0.0, 0.0}, cplx{0.7, -0.3}, cplx{2.0, 1.5}, cplx{-3.5, 0.5}}) {
      const double a = grid.parts(z).value2, c = sec.parts(z).value2;
      INFO(f.name() << " at " << z);
      CHECK(std::abs(a - c) <= 1e-8);
    }
  }
  CHECK(KernelHankel(symbols::bump(0.0, 1.0), b).route() == KernelRoute::Grid);
  CHECK(KernelHankel(symbols::random_field(7, 16, 2.0), b).route() == KernelRoute::Sections);
}

TEST_CASE("||H k_z||^2 = Berezin of T_{|f|^2} minus ||P(f k_z)||^2") {
  const Basis& b = basis100();
  const Symbol f = symbols::complex_bump({0.2, 0.1}, 1.0, 2.0);
  Symbol f2("abs2f", [&](cplx w) { return cplx{std::norm(f(w))}; }, Growth::CompactlySupported, Smoothness::C2);
  f2.with_support({{0.2, 0.1}, 1.0, 0.0});
  const OperatorMatrix t = toeplitz_matrix(f2, b, 80);
  const KernelHankel kh(f, b, KernelRoute::Grid);
  for (cplx z : {cplx{0.0, 0.0}, cplx{0.5, 0.5}, cplx{-1.0, 1.2}}) {
    const auto parts = kh.parts(z);
    CHECK(std::abs(parts.fk_norm2 - std::real(berezin(t, b, z))) < 1e-8);
    CHECK(std::abs(parts.value2 - (parts.fk_norm2 - parts.proj_norm2)) < 1e-12);
  }
}

TEST_CASE("Berezin transforms") {
  const Basis& b = basis100();
  const int n = 60;
  const OperatorMatrix id = toeplitz_matrix(symbols::constant(1.0), b, n);
  for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, -1.0}}) CHECK(std::abs(berezin(id, b, z) - 1.0) < 1e-12);
  const OperatorMatrix t = toeplitz_matrix(symbols::abs_squared(), b, n);
  for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, 1.0}, cplx{-2.0, 0.5}})
    CHECK(std::abs(berezin(t, b, z) - (std::norm(z) + 1.0)) < 1e-8);
  const Measure mu = Measure::bump_density({0.5, 0.3}, 0.8, 2.0);
  const OperatorMatrix tm = toeplitz_matrix(mu, b, n);
  for (cplx z : {cplx{0.0, 0.0}, cplx{0.5, 0.3}, cplx{1.5, -1.0}, cplx{3.0, 3.0}}) {
    const double direct = berezin(mu, b, z);
    CHECK(direct >= 0.0);
    CHECK(direct <= 2.0 + 1e-12);
    CHECK(std::abs(std::real(berezin(tm, b, z)) - direct) < 1e-8);
  }
}

TEST_CASE("kernel coefficients") {
  const Basis& b = basis100();
  const Eigen::VectorXcd k = kernel_coefficients(b, {1.0, 0.5}, 60);
  CHECK(std::abs(k.norm() - 1.0) < 1e-14);
  CHECK_THROWS_AS(kernel_coefficients(b, 0.0, 0), InvalidInput);
}

TEST_CASE("matrix text dump") {
  OperatorMatrix m;
  m.entries = Eigen::MatrixXcd(2, 3);
  m.entries << cplx{1.0, 0.0}, cplx{0.0, -2.5}, cplx{0.1, 0.2}, cplx{3.0, 4.0}, cplx{}, cplx{-1.0, 1e-17};
  std::ostringstream os;
  write_matrix_text(os, m);
  std::istringstream in(os.str());
  int rows = 0, cols = 0;
  in >> rows >> cols;
  CHECK(rows == 2);
  CHECK(cols == 3);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 3; ++k) {
      double re = 0.0, im = 0.0;
      in >> re >> im;
      CHECK(re == m.entries(j, k).real());
      CHECK(im == m.entries(j, k).imag());
    }
}
