#include "fockida/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fft.hpp"
#include "fockida/error.hpp"
#include "fockida/parallel.hpp"

namespace fockida {

namespace {

constexpr double kDiskPanel = 0.25;
constexpr int kDiskOrder = 16;

// Angular Fourier modes of g on rings of radius <= radius that matter at double precision.
int symbol_bandwidth(const Symbol& g, double radius) {
  return std::max(g.degree(), 0) + static_cast<int>(std::ceil(g.frequency() * radius)) + 24;
}

bool has_compact_part(const Symbol& g) {
  return g.support().has_value();
}

GridInfo info_of(const QuadratureGrid& grid) {
  return {grid.kind(), grid.center(), grid.radius(), grid.size(), grid.angular_count()};
}

// Radial profiles p_k(rho_i) = |e_k(rho_i)| e^{-phi(rho_i)}, rings x n.
Eigen::MatrixXd ring_profiles(const Basis& basis, const QuadratureGrid& grid, int n) {
  const auto radii = grid.radii();
  Eigen::MatrixXd P(radii.size(), n);
  std::vector<double> prof(n);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    basis.radial_profile(radii[i], prof);
    for (int k = 0; k < n; ++k) P(i, k) = prof[k];
  }
  return P;
}

// B(i, k) = sqrt(w_i) e_k(z_i) e^{-phi(z_i)}
Eigen::MatrixXcd weighted_design(const Basis& basis, std::span<const cplx> nodes, std::span<const double> weights, int n) {
  Eigen::MatrixXcd B(nodes.size(), n);
  parallel_for(nodes.size(), [&](std::size_t i) {
    std::vector<cplx> e(n);
    basis.evaluate_weighted(nodes[i], e);
    const double s = std::sqrt(weights[i]);
    for (int k = 0; k < n; ++k) B(i, k) = s * e[k];
  });
  return B;
}

void check_symbol_class(const Symbol& g, const Basis& basis) {
  const GrowthCheck gc = check_growth(g, 4.0);
  if (!gc.consistent) throw SymbolClassError("symbol '" + g.name() + "' fails its growth class: " + gc.detail);
  if (g.growth() == Growth::PolynomialGrowth && !(basis.weight().m() > 0.0))
    throw SymbolClassError("polynomial-growth symbol '" + g.name() + "' needs a weight with positive curvature");
}

void finish(OperatorMatrix& T, bool real_symbol) {
  if (real_symbol && T.entries.rows() == T.entries.cols()) {
    const Eigen::MatrixXcd H = 0.5 * (T.entries + T.entries.adjoint());
    T.entries = H;
    T.hermitian = true;
  }
}

}  // namespace

QuadratureGrid assembly_grid(const Symbol& g, const Basis& basis, int rows, int cols) {
  const int mmax = rows + cols;
  if (has_compact_part(g) && g.support()->value_outside == cplx{}) {
    const double R = std::abs(g.support()->center) + g.support()->radius;
    const int panels = std::max(1, static_cast<int>(std::ceil(R / kDiskPanel)));
    return QuadratureGrid::disk({0.0, 0.0}, R, panels, kDiskOrder, mmax + symbol_bandwidth(g, R));
  }
  const int degree = std::max(rows, cols) + std::max(g.degree(), 0);
  const double R = radial_cutoff(basis.weight(), degree, 40.0);
  const double width = 1.0 / std::sqrt(basis.weight().alpha());
  const int panels = std::max(2, static_cast<int>(std::ceil(R / width)));
  return QuadratureGrid::plane(R, panels, 16, mmax + symbol_bandwidth(g, R));
}

OperatorMatrix toeplitz_block_dense(const Symbol& g, const Basis& basis, int rows, int cols, const QuadratureGrid& grid) {
  const int n = std::max(rows, cols);
  if (rows < 1 || cols < 1 || n > basis.order()) throw InvalidInput("toeplitz_block: bad section size");
  const auto nodes = grid.nodes();
  const Eigen::MatrixXcd B = weighted_design(basis, nodes, grid.weights(), n);
  Eigen::VectorXcd gv(nodes.size());
  bool real = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    gv[i] = g(nodes[i]);
    real = real && gv[i].imag() == 0.0;
  }
  OperatorMatrix T;
  T.entries = B.leftCols(rows).adjoint() * (gv.asDiagonal() * B.leftCols(cols));
  T.domain_order = cols;
  T.codomain_order = rows;
  T.grid = info_of(grid);
  finish(T, real);
  return T;
}

OperatorMatrix toeplitz_block(const Symbol& g, const Basis& basis, int rows, int cols, const QuadratureGrid& grid) {
  if (!grid.centered_at_origin()) return toeplitz_block_dense(g, basis, rows, cols, grid);
  const int n = std::max(rows, cols);
  if (rows < 1 || cols < 1 || n > basis.order()) throw InvalidInput("toeplitz_block: bad section size");
  const int L = grid.angular_count();
  if (L < rows + cols) throw InsufficientGrid("toeplitz_block: angular rule aliases the requested section", L);
  const auto radii = grid.radii();
  const auto rw = grid.radial_weights();
  const auto nodes = grid.nodes();
  const std::size_t rings = radii.size();

  std::vector<cplx> F(nodes.size());
  bool real = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    F[i] = g(nodes[i]);
    real = real && F[i].imag() == 0.0;
  }
  // F_i(m) = (2 pi / L) sum_l g(z_il) e^{i m theta_l}
  detail::RowFft(L, static_cast<int>(rings), FFTW_BACKWARD).execute(F);
  const Eigen::MatrixXd P = ring_profiles(basis, grid, n);

  OperatorMatrix T;
  T.entries = Eigen::MatrixXcd::Zero(rows, cols);
  const double dtheta = 2.0 * kPi / L;
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t j) {
    for (int k = 0; k < cols; ++k) {
      const int m = ((k - static_cast<int>(j)) % L + L) % L;
      cplx acc = 0.0;
      for (std::size_t i = 0; i < rings; ++i) acc += rw[i] * P(i, j) * P(i, k) * F[i * L + m];
      T.entries(j, k) = acc * dtheta;
    }
  });
  T.domain_order = cols;
  T.codomain_order = rows;
  T.grid = info_of(grid);
  finish(T, real);
  return T;
}

OperatorMatrix toeplitz_matrix(const Symbol& g, const Basis& basis, const QuadratureGrid& grid) {
  check_symbol_class(g, basis);
  const int n = basis.order();
  const Symbol gc = g.compact_part();
  OperatorMatrix T = toeplitz_block(gc, basis, n, n, grid);
  if (g.support() && g.support()->value_outside != cplx{}) {
    T.entries.diagonal().array() += g.support()->value_outside;
    if (g.support()->value_outside.imag() != 0.0) T.hermitian = false;
  }
  return T;
}

OperatorMatrix toeplitz_matrix(const Symbol& g, const Basis& basis, int n) {
  check_symbol_class(g, basis);
  if (n < 1 || n > basis.order()) throw InvalidInput("toeplitz_matrix: bad section size");
  const Symbol gc = g.compact_part();
  OperatorMatrix T = toeplitz_block(gc, basis, n, n, assembly_grid(gc, basis, n, n));
  if (g.support() && g.support()->value_outside != cplx{}) {
    T.entries.diagonal().array() += g.support()->value_outside;
    if (g.support()->value_outside.imag() != 0.0) T.hermitian = false;
  }
  return T;
}

OperatorMatrix toeplitz_matrix(const Measure& mu, const Basis& basis, int n) {
  if (n < 1 || n > basis.order()) throw InvalidInput("toeplitz_matrix: bad section size");
  switch (mu.kind()) {
    case Measure::Kind::Lebesgue:
      throw SymbolClassError("toeplitz_matrix: Lebesgue measure gives an unbounded operator");
    case Measure::Kind::Density: {
      Symbol rho("density", [mu](cplx z) { return cplx{mu.density_at(z), 0.0}; }, Growth::CompactlySupported,
                 Smoothness::C2);
      rho.with_support({mu.center(), mu.radius(), 0.0}).with_frequency(4.0 / mu.radius());
      return toeplitz_block(rho, basis, n, n, assembly_grid(rho, basis, n, n));
    }
    case Measure::Kind::Points: {
      std::vector<cplx> nodes;
      std::vector<double> masses;
      for (const auto& [p, w] : mu.points()) {
        nodes.push_back(p);
        masses.push_back(w);
      }
      const Eigen::MatrixXcd B = weighted_design(basis, nodes, masses, n);
      OperatorMatrix T;
      T.entries = B.adjoint() * B;
      T.entries = 0.5 * (T.entries + T.entries.adjoint()).eval();
      T.domain_order = T.codomain_order = n;
      T.grid = {DomainKind::Plane, {}, 0.0, nodes.size(), 0};
      T.hermitian = true;
      return T;
    }
  }
  throw InvalidInput("toeplitz_matrix: unknown measure kind");
}

std::vector<cplx> bergman_project(const std::function<cplx(cplx)>& g, const Basis& basis, int n,
                                  const QuadratureGrid& grid) {
  if (n < 1 || n > basis.order()) throw InvalidInput("bergman_project: bad order");
  const auto nodes = grid.nodes();
  const auto w = grid.weights();
  const Weight& W = basis.weight();
  std::vector<cplx> out(n, 0.0);
  if (grid.centered_at_origin()) {
    const int L = grid.angular_count();
    const std::size_t rings = grid.radii().size();
    std::vector<cplx> U(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) U[i] = g(nodes[i]) * std::exp(-W(nodes[i]));
    detail::RowFft(L, static_cast<int>(rings), FFTW_FORWARD).execute(U);
    const Eigen::MatrixXd P = ring_profiles(basis, grid, n);
    const auto rw = grid.radial_weights();
    for (int k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < rings; ++i) acc += rw[i] * P(i, k) * U[i * L + (k % L)];
      out[k] = acc * (2.0 * kPi / L);
    }
    return out;
  }
  std::vector<cplx> e(n);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    basis.evaluate_weighted(nodes[i], e);
    const cplx v = w[i] * g(nodes[i]) * std::exp(-W(nodes[i]));
    for (int k = 0; k < n; ++k) out[k] += v * std::conj(e[k]);
  }
  return out;
}

cplx reconstruct(const std::vector<cplx>& coefficients, const Basis& basis, cplx z) {
  const int n = static_cast<int>(coefficients.size());
  std::vector<cplx> e(n);
  basis.evaluate(z, e);
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) acc += coefficients[k] * e[k];
  return acc;
}

namespace {

Symbol abs_squared_of(const Symbol& f) {
  Symbol g("|" + f.name() + "|^2", [f](cplx z) { return cplx{std::norm(f(z)), 0.0}; },
           f.growth(), f.smoothness());
  if (f.support()) g.with_support({f.support()->center, f.support()->radius, std::norm(f.support()->value_outside)});
  g.with_degree(2 * f.degree()).with_frequency(2.0 * f.frequency());
  return g;
}

}  // namespace

OperatorMatrix hankel_gram(const Symbol& f, const Basis& basis, int n, const QuadratureGrid& grid,
                           const HankelOptions& options) {
  check_symbol_class(f, basis);
  const int M = n + options.extra_rows;
  if (n < 1 || M > basis.order()) throw InvalidInput("hankel_gram: basis order must be at least n + extra_rows");
  // H_f = H_{f - c} when f is the constant c outside a disk.
  const Symbol fc = f.compact_part();
  const Symbol g2 = abs_squared_of(fc);
  const OperatorMatrix A = toeplitz_block(g2, basis, n, n, grid);
  const OperatorMatrix B = toeplitz_block(fc, basis, M, n, grid);
  OperatorMatrix G;
  G.entries = A.entries - B.entries.adjoint() * B.entries;
  G.entries = 0.5 * (G.entries + G.entries.adjoint()).eval();
  G.hermitian = true;
  G.domain_order = G.codomain_order = n;
  G.codomain = Codomain::Self;
  G.grid = info_of(grid);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.entries, Eigen::EigenvaluesOnly);
  G.psd_violation = std::max(0.0, -es.eigenvalues().minCoeff());
  return G;
}

OperatorMatrix hankel_gram(const Symbol& f, const Basis& basis, int n, const HankelOptions& options) {
  const int M = n + options.extra_rows;
  if (n < 1 || M > basis.order()) throw InvalidInput("hankel_gram: basis order must be at least n + extra_rows");
  const Symbol fc = f.compact_part();
  const Symbol g2 = abs_squared_of(fc);
  // One grid serves both blocks: |f|^2 doubles the degree, T_f needs M rows.
  QuadratureGrid grid = assembly_grid(g2, basis, M, M);
  return hankel_gram(f, basis, n, grid, options);
}

// ---------------------------------------------------------------- kernel route

namespace {

// ||f k||^2 - ||P(f k)||^2 cannot be resolved below the rounding of its two terms.
double resolved_difference(double total, double projected) {
  const double d = total - projected;
  return d <= 1e-12 * total ? 0.0 : d;
}

// Largest |z| with the mass of k_z beyond its first n coefficients below tol.
double kernel_tail_radius(const Basis& basis, int n, double tol) {
  const int m = basis.order();
  std::vector<double> prof(m);
  auto tail = [&](double rho) {
    basis.radial_profile(rho, prof);
    double total = 0.0, beyond = 0.0;
    for (int k = 0; k < m; ++k) {
      total += prof[k] * prof[k];
      if (k >= n) beyond += prof[k] * prof[k];
    }
    return beyond / total;
  };
  double lo = 0.0, hi = basis.validated_radius();
  if (tail(hi) < tol) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) < tol ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

struct KernelHankel::Fft {
  detail::RowFft plan;
  Fft(int L, int rings) : plan(L, rings, FFTW_FORWARD) {}
};

KernelHankel::KernelHankel(const Symbol& f, const Basis& basis, KernelRoute route)
    : f_(f.compact_part()), basis_(&basis) {
  check_symbol_class(f, basis);
  const int M = basis.order();
  const Weight& W = basis.weight();
  compact_ = f_.support().has_value() && f_.support()->value_outside == cplx{};
  route_ = route == KernelRoute::Auto ? (compact_ ? KernelRoute::Grid : KernelRoute::Sections) : route;
  if (route_ == KernelRoute::Grid && compact_) {
    // Beyond |z| = 12 the kernel's angular content would alias on the support disk.
    max_radius_ = 12.0 / std::sqrt(W.alpha());
    const double R = std::abs(f_.support()->center) + f_.support()->radius;
    const int kernel_band = static_cast<int>(std::ceil(std::sqrt(80.0 * W.alpha() * R * max_radius_)));
    const int L = M + symbol_bandwidth(f_, R) + kernel_band + 16;
    const int panels = std::max(1, static_cast<int>(std::ceil(R / kDiskPanel)));
    grid_ = QuadratureGrid::disk({0.0, 0.0}, R, panels, kDiskOrder, L);
    const auto nodes = grid_.nodes();
    f_values_.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) f_values_[i] = f_(nodes[i]);
    profiles_ = ring_profiles(basis, grid_, M);
    const auto rw = grid_.radial_weights();
    for (Eigen::Index i = 0; i < profiles_.rows(); ++i) profiles_.row(i) *= rw[i] * 2.0 * kPi / L;
    fft_ = new Fft(L, static_cast<int>(grid_.radii().size()));
  } else if (route_ == KernelRoute::Grid) {
    max_radius_ = std::max(0.0, basis.validated_radius() - std::max(1, f_.degree()));
    const double R = 6.0 / std::sqrt(W.alpha());
    grid_ = QuadratureGrid::disk({0.0, 0.0}, R, 6, 10, 96);
  } else {
    // k_z is expanded in its first n coefficients; T_f and T_{|f|^2} act on that span.
    const int n = M - HankelOptions{}.extra_rows;
    if (n < 1) throw InvalidInput("KernelHankel: basis order too small for a non-compact symbol");
    const Symbol g2 = abs_squared_of(f_);
    const QuadratureGrid grid = assembly_grid(g2, basis, M, M);
    t_abs2_ = toeplitz_block(g2, basis, n, n, grid).entries;
    t_f_ = toeplitz_block(f_, basis, M, n, grid).entries;
    max_radius_ = std::min(std::max(0.0, basis.validated_radius() - std::max(1, f_.degree())),
                           kernel_tail_radius(basis, n, 1e-16));
  }
}

KernelHankel::~KernelHankel() { delete fft_; }

KernelHankel::Parts KernelHankel::support_parts(cplx z) const {
  const KernelFunction kz(*basis_, z);
  const auto nodes = grid_.nodes();
  const auto w = grid_.weights();
  const int L = grid_.angular_count();
  const int M = basis_->order();
  std::vector<cplx> U(nodes.size());
  Parts out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    U[i] = f_values_[i] * kz.weighted(nodes[i]);
    out.fk_norm2 += w[i] * std::norm(U[i]);
  }
  fft_->plan.execute(U);
  const std::size_t rings = grid_.radii().size();
  for (int m = 0; m < M; ++m) {
    cplx c = 0.0;
    for (std::size_t i = 0; i < rings; ++i) c += profiles_(i, m) * U[i * L + m];
    out.proj_norm2 += std::norm(c);
  }
  out.value2 = resolved_difference(out.fk_norm2, out.proj_norm2);
  return out;
}

KernelHankel::Parts KernelHankel::local_parts(cplx z) const {
  const KernelFunction kz(*basis_, z);
  const auto nodes = grid_.nodes();
  const auto w = grid_.weights();
  const int M = basis_->order();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(M);
  std::vector<cplx> e(M);
  Parts out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cplx x = z + nodes[i];
    const cplx u = f_(x) * kz.weighted(x);
    out.fk_norm2 += w[i] * std::norm(u);
    basis_->evaluate_weighted(x, e);
    const cplx wu = w[i] * u;
    for (int m = 0; m < M; ++m) c[m] += wu * std::conj(e[m]);
  }
  out.proj_norm2 = c.squaredNorm();
  out.value2 = resolved_difference(out.fk_norm2, out.proj_norm2);
  return out;
}

KernelHankel::Parts KernelHankel::section_parts(cplx z) const {
  const int n = static_cast<int>(t_abs2_.cols());
  std::vector<cplx> e(basis_->order());
  basis_->evaluate(z, e);
  double kzz = 0.0;
  for (const cplx& v : e) kzz += std::norm(v);
  Eigen::VectorXcd a(n);
  for (int j = 0; j < n; ++j) a[j] = std::conj(e[j]) / std::sqrt(kzz);
  Parts out;
  out.fk_norm2 = a.dot(t_abs2_ * a).real();
  out.proj_norm2 = (t_f_ * a).squaredNorm();
  out.value2 = resolved_difference(out.fk_norm2, out.proj_norm2);
  return out;
}

KernelHankel::Parts KernelHankel::parts(cplx z) const {
  if (std::abs(z) > max_radius_)
    throw TruncationError("KernelHankel: |z| beyond the validated kernel radius", std::abs(z));
  if (route_ == KernelRoute::Sections) return section_parts(z);
  return compact_ ? support_parts(z) : local_parts(z);
}

double KernelHankel::norm(cplx z) const { return std::sqrt(parts(z).value2); }

double hankel_apply_to_kernel(const Symbol& f, cplx z, const Basis& basis) {
  return KernelHankel(f, basis, KernelRoute::Grid).norm(z);
}

Eigen::VectorXcd kernel_coefficients(const Basis& basis, cplx z, int n) {
  if (n < 1 || n > basis.order()) throw InvalidInput("kernel_coefficients: bad order");
  std::vector<cplx> e(n);
  basis.evaluate(z, e);
  Eigen::VectorXcd k(n);
  double kzz = 0.0;
  for (int j = 0; j < n; ++j) {
    k[j] = std::conj(e[j]);
    kzz += std::norm(e[j]);
  }
  if (!(kzz > 0.0) || !std::isfinite(kzz)) throw TruncationError("kernel_coefficients: K_N(z,z) is not positive", kzz);
  return k / std::sqrt(kzz);
}

cplx berezin(const OperatorMatrix& T, const Basis& basis, cplx z) {
  if (T.entries.rows() != T.entries.cols()) throw InvalidInput("berezin: operator section must be square");
  const Eigen::VectorXcd k = kernel_coefficients(basis, z, static_cast<int>(T.entries.cols()));
  return k.dot(T.entries * k);
}

double berezin(const Measure& mu, const Basis& basis, cplx z) {
  if (mu.kind() == Measure::Kind::Lebesgue) return 1.0;
  const KernelFunction kz(basis, z);
  return mu.integrate([&](cplx w) { return cplx{std::norm(kz.weighted(w)), 0.0}; }).real();
}

void write_matrix_text(std::ostream& os, const OperatorMatrix& m) {
  char buf[64];
  os << m.entries.rows() << ' ' << m.entries.cols() << '\n';
  for (Eigen::Index j = 0; j < m.entries.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.entries.cols(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g", m.entries(j, k).real(), m.entries(j, k).imag());
      if (k) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace fockida
