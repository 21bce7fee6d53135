#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockida/measure.hpp"
#include "fockida/quadrature.hpp"
#include "fockida/space.hpp"
#include "fockida/symbol.hpp"

namespace fockida {

struct GridInfo {
  DomainKind kind = DomainKind::Plane;
  cplx center{};
  double radius = 0.0;
  std::size_t nodes = 0;
  int angular = 0;
};

enum class Codomain { Basis, Self };

// Finite section of an operator in the orthonormal basis: entries(j, k) = <T e_k, e_j>.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  int domain_order = 0;    // N, columns
  int codomain_order = 0;  // rows
  Codomain codomain = Codomain::Basis;
  GridInfo grid;
  bool hermitian = false;
  double psd_violation = 0.0;  // -min eigenvalue when negative (Gram-type matrices)
};

// Grid on which g e_k conj(e_j) e^{-2 phi} is integrated exactly enough for j < rows, k < cols.
// Compactly supported parts get an origin-centred disk over the support, everything else a plane grid.
QuadratureGrid assembly_grid(const Symbol& g, const Basis& basis, int rows, int cols);

// (T_g)_{jk} = <g e_k, e_j>, j < rows, k < cols, on the given grid. Rings of grids centred at the
// origin are reduced by FFT; other grids use the dense route B^H diag(g w) B.
OperatorMatrix toeplitz_block(const Symbol& g, const Basis& basis, int rows, int cols, const QuadratureGrid& grid);
OperatorMatrix toeplitz_block_dense(const Symbol& g, const Basis& basis, int rows, int cols, const QuadratureGrid& grid);

// Square N x N section with N = basis.order(); constant-outside symbols contribute c I analytically.
OperatorMatrix toeplitz_matrix(const Symbol& g, const Basis& basis, const QuadratureGrid& grid);
OperatorMatrix toeplitz_matrix(const Symbol& g, const Basis& basis, int n);
// (T_mu)_{jk} = int e_k conj(e_j) e^{-2 phi} d mu
OperatorMatrix toeplitz_matrix(const Measure& mu, const Basis& basis, int n);

// <g, e_k> for k < n.
std::vector<cplx> bergman_project(const std::function<cplx(cplx)>& g, const Basis& basis, int n,
                                  const QuadratureGrid& grid);
// sum_k c_k e_k(z)
cplx reconstruct(const std::vector<cplx>& coefficients, const Basis& basis, cplx z);

struct HankelOptions {
  int extra_rows = 40;  // rows of T_f beyond N kept in T_f^* T_f
};

// N x N section of H_f^* H_f = T_{|f|^2} - T_{conj f} T_f. Needs basis.order() >= n + extra_rows.
OperatorMatrix hankel_gram(const Symbol& f, const Basis& basis, int n, const HankelOptions& options = {});
OperatorMatrix hankel_gram(const Symbol& f, const Basis& basis, int n, const QuadratureGrid& grid,
                           const HankelOptions& options = {});

// Grid: ||H_f k_z||^2 = ||f k_z||^2 - sum_{m < M} |<f k_z, e_m>|^2 by quadrature, M = basis.order().
//   Symbols with a compact part are integrated over their support, other symbols over B(z, 6/sqrt(alpha)).
// Sections: <T_{|f|^2} k, k> - ||T_f k||^2 with k the first M - 40 coefficients of k_z.
// Auto: Grid for compact symbols, Sections otherwise.
enum class KernelRoute { Auto, Grid, Sections };

class KernelHankel {
 public:
  struct Parts {
    double fk_norm2 = 0.0;    // ||f k_z||^2
    double proj_norm2 = 0.0;  // ||P(f k_z)||^2
    double value2 = 0.0;      // ||H_f k_z||^2, clamped at 0
  };

  KernelHankel(const Symbol& f, const Basis& basis, KernelRoute route = KernelRoute::Auto);
  ~KernelHankel();
  KernelHankel(const KernelHankel&) = delete;
  KernelHankel& operator=(const KernelHankel&) = delete;

  Parts parts(cplx z) const;
  double norm(cplx z) const;
  // Largest |z| at which the kernel expansion is validated (infinite for compact symbols).
  double max_radius() const noexcept { return max_radius_; }
  bool compact() const noexcept { return compact_; }
  KernelRoute route() const noexcept { return route_; }

 private:
  Parts local_parts(cplx z) const;
  Parts support_parts(cplx z) const;
  Parts section_parts(cplx z) const;

  Symbol f_;
  const Basis* basis_;
  bool compact_ = false;
  KernelRoute route_ = KernelRoute::Auto;
  double max_radius_ = 0.0;
  QuadratureGrid grid_;
  std::vector<cplx> f_values_;
  Eigen::MatrixXd profiles_;  // rings x M radial profiles times radial weights
  struct Fft;
  Fft* fft_ = nullptr;
  Eigen::MatrixXcd t_abs2_;  // T_{|f|^2}, n x n
  Eigen::MatrixXcd t_f_;     // T_f, M x n
};

// Grid route.
double hankel_apply_to_kernel(const Symbol& f, cplx z, const Basis& basis);

// First n coefficients of k_z, normalized over those n terms.
Eigen::VectorXcd kernel_coefficients(const Basis& basis, cplx z, int n);

// <T k_z, k_z>
cplx berezin(const OperatorMatrix& T, const Basis& basis, cplx z);
// int |k_z|^2 e^{-2 phi} d mu
double berezin(const Measure& mu, const Basis& basis, cplx z);

// Text dump: "rows cols" line, then one line per row of "re im" pairs at 17 significant digits.
void write_matrix_text(std::ostream& os, const OperatorMatrix& m);

}  // namespace fockida
