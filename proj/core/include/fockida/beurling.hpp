#pragma once

#include <functional>
#include <vector>

#include "fockida/quadrature.hpp"
#include "fockida/symbol.hpp"

namespace fockida {

// Uniform periodic grid on [-L, L)^2 with n = 2^k points per axis; fields are row-major (y, x).
class PlaneGrid {
 public:
  PlaneGrid(int points_per_axis = 512, double half_width = 8.0);

  int size() const noexcept { return n_; }
  double half_width() const noexcept { return L_; }
  double spacing() const noexcept { return h_; }
  cplx point(int ix, int iy) const { return {-L_ + ix * h_, -L_ + iy * h_}; }

  std::vector<cplx> sample(const std::function<cplx(cplx)>& f) const;
  double boundary_max(const std::vector<cplx>& field) const;
  // (sum |g|^p h^2)^{1/p}
  double lp_norm(const std::vector<cplx>& field, double p) const;

 private:
  int n_;
  double L_;
  double h_;
};

// 1/2 erfc(steepness (|z| - edge)): 1 on the inner disk, negligible well beyond `edge`.
double plateau(cplx z, double edge = 4.5, double steepness = 3.0);

struct Wirtinger {
  std::vector<cplx> d;     // (d_x - i d_y) / 2
  std::vector<cplx> dbar;  // (d_x + i d_y) / 2
};

// Spectral differentiation; throws PeriodizationError when |f| on the boundary exceeds tolerance.
Wirtinger wirtinger(const PlaneGrid& grid, const std::vector<cplx>& f, double boundary_tolerance = 1e-12);

// Fourier multiplier conj(xi)/xi (xi = xi_x + i xi_y), value 0 at xi = 0; maps dbar f to d f.
std::vector<cplx> ahlfors_beurling(const PlaneGrid& grid, const std::vector<cplx>& g, double boundary_tolerance = 1e-12);

struct LpCheck {
  double p = 0.0;
  double norm_d = 0.0;
  double norm_dbar = 0.0;
  double ratio = 0.0;           // ||d f||_p / ||dbar f||_p
  bool constant = false;        // both derivatives vanish
  bool violation = false;       // dbar f vanishes while d f does not
  bool windowed = false;        // f was multiplied by the plateau to fit the grid
};

// f must be bounded and C2; constant-outside symbols are reduced to their compact part, other
// symbols that do not fit the grid are multiplied by plateau() first.
LpCheck derivative_lp_check(const Symbol& f, double p, const PlaneGrid& grid = PlaneGrid{},
                            double zero_tolerance = 1e-10);

}  // namespace fockida
