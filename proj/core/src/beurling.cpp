#include "fockida/beurling.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "fft.hpp"
#include "fockida/error.hpp"

namespace fockida {

namespace {

class Fft2 {
 public:
  Fft2(int n, int sign) {
    std::vector<cplx> scratch(static_cast<std::size_t>(n) * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plan_ = fftw_plan_dft_2d(n, n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  ~Fft2() {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;
  void execute(std::vector<cplx>& v) const {
    auto* p = reinterpret_cast<fftw_complex*>(v.data());
    fftw_execute_dft(plan_, p, p);
  }

 private:
  fftw_plan plan_;
};

// Angular frequency of FFT index k on n points over a period of length 2L.
double frequency(int k, int n, double L) {
  const int s = k < n / 2 ? k : k - n;
  return kPi * s / L;
}

void require_periodic(const PlaneGrid& grid, const std::vector<cplx>& f, double tol) {
  if (f.size() != static_cast<std::size_t>(grid.size()) * grid.size())
    throw InvalidInput("field size does not match the grid");
  const double b = grid.boundary_max(f);
  if (b > tol) throw PeriodizationError("field is not effectively supported inside the grid", b);
}

// Applies the multiplier m(xi_x, xi_y) to f.
template <class M>
std::vector<cplx> apply_multiplier(const PlaneGrid& grid, const std::vector<cplx>& f, M&& m) {
  const int n = grid.size();
  std::vector<cplx> v = f;
  Fft2(n, FFTW_FORWARD).execute(v);
  for (int iy = 0; iy < n; ++iy) {
    const double ky = frequency(iy, n, grid.half_width());
    for (int ix = 0; ix < n; ++ix) {
      const double kx = frequency(ix, n, grid.half_width());
      v[static_cast<std::size_t>(iy) * n + ix] *= m(ix, iy, kx, ky);
    }
  }
  Fft2(n, FFTW_BACKWARD).execute(v);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (cplx& x : v) x *= scale;
  return v;
}

}  // namespace

PlaneGrid::PlaneGrid(int points_per_axis, double half_width) : n_(points_per_axis), L_(half_width) {
  if (n_ < 4 || (n_ & (n_ - 1)) != 0) throw InvalidInput("PlaneGrid: points per axis must be a power of two >= 4");
  if (!(L_ > 0.0)) throw InvalidInput("PlaneGrid: half width must be positive");
  h_ = 2.0 * L_ / n_;
}

std::vector<cplx> PlaneGrid::sample(const std::function<cplx(cplx)>& f) const {
  std::vector<cplx> v(static_cast<std::size_t>(n_) * n_);
  for (int iy = 0; iy < n_; ++iy)
    for (int ix = 0; ix < n_; ++ix) v[static_cast<std::size_t>(iy) * n_ + ix] = f(point(ix, iy));
  return v;
}

double PlaneGrid::boundary_max(const std::vector<cplx>& field) const {
  double b = 0.0;
  for (int i = 0; i < n_; ++i) {
    b = std::max({b, std::abs(field[i]), std::abs(field[static_cast<std::size_t>(i) * n_]),
                  std::abs(field[static_cast<std::size_t>(n_ - 1) * n_ + i]),
                  std::abs(field[static_cast<std::size_t>(i) * n_ + n_ - 1])});
  }
  return b;
}

double PlaneGrid::lp_norm(const std::vector<cplx>& field, double p) const {
  if (!(p > 0.0)) throw InvalidInput("PlaneGrid::lp_norm: p must be positive");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& x : field) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  for (const cplx& x : field) acc += std::pow(std::abs(x), p);
  return std::pow(acc * h_ * h_, 1.0 / p);
}

double plateau(cplx z, double edge, double steepness) { return 0.5 * std::erfc(steepness * (std::abs(z) - edge)); }

Wirtinger wirtinger(const PlaneGrid& grid, const std::vector<cplx>& f, double boundary_tolerance) {
  require_periodic(grid, f, boundary_tolerance);
  const int n = grid.size();
  const cplx I(0.0, 1.0);
  // Odd derivatives have no consistent value at the Nyquist index; drop it.
  auto nyquist = [n](int ix, int iy) { return ix == n / 2 || iy == n / 2; };
  Wirtinger out;
  out.d = apply_multiplier(grid, f, [&](int ix, int iy, double kx, double ky) {
    return nyquist(ix, iy) ? cplx{} : 0.5 * I * cplx(kx, -ky);
  });
  out.dbar = apply_multiplier(grid, f, [&](int ix, int iy, double kx, double ky) {
    return nyquist(ix, iy) ? cplx{} : 0.5 * I * cplx(kx, ky);
  });
  return out;
}

std::vector<cplx> ahlfors_beurling(const PlaneGrid& grid, const std::vector<cplx>& g, double boundary_tolerance) {
  require_periodic(grid, g, boundary_tolerance);
  return apply_multiplier(grid, g, [](int, int, double kx, double ky) {
    if (kx == 0.0 && ky == 0.0) return cplx{};
    const cplx xi(kx, ky);
    return std::conj(xi) / xi;
  });
}

LpCheck derivative_lp_check(const Symbol& f, double p, const PlaneGrid& grid, double zero_tolerance) {
  if (!(p > 1.0) || std::isinf(p)) throw InvalidInput("derivative_lp_check: need 1 < p < infinity");
  if (!f.is_bounded()) throw SymbolClassError("derivative_lp_check: symbol '" + f.name() + "' is not bounded");
  const Symbol g = f.compact_part();
  LpCheck out;
  out.p = p;
  std::vector<cplx> v = grid.sample(g.function());
  double spread = 0.0;
  for (const cplx& x : v) spread = std::max(spread, std::abs(x - v.front()));
  if (spread < zero_tolerance) {
    out.constant = true;
    return out;
  }
  if (grid.boundary_max(v) > 1e-12) {
    out.windowed = true;
    v = grid.sample([&](cplx z) { return plateau(z) * g(z); });
  }
  const Wirtinger w = wirtinger(grid, v);
  out.norm_d = grid.lp_norm(w.d, p);
  out.norm_dbar = grid.lp_norm(w.dbar, p);
  const bool d_zero = out.norm_d < zero_tolerance, dbar_zero = out.norm_dbar < zero_tolerance;
  if (dbar_zero) {
    out.constant = d_zero;
    out.violation = !d_zero;
    out.ratio = d_zero ? 0.0 : INFINITY;
    return out;
  }
  out.ratio = out.norm_d / out.norm_dbar;
  return out;
}

}  // namespace fockida
