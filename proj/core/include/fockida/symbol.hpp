#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "fockida/quadrature.hpp"

namespace fockida {

enum class Growth { Bounded, PolynomialGrowth, CompactlySupported };
enum class Smoothness { Measurable, C2 };

std::string to_string(Growth g);

// Outside B(center, radius) the symbol equals `value_outside`.
struct Support {
  cplx center{};
  double radius = 0.0;
  cplx value_outside{};
};

// A measurable function f: C -> C with the metadata operators need to pick grids.
class Symbol {
 public:
  using Fn = std::function<cplx(cplx)>;

  Symbol() = default;
  Symbol(std::string name, Fn f, Growth growth, Smoothness smoothness);

  Symbol& with_support(Support s);
  Symbol& with_degree(int degree);        // growth exponent for PolynomialGrowth
  Symbol& with_frequency(double omega);   // spatial frequency bound used to size angular grids

  cplx operator()(cplx z) const { return fn_(z); }
  const Fn& function() const noexcept { return fn_; }

  const std::string& name() const noexcept { return name_; }
  Growth growth() const noexcept { return growth_; }
  Smoothness smoothness() const noexcept { return smoothness_; }
  const std::optional<Support>& support() const noexcept { return support_; }
  int degree() const noexcept { return degree_; }
  double frequency() const noexcept { return frequency_; }
  bool is_bounded() const noexcept { return growth_ != Growth::PolynomialGrowth; }

  // conj(f)
  Symbol conj() const;
  // w -> f(w + z)
  Symbol translated(cplx z) const;
  // w -> c f(w)
  Symbol scaled(cplx c) const;
  // f - f(infinity) for compact perturbations of a constant; identity otherwise.
  Symbol compact_part() const;
  Symbol renamed(std::string name) const;

 private:
  std::string name_;
  Fn fn_;
  Growth growth_ = Growth::Bounded;
  Smoothness smoothness_ = Smoothness::Measurable;
  std::optional<Support> support_;
  int degree_ = 0;
  double frequency_ = 0.0;
};

// Sampled consistency of the growth tag on |z| <= radius (diagnostic, not a proof).
struct GrowthCheck {
  bool consistent = true;
  double max_magnitude = 0.0;
  std::string detail;
};
GrowthCheck check_growth(const Symbol& f, double radius, int rings = 16, int angles = 32);

// b(x) = exp(1 - 1/(1 - |x|^2)) for |x| < 1, else 0.
double bump_profile(double t2);
// d b / d conj(x) evaluated at x.
cplx bump_dbar(cplx x);

// C-infinity step from 0 (t <= 0) to 1 (t >= 1).
double smooth_step(double t);

namespace symbols {

Symbol z();
Symbol zbar();
Symbol abs_squared();
Symbol constant(cplx c);
Symbol bump(cplx center, double width, double amplitude = 1.0);
Symbol complex_bump(cplx center, double width, double omega);
// 0 on |z| <= inner, 1 on |z| >= outer, smooth in between.
Symbol radial_step(double inner, double outer);
// sum_j a_j exp(i xi_j . x) / sqrt(terms), |xi_j| <= bandwidth, complex Gaussian a_j; bounded.
Symbol random_field(std::uint64_t seed, int terms, double bandwidth);
// conj(z) exp(-|z|^2)
Symbol zbar_gaussian();

}  // namespace symbols
}  // namespace fockida
