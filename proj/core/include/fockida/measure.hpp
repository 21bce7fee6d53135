#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fockida/quadrature.hpp"

namespace fockida {

// Positive locally finite measure: Lebesgue, a compactly supported density, or point masses.
class Measure {
 public:
  enum class Kind { Lebesgue, Density, Points };
  using DensityFn = std::function<double(cplx)>;

  static Measure lebesgue();
  // Density vanishing outside B(center, radius).
  static Measure density(DensityFn rho, cplx center, double radius);
  static Measure point_masses(std::vector<std::pair<cplx, double>> masses);
  // c * exp(1 - 1/(1 - |z - center|^2 / width^2)) on B(center, width).
  static Measure bump_density(cplx center, double width, double amplitude);

  Kind kind() const noexcept { return kind_; }
  cplx center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  const std::vector<std::pair<cplx, double>>& points() const noexcept { return points_; }
  double density_at(cplx z) const;

  // mu(B(z, r))
  double ball_mass(cplx z, double r) const;
  double total_mass() const;
  Measure scaled(double c) const;

  // int g dmu; not defined for Lebesgue.
  cplx integrate(const std::function<cplx(cplx)>& g) const;
  // Quadrature grid over the density support (radial x angular nodes).
  QuadratureGrid support_grid(int radial_nodes = 48, int angular_nodes = 96) const;

 private:
  Kind kind_ = Kind::Lebesgue;
  DensityFn rho_;
  cplx center_{};
  double radius_ = 0.0;
  std::vector<std::pair<cplx, double>> points_;
};

}  // namespace fockida
