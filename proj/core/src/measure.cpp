#include "fockida/measure.hpp"

#include <cmath>

#include "fockida/error.hpp"
#include "fockida/symbol.hpp"

namespace fockida {

Measure Measure::lebesgue() { return Measure{}; }

Measure Measure::density(DensityFn rho, cplx center, double radius) {
  if (!rho || !(radius > 0.0)) throw InvalidInput("Measure::density: need a density and a positive support radius");
  Measure m;
  m.kind_ = Kind::Density;
  m.rho_ = std::move(rho);
  m.center_ = center;
  m.radius_ = radius;
  return m;
}

Measure Measure::point_masses(std::vector<std::pair<cplx, double>> masses) {
  for (const auto& pm : masses)
    if (!(pm.second >= 0.0)) throw InvalidInput("Measure::point_masses: masses must be non-negative");
  Measure m;
  m.kind_ = Kind::Points;
  m.points_ = std::move(masses);
  return m;
}

Measure Measure::bump_density(cplx center, double width, double amplitude) {
  if (!(amplitude >= 0.0)) throw InvalidInput("Measure::bump_density: amplitude must be non-negative");
  return density([=](cplx z) { return amplitude * bump_profile(std::norm((z - center) / width)); }, center, width);
}

double Measure::density_at(cplx z) const {
  switch (kind_) {
    case Kind::Lebesgue:
      return 1.0;
    case Kind::Density:
      return std::abs(z - center_) < radius_ ? rho_(z) : 0.0;
    case Kind::Points:
      break;
  }
  throw InvalidInput("Measure::density_at: point masses have no density");
}

double Measure::ball_mass(cplx z, double r) const {
  if (!(r > 0.0)) throw InvalidInput("Measure::ball_mass: radius must be positive");
  switch (kind_) {
    case Kind::Lebesgue:
      return kPi * r * r;
    case Kind::Points: {
      double acc = 0.0;
      for (const auto& [p, w] : points_)
        if (std::abs(p - z) < r) acc += w;
      return acc;
    }
    case Kind::Density: {
      if (std::abs(z - center_) >= r + radius_) return 0.0;
      // The density support fits inside the ball: integrate over the support instead.
      if (std::abs(z - center_) + radius_ <= r) return total_mass();
      const QuadratureGrid g = QuadratureGrid::ball(z, r, 64, 128);
      return g.integrate([&](cplx w) { return density_at(w); });
    }
  }
  return 0.0;
}

double Measure::total_mass() const {
  switch (kind_) {
    case Kind::Lebesgue:
      throw InvalidInput("Measure::total_mass: Lebesgue measure is infinite");
    case Kind::Points: {
      double acc = 0.0;
      for (const auto& pm : points_) acc += pm.second;
      return acc;
    }
    case Kind::Density:
      return support_grid(64, 128).integrate([&](cplx w) { return density_at(w); });
  }
  return 0.0;
}

Measure Measure::scaled(double c) const {
  if (!(c >= 0.0)) throw InvalidInput("Measure::scaled: factor must be non-negative");
  Measure m = *this;
  switch (kind_) {
    case Kind::Lebesgue:
      throw InvalidInput("Measure::scaled: Lebesgue measure is not rescaled");
    case Kind::Points:
      for (auto& pm : m.points_) pm.second *= c;
      break;
    case Kind::Density: {
      auto rho = rho_;
      m.rho_ = [rho, c](cplx z) { return c * rho(z); };
      break;
    }
  }
  return m;
}

cplx Measure::integrate(const std::function<cplx(cplx)>& g) const {
  switch (kind_) {
    case Kind::Lebesgue:
      throw InvalidInput("Measure::integrate: not defined for Lebesgue measure");
    case Kind::Points: {
      cplx acc = 0.0;
      for (const auto& [p, w] : points_) acc += w * g(p);
      return acc;
    }
    case Kind::Density:
      return support_grid().integrate([&](cplx w) { return density_at(w) * g(w); });
  }
  return 0.0;
}

QuadratureGrid Measure::support_grid(int radial_nodes, int angular_nodes) const {
  if (kind_ != Kind::Density) throw InvalidInput("Measure::support_grid: only densities have a support grid");
  return QuadratureGrid::ball(center_, radius_, radial_nodes, angular_nodes);
}

}  // namespace fockida
