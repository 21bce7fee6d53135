#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fockida {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Nodes and weights of a one-dimensional rule on [a, b].
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
Rule1D gauss_legendre(int n, double a, double b);

// `panels` equal sub-intervals of [a, b], each with an `order`-point Gauss-Legendre rule.
Rule1D composite_gauss_legendre(int panels, int order, double a, double b);

enum class DomainKind { Plane, Ball };

// Polar product grid around `center`: radial Gauss-Legendre nodes on [0, radius]
// (Jacobian folded into the weights) times `angular` uniform angles.
// A Plane grid stands for the whole plane truncated to |z - center| <= radius.
class QuadratureGrid {
 public:
  static QuadratureGrid ball(cplx center, double radius, int radial_nodes = 32, int angular_nodes = 64);
  static QuadratureGrid plane(double radius, int radial_panels, int panel_order, int angular_nodes);
  // Ball grid with a composite radial rule.
  static QuadratureGrid disk(cplx center, double radius, int radial_panels, int panel_order, int angular_nodes);
  static QuadratureGrid polar(DomainKind kind, cplx center, const Rule1D& radial_rule, int angular_nodes);

  DomainKind kind() const noexcept { return kind_; }
  cplx center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const cplx> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  // Ring structure: node index = ring * angular_count() + angle.
  std::span<const double> radii() const noexcept { return radii_; }
  // Radial weights including the rho Jacobian, without the angular factor.
  std::span<const double> radial_weights() const noexcept { return radial_weights_; }
  int angular_count() const noexcept { return angular_; }
  bool centered_at_origin() const noexcept { return center_ == cplx{0.0, 0.0}; }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(cplx{}));
    R acc{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

  double area() const;

 private:
  DomainKind kind_ = DomainKind::Ball;
  cplx center_{};
  double radius_ = 0.0;
  int angular_ = 0;
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
  std::vector<cplx> nodes_;
  std::vector<double> weights_;
};

}  // namespace fockida
