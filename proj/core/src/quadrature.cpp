#include "fockida/quadrature.hpp"

#include <cmath>

#include "fockida/error.hpp"

namespace fockida {

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidInput("gauss_legendre: n must be >= 1");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (b + a);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

Rule1D composite_gauss_legendre(int panels, int order, double a, double b) {
  if (panels < 1) throw InvalidInput("composite_gauss_legendre: panels must be >= 1");
  Rule1D out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const Rule1D r = gauss_legendre(order, a + p * h, a + (p + 1) * h);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

QuadratureGrid QuadratureGrid::polar(DomainKind kind, cplx center, const Rule1D& radial_rule, int angular_nodes) {
  if (angular_nodes < 1 || radial_rule.nodes.empty()) throw InvalidInput("QuadratureGrid: empty rule");
  QuadratureGrid g;
  g.kind_ = kind;
  g.center_ = center;
  g.radius_ = 0.0;
  g.angular_ = angular_nodes;
  g.radii_ = radial_rule.nodes;
  g.radial_weights_.resize(radial_rule.nodes.size());
  for (std::size_t i = 0; i < radial_rule.nodes.size(); ++i) {
    if (!(radial_rule.weights[i] > 0.0) || !(radial_rule.nodes[i] > 0.0))
      throw InvalidInput("QuadratureGrid: radial rule must have positive nodes and weights");
    g.radial_weights_[i] = radial_rule.weights[i] * radial_rule.nodes[i];
    g.radius_ = std::max(g.radius_, radial_rule.nodes[i]);
  }
  const double dtheta = 2.0 * kPi / angular_nodes;
  g.nodes_.reserve(g.radii_.size() * angular_nodes);
  g.weights_.reserve(g.radii_.size() * angular_nodes);
  std::vector<cplx> phase(angular_nodes);
  for (int l = 0; l < angular_nodes; ++l) phase[l] = std::polar(1.0, l * dtheta);
  for (std::size_t i = 0; i < g.radii_.size(); ++i) {
    for (int l = 0; l < angular_nodes; ++l) {
      g.nodes_.push_back(center + g.radii_[i] * phase[l]);
      g.weights_.push_back(g.radial_weights_[i] * dtheta);
    }
  }
  return g;
}

QuadratureGrid QuadratureGrid::ball(cplx center, double radius, int radial_nodes, int angular_nodes) {
  if (!(radius > 0.0)) throw InvalidInput("QuadratureGrid::ball: radius must be positive");
  QuadratureGrid g = polar(DomainKind::Ball, center, gauss_legendre(radial_nodes, 0.0, radius), angular_nodes);
  g.radius_ = radius;
  return g;
}

QuadratureGrid QuadratureGrid::plane(double radius, int radial_panels, int panel_order, int angular_nodes) {
  if (!(radius > 0.0)) throw InvalidInput("QuadratureGrid::plane: radius must be positive");
  QuadratureGrid g =
      polar(DomainKind::Plane, {0.0, 0.0}, composite_gauss_legendre(radial_panels, panel_order, 0.0, radius), angular_nodes);
  g.radius_ = radius;
  return g;
}

QuadratureGrid QuadratureGrid::disk(cplx center, double radius, int radial_panels, int panel_order, int angular_nodes) {
  if (!(radius > 0.0)) throw InvalidInput("QuadratureGrid::disk: radius must be positive");
  QuadratureGrid g = polar(DomainKind::Ball, center, composite_gauss_legendre(radial_panels, panel_order, 0.0, radius),
                           angular_nodes);
  g.radius_ = radius;
  return g;
}

double QuadratureGrid::area() const {
  double a = 0.0;
  for (double w : weights_) a += w;
  return a;
}

}  // namespace fockida
