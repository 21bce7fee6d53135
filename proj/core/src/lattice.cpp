#include "fockida/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fockida/error.hpp"

namespace fockida {

Lattice make_lattice(double spacing, cplx base, double radius) {
  if (!(spacing > 0.0) || !(radius > 0.0)) throw InvalidInput("make_lattice: spacing and radius must be positive");
  Lattice lat;
  lat.base = base;
  lat.spacing = spacing;
  lat.radius = radius;
  const int span = static_cast<int>(std::ceil((radius + std::abs(base)) / spacing)) + 1;
  for (int m = -span; m <= span; ++m) {
    for (int s = -span; s <= span; ++s) {
      const cplx p = base + spacing * cplx(m, s);
      if (std::abs(p) <= radius * (1.0 + 1e-14)) {
        lat.points.push_back(p);
        lat.m.push_back(m);
        lat.s.push_back(s);
      }
    }
  }
  return lat;
}

std::vector<std::vector<cplx>> Splitting::groups(const Lattice& lattice) const {
  std::vector<std::vector<cplx>> out(classes());
  for (std::size_t i = 0; i < label.size(); ++i) out[label[i]].push_back(lattice.points[i]);
  return out;
}

Splitting split_lattice(const Lattice& lattice, int K) {
  if (K < 1) throw InvalidInput("split_lattice: K must be >= 1");
  Splitting sp;
  sp.K = K;
  sp.label.resize(lattice.points.size());
  auto mod = [K](int v) { return ((v % K) + K) % K; };
  for (std::size_t i = 0; i < lattice.points.size(); ++i) sp.label[i] = mod(lattice.m[i]) * K + mod(lattice.s[i]);
  return sp;
}

double separation_constant(std::span<const cplx> points) {
  if (points.size() < 2) throw InvalidInput("separation_constant: need at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, std::abs(points[i] - points[j]));
  return best;
}

double covering_radius(const Lattice& lattice, double probe_radius, double probe_step) {
  if (lattice.points.empty()) throw InvalidInput("covering_radius: empty lattice");
  double worst = 0.0;
  const int n = static_cast<int>(std::ceil(probe_radius / probe_step));
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const cplx z = probe_step * cplx(i, j);
      if (std::abs(z) > probe_radius) continue;
      double d = std::numeric_limits<double>::infinity();
      for (const cplx& p : lattice.points) d = std::min(d, std::abs(z - p));
      worst = std::max(worst, d);
    }
  }
  return worst;
}

}  // namespace fockida
