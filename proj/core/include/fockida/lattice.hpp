#pragma once

#include <span>
#include <vector>

#include "fockida/quadrature.hpp"

namespace fockida {

// Finite truncation to |z| <= radius of { base + spacing (m + i s) : m, s integers }.
struct Lattice {
  cplx base{};
  double spacing = 0.0;
  double radius = 0.0;
  std::vector<cplx> points;
  std::vector<int> m;  // integer coordinates of each point
  std::vector<int> s;
};

Lattice make_lattice(double spacing, cplx base, double radius);

// Partition of a lattice into K^2 residue classes (m mod K, s mod K).
struct Splitting {
  int K = 1;
  std::vector<int> label;  // class index of each lattice point, in [0, K^2)
  int classes() const noexcept { return K * K; }
  std::vector<std::vector<cplx>> groups(const Lattice& lattice) const;
};

Splitting split_lattice(const Lattice& lattice, int K);

// min over distinct indices of |w_j - w_k|; throws InvalidInput for fewer than two points.
double separation_constant(std::span<const cplx> points);

// Largest distance from a probe point of the disk |z| <= probe_radius (square probe grid
// with the given step) to its nearest lattice point.
double covering_radius(const Lattice& lattice, double probe_radius, double probe_step);

}  // namespace fockida
