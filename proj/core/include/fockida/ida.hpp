#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fockida/lattice.hpp"
#include "fockida/measure.hpp"
#include "fockida/quadrature.hpp"
#include "fockida/symbol.hpp"

namespace fockida {

// Normalized quadrature on the unit disk: sum of weights is 1, so sums are disk means.
struct DiskRule {
  std::vector<cplx> nodes;
  std::vector<double> weights;
  int radial = 0;
  int angular = 0;
};
DiskRule disk_rule(int radial_nodes = 32, int angular_nodes = 64);
const DiskRule& default_disk_rule();

// Best L^2(B(z, r), dv/|B|) approximation of f by holomorphic polynomials of degree <= d.
struct LocalFit {
  cplx center{};
  double radius = 0.0;
  int degree = 0;
  std::vector<cplx> coefficients;       // in powers of (w - center)
  std::vector<double> residual_by_degree;  // entry k: residual of the fit of degree k
  double residual = 0.0;                // G_r^{(d)}(f)(center)

  cplx operator()(cplx w) const;
};

LocalFit local_holo_fit(const Symbol& f, cplx z, double r, int d, const DiskRule& rule = default_disk_rule());

// |G^{(d)} - G^{(d+2)}| / G^{(d)} (absolute when G^{(d)} < 1e-10).
double degree_convergence(const Symbol& f, cplx z, double r, int d, const DiskRule& rule = default_disk_rule());

enum class Functional { G, M2, MO, SD, MuHat, HankelKernel };
std::string to_string(Functional f);

// Values of a local functional on a set of centers carrying integration weights.
struct OscillationField {
  Functional functional = Functional::G;
  double r = 0.0;
  int d = 0;
  double radius = 0.0;  // centers cover |z| <= radius
  std::vector<cplx> centers;
  std::vector<double> weights;
  std::vector<double> values;
  std::vector<cplx> averages;  // ball averages (MO only)
  double degree_delta = 0.0;   // max over centers of G^{(d)} - G^{(d+2)}, relative to max G^{(d)}
};

// Header "re,im,value", one line per center, reals with 17 significant digits.
void write_field_csv(std::ostream& os, const OscillationField& field);

// Polar Gauss-Legendre centers on |z| <= radius, used to integrate fields over the plane.
QuadratureGrid center_grid(double radius, int angular_nodes = 96, double panel_width = 0.5, int panel_order = 8);

OscillationField g_field(const Symbol& f, double r, int d, const QuadratureGrid& centers,
                         bool with_degree_check = false, const DiskRule& rule = default_disk_rule());
OscillationField m2_field(const Symbol& f, double r, const QuadratureGrid& centers,
                          const DiskRule& rule = default_disk_rule());
OscillationField mo_field(const Symbol& f, double r, const QuadratureGrid& centers,
                          const DiskRule& rule = default_disk_rule());

// Root mean square of f over B(z, r).
double m2r_mean(const Symbol& f, cplx z, double r, const DiskRule& rule = default_disk_rule());
// Root mean square deviation of f from its average over B(z, r); the average is written to `average`.
double mo_value(const Symbol& f, cplx z, double r, cplx* average = nullptr, const DiskRule& rule = default_disk_rule());

struct NormResult {
  double value = 0.0;
  bool divergent = false;
  double tail_ratio = 0.0;  // max over the outer annulus / global max
};

struct TailOptions {
  double annulus_width = 1.0;
  double tolerance = 1e-2;
};

// (int field^p dv)^{1/p} from the center weights; p = infinity gives the max.
// p < inf: divergent when the outer annulus max exceeds tolerance * global max.
// p = inf: divergent when the outer annulus max exceeds the inner max by more than 10%.
NormResult ida_norm(const OscillationField& field, double p, const TailOptions& tail = {});
NormResult imo_norm(const Symbol& f, double p, double r, const QuadratureGrid& centers, const TailOptions& tail = {});

struct VdaReport {
  bool vanishing = false;
  std::vector<double> ring_radius;
  std::vector<double> ring_max;  // radial max-profile of the field
};

VdaReport vda_check(const OscillationField& field, double tolerance = 1e-3, double annulus_width = 1.0);

// f = f1 + f2 with f1 = sum_j h_j psi_j, h_j the local fit on B(a_j, r) and {psi_j} a smooth
// partition of unity on an (r/2)-lattice.
struct Decomposition {
  double r = 0.0;
  int d = 0;
  Lattice lattice;
  std::vector<LocalFit> fits;  // one per lattice point
  double bump_scale = 0.0;

  cplx f1(cplx w) const;
  cplx dbar_f1(cplx w) const;
};

Decomposition decompose(const Symbol& f, double r, int d, double lattice_radius);

struct DecompositionCertificate {
  std::vector<cplx> probes;
  std::vector<double> dbar_f1;   // |dbar f1| at each probe
  std::vector<double> m2_f2;     // M_{2,r}(f2) at each probe
  std::vector<double> g_2r;      // G_{2r}(f) at each probe
  double c_emp = 0.0;            // max (|dbar f1| + M(f2)) / G_{2r} over probes with G_{2r} > floor
  double max_where_flat = 0.0;   // max of |dbar f1| + M(f2) over probes with G_{2r} <= floor
};

DecompositionCertificate certify(const Symbol& f, const Decomposition& dec, const std::vector<cplx>& probes,
                                 double floor = 1e-10);

// Standard deviation of g against dmu = pi^{-1} e^{-|z|^2} dv.
double sd(const Symbol& g);
// z -> SD(f o tau_z), tau_z(w) = w + z.
OscillationField sd_field(const Symbol& f, const QuadratureGrid& centers);

// (double integral over (Q+u)^2 of |f(z) - f(w)|^2)^{1/2}, Q = [-1, 2)^2.
double j_functional(const Symbol& f, int ux, int uy);

// mu(B(z, r))
double mu_hat(const Measure& mu, double r, cplx z);
OscillationField mu_hat_field(const Measure& mu, double r, const QuadratureGrid& centers);
// (sum over lattice points of mu_hat_r(a)^p)^{1/p}
double lattice_lp_sum(const Measure& mu, double r, const Lattice& lattice, double p);

}  // namespace fockida
