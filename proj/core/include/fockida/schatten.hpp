#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fockida/ida.hpp"
#include "fockida/operators.hpp"

namespace fockida {

struct SpectralReport {
  std::vector<double> values;  // s_0 >= s_1 >= ... >= 0
  int order = 0;               // truncation order N
  double convergence_delta = 0.0;  // filled by compare_sections
  std::map<double, double> norms;  // p -> ||.||_{S_p}
};

// Eigenvalues of a Gram-type matrix inside (-tol, tol) count as zero; below -tol raise TruncationError.
SpectralReport singular_values(const OperatorMatrix& gram, double tol = 1e-10);
// Singular values of a general section (SVD).
SpectralReport singular_values_of(const OperatorMatrix& T);

double schatten_norm(const SpectralReport& report, double p);
void fill_norms(SpectralReport& report, const std::vector<double>& ps);

// Finite-section control for ||.||_{S_p}: values at N and N - 10.
struct SchattenEstimate {
  double p = 0.0;
  double value = 0.0;       // at N
  double value_prev = 0.0;  // at N - 10
  double delta = 0.0;       // relative change of the p-th power sums
  bool divergent = false;   // power sum still growing by more than `growth_tolerance`
  bool zero = false;
};

SchattenEstimate schatten_estimate(const SpectralReport& at_n, const SpectralReport& at_prev, double p,
                                   double growth_tolerance = 0.05, double zero_tolerance = 1e-12);

// Field of z -> ||H_f k_z|| over the centers; integrates like an OscillationField.
OscillationField hankel_kernel_field(const Symbol& f, const Basis& basis, const QuadratureGrid& centers);
// int ||H_f k_z||^p dv(z) (not its p-th root); divergence by the annulus tail test.
NormResult condition_c_integral(const OscillationField& kernel_field, double p, const TailOptions& tail = {});

struct StroethoffReport {
  double sup = 0.0;
  std::vector<double> ring_radius;
  std::vector<double> ring_max;
};

// sup and radial max-profile of ||(I - P)(f k_z)|| over the probes.
StroethoffReport stroethoff_quantities(const Symbol& f, const Basis& basis, const std::vector<cplx>& probes);
// ||(I - P)((f o tau_z) k_0)||, tau_z(w) = w + z; standard weights only.
double translate_norm(const Symbol& f, cplx z, const Basis& basis);

struct EquivalenceRow {
  double p = 0.0;
  SchattenEstimate schatten;
  NormResult ida;      // ||G_r f||_{L^p}
  NormResult kernel;   // (int ||H_f k_z||^p dv)^{1/p}
  // NaN unless all three quantities are finite and non-zero
  double ratio_schatten_ida = std::numeric_limits<double>::quiet_NaN();
  double ratio_schatten_kernel = std::numeric_limits<double>::quiet_NaN();
  double ratio_ida_kernel = std::numeric_limits<double>::quiet_NaN();
  bool all_zero = false;
  bool all_finite = false;
  bool all_divergent = false;
  bool consistent = false;  // all finite or all divergent
};

// Values below zero_tolerance count as zero; ratios are only formed when all three are finite and non-zero.
EquivalenceRow equivalence_report(const SpectralReport& at_n, const SpectralReport& at_prev,
                                  const OscillationField& g_field, const OscillationField& kernel_field, double p,
                                  const TailOptions& tail = {}, double zero_tolerance = 1e-8);

struct BergerCoburn {
  double p = 0.0;
  bool in_theorem = false;   // 1 < p < infinity
  SchattenEstimate numerator;    // H_{conj f}
  SchattenEstimate denominator;  // H_f
  double ratio = 0.0;
  bool failure_mode = false;     // denominator zero, numerator bounded away from zero
  std::string note;
};

BergerCoburn berger_coburn_ratio(const SpectralReport& conj_n, const SpectralReport& conj_prev,
                                 const SpectralReport& f_n, const SpectralReport& f_prev, double p);

}  // namespace fockida
