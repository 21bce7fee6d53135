#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fockida/quadrature.hpp"

namespace fockida {

enum class WeightKind { StandardQuadratic, RadialPerturbed, General };

// Weight phi of F^2(phi) = { entire f : int |f|^2 e^{-2 phi} dv < inf }, complex dimension one.
// Standard: phi(z) = (alpha/2)|z|^2. RadialPerturbed: phi(z) = (alpha/2)|z|^2 + psi(|z|).
// General weights are representable but no basis can be built for them.
class Weight {
 public:
  using RadialFn = std::function<double(double)>;
  using PlaneFn = std::function<double(cplx)>;

  static Weight standard(double alpha);
  static Weight radial_perturbed(double alpha, RadialFn psi, double m, double M);
  static Weight general(PlaneFn phi, double m, double M);

  WeightKind kind() const noexcept { return kind_; }
  bool is_radial() const noexcept { return kind_ != WeightKind::General; }
  bool has_closed_form_kernel() const noexcept { return kind_ == WeightKind::StandardQuadratic; }
  double alpha() const noexcept { return alpha_; }
  double m() const noexcept { return m_; }
  double M() const noexcept { return M_; }

  double operator()(cplx z) const;
  // phi as a function of |z|; only for radial weights.
  double radial(double rho) const;

  // (alpha/pi) exp(alpha z conj(w)); only when has_closed_form_kernel().
  cplx closed_form_kernel(cplx z, cplx w) const;

 private:
  WeightKind kind_ = WeightKind::StandardQuadratic;
  double alpha_ = 1.0;
  double m_ = 0.0;
  double M_ = 0.0;
  RadialFn psi_;
  PlaneFn general_;
};

struct CurvatureReport {
  double laplacian_min = 0.0;
  double laplacian_max = 0.0;
  int violations = 0;  // samples with Laplacian outside [m, M]
  int samples = 0;
};

// Five-point finite-difference Laplacian of phi at each sample, checked against [m, M].
CurvatureReport check_curvature(const Weight& weight, std::span<const cplx> samples, double step = 1e-3);

// Smallest rho beyond which rho^{2 degree + 1} e^{-2 phi(rho)} stays below e^{-drop} times its peak.
double radial_cutoff(const Weight& weight, int degree, double drop = 40.0);

// Plane grid on |z| <= R with R = radial_cutoff(max_degree), panels of width ~1/sqrt(alpha).
QuadratureGrid plane_grid_for(const Weight& weight, int max_degree, int angular_nodes, int panel_order = 16);

struct BasisOptions {
  double moment_tolerance = 1e-14;  // relative change between panel doublings
  int max_panels = 4096;
  bool compute_gram = true;
};

// Orthonormal basis e_k(z) = z^k / sqrt(c_k), k < order, of the truncation of F^2(phi),
// with c_k = int |z|^{2k} e^{-2 phi} dv computed by radial quadrature.
class Basis {
 public:
  Basis(Weight weight, std::vector<double> log_norms);

  const Weight& weight() const noexcept { return weight_; }
  int order() const noexcept { return static_cast<int>(log_norm_.size()); }

  // log of sqrt(c_k); the monomial coefficient of e_k is exp(-log_norm(k)).
  double log_norm(int k) const { return log_norm_.at(k); }
  double coefficient(int k) const;

  // e_0(z), ..., e_{n-1}(z) with n = out.size() <= order().
  void evaluate(cplx z, std::span<cplx> out) const;
  std::vector<cplx> evaluate(cplx z) const;
  // e_k(z) e^{-phi(z)}, which stays representable far from the origin.
  void evaluate_weighted(cplx z, std::span<cplx> out) const;
  // |e_k| e^{-phi} on the circle |z| = rho.
  void radial_profile(double rho, std::span<double> out) const;

  double gram_residual() const noexcept { return gram_residual_; }
  // Largest |z| at which the truncated kernel K_N(z, z) misses < 1e-12 of its mass (tail estimate).
  double validated_radius() const noexcept { return validated_radius_; }

 private:
  friend Basis build_basis(const Weight&, int, const BasisOptions&);
  Weight weight_;
  std::vector<double> log_norm_;
  std::vector<double> step_;      // exp(log_norm[k-1] - log_norm[k])
  std::vector<double> inv_step_;  // 1 / step_
  double gram_residual_ = 0.0;
  double validated_radius_ = 0.0;
};

Basis build_basis(const Weight& weight, int order, const BasisOptions& options = {});

// Max-entry deviation from identity of the Gram matrix of the first `n` basis functions on `grid`.
double gram_deviation(const Basis& basis, int n, const QuadratureGrid& grid);

// Truncated kernel K_N(z, w) = sum_k e_k(z) conj(e_k(w)).
cplx kernel_eval(const Basis& basis, cplx z, cplx w);

// Coefficients of k_z = K(., z)/sqrt(K(z, z)) in the basis: conj(e_k(z))/sqrt(K_N(z, z)).
std::vector<cplx> normalized_kernel(const Basis& basis, cplx z);

// k_z(w) e^{-phi(w)}: closed form when the weight has one, truncated sum otherwise.
class KernelFunction {
 public:
  KernelFunction(const Basis& basis, cplx z);
  cplx weighted(cplx w) const;  // k_z(w) e^{-phi(w)}
  cplx operator()(cplx w) const;

 private:
  const Basis* basis_;
  cplx z_;
  bool closed_;
  double log_scale_ = 0.0;
  std::vector<cplx> coeffs_;
};

struct NormOptions {
  double tail_tolerance = 1e-10;  // relative mass allowed in the outermost 10% of the radius
};

// (int |f|^p e^{-p phi} dv)^{1/p} over the grid; p = infinity gives max |f e^{-phi}| over nodes.
double weighted_norm(const std::function<cplx(cplx)>& f, double p, const Weight& weight, const QuadratureGrid& grid,
                     const NormOptions& options = {});

struct DecayDiagnostic {
  double theta = 0.0;        // fitted exponential decay rate
  double C = 0.0;            // smallest C with |K| e^{-phi(z)-phi(w)} <= C e^{-theta |z-w|} on the samples
  double lower_const = 0.0;  // min |K| e^{-phi(z)-phi(w)} over pairs with |z-w| <= r0
  double diagonal_min = 0.0; // min / max of K(z,z) e^{-2 phi(z)}
  double diagonal_max = 0.0;
  int violations = 0;        // pairs above the fitted bound (tolerance 1e-12 relative)
  int lower_violations = 0;  // pairs within r0 whose ratio is not positive
};

DecayDiagnostic kernel_decay_diagnostic(const Basis& basis, std::span<const std::pair<cplx, cplx>> pairs, double r0);

}  // namespace fockida
