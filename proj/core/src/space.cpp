#include "fockida/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fockida/error.hpp"

namespace fockida {

// ---------------------------------------------------------------- Weight

Weight Weight::standard(double alpha) {
  if (!(alpha > 0.0)) throw InvalidInput("Weight::standard: alpha must be positive");
  Weight w;
  w.kind_ = WeightKind::StandardQuadratic;
  w.alpha_ = alpha;
  w.m_ = 2.0 * alpha;  // Laplacian of (alpha/2)|z|^2
  w.M_ = 2.0 * alpha;
  return w;
}

Weight Weight::radial_perturbed(double alpha, RadialFn psi, double m, double M) {
  if (!(alpha > 0.0)) throw InvalidInput("Weight::radial_perturbed: alpha must be positive");
  if (!(m > 0.0) || !(M >= m)) throw InvalidInput("Weight::radial_perturbed: need 0 < m <= M");
  if (!psi) throw InvalidInput("Weight::radial_perturbed: psi is empty");
  Weight w;
  w.kind_ = WeightKind::RadialPerturbed;
  w.alpha_ = alpha;
  w.m_ = m;
  w.M_ = M;
  w.psi_ = std::move(psi);
  return w;
}

Weight Weight::general(PlaneFn phi, double m, double M) {
  if (!(m > 0.0) || !(M >= m)) throw InvalidInput("Weight::general: need 0 < m <= M");
  if (!phi) throw InvalidInput("Weight::general: phi is empty");
  Weight w;
  w.kind_ = WeightKind::General;
  w.alpha_ = 0.5 * (m + M) / 2.0;
  w.m_ = m;
  w.M_ = M;
  w.general_ = std::move(phi);
  return w;
}

double Weight::radial(double rho) const {
  switch (kind_) {
    case WeightKind::StandardQuadratic:
      return 0.5 * alpha_ * rho * rho;
    case WeightKind::RadialPerturbed:
      return 0.5 * alpha_ * rho * rho + psi_(rho);
    case WeightKind::General:
      break;
  }
  throw UnsupportedWeight("Weight::radial: weight is not radial");
}

double Weight::operator()(cplx z) const {
  if (kind_ == WeightKind::General) return general_(z);
  return radial(std::abs(z));
}

cplx Weight::closed_form_kernel(cplx z, cplx w) const {
  if (!has_closed_form_kernel()) throw UnsupportedWeight("closed_form_kernel: no closed form for this weight");
  return alpha_ / kPi * std::exp(alpha_ * z * std::conj(w));
}

CurvatureReport check_curvature(const Weight& weight, std::span<const cplx> samples, double step) {
  CurvatureReport rep;
  rep.laplacian_min = std::numeric_limits<double>::infinity();
  rep.laplacian_max = -std::numeric_limits<double>::infinity();
  const cplx hx{step, 0.0}, hy{0.0, step};
  for (cplx z : samples) {
    const double lap =
        (weight(z + hx) + weight(z - hx) + weight(z + hy) + weight(z - hy) - 4.0 * weight(z)) / (step * step);
    rep.laplacian_min = std::min(rep.laplacian_min, lap);
    rep.laplacian_max = std::max(rep.laplacian_max, lap);
    const double slack = 1e-6 * std::max(1.0, weight.M());
    if (lap < weight.m() - slack || lap > weight.M() + slack) ++rep.violations;
    ++rep.samples;
  }
  return rep;
}

// ---------------------------------------------------------------- radial moments

namespace {

struct Window {
  double lo, hi, peak_log;
};

// Locates where g(rho) = (2 degree + 1) ln rho - 2 phi(rho) is within `drop` of its maximum.
Window moment_window(const Weight& weight, int degree, double drop) {
  auto g = [&](double rho) { return (2.0 * degree + 1.0) * std::log(rho) - 2.0 * weight.radial(rho); };
  double hi = 1.0;
  constexpr int kSamples = 4000;
  for (int attempt = 0; attempt < 60; ++attempt) {
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 1; i <= kSamples; ++i) {
      const double v = g(hi * i / kSamples);
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    if (g(hi) < best - drop && best_i < kSamples) {
      double lo = 0.0;
      for (int i = best_i; i >= 1; --i) {
        if (g(hi * i / kSamples) < best - drop) {
          lo = hi * i / kSamples;
          break;
        }
      }
      double top = hi;
      for (int i = best_i; i <= kSamples; ++i) {
        if (g(hi * i / kSamples) < best - drop) {
          top = hi * i / kSamples;
          break;
        }
      }
      return {lo, top, best};
    }
    hi *= 1.5;
  }
  throw QuadratureError("radial moment window: integrand does not decay", hi);
}

// log of 2 pi int_0^inf rho^{2k+1} e^{-2 phi} d rho
double log_radial_moment(const Weight& weight, int k, const BasisOptions& opt) {
  const Window win = moment_window(weight, k, 80.0);
  auto integrate = [&](int panels) {
    const Rule1D rule = composite_gauss_legendre(panels, 20, win.lo, win.hi);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = rule.nodes[i];
      acc += rule.weights[i] * std::exp((2.0 * k + 1.0) * std::log(rho) - 2.0 * weight.radial(rho) - win.peak_log);
    }
    return acc;
  };
  int panels = 4;
  double prev = integrate(panels);
  double change = 0.0;
  while (panels < opt.max_panels) {
    panels *= 2;
    const double cur = integrate(panels);
    change = std::abs(cur - prev) / std::abs(cur);
    prev = cur;
    if (change < opt.moment_tolerance) return std::log(2.0 * kPi) + win.peak_log + std::log(cur);
  }
  throw QuadratureError("radial moment did not converge for k = " + std::to_string(k), change);
}

}  // namespace

double radial_cutoff(const Weight& weight, int degree, double drop) {
  if (!weight.is_radial()) throw UnsupportedWeight("radial_cutoff: weight is not radial");
  return moment_window(weight, std::max(degree, 0), drop).hi;
}

QuadratureGrid plane_grid_for(const Weight& weight, int max_degree, int angular_nodes, int panel_order) {
  const double R = radial_cutoff(weight, max_degree, 40.0);
  const double width = 1.0 / std::sqrt(weight.alpha());
  const int panels = std::max(2, static_cast<int>(std::ceil(R / width)));
  return QuadratureGrid::plane(R, panels, panel_order, angular_nodes);
}

// ---------------------------------------------------------------- Basis

Basis::Basis(Weight weight, std::vector<double> log_norms) : weight_(std::move(weight)), log_norm_(std::move(log_norms)) {
  if (log_norm_.empty()) throw InvalidInput("Basis: order must be >= 1");
  step_.assign(log_norm_.size(), 0.0);
  inv_step_.assign(log_norm_.size(), 0.0);
  for (std::size_t k = 1; k < log_norm_.size(); ++k) {
    step_[k] = std::exp(log_norm_[k - 1] - log_norm_[k]);
    inv_step_[k] = std::exp(log_norm_[k] - log_norm_[k - 1]);
  }
}

double Basis::coefficient(int k) const { return std::exp(-log_norm_.at(k)); }

void Basis::evaluate(cplx z, std::span<cplx> out) const {
  if (out.size() > log_norm_.size()) throw InvalidInput("Basis::evaluate: more values requested than basis order");
  if (out.empty()) return;
  out[0] = std::exp(-log_norm_[0]);
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = out[k - 1] * z * step_[k];
}

std::vector<cplx> Basis::evaluate(cplx z) const {
  std::vector<cplx> v(log_norm_.size());
  evaluate(z, v);
  return v;
}

void Basis::evaluate_weighted(cplx z, std::span<cplx> out) const {
  if (out.size() > log_norm_.size()) throw InvalidInput("Basis::evaluate_weighted: too many values");
  if (out.empty()) return;
  const double rho = std::abs(z);
  const double phi = weight_(z);
  if (rho == 0.0) {
    out[0] = std::exp(-log_norm_[0] - phi);
    for (std::size_t k = 1; k < out.size(); ++k) out[k] = 0.0;
    return;
  }
  // Start the recurrence near the dominant index so nothing underflows far from the origin.
  const double lr = std::log(rho);
  const cplx u = z / rho;
  std::size_t kmax = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double v = k * lr - log_norm_[k];
    if (v > best) {
      best = v;
      kmax = k;
    }
  }
  out[kmax] = std::exp(best - phi) * std::pow(u, static_cast<int>(kmax));
  for (std::size_t k = kmax + 1; k < out.size(); ++k) out[k] = out[k - 1] * z * step_[k];
  const cplx zinv = 1.0 / z;
  for (std::size_t k = kmax; k-- > 0;) out[k] = out[k + 1] * zinv * inv_step_[k + 1];
}

void Basis::radial_profile(double rho, std::span<double> out) const {
  std::vector<cplx> tmp(out.size());
  evaluate_weighted(cplx{rho, 0.0}, tmp);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = tmp[k].real();
}

double gram_deviation(const Basis& basis, int n, const QuadratureGrid& grid) {
  if (n < 1 || n > basis.order()) throw InvalidInput("gram_deviation: bad order");
  const int L = grid.angular_count();
  // angular sums S(d) = sum_l e^{i d theta_l} dtheta, d = k - j
  std::vector<cplx> S(n);
  for (int d = 0; d < n; ++d) {
    cplx acc = 0.0;
    for (int l = 0; l < L; ++l) acc += std::polar(2.0 * kPi / L, d * 2.0 * kPi * l / L);
    S[d] = acc;
  }
  std::vector<double> prof(n);
  std::vector<cplx> gram(static_cast<std::size_t>(n) * n, 0.0);
  const auto radii = grid.radii();
  const auto rw = grid.radial_weights();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    basis.radial_profile(radii[i], prof);
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) gram[j * n + k] += rw[i] * prof[j] * prof[k] * S[k - j];
  }
  double dev = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) dev = std::max(dev, std::abs(gram[j * n + k] - (j == k ? 1.0 : 0.0)));
  return dev;
}

namespace {

double find_validated_radius(const Basis& basis) {
  const int n = basis.order();
  if (n < 3) return 0.0;
  std::vector<double> prof(n);
  auto tail_fraction = [&](double rho) {
    basis.radial_profile(rho, prof);
    double total = 0.0;
    for (double v : prof) total += v * v;
    return (prof[n - 1] * prof[n - 1] + prof[n - 2] * prof[n - 2]) / total;
  };
  double lo = 0.0, hi = 1.0;
  while (tail_fraction(hi) < 1e-12 && hi < 1e4) hi *= 2.0;
  if (tail_fraction(hi) < 1e-12) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail_fraction(mid) < 1e-12 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

Basis build_basis(const Weight& weight, int order, const BasisOptions& options) {
  if (order < 1) throw InvalidInput("build_basis: order must be >= 1");
  if (!weight.is_radial()) throw UnsupportedWeight("build_basis: only radial weights keep monomials orthogonal");
  std::vector<double> log_norms(order);
  for (int k = 0; k < order; ++k) log_norms[k] = 0.5 * log_radial_moment(weight, k, options);
  Basis basis(weight, std::move(log_norms));
  basis.validated_radius_ = find_validated_radius(basis);
  if (options.compute_gram) {
    const QuadratureGrid grid = plane_grid_for(weight, 2 * order, 2 * order + 8, 20);
    basis.gram_residual_ = gram_deviation(basis, order, grid);
  }
  return basis;
}

// ---------------------------------------------------------------- kernels

cplx kernel_eval(const Basis& basis, cplx z, cplx w) {
  const auto ez = basis.evaluate(z);
  const auto ew = basis.evaluate(w);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < ez.size(); ++k) acc += ez[k] * std::conj(ew[k]);
  return acc;
}

std::vector<cplx> normalized_kernel(const Basis& basis, cplx z) {
  auto e = basis.evaluate(z);
  double kzz = 0.0;
  for (const cplx& v : e) kzz += std::norm(v);
  if (!(kzz > 0.0) || !std::isfinite(kzz)) throw TruncationError("normalized_kernel: K_N(z,z) is not positive", kzz);
  const double s = 1.0 / std::sqrt(kzz);
  for (cplx& v : e) v = std::conj(v) * s;
  return e;
}

KernelFunction::KernelFunction(const Basis& basis, cplx z)
    : basis_(&basis), z_(z), closed_(basis.weight().has_closed_form_kernel()) {
  if (!closed_) coeffs_ = normalized_kernel(basis, z);
}

cplx KernelFunction::weighted(cplx w) const {
  if (closed_) {
    const double a = basis_->weight().alpha();
    return std::sqrt(a / kPi) * std::exp(a * (w * std::conj(z_)) - 0.5 * a * (std::norm(z_) + std::norm(w)));
  }
  std::vector<cplx> e(coeffs_.size());
  basis_->evaluate_weighted(w, e);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) acc += coeffs_[k] * e[k];
  return acc;
}

cplx KernelFunction::operator()(cplx w) const { return weighted(w) * std::exp(basis_->weight()(w)); }

// ---------------------------------------------------------------- norms

double weighted_norm(const std::function<cplx(cplx)>& f, double p, const Weight& weight, const QuadratureGrid& grid,
                     const NormOptions& options) {
  if (!(p > 0.0)) throw InvalidInput("weighted_norm: p must be positive");
  const auto nodes = grid.nodes();
  const auto w = grid.weights();
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) m = std::max(m, std::abs(f(nodes[i])) * std::exp(-weight(nodes[i])));
    return m;
  }
  double total = 0.0, tail = 0.0;
  const double band = 0.9 * grid.radius();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = w[i] * std::pow(std::abs(f(nodes[i])) * std::exp(-weight(nodes[i])), p);
    total += v;
    if (std::abs(nodes[i] - grid.center()) > band) tail += v;
  }
  if (total > 0.0 && tail > options.tail_tolerance * total)
    throw InsufficientGrid("weighted_norm: grid misses part of the integrand", tail / total);
  return std::pow(total, 1.0 / p);
}

// ---------------------------------------------------------------- decay diagnostic

DecayDiagnostic kernel_decay_diagnostic(const Basis& basis, std::span<const std::pair<cplx, cplx>> pairs, double r0) {
  DecayDiagnostic d;
  if (pairs.empty()) return d;
  const Weight& wt = basis.weight();
  std::vector<double> dist, logratio;
  dist.reserve(pairs.size());
  logratio.reserve(pairs.size());
  d.lower_const = std::numeric_limits<double>::infinity();
  d.diagonal_min = std::numeric_limits<double>::infinity();
  d.diagonal_max = 0.0;
  for (const auto& [z, w] : pairs) {
    const double ratio = std::abs(kernel_eval(basis, z, w)) * std::exp(-wt(z) - wt(w));
    const double dz = std::abs(z - w);
    dist.push_back(dz);
    logratio.push_back(std::log(std::max(ratio, std::numeric_limits<double>::min())));
    if (dz <= r0) {
      d.lower_const = std::min(d.lower_const, ratio);
      if (!(ratio > 0.0)) ++d.lower_violations;
    }
    for (cplx p : {z, w}) {
      const double diag = std::real(kernel_eval(basis, p, p)) * std::exp(-2.0 * wt(p));
      d.diagonal_min = std::min(d.diagonal_min, diag);
      d.diagonal_max = std::max(d.diagonal_max, diag);
    }
  }
  if (!std::isfinite(d.lower_const)) d.lower_const = 0.0;

  // Upper envelope per distance bin, then a least-squares line through it.
  const double dmax = *std::max_element(dist.begin(), dist.end());
  constexpr int kBins = 16;
  std::vector<double> env(kBins, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const int b = dmax > 0.0 ? std::min(kBins - 1, static_cast<int>(dist[i] / dmax * kBins)) : 0;
    env[b] = std::max(env[b], logratio[i]);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int b = 0; b < kBins; ++b) {
    if (!std::isfinite(env[b])) continue;
    const double x = (b + 0.5) * dmax / kBins;
    sx += x;
    sy += env[b];
    sxx += x * x;
    sxy += x * env[b];
    ++cnt;
  }
  const double denom = cnt * sxx - sx * sx;
  d.theta = (cnt >= 2 && denom > 0.0) ? std::max(0.0, -(cnt * sxy - sx * sy) / denom) : 0.0;
  double logC = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dist.size(); ++i) logC = std::max(logC, logratio[i] + d.theta * dist[i]);
  d.C = std::exp(logC);
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (logratio[i] > logC - d.theta * dist[i] + 1e-12) ++d.violations;
  return d;
}

}  // namespace fockida
