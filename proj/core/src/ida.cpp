#include "fockida/ida.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "fockida/error.hpp"
#include "fockida/parallel.hpp"

namespace fockida {

namespace {

// f is the constant `value_outside` on B(z, r).
bool ball_outside_support(const Symbol& f, cplx z, double r) {
  const auto& s = f.support();
  return s && std::abs(z - s->center) >= r + s->radius;
}

void sample_ball(const Symbol& f, cplx z, double r, const DiskRule& rule, std::vector<cplx>& out) {
  out.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    out[i] = f(z + r * rule.nodes[i]);
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag()))
      throw QuadratureError("ball quadrature hit a non-finite symbol value", std::abs(out[i]));
  }
}

// Ring-wise maxima of a field, keyed by |z| rounded to 1e-9.
std::map<long long, double> ring_maxima(const OscillationField& field) {
  std::map<long long, double> rings;
  for (std::size_t i = 0; i < field.centers.size(); ++i) {
    const long long key = std::llround(std::abs(field.centers[i]) * 1e9);
    auto [it, fresh] = rings.emplace(key, field.values[i]);
    if (!fresh) it->second = std::max(it->second, field.values[i]);
  }
  return rings;
}

OscillationField empty_field(Functional fn, double r, int d, const QuadratureGrid& centers) {
  OscillationField out;
  out.functional = fn;
  out.r = r;
  out.d = d;
  out.radius = centers.radius() + std::abs(centers.center());
  out.centers.assign(centers.nodes().begin(), centers.nodes().end());
  out.weights.assign(centers.weights().begin(), centers.weights().end());
  out.values.assign(out.centers.size(), 0.0);
  return out;
}

}  // namespace

DiskRule disk_rule(int radial_nodes, int angular_nodes) {
  if (radial_nodes < 1 || angular_nodes < 1) throw InvalidInput("disk_rule: node counts must be positive");
  const Rule1D gl = gauss_legendre(radial_nodes, 0.0, 1.0);
  DiskRule rule;
  rule.radial = radial_nodes;
  rule.angular = angular_nodes;
  rule.nodes.reserve(static_cast<std::size_t>(radial_nodes) * angular_nodes);
  for (int i = 0; i < radial_nodes; ++i) {
    // dv / |B| = rho d rho d theta / pi
    const double w = gl.weights[i] * gl.nodes[i] * 2.0 / angular_nodes;
    for (int l = 0; l < angular_nodes; ++l) {
      rule.nodes.push_back(std::polar(gl.nodes[i], 2.0 * kPi * l / angular_nodes));
      rule.weights.push_back(w);
    }
  }
  return rule;
}

const DiskRule& default_disk_rule() {
  static const DiskRule rule = disk_rule(32, 64);
  return rule;
}

cplx LocalFit::operator()(cplx w) const {
  cplx acc = 0.0;
  const cplx u = w - center;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * u + *it;
  return acc;
}

LocalFit local_holo_fit(const Symbol& f, cplx z, double r, int d, const DiskRule& rule) {
  if (!(r > 0.0)) throw InvalidInput("local_holo_fit: radius must be positive");
  if (d < 0) throw InvalidInput("local_holo_fit: degree must be non-negative");
  if (d >= rule.angular / 2) throw InvalidInput("local_holo_fit: degree too high for the angular rule");
  LocalFit fit;
  fit.center = z;
  fit.radius = r;
  fit.degree = d;
  fit.coefficients.assign(d + 1, 0.0);
  fit.residual_by_degree.assign(d + 1, 0.0);
  if (ball_outside_support(f, z, r)) {
    fit.coefficients[0] = f.support()->value_outside;
    return fit;
  }

  thread_local std::vector<cplx> resid, power;
  sample_ball(f, z, r, rule, resid);
  power.assign(rule.nodes.size(), 1.0);
  const std::size_t n = rule.nodes.size();
  double rms = 0.0;
  for (std::size_t i = 0; i < n; ++i) rms += rule.weights[i] * std::norm(resid[i]);
  rms = std::sqrt(rms);
  double best = INFINITY;
  double rk = 1.0;
  for (int k = 0; k <= d; ++k) {
    // Disk monomials are orthogonal with mean |u^k|^2 = 1/(k+1).
    cplx c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += rule.weights[i] * resid[i] * std::conj(power[i]);
    c *= static_cast<double>(k + 1);
    double ms = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      resid[i] -= c * power[i];
      ms += rule.weights[i] * std::norm(resid[i]);
      power[i] *= rule.nodes[i];
    }
    // Lower-degree fits are admissible competitors, so the residual never increases.
    best = std::min(best, std::sqrt(ms));
    // Below this the residual is rounding noise of the samples.
    if (best <= 1e-12 * rms) best = 0.0;
    fit.residual_by_degree[k] = best;
    fit.coefficients[k] = c / rk;
    rk *= r;
  }
  fit.residual = fit.residual_by_degree[d];
  return fit;
}

double degree_convergence(const Symbol& f, cplx z, double r, int d, const DiskRule& rule) {
  const LocalFit fit = local_holo_fit(f, z, r, d + 2, rule);
  const double a = fit.residual_by_degree[d], b = fit.residual_by_degree[d + 2];
  return a < 1e-10 ? std::abs(a - b) : std::abs(a - b) / a;
}

std::string to_string(Functional f) {
  switch (f) {
    case Functional::G:
      return "G";
    case Functional::M2:
      return "M2";
    case Functional::MO:
      return "MO";
    case Functional::SD:
      return "SD";
    case Functional::MuHat:
      return "muhat";
    case Functional::HankelKernel:
      return "hankel_kernel";
  }
  return "unknown";
}

QuadratureGrid center_grid(double radius, int angular_nodes, double panel_width, int panel_order) {
  if (!(radius > 0.0) || !(panel_width > 0.0)) throw InvalidInput("center_grid: radius and panel width must be positive");
  const int panels = std::max(1, static_cast<int>(std::ceil(radius / panel_width - 1e-9)));
  return QuadratureGrid::plane(radius, panels, panel_order, angular_nodes);
}

OscillationField g_field(const Symbol& f, double r, int d, const QuadratureGrid& centers, bool with_degree_check,
                         const DiskRule& rule) {
  OscillationField out = empty_field(Functional::G, r, d, centers);
  std::vector<double> delta(out.centers.size(), 0.0);
  parallel_for(out.centers.size(), [&](std::size_t i) {
    const int degree = with_degree_check ? d + 2 : d;
    const LocalFit fit = local_holo_fit(f, out.centers[i], r, degree, rule);
    out.values[i] = fit.residual_by_degree[d];
    if (with_degree_check) delta[i] = fit.residual_by_degree[d] - fit.residual_by_degree[d + 2];
  });
  // Pointwise ratios are meaningless where G vanishes; changes are measured against the field maximum.
  const double top = out.values.empty() ? 0.0 : *std::max_element(out.values.begin(), out.values.end());
  for (double x : delta) out.degree_delta = std::max(out.degree_delta, top > 0.0 ? x / top : x);
  return out;
}

double m2r_mean(const Symbol& f, cplx z, double r, const DiskRule& rule) {
  if (!(r > 0.0)) throw InvalidInput("m2r_mean: radius must be positive");
  if (ball_outside_support(f, z, r)) return std::abs(f.support()->value_outside);
  thread_local std::vector<cplx> v;
  sample_ball(f, z, r, rule, v);
  double ms = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) ms += rule.weights[i] * std::norm(v[i]);
  return std::sqrt(ms);
}

double mo_value(const Symbol& f, cplx z, double r, cplx* average, const DiskRule& rule) {
  if (!(r > 0.0)) throw InvalidInput("mo_value: radius must be positive");
  if (ball_outside_support(f, z, r)) {
    if (average) *average = f.support()->value_outside;
    return 0.0;
  }
  thread_local std::vector<cplx> v;
  sample_ball(f, z, r, rule, v);
  cplx mean = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) mean += rule.weights[i] * v[i];
  double ms = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) ms += rule.weights[i] * std::norm(v[i] - mean);
  if (average) *average = mean;
  return std::sqrt(ms);
}

OscillationField m2_field(const Symbol& f, double r, const QuadratureGrid& centers, const DiskRule& rule) {
  OscillationField out = empty_field(Functional::M2, r, 0, centers);
  parallel_for(out.centers.size(), [&](std::size_t i) { out.values[i] = m2r_mean(f, out.centers[i], r, rule); });
  return out;
}

OscillationField mo_field(const Symbol& f, double r, const QuadratureGrid& centers, const DiskRule& rule) {
  OscillationField out = empty_field(Functional::MO, r, 0, centers);
  out.averages.assign(out.centers.size(), 0.0);
  parallel_for(out.centers.size(),
               [&](std::size_t i) { out.values[i] = mo_value(f, out.centers[i], r, &out.averages[i], rule); });
  return out;
}

void write_field_csv(std::ostream& os, const OscillationField& field) {
  os << "re,im,value\n";
  char buf[96];
  for (std::size_t i = 0; i < field.centers.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", field.centers[i].real(), field.centers[i].imag(),
                  field.values[i]);
    os << buf;
  }
}

NormResult ida_norm(const OscillationField& field, double p, const TailOptions& tail) {
  if (!(p > 0.0)) throw InvalidInput("ida_norm: exponent must be positive");
  NormResult out;
  double global = 0.0, outer = 0.0, inner = 0.0;
  const double edge = field.radius - tail.annulus_width;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double v = field.values[i];
    if (!std::isfinite(v) || v < 0.0) throw InvalidInput("ida_norm: field values must be finite and non-negative");
    global = std::max(global, v);
    double& slot = std::abs(field.centers[i]) >= edge ? outer : inner;
    slot = std::max(slot, v);
  }
  out.tail_ratio = global > 0.0 ? outer / global : 0.0;
  if (std::isinf(p)) {
    out.value = global;
    out.divergent = outer > 1.1 * inner && outer > 0.0;
    return out;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) acc += field.weights[i] * std::pow(field.values[i], p);
  out.value = std::pow(acc, 1.0 / p);
  out.divergent = out.tail_ratio > tail.tolerance;
  return out;
}

NormResult imo_norm(const Symbol& f, double p, double r, const QuadratureGrid& centers, const TailOptions& tail) {
  return ida_norm(mo_field(f, r, centers), p, tail);
}

VdaReport vda_check(const OscillationField& field, double tolerance, double annulus_width) {
  VdaReport out;
  double outer = 0.0;
  for (const auto& [key, mx] : ring_maxima(field)) {
    const double rho = key * 1e-9;
    out.ring_radius.push_back(rho);
    out.ring_max.push_back(mx);
    if (rho >= field.radius - annulus_width) outer = std::max(outer, mx);
  }
  out.vanishing = outer < tolerance;
  return out;
}

namespace {

struct Neighborhood {
  double S = 0.0;
  cplx dbar_S = 0.0;
  std::vector<std::size_t> idx;
  std::vector<double> b;
  std::vector<cplx> dbar_b;
};

Neighborhood neighbors(const Decomposition& dec, cplx w) {
  const Lattice& lat = dec.lattice;
  const double h = lat.spacing, s = dec.bump_scale;
  Neighborhood nb;
  const int reach = static_cast<int>(std::ceil(s / h)) + 1;
  const cplx rel = (w - lat.base) / h;
  const int m0 = static_cast<int>(std::floor(rel.real())), s0 = static_cast<int>(std::floor(rel.imag()));
  // Lattice points are generated row by row; a linear scan over the small window is enough.
  for (std::size_t j = 0; j < lat.points.size(); ++j) {
    if (std::abs(lat.m[j] - m0) > reach || std::abs(lat.s[j] - s0) > reach) continue;
    const cplx x = (w - lat.points[j]) / s;
    const double t2 = std::norm(x);
    if (t2 >= 1.0) continue;
    const double bj = bump_profile(t2);
    const cplx db = bump_dbar(x) / s;
    nb.idx.push_back(j);
    nb.b.push_back(bj);
    nb.dbar_b.push_back(db);
    nb.S += bj;
    nb.dbar_S += db;
  }
  if (!(nb.S > 0.0)) throw InvalidInput("Decomposition: point lies outside the lattice truncation");
  return nb;
}

}  // namespace

cplx Decomposition::f1(cplx w) const {
  const Neighborhood nb = neighbors(*this, w);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < nb.idx.size(); ++k) acc += fits[nb.idx[k]](w) * nb.b[k];
  return acc / nb.S;
}

cplx Decomposition::dbar_f1(cplx w) const {
  const Neighborhood nb = neighbors(*this, w);
  cplx acc = 0.0;
  const double S2 = nb.S * nb.S;
  for (std::size_t k = 0; k < nb.idx.size(); ++k)
    acc += fits[nb.idx[k]](w) * (nb.dbar_b[k] * nb.S - nb.b[k] * nb.dbar_S) / S2;
  return acc;
}

Decomposition decompose(const Symbol& f, double r, int d, double lattice_radius) {
  if (!(r > 0.0) || !(lattice_radius > r)) throw InvalidInput("decompose: need 0 < r < lattice radius");
  Decomposition dec;
  dec.r = r;
  dec.d = d;
  dec.bump_scale = 0.5 * r;
  dec.lattice = make_lattice(0.5 * r, {0.0, 0.0}, lattice_radius);
  dec.fits.resize(dec.lattice.points.size());
  parallel_for(dec.fits.size(), [&](std::size_t j) { dec.fits[j] = local_holo_fit(f, dec.lattice.points[j], r, d); });
  return dec;
}

DecompositionCertificate certify(const Symbol& f, const Decomposition& dec, const std::vector<cplx>& probes,
                                 double floor) {
  DecompositionCertificate out;
  out.probes = probes;
  const std::size_t n = probes.size();
  out.dbar_f1.assign(n, 0.0);
  out.m2_f2.assign(n, 0.0);
  out.g_2r.assign(n, 0.0);
  const double r = dec.r;
  const Symbol f2("f2", [&](cplx w) { return f(w) - dec.f1(w); }, Growth::Bounded, Smoothness::Measurable);
  parallel_for(n, [&](std::size_t i) {
    out.dbar_f1[i] = std::abs(dec.dbar_f1(probes[i]));
    out.m2_f2[i] = m2r_mean(f2, probes[i], r);
    out.g_2r[i] = local_holo_fit(f, probes[i], 2.0 * r, dec.d).residual;
  });
  for (std::size_t i = 0; i < n; ++i) {
    const double lhs = out.dbar_f1[i] + out.m2_f2[i];
    if (out.g_2r[i] > floor)
      out.c_emp = std::max(out.c_emp, lhs / out.g_2r[i]);
    else
      out.max_where_flat = std::max(out.max_where_flat, lhs);
  }
  return out;
}

namespace {

// Polar rule for dmu = pi^{-1} e^{-|z|^2} dv; the mass beyond |z| = 9 is e^{-81}.
const QuadratureGrid& gaussian_grid() {
  static const QuadratureGrid grid = [] {
    QuadratureGrid g = QuadratureGrid::plane(9.0, 18, 16, 64);
    return g;
  }();
  return grid;
}

double sd_of(const std::function<cplx(cplx)>& g) {
  const QuadratureGrid& grid = gaussian_grid();
  const auto nodes = grid.nodes();
  const auto w = grid.weights();
  std::vector<double> mu(nodes.size());
  std::vector<cplx> v(nodes.size());
  double mass = 0.0;
  cplx mean = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    mu[i] = w[i] * std::exp(-std::norm(nodes[i])) / kPi;
    v[i] = g(nodes[i]);
    mass += mu[i];
    mean += mu[i] * v[i];
  }
  mean /= mass;
  double var = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) var += mu[i] * std::norm(v[i] - mean);
  return std::sqrt(var / mass);
}

}  // namespace

double sd(const Symbol& g) { return sd_of(g.function()); }

OscillationField sd_field(const Symbol& f, const QuadratureGrid& centers) {
  OscillationField out = empty_field(Functional::SD, 0.0, 0, centers);
  parallel_for(out.centers.size(), [&](std::size_t i) {
    const cplx z = out.centers[i];
    out.values[i] = sd_of([&](cplx w) { return f(w + z); });
  });
  return out;
}

double j_functional(const Symbol& f, int ux, int uy) {
  const Rule1D gl = composite_gauss_legendre(3, 16, -1.0, 2.0);
  const std::size_t n = gl.nodes.size();
  std::vector<cplx> v(n * n);
  std::vector<double> w(n * n);
  cplx mean = 0.0;
  double area = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t k = a * n + b;
      w[k] = gl.weights[a] * gl.weights[b];
      v[k] = f(cplx(gl.nodes[a] + ux, gl.nodes[b] + uy));
      mean += w[k] * v[k];
      area += w[k];
    }
  mean /= area;
  double acc = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) acc += w[k] * std::norm(v[k] - mean);
  // The double integral of |f(z) - f(w)|^2 equals 2 |Q| times the integral of |f - mean|^2.
  return std::sqrt(2.0 * area * acc);
}

double mu_hat(const Measure& mu, double r, cplx z) { return mu.ball_mass(z, r); }

OscillationField mu_hat_field(const Measure& mu, double r, const QuadratureGrid& centers) {
  OscillationField out = empty_field(Functional::MuHat, r, 0, centers);
  parallel_for(out.centers.size(), [&](std::size_t i) { out.values[i] = mu.ball_mass(out.centers[i], r); });
  return out;
}

double lattice_lp_sum(const Measure& mu, double r, const Lattice& lattice, double p) {
  if (!(p > 0.0)) throw InvalidInput("lattice_lp_sum: exponent must be positive");
  double acc = 0.0;
  for (const cplx a : lattice.points) acc += std::pow(mu.ball_mass(a, r), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace fockida
