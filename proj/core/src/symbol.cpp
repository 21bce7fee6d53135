#include "fockida/symbol.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "fockida/error.hpp"

namespace fockida {

std::string to_string(Growth g) {
  switch (g) {
    case Growth::Bounded:
      return "bounded";
    case Growth::PolynomialGrowth:
      return "polynomial-growth";
    case Growth::CompactlySupported:
      return "compactly-supported";
  }
  return "unknown";
}

Symbol::Symbol(std::string name, Fn f, Growth growth, Smoothness smoothness)
    : name_(std::move(name)), fn_(std::move(f)), growth_(growth), smoothness_(smoothness) {
  if (!fn_) throw InvalidInput("Symbol: empty evaluation rule");
}

Symbol& Symbol::with_support(Support s) {
  if (!(s.radius > 0.0)) throw InvalidInput("Symbol::with_support: radius must be positive");
  support_ = s;
  return *this;
}

Symbol& Symbol::with_degree(int degree) {
  degree_ = degree;
  return *this;
}

Symbol& Symbol::with_frequency(double omega) {
  frequency_ = omega;
  return *this;
}

Symbol Symbol::conj() const {
  Symbol s = *this;
  auto f = fn_;
  s.fn_ = [f](cplx z) { return std::conj(f(z)); };
  if (s.support_) s.support_->value_outside = std::conj(s.support_->value_outside);
  s.name_ = "conj(" + name_ + ")";
  return s;
}

Symbol Symbol::translated(cplx z) const {
  Symbol s = *this;
  auto f = fn_;
  s.fn_ = [f, z](cplx w) { return f(w + z); };
  if (s.support_) s.support_->center -= z;
  return s;
}

Symbol Symbol::scaled(cplx c) const {
  Symbol s = *this;
  auto f = fn_;
  s.fn_ = [f, c](cplx w) { return c * f(w); };
  if (s.support_) s.support_->value_outside *= c;
  return s;
}

Symbol Symbol::compact_part() const {
  if (!support_ || support_->value_outside == cplx{}) return *this;
  Symbol s = *this;
  auto f = fn_;
  const cplx c = support_->value_outside;
  s.fn_ = [f, c](cplx w) { return f(w) - c; };
  s.support_->value_outside = 0.0;
  s.growth_ = Growth::CompactlySupported;
  return s;
}

Symbol Symbol::renamed(std::string name) const {
  Symbol s = *this;
  s.name_ = std::move(name);
  return s;
}

GrowthCheck check_growth(const Symbol& f, double radius, int rings, int angles) {
  GrowthCheck out;
  std::vector<double> ring_max(rings, 0.0);
  for (int i = 0; i < rings; ++i) {
    const double rho = radius * (i + 1) / rings;
    for (int l = 0; l < angles; ++l) {
      const cplx z = std::polar(rho, 2.0 * kPi * l / angles);
      const cplx v = f(z);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        out.consistent = false;
        out.detail = "non-finite value";
        return out;
      }
      ring_max[i] = std::max(ring_max[i], std::abs(v));
      if (f.support() && std::abs(z - f.support()->center) > f.support()->radius * (1.0 + 1e-12) &&
          std::abs(v - f.support()->value_outside) > 1e-12 * (1.0 + std::abs(v))) {
        out.consistent = false;
        out.detail = "value differs from the declared constant outside the support";
      }
    }
    out.max_magnitude = std::max(out.max_magnitude, ring_max[i]);
  }
  if (f.growth() == Growth::CompactlySupported && !f.support()) {
    out.consistent = false;
    out.detail = "compactly supported symbol without a support disk";
  }
  if (f.growth() == Growth::PolynomialGrowth) {
    // |f| <= C (1 + |z|)^degree: the normalized ring maxima must not keep growing.
    const int deg = std::max(f.degree(), 0);
    double c_half = 0.0, c_full = 0.0;
    for (int i = 0; i < rings; ++i) {
      const double rho = radius * (i + 1) / rings;
      const double c = ring_max[i] / std::pow(1.0 + rho, deg);
      (i < rings / 2 ? c_half : c_full) = std::max(i < rings / 2 ? c_half : c_full, c);
    }
    if (c_full > 4.0 * std::max(c_half, 1e-300) && c_full > 1e-12) {
      out.consistent = false;
      out.detail = "magnitude grows faster than the declared polynomial degree";
    }
  }
  if (f.growth() == Growth::Bounded && rings >= 4) {
    double inner = 0.0;
    for (int i = 0; i < rings / 2; ++i) inner = std::max(inner, ring_max[i]);
    if (out.max_magnitude > 1e3 * std::max(inner, 1.0)) {
      out.consistent = false;
      out.detail = "bounded symbol grows on the sample disk";
    }
  }
  return out;
}

double bump_profile(double t2) {
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

cplx bump_dbar(cplx x) {
  const double t2 = std::norm(x);
  if (t2 >= 1.0) return 0.0;
  const double one = 1.0 - t2;
  // d/d conj(x) of |x|^2 is x
  return -bump_profile(t2) * x / (one * one);
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

namespace symbols {

Symbol z() { return Symbol("z", [](cplx w) { return w; }, Growth::PolynomialGrowth, Smoothness::C2).with_degree(1); }

Symbol zbar() {
  return Symbol("zbar", [](cplx w) { return std::conj(w); }, Growth::PolynomialGrowth, Smoothness::C2).with_degree(1);
}

Symbol abs_squared() {
  return Symbol("abs2", [](cplx w) { return cplx{std::norm(w), 0.0}; }, Growth::PolynomialGrowth, Smoothness::C2)
      .with_degree(2);
}

Symbol constant(cplx c) {
  return Symbol("const", [c](cplx) { return c; }, Growth::Bounded, Smoothness::C2);
}

Symbol bump(cplx center, double width, double amplitude) {
  if (!(width > 0.0)) throw InvalidInput("bump: width must be positive");
  Symbol s(
      "bump",
      [=](cplx w) { return cplx{amplitude * bump_profile(std::norm((w - center) / width)), 0.0}; },
      Growth::CompactlySupported, Smoothness::C2);
  s.with_support({center, width, 0.0}).with_frequency(4.0 / width);
  return s;
}

Symbol complex_bump(cplx center, double width, double omega) {
  if (!(width > 0.0)) throw InvalidInput("complex_bump: width must be positive");
  Symbol s(
      "cbump",
      [=](cplx w) { return bump_profile(std::norm((w - center) / width)) * std::polar(1.0, omega * w.real()); },
      Growth::CompactlySupported, Smoothness::C2);
  s.with_support({center, width, 0.0}).with_frequency(4.0 / width + std::abs(omega));
  return s;
}

Symbol radial_step(double inner, double outer) {
  if (!(outer > inner) || inner < 0.0) throw InvalidInput("radial_step: need 0 <= inner < outer");
  Symbol s(
      "radstep", [=](cplx w) { return cplx{smooth_step((std::abs(w) - inner) / (outer - inner)), 0.0}; },
      Growth::Bounded, Smoothness::C2);
  s.with_support({0.0, outer, 1.0}).with_frequency(4.0 / (outer - inner));
  return s;
}

Symbol random_field(std::uint64_t seed, int terms, double bandwidth) {
  if (terms < 1 || !(bandwidth > 0.0)) throw InvalidInput("random_field: need terms >= 1 and bandwidth > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> kx(terms), ky(terms);
  std::vector<cplx> amp(terms);
  const double norm = 1.0 / std::sqrt(static_cast<double>(terms));
  for (int j = 0; j < terms; ++j) {
    // frequencies uniform on the disk of radius `bandwidth`
    const double rad = bandwidth * std::sqrt(unit(rng));
    const double ang = 2.0 * kPi * unit(rng);
    kx[j] = rad * std::cos(ang);
    ky[j] = rad * std::sin(ang);
    const double re = gauss(rng);
    const double im = gauss(rng);
    amp[j] = cplx{re, im} * (norm / std::sqrt(2.0));
  }
  Symbol s(
      "random",
      [=](cplx w) {
        cplx acc = 0.0;
        for (int j = 0; j < terms; ++j) acc += amp[j] * std::polar(1.0, kx[j] * w.real() + ky[j] * w.imag());
        return acc;
      },
      Growth::Bounded, Smoothness::C2);
  s.with_frequency(bandwidth);
  return s;
}

Symbol zbar_gaussian() {
  return Symbol("zbar_gauss", [](cplx w) { return std::conj(w) * std::exp(-std::norm(w)); }, Growth::Bounded,
                Smoothness::C2)
      .with_frequency(4.0);
}

}  // namespace symbols
}  // namespace fockida
