#include "fockida/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fockida/error.hpp"
#include "fockida/parallel.hpp"

namespace fockida {

SpectralReport singular_values(const OperatorMatrix& gram, double tol) {
  if (gram.entries.rows() != gram.entries.cols()) throw InvalidInput("singular_values: Gram matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram.entries, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw TruncationError("singular_values: eigensolver failed", 0.0);
  SpectralReport out;
  out.order = static_cast<int>(gram.entries.cols());
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double l = ev[i];
    if (l < -tol) throw TruncationError("singular_values: Gram matrix is not positive semidefinite", l);
    out.values.push_back(l < tol ? 0.0 : std::sqrt(l));
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

SpectralReport singular_values_of(const OperatorMatrix& T) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T.entries);
  SpectralReport out;
  out.order = static_cast<int>(T.entries.cols());
  const auto& s = svd.singularValues();
  out.values.assign(s.data(), s.data() + s.size());
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

double schatten_norm(const SpectralReport& report, double p) {
  if (!(p > 0.0)) throw InvalidInput("schatten_norm: p must be positive");
  double acc = 0.0;
  for (double s : report.values) acc += std::pow(s, p);
  return std::pow(acc, 1.0 / p);
}

void fill_norms(SpectralReport& report, const std::vector<double>& ps) {
  for (double p : ps) report.norms[p] = schatten_norm(report, p);
}

SchattenEstimate schatten_estimate(const SpectralReport& at_n, const SpectralReport& at_prev, double p,
                                   double growth_tolerance, double zero_tolerance) {
  SchattenEstimate out;
  out.p = p;
  out.value = schatten_norm(at_n, p);
  out.value_prev = schatten_norm(at_prev, p);
  const double a = std::pow(out.value, p), b = std::pow(out.value_prev, p);
  out.zero = a < zero_tolerance;
  out.delta = a > 0.0 ? std::abs(a - b) / a : 0.0;
  out.divergent = !out.zero && (a - b) > growth_tolerance * a;
  return out;
}

OscillationField hankel_kernel_field(const Symbol& f, const Basis& basis, const QuadratureGrid& centers) {
  const KernelHankel kh(f, basis);
  OscillationField out;
  out.functional = Functional::HankelKernel;
  out.radius = centers.radius() + std::abs(centers.center());
  if (out.radius > kh.max_radius() + 1e-12)
    throw TruncationError("hankel_kernel_field: centers reach beyond the validated kernel radius", out.radius);
  out.centers.assign(centers.nodes().begin(), centers.nodes().end());
  out.weights.assign(centers.weights().begin(), centers.weights().end());
  out.values.assign(out.centers.size(), 0.0);
  parallel_for(out.centers.size(), [&](std::size_t i) { out.values[i] = kh.norm(out.centers[i]); });
  return out;
}

NormResult condition_c_integral(const OscillationField& kernel_field, double p, const TailOptions& tail) {
  NormResult r = ida_norm(kernel_field, p, tail);
  if (std::isfinite(p)) r.value = std::pow(r.value, p);
  return r;
}

StroethoffReport stroethoff_quantities(const Symbol& f, const Basis& basis, const std::vector<cplx>& probes) {
  const KernelHankel kh(f, basis);
  std::vector<double> v(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { v[i] = kh.norm(probes[i]); });
  StroethoffReport out;
  std::map<long long, double> rings;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    out.sup = std::max(out.sup, v[i]);
    const long long key = std::llround(std::abs(probes[i]) * 1e9);
    auto [it, fresh] = rings.emplace(key, v[i]);
    if (!fresh) it->second = std::max(it->second, v[i]);
  }
  for (const auto& [key, mx] : rings) {
    out.ring_radius.push_back(key * 1e-9);
    out.ring_max.push_back(mx);
  }
  return out;
}

double translate_norm(const Symbol& f, cplx z, const Basis& basis) {
  if (!basis.weight().has_closed_form_kernel())
    throw UnsupportedWeight("translate_norm: the translation identity needs the standard weight");
  return KernelHankel(f.translated(z), basis).norm(0.0);
}

EquivalenceRow equivalence_report(const SpectralReport& at_n, const SpectralReport& at_prev,
                                  const OscillationField& g_field, const OscillationField& kernel_field, double p,
                                  const TailOptions& tail, double zero_tolerance) {
  EquivalenceRow row;
  row.p = p;
  row.schatten = schatten_estimate(at_n, at_prev, p);
  row.ida = ida_norm(g_field, p, tail);
  row.kernel = ida_norm(kernel_field, p, tail);

  const bool zs = row.schatten.zero || row.schatten.value < zero_tolerance;
  const bool zi = !row.ida.divergent && row.ida.value < zero_tolerance;
  const bool zk = !row.kernel.divergent && row.kernel.value < zero_tolerance;
  row.all_zero = zs && zi && zk;
  const bool ds = row.schatten.divergent, di = row.ida.divergent, dk = row.kernel.divergent;
  row.all_divergent = ds && di && dk;
  row.all_finite = !ds && !di && !dk;
  // Zero in one quantity must be zero in all of them.
  row.consistent = row.all_divergent || (row.all_finite && (row.all_zero || (!zs && !zi && !zk)));
  if (row.all_finite && !zs && !zi && !zk) {
    row.ratio_schatten_ida = row.schatten.value / row.ida.value;
    row.ratio_schatten_kernel = row.schatten.value / row.kernel.value;
    row.ratio_ida_kernel = row.ida.value / row.kernel.value;
  }
  return row;
}

BergerCoburn berger_coburn_ratio(const SpectralReport& conj_n, const SpectralReport& conj_prev,
                                 const SpectralReport& f_n, const SpectralReport& f_prev, double p) {
  BergerCoburn out;
  out.p = p;
  out.in_theorem = p > 1.0 && std::isfinite(p);
  out.numerator = schatten_estimate(conj_n, conj_prev, p);
  out.denominator = schatten_estimate(f_n, f_prev, p);
  if (out.denominator.zero) {
    if (out.numerator.zero) {
      out.ratio = 1.0;
      out.note = "both Hankel operators vanish";
    } else {
      out.ratio = INFINITY;
      out.failure_mode = true;
      out.note = "H_f = 0 while H_conj(f) is not: unbounded-symbol failure mode";
    }
    return out;
  }
  out.ratio = out.numerator.value / out.denominator.value;
  if (out.numerator.divergent != out.denominator.divergent)
    out.note = "membership differs between f and conj(f)";
  else if (out.numerator.divergent)
    out.note = "both outside S_p; ratio of N-sections";
  return out;
}

}  // namespace fockida
