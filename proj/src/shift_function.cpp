#include "ssf/shift_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "ssf/bernstein.hpp"
#include "ssf/taylor.hpp"

namespace ssf {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

std::size_t nearest_knot(const std::vector<double>& knots, double x) {
  auto it = std::lower_bound(knots.begin(), knots.end(), x);
  if (it == knots.end()) return knots.size() - 1;
  const auto i = static_cast<std::size_t>(std::distance(knots.begin(), it));
  if (i > 0 && x - knots[i - 1] < knots[i] - x) return i - 1;
  return i;
}

double pair_tolerance(const HermitianOperator& a, const HermitianOperator& b) {
  return group_tolerance(std::max(a.spectral_radius(), b.spectral_radius()));
}

void require_hermitian_perturbation(const HermitianOperator& h, const Matrix& v) {
  require_operator(v, h.dim(), "perturbation");
  const double res = hermitian_residual(v);
  if (res > std::max(1e-12 * v.cwiseAbs().maxCoeff(), kAbsoluteFloor)) {
    throw NonHermitianError(res);
  }
}

double imaginary_size(const PiecewisePolynomial& p) {
  return p.imag_part().max_abs_coefficient();
}

SpectralShiftFunction wrap(PiecewisePolynomial density, const HermitianOperator& h,
                           const Matrix& v, int n) {
  SpectralShiftFunction out;
  out.order = n;
  out.imaginary_defect = imaginary_size(density);
  out.density = std::move(density);
  out.polynomial_adjust.assign(static_cast<std::size_t>(n), 0.0);
  out.relative_schatten = std::pow(schatten_norm(weighted_perturbation(v, h), n), n);
  return out;
}

PiecewisePolynomial trace_density(const OperatorList& ops, const Matrix& v, double tol) {
  std::vector<SpectralPartition> parts;
  for (const auto* op : ops) parts.push_back(spectral_groups(*op));
  const std::vector<Matrix> perts(ops.size() - 1, v);
  return peano_density(trace_coefficients(ops, parts, perts), tol);
}

}  // namespace

std::vector<Atom> SpectralShiftFunction::atoms() const {
  std::vector<Atom> out;
  for (const auto& a : density.atoms()) out.push_back({a.x, a.mass.real()});
  return out;
}

double SpectralShiftFunction::sample(double x) const {
  double value = 0.0;
  bool at_atom = false;
  for (const auto& a : density.atoms()) at_atom = at_atom || a.x == x;
  value = at_atom ? density.left_limit(x).real() : density(x).real();
  double power = 1.0;
  for (double c : polynomial_adjust) {
    value += c * power;
    power *= x;
  }
  return value;
}

Interval SpectralShiftFunction::hull() const {
  const auto& k = density.knots();
  if (k.empty()) return {0.0, 0.0};
  return {k.front(), k.back()};
}

PiecewisePolynomial peano_density(const TraceCoefficients& tc, double tol) {
  const int n = static_cast<int>(tc.slots()) - 1;
  if (n < 1) throw std::invalid_argument("Peano density needs order >= 1");

  std::vector<double> knots;
  for (const auto& vals : tc.values) knots = merge_knots(knots, vals, tol);

  // divided differences are symmetric: aggregate by sorted knot multiset
  std::map<std::vector<std::size_t>, Complex> weights;
  std::vector<std::size_t> key(tc.slots());
  tc.for_each([&](std::span<const double> tags, Complex c) {
    for (std::size_t k = 0; k < tags.size(); ++k) key[k] = nearest_knot(knots, tags[k]);
    std::sort(key.begin(), key.end());
    weights[key] += c;
  });

  PiecewisePolynomial out(knots, std::max(n - 1, 0));
  std::vector<double> nodes(tc.slots());
  for (const auto& [idx, c] : weights) {
    if (c == Complex(0.0)) continue;
    if (idx.front() == idx.back()) {
      out.add_atom(knots[idx.front()], c / factorial(n));
      continue;
    }
    for (std::size_t k = 0; k < idx.size(); ++k) nodes[k] = knots[idx[k]];
    for (std::size_t i = idx.front(); i < idx.back(); ++i) {
      const auto piece = peano_kernel_piece(nodes, knots[i], knots[i + 1]);
      out.add_to_piece(i, std::span<const double>(piece), c);
    }
  }
  return out;
}

SpectralShiftFunction ssf_bspline(const HermitianOperator& h, const Matrix& v, int n) {
  if (n < 1) throw std::invalid_argument("spectral shift order must be >= 1");
  require_hermitian_perturbation(h, v);
  const HermitianOperator hv(h.entries() + v);
  OperatorList ops(static_cast<std::size_t>(n + 1), &h);
  ops[0] = &hv;
  return wrap(trace_density(ops, v, pair_tolerance(h, hv)), h, v, n);
}

SpectralShiftFunction krein_ssf(const HermitianOperator& h, const Matrix& v) {
  require_hermitian_perturbation(h, v);
  const HermitianOperator hv(h.entries() + v);
  std::vector<double> a(h.eigenvalues().begin(), h.eigenvalues().end());
  std::vector<double> b(hv.eigenvalues().begin(), hv.eigenvalues().end());
  const auto knots = merge_knots(a, b, pair_tolerance(h, hv));

  std::vector<long> jump(knots.size(), 0);
  for (double x : a) ++jump[nearest_knot(knots, x)];
  for (double x : b) --jump[nearest_knot(knots, x)];
  PiecewisePolynomial density(knots, 0);
  long count = 0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    count += jump[i];
    if (count != 0) {
      const double c = static_cast<double>(count);
      density.add_to_piece(i, std::span<const double>(&c, 1), 1.0);
    }
  }
  return wrap(std::move(density), h, v, 1);
}

SpectralShiftFunction ssf_recursive(const HermitianOperator& h, const Matrix& v, int n) {
  if (n < 1) throw std::invalid_argument("spectral shift order must be >= 1");
  SpectralShiftFunction eta = krein_ssf(h, v);
  const double tol = group_tolerance(h.spectral_radius());
  PiecewisePolynomial current = eta.density;
  for (int m = 1; m < n; ++m) {
    const OperatorList ops(static_cast<std::size_t>(m + 1), &h);
    PiecewisePolynomial diff = current - trace_density(ops, v, tol);
    current = diff.antiderivative();
    current *= -1.0;
  }
  return wrap(std::move(current), h, v, n);
}

TraceFormulaReport verify_trace_formula(const HermitianOperator& h, const Matrix& v,
                                        const SpectralShiftFunction& eta,
                                        const TestFunction& f) {
  RemainderProblem p{h, v, f, eta.order};
  TraceFormulaReport r;
  r.lhs = remainder_direct(p).trace();
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-12;
  const auto q = eta.real_density().integrate_derivative(f, eta.order, opts);
  r.rhs = q.value;
  r.quadrature_error = q.error;
  r.quadrature_converged = q.converged;
  r.residual = std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.lhs));
  return r;
}

TraceFormulaReport verify_trace_formula(const HermitianOperator& h, const Matrix& v, int n,
                                        const TestFunction& f) {
  return verify_trace_formula(h, v, ssf_bspline(h, v, n), f);
}

WeightedL1Report weighted_l1_report(const SpectralShiftFunction& eta, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double power = -(eta.order + epsilon);
  auto weight = [power](double x) { return std::pow(1.0 + std::abs(x), power); };
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-11;
  const double zero = 0.0;
  const auto q = eta.real_density().integrate(
      [&](double x, Complex p) { return Complex(std::abs(p.real()) * weight(x), 0.0); },
      std::span<const double>(&zero, 1), opts);
  WeightedL1Report r;
  r.epsilon = epsilon;
  r.value = q.value.real();
  for (const auto& a : eta.atoms()) r.value += std::abs(a.mass) * weight(a.x);
  r.reference = (1.0 + 1.0 / epsilon) * eta.relative_schatten;
  r.ratio = r.reference > 0.0 ? r.value / r.reference : 0.0;
  return r;
}

UniquenessReport uniqueness_mod_polynomial(const SpectralShiftFunction& a,
                                           const SpectralShiftFunction& b, int n) {
  if (a.order != n || b.order != n) {
    throw std::invalid_argument("spectral shift functions of different order");
  }
  if (std::abs(a.relative_schatten - b.relative_schatten) >
      1e-9 * (1.0 + a.relative_schatten)) {
    throw std::invalid_argument("spectral shift functions of different pairs");
  }
  constexpr int kPoints = 2048;
  Interval hull = a.hull();
  if (!b.knots().empty()) {
    const Interval hb = b.hull();
    hull = a.knots().empty() ? hb : Interval{std::min(hull.lo, hb.lo), std::max(hull.hi, hb.hi)};
  }
  const double pad = 0.1 * std::max(hull.hi - hull.lo, 1e-3);
  const double lo = hull.lo - pad;
  const double hi = hull.hi + pad;
  const double dx = (hi - lo) / (kPoints - 1);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  Eigen::MatrixXd basis(kPoints, n);
  Eigen::VectorXd diff(kPoints);
  double ref = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = lo + i * dx;
    const double t = (x - mid) / half;
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
      basis(i, k) = p;
      p *= t;
    }
    const double va = a.sample(x);
    diff(i) = va - b.sample(x);
    ref += std::abs(va) * dx;
  }
  const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(diff);
  const Eigen::VectorXd resid = diff - basis * coef;

  UniquenessReport r;
  r.residual_l1 = resid.cwiseAbs().sum() * dx;
  // point masses are compared as measures
  std::map<double, double> masses;
  for (const auto& at : a.atoms()) masses[at.x] += at.mass.real();
  for (const auto& at : b.atoms()) masses[at.x] -= at.mass.real();
  for (const auto& [x, m] : masses) r.residual_l1 += std::abs(m);
  for (const auto& at : a.atoms()) ref += std::abs(at.mass);

  // back to coefficients of powers of x
  r.polynomial.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> shifted{1.0};  // ((x - mid)/half)^k in powers of x
  for (int k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < shifted.size(); ++j) r.polynomial[j] += coef(k) * shifted[j];
    std::vector<double> next(shifted.size() + 1, 0.0);
    for (std::size_t j = 0; j < shifted.size(); ++j) {
      next[j + 1] += shifted[j] / half;
      next[j] -= shifted[j] * mid / half;
    }
    shifted = std::move(next);
  }
  r.reference_l1 = ref;
  r.tolerance = 1e-6 * (1.0 + ref);
  return r;
}

RealnessReport realness_report(const HermitianOperator& h, const Matrix& v, int n,
                               const std::vector<TestFunction>& battery) {
  const SpectralShiftFunction eta = ssf_bspline(h, v, n);
  const PiecewisePolynomial im = eta.density.imag_part();
  RealnessReport r;
  for (const auto& f : battery) {
    if (!f.real_valued() || f.max_order() < n) continue;
    const auto q = im.integrate_derivative(f, n);
    const double defect = std::abs(q.value);
    const Complex lhs = remainder_direct(RemainderProblem{h, v, f, n}).trace();
    const double rel = defect / (1.0 + std::abs(lhs));
    r.max_defect = std::max(r.max_defect, defect);
    if (rel >= r.max_relative) {
      r.max_relative = rel;
      r.worst = f.name();
    }
  }
  return r;
}

std::vector<double> sample_grid(const SpectralShiftFunction& eta, int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  Interval hull = eta.hull();
  const double pad = 0.1 * std::max(hull.hi - hull.lo, 1.0);
  const double lo = hull.lo - pad;
  const double hi = hull.hi + pad;
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  }
  return xs;
}

void write_csv(std::ostream& out, const SpectralShiftFunction& eta,
               const std::vector<double>& xs) {
  out << "x,eta\n";
  char buf[64];
  for (double x : xs) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, eta.sample(x) + 0.0);
    out << buf;
  }
}

nlohmann::json to_json(const SpectralShiftFunction& eta) {
  nlohmann::json j;
  j["order"] = eta.order;
  j["knots"] = eta.knots();
  const PiecewisePolynomial re = eta.real_density();
  nlohmann::json pieces = nlohmann::json::array();
  for (std::size_t i = 0; i < re.intervals(); ++i) {
    std::vector<double> c;
    for (const auto& z : re.pieces()[i]) c.push_back(z.real());
    pieces.push_back({{"interval", {re.knots()[i], re.knots()[i + 1]}}, {"bernstein", c}});
  }
  j["pieces"] = pieces;
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : eta.atoms()) atoms.push_back({{"x", a.x}, {"mass", a.mass.real()}});
  j["atoms"] = atoms;
  j["polynomial_adjust"] = eta.polynomial_adjust;
  j["relative_schatten"] = eta.relative_schatten;
  j["imaginary_defect"] = eta.imaginary_defect;
  return j;
}

}  // namespace ssf
