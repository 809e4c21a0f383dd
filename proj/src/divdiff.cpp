#include "ssf/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ssf/bernstein.hpp"

namespace ssf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(int n) { return std::tgamma(n + 1.0); }

// Monomial polynomial in the local variable s.
using Poly = std::vector<double>;

Poly poly_mul_linear(const Poly& p, double c0, double c1) {
  Poly out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += c0 * p[i];
    out[i + 1] += c1 * p[i];
  }
  return out;
}

void poly_add(Poly& acc, const Poly& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i];
}

}  // namespace

NodeTuple::NodeTuple(std::span<const double> nodes) {
  if (nodes.empty()) throw std::invalid_argument("node tuple must be non-empty");
  std::vector<double> sorted(nodes.begin(), nodes.end());
  for (double x : sorted) {
    if (!std::isfinite(x)) throw std::invalid_argument("node tuple has non-finite node");
  }
  std::sort(sorted.begin(), sorted.end());
  double scale = 0.0;
  for (double x : sorted) scale = std::max(scale, std::abs(x));
  const double tol = group_tolerance(scale);

  nodes_.reserve(sorted.size());
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted[i] - sorted[i - 1] > tol) {
      const double mean =
          std::accumulate(sorted.begin() + static_cast<std::ptrdiff_t>(begin),
                          sorted.begin() + static_cast<std::ptrdiff_t>(i), 0.0) /
          static_cast<double>(i - begin);
      distinct_.push_back(mean);
      multiplicities_.push_back(static_cast<int>(i - begin));
      for (std::size_t k = begin; k < i; ++k) nodes_.push_back(mean);
      begin = i;
    }
  }
}

int NodeTuple::max_multiplicity() const {
  return *std::max_element(multiplicities_.begin(), multiplicities_.end());
}

std::vector<double> peano_kernel_piece(std::span<const double> knots, double a,
                                       double b) {
  const int n = static_cast<int>(knots.size()) - 1;
  if (n < 1) throw std::invalid_argument("Peano kernel needs at least two nodes");
  const double span = knots.back() - knots.front();
  if (!(span > 0.0)) throw AtomicKernelError(knots.front());
  const double h = b - a;

  // Cox-de Boor recursion with x = a + h s; N_{i,0} is the indicator of the
  // knot interval that contains [a, b].
  std::vector<Poly> basis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double lo = knots[static_cast<std::size_t>(i)];
    const double hi = knots[static_cast<std::size_t>(i + 1)];
    basis[static_cast<std::size_t>(i)] =
        (lo < hi && lo <= a && b <= hi) ? Poly{1.0} : Poly{0.0};
  }
  for (int k = 1; k <= n - 1; ++k) {
    std::vector<Poly> next(static_cast<std::size_t>(n - k));
    for (int i = 0; i < n - k; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double ti = knots[ui];
      const double tik = knots[ui + static_cast<std::size_t>(k)];
      const double ti1 = knots[ui + 1];
      const double tik1 = knots[ui + static_cast<std::size_t>(k) + 1];
      Poly acc{0.0};
      if (tik > ti) {
        // (x - t_i)/(t_{i+k} - t_i)
        poly_add(acc, poly_mul_linear(basis[ui], (a - ti) / (tik - ti), h / (tik - ti)));
      }
      if (tik1 > ti1) {
        // (t_{i+k+1} - x)/(t_{i+k+1} - t_{i+1})
        poly_add(acc, poly_mul_linear(basis[ui + 1], (tik1 - a) / (tik1 - ti1),
                                      -h / (tik1 - ti1)));
      }
      next[ui] = std::move(acc);
    }
    basis = std::move(next);
  }
  Poly spline = basis[0];
  spline.resize(static_cast<std::size_t>(n), 0.0);
  const double scale = 1.0 / (factorial(n - 1) * span);
  for (double& c : spline) c *= scale;
  return bernstein::from_monomial(spline);
}

PeanoKernel::PeanoKernel(const NodeTuple& nodes)
    : order_(nodes.order()),
      knots_(nodes.distinct()),
      multiplicities_(nodes.multiplicities()) {
  if (order_ < 1) throw std::invalid_argument("Peano kernel needs order >= 1");
  if (nodes.fully_confluent()) throw AtomicKernelError(knots_.front());
  const auto& all = nodes.nodes();
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    pieces_.push_back(peano_kernel_piece(all, knots_[i], knots_[i + 1]));
  }
}

double PeanoKernel::operator()(double x) const { return derivative(0, x); }

double PeanoKernel::derivative(int k, double x, bool from_left) const {
  if (x < knots_.front() || x > knots_.back()) return 0.0;
  if (!from_left && x == knots_.back()) return 0.0;
  if (from_left && x == knots_.front()) return 0.0;
  auto it = from_left ? std::lower_bound(knots_.begin(), knots_.end(), x)
                      : std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
  const double a = knots_[idx];
  const double h = knots_[idx + 1] - a;
  std::vector<double> c = pieces_[idx];
  for (int d = 0; d < k; ++d) {
    c = bernstein::derivative(c);
    for (double& v : c) v /= h;
  }
  return bernstein::evaluate(c, (x - a) / h);
}

double PeanoKernel::integral() const {
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    total += (knots_[i + 1] - knots_[i]) * bernstein::integral(pieces_[i]);
  }
  return total;
}

QuadratureResult PeanoKernel::integrate_derivative(
    const TestFunction& f, const QuadratureOptions& options) const {
  QuadratureResult out;
  const auto& breaks = f.breakpoints();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double a = knots_[i];
    const double h = knots_[i + 1] - a;
    const auto& piece = pieces_[i];
    const int n = order_;
    auto part = integrate(
        [&](double x) {
          return f.derivative(n, x) * bernstein::evaluate(piece, (x - a) / h);
        },
        a, a + h, breaks, options);
    out.value += part.value;
    out.error += part.error;
    out.evaluations += part.evaluations;
    out.converged = out.converged && part.converged;
  }
  return out;
}

PeanoKernel peano_kernel(const NodeTuple& nodes) { return PeanoKernel(nodes); }

RecursionResult divided_difference_recursion(const TestFunction& f,
                                             const NodeTuple& nodes) {
  const auto& x = nodes.nodes();
  const int n = nodes.order();
  if (nodes.max_multiplicity() - 1 > f.max_order()) {
    throw OrderError(f.name() + ": insufficient derivative order for confluent nodes");
  }
  const auto m = static_cast<std::size_t>(n + 1);
  // column-by-column Hermite table over index ranges [i, i + len]
  std::vector<Complex> value(m);
  std::vector<double> err(m);
  for (std::size_t i = 0; i < m; ++i) {
    value[i] = f(x[i]);
    err[i] = 4.0 * kEps * std::abs(value[i]);
  }
  for (std::size_t len = 1; len < m; ++len) {
    for (std::size_t i = 0; i + len < m; ++i) {
      const double lo = x[i];
      const double hi = x[i + len];
      if (lo == hi) {
        const int k = static_cast<int>(len);
        value[i] = f.derivative(k, lo) / factorial(k);
        err[i] = 4.0 * kEps * std::abs(value[i]);
      } else {
        const double dx = hi - lo;
        value[i] = (value[i + 1] - value[i]) / dx;
        err[i] = (err[i + 1] + err[i]) / dx +
                 kEps * std::abs(value[i]) * (3.0 + (std::abs(lo) + std::abs(hi)) / dx);
      }
    }
  }
  return {value[0], err[0]};
}

Complex divided_difference(const TestFunction& f, const NodeTuple& nodes) {
  const auto rec = divided_difference_recursion(f, nodes);
  if (nodes.order() < 2 || nodes.fully_confluent() ||
      rec.error_bound <= 1e-10 * std::abs(rec.value) ||
      rec.error_bound <= std::numeric_limits<double>::min()) {
    return rec.value;
  }
  // ill-conditioned table: integrate f^(n) against the Peano kernel
  const PeanoKernel kernel(nodes);
  const auto q = kernel.integrate_derivative(f);
  return q.value;
}

Complex divided_difference(const TestFunction& f, std::span<const double> nodes) {
  return divided_difference(f, NodeTuple(nodes));
}

QuadratureResult simplex_dd(const TestFunction& f, std::span<const double> nodes) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n < 0) throw std::invalid_argument("simplex_dd needs at least one node");
  if (n == 0) return {f(nodes[0]), 0.0, 1, true};
  std::vector<double> diffs(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    diffs[static_cast<std::size_t>(k - 1)] =
        nodes[static_cast<std::size_t>(k)] - nodes[static_cast<std::size_t>(k - 1)];
  }
  const double base = nodes[0];

  // s_1 = r_1, s_k = r_1 ... r_k on [0,1]^n, Jacobian r_1^{n-1} ... r_{n-1}
  auto rule = [&](int points) {
    std::vector<double> gx, gw;
    gauss_legendre(points, gx, gw);
    for (auto& v : gx) v = 0.5 * (v + 1.0);
    for (auto& w : gw) w *= 0.5;
    Complex total = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    const auto p = static_cast<std::size_t>(points);
    while (true) {
      double weight = 1.0;
      double s = 1.0;
      double x = base;
      for (int k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const double r = gx[static_cast<std::size_t>(idx[uk])];
        s *= r;
        weight *= gw[static_cast<std::size_t>(idx[uk])] * std::pow(r, n - 1 - k);
        x += s * diffs[uk];
      }
      total += weight * f.derivative(n, x);
      int k = n - 1;
      while (k >= 0 && static_cast<std::size_t>(++idx[static_cast<std::size_t>(k)]) == p) {
        idx[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
    return total;
  };

  QuadratureResult out;
  int points = 8;
  Complex previous = rule(points);
  out.evaluations = static_cast<int>(std::pow(points, n));
  const double budget = 2e7;
  while (true) {
    const int next = points * 3 / 2 + 2;
    if (std::pow(next, n) > budget) break;
    const Complex current = rule(next);
    out.evaluations += static_cast<int>(std::pow(next, n));
    out.error = std::abs(current - previous);
    out.value = current;
    points = next;
    previous = current;
    if (out.error <= 1e-12 * (1.0 + std::abs(current))) break;
  }
  if (out.error > 1e-10 * (1.0 + std::abs(out.value))) {
    out.converged = false;
    throw QuadratureError("simplex quadrature did not converge", out.error);
  }
  return out;
}

std::pair<Complex, Complex> dd_leibniz_u(const TestFunction& f,
                                         std::span<const double> nodes) {
  const auto n = nodes.size() - 1;
  if (nodes.size() < 2) throw std::invalid_argument("Leibniz identity needs n >= 1");
  const Complex lhs = divided_difference(weighted(f, 1), nodes);
  const Complex rhs = divided_difference(f, nodes) * Complex(nodes[n], -1.0) +
                      divided_difference(f, nodes.first(n));
  return {lhs, rhs};
}

std::pair<Complex, Complex> dd_add_one_weight(const TestFunction& f,
                                              std::span<const double> nodes, int j) {
  if (nodes.size() < 2) throw std::invalid_argument("weight identity needs n >= 1");
  if (j < 0 || static_cast<std::size_t>(j) >= nodes.size()) {
    throw std::out_of_range("weight slot out of range");
  }
  std::vector<double> rest;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k != static_cast<std::size_t>(j)) rest.push_back(nodes[k]);
  }
  const Complex uj(nodes[static_cast<std::size_t>(j)], -1.0);
  const Complex lhs = divided_difference(f, nodes);
  const Complex rhs =
      (divided_difference(weighted(f, 1), nodes) - divided_difference(f, rest)) / uj;
  return {lhs, rhs};
}

std::pair<Complex, Complex> dd_weight_expansion(const TestFunction& f,
                                                std::span<const double> nodes) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n < 1) throw std::invalid_argument("weight expansion needs n >= 1");
  Complex inv_weights = 1.0;
  for (int k = 1; k <= n; ++k) {
    inv_weights /= Complex(nodes[static_cast<std::size_t>(k)], -1.0);
  }
  Complex rhs = 0.0;
  // subsets {j_1 < ... < j_p} of {1..n} as bit masks
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<double> args{nodes[0]};
    for (int k = 1; k <= n; ++k) {
      if (mask & (1u << (k - 1))) args.push_back(nodes[static_cast<std::size_t>(k)]);
    }
    const int p = static_cast<int>(args.size()) - 1;
    const double sign = ((n - p) % 2 == 0) ? 1.0 : -1.0;
    rhs += sign * divided_difference(weighted(f, p), args);
  }
  return {divided_difference(f, nodes), rhs * inv_weights};
}

}  // namespace ssf
