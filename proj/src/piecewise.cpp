#include "ssf/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "ssf/bernstein.hpp"

namespace ssf {

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> knots, int degree)
    : knots_(std::move(knots)) {
  if (!std::is_sorted(knots_.begin(), knots_.end()) ||
      std::adjacent_find(knots_.begin(), knots_.end()) != knots_.end()) {
    throw std::invalid_argument("piecewise polynomial knots must be strictly increasing");
  }
  if (knots_.size() >= 2) {
    pieces_.assign(knots_.size() - 1,
                   std::vector<Complex>(static_cast<std::size_t>(degree + 1), 0.0));
  }
}

int PiecewisePolynomial::degree() const {
  int d = 0;
  for (const auto& p : pieces_) d = std::max(d, static_cast<int>(p.size()) - 1);
  return d;
}

int PiecewisePolynomial::knot_index(double x) const {
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
  if (it == knots_.end() || *it != x) return -1;
  return static_cast<int>(std::distance(knots_.begin(), it));
}

namespace {

template <typename T>
void accumulate_piece(std::vector<Complex>& piece, std::span<const T> coeffs,
                      Complex scale) {
  const std::size_t degree = std::max(piece.size(), coeffs.size()) - 1;
  if (piece.size() < degree + 1) piece = bernstein::elevate(piece, degree);
  std::vector<Complex> add(coeffs.begin(), coeffs.end());
  if (add.size() < degree + 1) add = bernstein::elevate(add, degree);
  for (std::size_t k = 0; k <= degree; ++k) piece[k] += scale * add[k];
}

}  // namespace

void PiecewisePolynomial::add_to_piece(std::size_t i, std::span<const double> coeffs,
                                       Complex scale) {
  accumulate_piece(pieces_.at(i), coeffs, scale);
}

void PiecewisePolynomial::add_to_piece(std::size_t i, std::span<const Complex> coeffs,
                                       Complex scale) {
  accumulate_piece(pieces_.at(i), coeffs, scale);
}

void PiecewisePolynomial::add_atom(double x, Complex mass) {
  if (knot_index(x) < 0) {
    std::vector<double> k = merge_knots(knots_, {x}, 0.0);
    *this = refined(k);
  }
  for (auto& a : atoms_) {
    if (a.x == x) {
      a.mass += mass;
      return;
    }
  }
  atoms_.push_back({x, mass});
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& l, const Atom& r) { return l.x < r.x; });
}

Complex PiecewisePolynomial::operator()(double x) const {
  if (knots_.size() < 2 || x < knots_.front() || x >= knots_.back()) return 0.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto i = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
  const double h = knots_[i + 1] - knots_[i];
  return bernstein::evaluate(pieces_[i], (x - knots_[i]) / h);
}

Complex PiecewisePolynomial::left_limit(double x) const {
  if (knots_.size() < 2 || x <= knots_.front() || x > knots_.back()) return 0.0;
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
  const auto i = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
  const double h = knots_[i + 1] - knots_[i];
  return bernstein::evaluate(pieces_[i], (x - knots_[i]) / h);
}

PiecewisePolynomial PiecewisePolynomial::real_part() const {
  PiecewisePolynomial out = *this;
  for (auto& p : out.pieces_) {
    for (auto& c : p) c = c.real();
  }
  for (auto& a : out.atoms_) a.mass = a.mass.real();
  return out;
}

PiecewisePolynomial PiecewisePolynomial::imag_part() const {
  PiecewisePolynomial out = *this;
  for (auto& p : out.pieces_) {
    for (auto& c : p) c = c.imag();
  }
  for (auto& a : out.atoms_) a.mass = a.mass.imag();
  return out;
}

double PiecewisePolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& p : pieces_) {
    for (const auto& c : p) m = std::max(m, std::abs(c));
  }
  for (const auto& a : atoms_) m = std::max(m, std::abs(a.mass));
  return m;
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
  PiecewisePolynomial out;
  out.knots_ = knots_;
  Complex running = 0.0;
  std::size_t next_atom = 0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    while (next_atom < atoms_.size() && atoms_[next_atom].x <= knots_[i]) {
      running += atoms_[next_atom++].mass;
    }
    const double h = knots_[i + 1] - knots_[i];
    std::vector<Complex> anti = bernstein::antiderivative(pieces_[i]);
    for (auto& c : anti) c = running + h * c;
    running += h * bernstein::integral(pieces_[i]);
    out.pieces_.push_back(std::move(anti));
  }
  return out;
}

PiecewisePolynomial PiecewisePolynomial::refined(const std::vector<double>& knots) const {
  PiecewisePolynomial out(knots, std::max(degree(), 0));
  out.atoms_ = atoms_;
  if (knots_.size() < 2) return out;
  for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
    const double lo = knots[j];
    const double hi = knots[j + 1];
    if (lo < knots_.front() || hi > knots_.back()) continue;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), lo);
    const auto i = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
    if (hi > knots_[i + 1]) {
      throw std::invalid_argument("refined knot set must contain the original knots");
    }
    const double a = knots_[i];
    const double h = knots_[i + 1] - a;
    out.pieces_[j] = bernstein::segment(pieces_[i], (lo - a) / h, (hi - a) / h);
  }
  return out;
}

PiecewisePolynomial& PiecewisePolynomial::operator+=(const PiecewisePolynomial& other) {
  if (knots_ != other.knots_) {
    const auto merged = merge_knots(knots_, other.knots_, 0.0);
    *this = refined(merged);
    const auto rhs = other.refined(merged);
    return *this += rhs;
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    accumulate_piece(pieces_[i], std::span<const Complex>(other.pieces_[i]), 1.0);
  }
  for (const auto& a : other.atoms_) add_atom(a.x, a.mass);
  return *this;
}

PiecewisePolynomial& PiecewisePolynomial::operator*=(Complex s) {
  for (auto& p : pieces_) {
    for (auto& c : p) c *= s;
  }
  for (auto& a : atoms_) a.mass *= s;
  return *this;
}

PiecewisePolynomial& PiecewisePolynomial::operator-=(const PiecewisePolynomial& other) {
  PiecewisePolynomial neg = other;
  neg *= -1.0;
  return *this += neg;
}

PiecewisePolynomial operator+(PiecewisePolynomial a, const PiecewisePolynomial& b) {
  a += b;
  return a;
}

PiecewisePolynomial operator-(PiecewisePolynomial a, const PiecewisePolynomial& b) {
  a -= b;
  return a;
}

QuadratureResult PiecewisePolynomial::integrate(
    const std::function<Complex(double, Complex)>& g,
    std::span<const double> extra_breaks, const QuadratureOptions& options) const {
  QuadratureResult out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double a = knots_[i];
    const double h = knots_[i + 1] - a;
    const auto& piece = pieces_[i];
    const auto part = ssf::integrate(
        [&](double x) { return g(x, bernstein::evaluate(piece, (x - a) / h)); }, a,
        a + h, extra_breaks, options);
    out.value += part.value;
    out.error += part.error;
    out.evaluations += part.evaluations;
    out.converged = out.converged && part.converged;
  }
  return out;
}

QuadratureResult PiecewisePolynomial::integrate_derivative(
    const TestFunction& f, int order, const QuadratureOptions& options) const {
  auto out = integrate([&](double x, Complex p) { return f.derivative(order, x) * p; },
                       f.breakpoints(), options);
  for (const auto& a : atoms_) out.value += f.derivative(order, a.x) * a.mass;
  return out;
}

double PiecewisePolynomial::l1_norm() const {
  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  opts.abs_tol = 1e-15;
  auto q = integrate([](double, Complex p) { return Complex(std::abs(p), 0.0); }, {},
                     opts);
  double total = q.value.real();
  for (const auto& a : atoms_) total += std::abs(a.mass);
  return total;
}

std::vector<double> merge_knots(const std::vector<double>& a, const std::vector<double>& b,
                                double tol) {
  std::vector<double> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double x : all) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

}  // namespace ssf
