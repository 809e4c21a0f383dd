#pragma once

#include <functional>
#include <vector>

#include "ssf/functions.hpp"
#include "ssf/quadrature.hpp"

namespace ssf {

struct Atom {
  double x = 0.0;
  Complex mass = 0.0;
};

/// Complex piecewise polynomial on sorted knots plus point masses.
///
/// Piece i lives on [knots[i], knots[i+1]) in local Bernstein form. The
/// function is right-continuous and vanishes outside the knot hull. Atoms
/// sit on knots.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() = default;
  PiecewisePolynomial(std::vector<double> knots, int degree);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<std::vector<Complex>>& pieces() const { return pieces_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t intervals() const { return pieces_.size(); }
  int degree() const;
  bool empty() const { return knots_.size() < 2 && atoms_.empty(); }

  /// Index of the knot equal to x, or -1.
  int knot_index(double x) const;

  /// Adds `scale` times the Bernstein coefficients `coeffs` to piece i.
  void add_to_piece(std::size_t i, std::span<const double> coeffs, Complex scale);
  void add_to_piece(std::size_t i, std::span<const Complex> coeffs, Complex scale);
  void add_atom(double x, Complex mass);

  Complex operator()(double x) const;
  /// Left limit at x.
  Complex left_limit(double x) const;

  PiecewisePolynomial real_part() const;
  PiecewisePolynomial imag_part() const;
  double max_abs_coefficient() const;

  /// F(x) = \int_{-oo}^x p (atoms become jumps). Knots are kept; the result is
  /// only compactly supported when the total mass vanishes.
  PiecewisePolynomial antiderivative() const;

  /// Same function on a refined knot set (must contain the current knots).
  PiecewisePolynomial refined(const std::vector<double>& knots) const;

  PiecewisePolynomial& operator+=(const PiecewisePolynomial& other);
  PiecewisePolynomial& operator-=(const PiecewisePolynomial& other);
  PiecewisePolynomial& operator*=(Complex s);

  /// \int g(x, p(x)) dx over the knot hull, adaptive on each piece.
  QuadratureResult integrate(const std::function<Complex(double, Complex)>& g,
                             std::span<const double> extra_breaks = {},
                             const QuadratureOptions& options = {}) const;

  /// \int f^(order) p dx + sum over atoms of f^(order)(x) mass.
  QuadratureResult integrate_derivative(const TestFunction& f, int order,
                                        const QuadratureOptions& options = {}) const;

  /// \int |p| dx, atoms counted by |mass|.
  double l1_norm() const;

 private:
  std::vector<double> knots_;
  std::vector<std::vector<Complex>> pieces_;
  std::vector<Atom> atoms_;
};

PiecewisePolynomial operator+(PiecewisePolynomial a, const PiecewisePolynomial& b);
PiecewisePolynomial operator-(PiecewisePolynomial a, const PiecewisePolynomial& b);

/// Sorted union of two knot sets with values closer than `tol` merged.
std::vector<double> merge_knots(const std::vector<double>& a,
                                const std::vector<double>& b, double tol);

}  // namespace ssf
