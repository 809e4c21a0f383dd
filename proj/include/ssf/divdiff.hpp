#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ssf/functions.hpp"
#include "ssf/quadrature.hpp"

namespace ssf {

/// Nodes of a divided difference, sorted, with nodes closer than the
/// spectral-group tolerance snapped to a common value.
class NodeTuple {
 public:
  explicit NodeTuple(std::span<const double> nodes);
  NodeTuple(std::initializer_list<double> nodes)
      : NodeTuple(std::span<const double>(nodes.begin(), nodes.size())) {}

  int order() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& distinct() const { return distinct_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  int max_multiplicity() const;
  bool fully_confluent() const { return distinct_.size() == 1; }

 private:
  std::vector<double> nodes_;
  std::vector<double> distinct_;
  std::vector<int> multiplicities_;
};

class AtomicKernelError : public std::invalid_argument {
 public:
  explicit AtomicKernelError(double at)
      : std::invalid_argument("all nodes coincide: Peano kernel is a point mass"),
        location(at) {}
  double location;
};

/// Peano kernel K of a node tuple of order n >= 1: the B-spline with these
/// knots divided by n!, so that f^[n](nodes) = \int f^(n)(x) K(x) dx.
/// Stored as local Bernstein coefficients (degree n - 1) per knot interval.
class PeanoKernel {
 public:
  explicit PeanoKernel(const NodeTuple& nodes);

  int order() const { return order_; }
  /// Distinct knots; piece i lives on [knots[i], knots[i+1]).
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  const std::vector<std::vector<double>>& pieces() const { return pieces_; }

  /// Right-continuous evaluation; zero outside [first knot, last knot).
  double operator()(double x) const;
  /// k-th derivative of the piece containing x (one-sided from the right,
  /// or from the left when `from_left`).
  double derivative(int k, double x, bool from_left = false) const;
  /// Exact integral of the kernel.
  double integral() const;
  /// \int f^(n) K by adaptive quadrature on each piece.
  QuadratureResult integrate_derivative(const TestFunction& f,
                                        const QuadratureOptions& options = {}) const;

 private:
  int order_;
  std::vector<double> knots_;
  std::vector<int> multiplicities_;
  std::vector<std::vector<double>> pieces_;
};

PeanoKernel peano_kernel(const NodeTuple& nodes);

/// Bernstein coefficients (degree n - 1, on [a, b]) of the Peano kernel of
/// the sorted node list `knots` (n + 1 entries, repeats allowed). [a, b] must
/// not straddle a knot.
std::vector<double> peano_kernel_piece(std::span<const double> knots, double a,
                                       double b);

/// f^[n] at the given nodes (any order). Confluent nodes use the Hermite
/// rule; badly conditioned tables fall back to the Peano kernel integral.
Complex divided_difference(const TestFunction& f, const NodeTuple& nodes);
Complex divided_difference(const TestFunction& f, std::span<const double> nodes);
inline Complex divided_difference(const TestFunction& f,
                                  std::initializer_list<double> nodes) {
  return divided_difference(f, std::span<const double>(nodes.begin(), nodes.size()));
}

/// Hermite recursion only, with its running rounding-error bound.
struct RecursionResult {
  Complex value;
  double error_bound;
};
RecursionResult divided_difference_recursion(const TestFunction& f,
                                             const NodeTuple& nodes);

/// f^[n] as the integral of f^(n)(s . nodes) over the standard simplex,
/// evaluated with collapsed-coordinate Gauss-Legendre rules of increasing
/// size. Throws QuadratureError when 1e-10 (1 + |result|) is not reached.
QuadratureResult simplex_dd(const TestFunction& f, std::span<const double> nodes);

/// Both sides of (fu)^[n](l_0..l_n) = f^[n](l_0..l_n) u(l_n) + f^[n-1](l_0..l_{n-1}).
std::pair<Complex, Complex> dd_leibniz_u(const TestFunction& f,
                                         std::span<const double> nodes);

/// Both sides of f^[n](l) = ((fu)^[n](l) - f^[n-1](l without l_j)) / u(l_j).
std::pair<Complex, Complex> dd_add_one_weight(const TestFunction& f,
                                              std::span<const double> nodes, int j);

/// Both sides of the full expansion of f^[n](l) into weighted divided
/// differences (fu^p)^[p](l_0, l_{j_1}, ..., l_{j_p}) / (u(l_1) ... u(l_n)).
std::pair<Complex, Complex> dd_weight_expansion(const TestFunction& f,
                                                std::span<const double> nodes);

}  // namespace ssf
