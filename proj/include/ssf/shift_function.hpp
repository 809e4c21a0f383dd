#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssf/moi.hpp"
#include "ssf/piecewise.hpp"

namespace ssf {

/// Order-n spectral shift function of a finite Hermitian pair.
///
/// `density` is the complex density before the real-part projection; the
/// function itself is its real part plus `polynomial_adjust` (coefficients of
/// 1, x, ..., all zero for the compactly supported representative).
struct SpectralShiftFunction {
  int order = 1;
  PiecewisePolynomial density;
  std::vector<double> polynomial_adjust;
  double relative_schatten = 0.0;  // ||V (H - i)^{-1}||_n^n
  double imaginary_defect = 0.0;   // largest |coefficient| of Im density

  PiecewisePolynomial real_density() const { return density.real_part(); }
  const std::vector<double>& knots() const { return density.knots(); }
  /// Real point masses (only from fully confluent tuples).
  std::vector<Atom> atoms() const;
  /// Right-continuous value; at a point mass location the left limit.
  double sample(double x) const;
  /// [min knot, max knot], or (0, 0) when empty.
  Interval hull() const;
};

/// Peano-kernel density of sum over tag tuples of coeff * f^[n](tags):
/// trace(...) = \int f^(n) density (atoms included). Tags closer than `tol`
/// are identified.
PiecewisePolynomial peano_density(const TraceCoefficients& tc, double tol);

/// eta_n from the Peano-kernel expansion of Tr T^{H+V,H,...,H}_{f^[n]}(V,...,V).
SpectralShiftFunction ssf_bspline(const HermitianOperator& h, const Matrix& v, int n);

/// #{eig H <= x} - #{eig (H+V) <= x}.
SpectralShiftFunction krein_ssf(const HermitianOperator& h, const Matrix& v);

/// eta_n built upward from the counting function: eta_{m+1} is minus the
/// antiderivative of eta_m minus the Peano density of the m-th derivative
/// term. Independent of the tuple tensor of ssf_bspline.
SpectralShiftFunction ssf_recursive(const HermitianOperator& h, const Matrix& v, int n);

struct TraceFormulaReport {
  Complex lhs;  // Tr R_{n,H,f}(V)
  Complex rhs;  // \int f^(n) eta_n
  double residual = 0.0;  // |lhs - rhs| / (1 + |lhs|)
  double quadrature_error = 0.0;
  bool quadrature_converged = true;
};

TraceFormulaReport verify_trace_formula(const HermitianOperator& h, const Matrix& v,
                                        const SpectralShiftFunction& eta,
                                        const TestFunction& f);
TraceFormulaReport verify_trace_formula(const HermitianOperator& h, const Matrix& v, int n,
                                        const TestFunction& f);

struct WeightedL1Report {
  double epsilon = 0.0;
  double value = 0.0;      // \int |eta| (1 + |x|)^{-n-eps}
  double reference = 0.0;  // (1 + 1/eps) ||Vt||_n^n
  double ratio = 0.0;      // value / reference, 0 when both vanish
};

WeightedL1Report weighted_l1_report(const SpectralShiftFunction& eta, double epsilon);

struct UniquenessReport {
  std::vector<double> polynomial;  // fitted coefficients of 1, x, ...
  double residual_l1 = 0.0;
  double reference_l1 = 0.0;  // ||eta_a||_{L1(hull)}
  double tolerance = 0.0;
  bool pass() const { return residual_l1 <= tolerance; }
};

/// Least-squares fit of a degree n-1 polynomial to eta_a - eta_b on 2048
/// points over the padded knot hull.
UniquenessReport uniqueness_mod_polynomial(const SpectralShiftFunction& a,
                                           const SpectralShiftFunction& b, int n);

struct RealnessReport {
  double max_defect = 0.0;    // max |\int f^(n) Im eta|
  double max_relative = 0.0;  // max of defect / (1 + |Tr R|)
  std::string worst;
};

RealnessReport realness_report(const HermitianOperator& h, const Matrix& v, int n,
                               const std::vector<TestFunction>& battery);

/// Uniform grid of `points` values over the knot hull padded by 10%.
std::vector<double> sample_grid(const SpectralShiftFunction& eta, int points);

/// Header `x,eta`, 17 significant digits.
void write_csv(std::ostream& out, const SpectralShiftFunction& eta,
               const std::vector<double>& xs);

nlohmann::json to_json(const SpectralShiftFunction& eta);

}  // namespace ssf
