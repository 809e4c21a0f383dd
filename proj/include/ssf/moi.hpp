#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ssf/divdiff.hpp"
#include "ssf/functions.hpp"
#include "ssf/matrix_core.hpp"

namespace ssf {

/// Partition of eigenvalue indices of one operator into parts, each tagged
/// with the value at which a symbol is evaluated. Index -> -1 drops it.
struct SpectralPartition {
  std::vector<double> values;
  std::vector<int> part_of_index;
};

/// Spectral groups of `h` (the exact finite-dimensional spectral measure).
SpectralPartition spectral_groups(const HermitianOperator& h);

/// Bins [(l - offset)/m, (l + 1 - offset)/m) for |l| < cutoff, tagged l/m.
/// offset = 0 reproduces the half-open grid of the double-limit definition.
/// Sets `truncated` when an eigenvalue falls outside the cutoff.
SpectralPartition spectral_bins(const HermitianOperator& h, int m, int cutoff,
                                double offset, bool& truncated);

using OperatorList = std::vector<const HermitianOperator*>;
using TupleSymbol = std::function<Complex(std::span<const double>)>;

/// sum over part tuples of phi(tags) P^0 A_1 P^1 ... A_n P^n, evaluated in the
/// eigenbases: phi is called once per part tuple.
Matrix contract(const OperatorList& ops, std::span<const SpectralPartition> parts,
                std::span<const Matrix> perturbations, const TupleSymbol& phi);

/// Tensor of Tr(P^0 A_1 P^1 ... A_n P^n) over part tuples, row-major with the
/// slot-0 part index slowest. trace(contract(..., phi)) = sum phi * coeff.
struct TraceCoefficients {
  std::vector<std::vector<double>> values;  // tags per slot
  std::vector<std::size_t> extents;
  std::vector<Complex> data;

  std::size_t slots() const { return extents.size(); }
  /// Calls fn(tags, coefficient) for every entry with nonzero coefficient.
  void for_each(const std::function<void(std::span<const double>, Complex)>& fn) const;
};

TraceCoefficients trace_coefficients(const OperatorList& ops,
                                     std::span<const SpectralPartition> parts,
                                     std::span<const Matrix> perturbations);

/// T^{H_0..H_n}_{f^[n]}(V_1..V_n) by exact spectral-group summation; n = 0
/// gives f(H_0).
Matrix multiple_operator_integral(const OperatorList& ops,
                                  std::span<const Matrix> perturbations,
                                  const TestFunction& f);

struct MoiProblem {
  std::vector<HermitianOperator> operators;
  std::vector<Matrix> perturbations;
  TestFunction symbol;

  int order() const { return static_cast<int>(perturbations.size()); }
  Eigen::Index dim() const { return operators.front().dim(); }
  OperatorList operator_list() const;
  void validate() const;
};

Matrix moi_eigensum(const MoiProblem& p);

struct DiscretizedMoi {
  Matrix value;
  bool truncated = false;  // cutoff N/m did not cover every spectrum
};

/// The double sum of the definition with interval spectral projections on a
/// grid of width 1/m and cutoff |l| < N.
DiscretizedMoi moi_discretized(const MoiProblem& p, int m, int cutoff,
                               double offset = 0.0);

/// 1/alpha = sum 1/alpha_j.
double combined_exponent(std::span<const double> alphas);

struct SchattenBoundReport {
  double alpha = 0.0;
  double moi_norm = 0.0;        // ||T||_alpha
  double sup_derivative = 0.0;  // sup over the spectral hull of |f^(n)|
  double perturbation_product = 0.0;
  double ratio = 0.0;           // ||T|| / (sup |f^(n)| prod ||V_j||), 0 if both vanish
};

/// Empirical constant of ||T||_alpha <= c sup|f^(n)| prod ||V_j||_{alpha_j},
/// alpha_j in (1, oo).
SchattenBoundReport schatten_bound_check(const MoiProblem& p,
                                         std::span<const double> alphas);

struct FourierBoundReport {
  double alpha = 0.0;
  double moi_norm = 0.0;
  double bound = 0.0;   // ||(f^(n))^||_1 / n! * prod ||V_j||_{alpha_j}
  double margin = 0.0;  // bound - moi_norm
  bool holds() const { return margin >= 0.0; }
};

class MissingFourierData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks ||T||_alpha <= (1/n!) ||(f^(n))^||_1 prod ||V_j||_{alpha_j},
/// alpha_j in [1, oo].
FourierBoundReport fourier_bound_check(const MoiProblem& p,
                                       std::span<const double> alphas);

}  // namespace ssf
