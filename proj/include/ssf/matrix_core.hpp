#pragma once

#include <complex>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ssf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative tolerance used to merge nearly equal eigenvalues (and divided
/// difference nodes) into one spectral group.
inline constexpr double kGroupTolerance = 1e-10;
inline constexpr double kAbsoluteFloor = 1e-14;

inline double group_tolerance(double spectral_radius) {
  return kGroupTolerance * (1.0 + spectral_radius);
}

class NonHermitianError : public std::invalid_argument {
 public:
  explicit NonHermitianError(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Contiguous run of (ascending) eigenvalue indices sharing one eigenvalue.
struct SpectralGroup {
  double value = 0.0;
  Eigen::Index begin = 0;
  Eigen::Index end = 0;

  Eigen::Index size() const { return end - begin; }
};

/// Dense Hermitian matrix together with its eigendecomposition.
///
/// Eigenvalues are ascending. Inside a degenerate group the eigenvectors are
/// the Gram-Schmidt orthonormalization of the group projector applied to the
/// standard basis, so the basis depends only on the projector. Every column
/// is scaled so its first non-negligible component is real and positive.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Matrix& entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  const std::vector<SpectralGroup>& groups() const { return groups_; }
  double spectral_radius() const { return spectral_radius_; }

  /// Group index of every eigenvalue index.
  const std::vector<int>& group_of_index() const { return group_of_index_; }

  /// Orthogonal projection onto the eigenspace of group `g`.
  Matrix projection(std::size_t g) const;

  /// (H - z I)^{-1} for non-real z.
  Matrix resolvent(Complex z) const;

 private:
  Matrix entries_;
  RealVector eigenvalues_;
  Matrix eigenvectors_;
  std::vector<SpectralGroup> groups_;
  std::vector<int> group_of_index_;
  double spectral_radius_ = 0.0;
};

/// max |A - A^*| over entries.
double hermitian_residual(const Matrix& a);

HermitianOperator eigendecompose(const Matrix& a);

/// U diag(fn(lambda)) U^*; `fn` maps a real eigenvalue to a complex value.
template <typename ScalarFn>
Matrix apply_function(const HermitianOperator& h, ScalarFn&& fn) {
  const auto& u = h.eigenvectors();
  ComplexVector values(h.dim());
  for (Eigen::Index i = 0; i < h.dim(); ++i) {
    const double lambda = h.eigenvalues()(i);
    const Complex v = fn(lambda);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::domain_error("function undefined at eigenvalue " +
                              std::to_string(lambda));
    }
    values(i) = v;
  }
  return u * values.asDiagonal() * u.adjoint();
}

RealVector singular_values(const Matrix& a);

/// Schatten p-norm; p = kInfinity gives the operator norm.
double schatten_norm(const Matrix& a, double p);

template <typename Derived>
double schatten_norm(const Eigen::MatrixBase<Derived>& a, double p) {
  return schatten_norm(Matrix(a), p);
}

/// V (H - iI)^{-1}.
Matrix weighted_perturbation(const Matrix& v, const HermitianOperator& h);

/// Throws DimensionError unless `m` is square of size `dim` with finite entries.
void require_operator(const Matrix& m, Eigen::Index dim, const char* what);

}  // namespace ssf
