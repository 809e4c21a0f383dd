#include "ssf/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssf {

namespace {

std::string residual_message(double residual) {
  std::ostringstream os;
  os << "matrix is not Hermitian (symmetry residual " << residual << ")";
  return os.str();
}

// Orthonormal basis of range(P) from Gram-Schmidt on P e_0, P e_1, ...
Matrix canonical_group_basis(const Matrix& block) {
  const Eigen::Index d = block.rows();
  const Eigen::Index rank = block.cols();
  const Matrix projector = block * block.adjoint();
  Matrix basis(d, rank);
  Eigen::Index found = 0;
  for (Eigen::Index e = 0; e < d && found < rank; ++e) {
    ComplexVector v = projector.col(e);
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < found; ++k) {
        v -= basis.col(k) * basis.col(k).dot(v);
      }
    }
    const double norm = v.norm();
    if (norm > 1e-6) {
      basis.col(found++) = v / norm;
    }
  }
  if (found < rank) {
    // cannot happen for a true projector of this rank; keep the solver basis
    return block;
  }
  return basis;
}

void normalize_phase(Eigen::Ref<ComplexVector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8 * scale) {
      const Complex phase = std::conj(v(i)) / std::abs(v(i));
      v *= phase;
      v(i) = Complex(v(i).real(), 0.0);
      return;
    }
  }
}

}  // namespace

NonHermitianError::NonHermitianError(double residual)
    : std::invalid_argument(residual_message(residual)), residual_(residual) {}

double hermitian_residual(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void require_operator(const Matrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream os;
    os << what << ": expected " << dim << "x" << dim << ", got " << m.rows()
       << "x" << m.cols();
    throw DimensionError(os.str());
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

HermitianOperator::HermitianOperator(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw DimensionError("Hermitian operator must be a non-empty square matrix");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("Hermitian operator has non-finite entries");
  }
  const double scale = entries.cwiseAbs().maxCoeff();
  const double residual = hermitian_residual(entries);
  if (residual > std::max(1e-12 * scale, kAbsoluteFloor)) {
    throw NonHermitianError(residual);
  }
  entries_ = 0.5 * (entries + entries.adjoint());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  const Eigen::Index d = dim();
  spectral_radius_ = eigenvalues_.cwiseAbs().maxCoeff();

  const double tol = group_tolerance(spectral_radius_);
  group_of_index_.assign(static_cast<std::size_t>(d), 0);
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= d; ++i) {
    if (i == d || eigenvalues_(i) - eigenvalues_(i - 1) > tol) {
      SpectralGroup g;
      g.begin = begin;
      g.end = i;
      g.value = eigenvalues_.segment(begin, i - begin).mean();
      for (Eigen::Index k = begin; k < i; ++k) {
        group_of_index_[static_cast<std::size_t>(k)] =
            static_cast<int>(groups_.size());
      }
      groups_.push_back(g);
      begin = i;
    }
  }

  for (const auto& g : groups_) {
    if (g.size() > 1) {
      eigenvectors_.middleCols(g.begin, g.size()) =
          canonical_group_basis(eigenvectors_.middleCols(g.begin, g.size()));
    }
  }
  for (Eigen::Index c = 0; c < d; ++c) {
    normalize_phase(eigenvectors_.col(c));
  }
}

Matrix HermitianOperator::projection(std::size_t g) const {
  const auto& grp = groups_.at(g);
  const auto block = eigenvectors_.middleCols(grp.begin, grp.size());
  return block * block.adjoint();
}

Matrix HermitianOperator::resolvent(Complex z) const {
  if (z.imag() == 0.0) {
    throw std::domain_error("resolvent requires a non-real spectral parameter");
  }
  return apply_function(*this, [z](double x) { return 1.0 / (x - z); });
}

HermitianOperator eigendecompose(const Matrix& a) { return HermitianOperator(a); }

RealVector singular_values(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

double schatten_norm(const Matrix& a, double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("Schatten exponent must satisfy p >= 1");
  }
  if (a.size() == 0) return 0.0;
  const RealVector s = singular_values(a);
  const double top = s.maxCoeff();
  if (std::isinf(p) || top == 0.0) return top;
  // scale by the largest singular value to avoid overflow for large p
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) sum += std::pow(s(i) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

Matrix weighted_perturbation(const Matrix& v, const HermitianOperator& h) {
  require_operator(v, h.dim(), "perturbation");
  return v * apply_function(h, [](double x) { return 1.0 / Complex(x, -1.0); });
}

}  // namespace ssf
