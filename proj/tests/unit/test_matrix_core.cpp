#include <gtest/gtest.h>

#include "ssf/matrix_core.hpp"
#include "support.hpp"

using namespace ssf;
using ssf::testing::random_general;
using ssf::testing::random_hermitian;
using ssf::testing::scalar;

TEST(Eigendecompose, IdentityIsOneGroup) {
  const HermitianOperator h(Matrix::Identity(3, 3));
  EXPECT_TRUE(h.eigenvalues().isApprox(RealVector::Ones(3)));
  ASSERT_EQ(h.groups().size(), 1u);
  EXPECT_EQ(h.groups()[0].size(), 3);
  EXPECT_NEAR((h.eigenvectors() - Matrix::Identity(3, 3)).norm(), 0.0, 1e-15);
}

TEST(Eigendecompose, DiagonalGivesPermutedIdentity) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = -1.0;
  const HermitianOperator h(a);
  EXPECT_DOUBLE_EQ(h.eigenvalues()(0), -1.0);
  EXPECT_DOUBLE_EQ(h.eigenvalues()(1), 2.0);
  Matrix perm = Matrix::Zero(2, 2);
  perm(1, 0) = 1.0;
  perm(0, 1) = 1.0;
  EXPECT_NEAR((h.eigenvectors() - perm).norm(), 0.0, 1e-15);
}

TEST(Eigendecompose, ReconstructsRandomMatrices) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix a = random_hermitian(seed, 6, 3.0);
    const HermitianOperator h(a);
    const Matrix& u = h.eigenvectors();
    const Matrix back = u * h.eigenvalues().cast<Complex>().asDiagonal() * u.adjoint();
    EXPECT_LE((back - a).norm(), 1e-10 * a.norm());
    EXPECT_LE((u.adjoint() * u - Matrix::Identity(6, 6)).norm(), 1e-12);
  }
}

TEST(Eigendecompose, RejectsNonHermitianWithResidual) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  try {
    HermitianOperator h(a);
    FAIL() << "accepted a non-Hermitian matrix";
  } catch (const NonHermitianError& e) {
    EXPECT_DOUBLE_EQ(e.residual(), 1.0);
  }
}

TEST(Eigendecompose, DegenerateBasisDependsOnlyOnProjector) {
  // same operator written in two rotated eigenbases of the double eigenvalue
  const Matrix q = HermitianOperator(random_hermitian(5, 4)).eigenvectors();
  RealVector lam(4);
  lam << -1.0, 0.5, 0.5, 2.0;
  const Matrix a = q * lam.cast<Complex>().asDiagonal() * q.adjoint();
  Matrix rot = Matrix::Identity(4, 4);
  const double c = std::cos(0.7), s = std::sin(0.7);
  rot(1, 1) = c;
  rot(1, 2) = -s * Complex(0.0, 1.0);
  rot(2, 1) = -s * Complex(0.0, 1.0);
  rot(2, 2) = c;
  const Matrix q2 = q * rot;
  const Matrix b = q2 * lam.cast<Complex>().asDiagonal() * q2.adjoint();
  const HermitianOperator ha(a), hb(0.5 * (b + b.adjoint()));
  ASSERT_EQ(ha.groups().size(), 3u);
  EXPECT_LE((ha.eigenvectors() - hb.eigenvectors()).norm(), 1e-10);
  for (Eigen::Index j = 0; j < 4; ++j) {
    const auto& col = ha.eigenvectors().col(j);
    Eigen::Index first = 0;
    while (std::abs(col(first)) < 1e-8) ++first;
    EXPECT_NEAR(col(first).imag(), 0.0, 1e-15);
    EXPECT_GT(col(first).real(), 0.0);
  }
}

TEST(Eigendecompose, ProjectionsSumToIdentity) {
  const HermitianOperator h(random_hermitian(9, 5));
  Matrix sum = Matrix::Zero(5, 5);
  for (std::size_t g = 0; g < h.groups().size(); ++g) sum += h.projection(g);
  EXPECT_LE((sum - Matrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(ApplyFunction, IdentityMapReturnsOperator) {
  const Matrix a = random_hermitian(3, 4);
  const HermitianOperator h(a);
  EXPECT_LE((apply_function(h, [](double x) { return Complex(x); }) - a).norm(), 1e-13);
}

TEST(ApplyFunction, PowersMatchMatrixProducts) {
  const Matrix a = random_hermitian(4, 4, 2.0);
  const HermitianOperator h(a);
  Matrix power = Matrix::Identity(4, 4);
  for (int k = 1; k <= 6; ++k) {
    power = power * a;
    const Matrix fk = apply_function(h, [k](double x) { return Complex(std::pow(x, k)); });
    EXPECT_LE((fk - power).norm(), 1e-10 * (1.0 + power.norm())) << "k = " << k;
  }
}

TEST(ApplyFunction, ScalarResolvent) {
  const HermitianOperator h(scalar(0.0));
  const Matrix r = apply_function(h, [](double x) { return 1.0 / (Complex(0.0, 1.0) - x); });
  EXPECT_NEAR(std::abs(r(0, 0) - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(ApplyFunction, UndefinedValueNamesEigenvalue) {
  const HermitianOperator h(scalar(2.0));
  try {
    apply_function(h, [](double x) { return Complex(1.0 / (x - 2.0), 0.0); });
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("2.0"), std::string::npos);
  }
}

TEST(ApplyFunction, ResolventMatchesInverse) {
  const HermitianOperator h(random_hermitian(8, 5));
  const Complex z(0.3, 0.8);
  const Matrix inv = (h.entries() - z * Matrix::Identity(5, 5)).inverse();
  EXPECT_LE((h.resolvent(z) - inv).norm(), 1e-12);
}

TEST(SchattenNorm, RankOneEveryExponent) {
  ComplexVector u = ComplexVector::Zero(4), v = ComplexVector::Zero(4);
  u(1) = 1.0;
  v(3) = Complex(0.0, 1.0);
  const Matrix a = 2.5 * u * v.adjoint();
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0, kInfinity}) {
    EXPECT_NEAR(schatten_norm(a, p), 2.5, 1e-14) << p;
  }
}

TEST(SchattenNorm, IdentityIsDimensionToOneOverP) {
  for (double p : {1.0, 2.0, 3.0, 4.5}) {
    EXPECT_NEAR(schatten_norm(Matrix::Identity(5, 5), p), std::pow(5.0, 1.0 / p), 1e-13);
  }
  EXPECT_DOUBLE_EQ(schatten_norm(Matrix::Identity(5, 5), kInfinity), 1.0);
}

TEST(SchattenNorm, TwoNormIsFrobenius) {
  const Matrix a = random_general(2, 5);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) sum += std::norm(a(i));
  EXPECT_NEAR(schatten_norm(a, 2.0), std::sqrt(sum), 1e-12 * std::sqrt(sum));
}

TEST(SchattenNorm, RejectsExponentBelowOne) {
  EXPECT_THROW(schatten_norm(Matrix::Identity(2, 2), 0.5), std::invalid_argument);
}

TEST(SchattenNorm, NormAxiomsOnRandomTriples) {
  for (std::uint64_t s = 1; s <= 15; ++s) {
    const Matrix a = random_general(3 * s, 4), b = random_general(3 * s + 1, 4);
    const Complex alpha(0.3 * s, -1.1);
    for (double p : {1.0, 2.0, 3.0, kInfinity}) {
      EXPECT_LE(schatten_norm(a + b, p),
                schatten_norm(a, p) + schatten_norm(b, p) + 1e-12);
      EXPECT_NEAR(schatten_norm(alpha * a, p), std::abs(alpha) * schatten_norm(a, p),
                  1e-11 * schatten_norm(a, p) * std::abs(alpha));
    }
  }
}

TEST(SchattenNorm, Holder) {
  for (std::uint64_t s = 1; s <= 15; ++s) {
    const Matrix a = random_general(7 * s, 5), b = random_general(7 * s + 3, 5);
    const std::pair<double, double> pairs[] = {{2, 2}, {3, 1.5}, {4, 4}, {1, kInfinity}};
    for (auto [p, q] : pairs) {
      const double r = 1.0 / (1.0 / p + 1.0 / q);
      EXPECT_LE(schatten_norm(a * b, r),
                schatten_norm(a, p) * schatten_norm(b, q) * (1.0 + 1e-12));
    }
  }
}

TEST(WeightedPerturbation, ZeroAndScalar) {
  const HermitianOperator h(scalar(0.0));
  EXPECT_EQ(weighted_perturbation(scalar(0.0), h).norm(), 0.0);
  const Matrix w = weighted_perturbation(scalar(1.0), h);
  EXPECT_NEAR(std::abs(w(0, 0) - Complex(0.0, 1.0)), 0.0, 1e-15);
}

TEST(WeightedPerturbation, HolderAgainstResolventNorm) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const HermitianOperator h(random_hermitian(s, 5, 4.0));
    const Matrix v = random_hermitian(s + 100, 5);
    const Matrix w = weighted_perturbation(v, h);
    for (double p : {1.0, 2.0, 3.0}) {
      EXPECT_LE(schatten_norm(w, p), schatten_norm(v, kInfinity) *
                                         schatten_norm(h.resolvent(Complex(0.0, 1.0)), p) *
                                         (1.0 + 1e-12));
    }
  }
}

TEST(WeightedPerturbation, DimensionMismatch) {
  const HermitianOperator h(Matrix::Identity(3, 3));
  EXPECT_THROW(weighted_perturbation(Matrix::Identity(2, 2), h), DimensionError);
}
