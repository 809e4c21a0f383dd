#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ssf/models.hpp"
#include "support.hpp"

using namespace ssf;

TEST(NormalSource, DeterministicAndPlausible) {
  NormalSource a(42), b(42), c(43);
  double sum = 0.0, sq = 0.0;
  const int count = 20000;
  bool differs = false;
  for (int i = 0; i < count; ++i) {
    const double x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
    sum += x;
    sq += x * x;
  }
  EXPECT_TRUE(differs);
  EXPECT_NEAR(sum / count, 0.0, 0.05);
  EXPECT_NEAR(sq / count, 1.0, 0.05);
}

TEST(NormalSource, UniformInUnitInterval) {
  NormalSource r(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RandomModel, HermitianScaledAndReproducible) {
  ModelSpec spec;
  spec.dim = 5;
  spec.spectral_scale = 3.0;
  spec.perturbation_norm = 0.7;
  spec.schatten_index = 2.0;
  spec.seed = 11;
  const auto a = build_random(spec), b = build_random(spec);
  EXPECT_EQ((a.H.entries() - b.H.entries()).norm(), 0.0);
  EXPECT_EQ((a.V - b.V).norm(), 0.0);
  EXPECT_LE(hermitian_residual(a.V), 1e-15);
  EXPECT_NEAR(a.H.spectral_radius(), 3.0, 1e-12);
  EXPECT_NEAR(schatten_norm(weighted_perturbation(a.V, a.H), 2.0), 0.7, 1e-10);
  spec.seed = 12;
  EXPECT_GT((build_random(spec).V - a.V).norm(), 0.0);
}

TEST(RandomModel, OtherSchattenIndex) {
  ModelSpec spec;
  spec.dim = 4;
  spec.schatten_index = 3.0;
  spec.perturbation_norm = 0.25;
  const auto m = build_random(spec);
  EXPECT_NEAR(schatten_norm(weighted_perturbation(m.V, m.H), 3.0), 0.25, 1e-10);
}

TEST(ModelSpec, ValidateNamesField) {
  ModelSpec spec;
  spec.dim = 0;
  try {
    spec.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("model.dim"), std::string::npos) << e.what();
  }
  ModelSpec s2;
  s2.kind = ModelKind::schrodinger1d;
  s2.dim = 4;
  s2.potential = {1.0, 2.0};
  EXPECT_THROW(s2.validate(), std::invalid_argument);
}

TEST(ModelKinds, RoundTripNames) {
  for (auto k : {ModelKind::random, ModelKind::schrodinger1d, ModelKind::dirac1d, ModelKind::diagonal}) {
    EXPECT_EQ(parse_model_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_model_kind("lattice"), std::invalid_argument);
}

TEST(Laplacian, TwoPointsUnitSpacing) {
  const HermitianOperator h(periodic_laplacian(2, 1.0));
  EXPECT_NEAR(h.eigenvalues()(0), 0.0, 1e-14);
  EXPECT_NEAR(h.eigenvalues()(1), 4.0, 1e-14);
}

TEST(Laplacian, SpectrumMatchesFourierSymbol) {
  const int n = 8;
  const double hs = 0.5;
  const HermitianOperator h(periodic_laplacian(n, hs));
  std::vector<double> expect;
  for (int k = 0; k < n; ++k) {
    const double s = std::sin(M_PI * k / n);
    expect.push_back(4.0 * s * s / (hs * hs));
  }
  std::sort(expect.begin(), expect.end());
  for (int k = 0; k < n; ++k) EXPECT_NEAR(h.eigenvalues()(k), expect[k], 1e-12);
}

TEST(Schrodinger, PotentialIsDiagonalPerturbation) {
  ModelSpec spec;
  spec.kind = ModelKind::schrodinger1d;
  spec.dim = 6;
  spec.spacing = 0.5;
  spec.potential = {0.1, -0.2, 0.0, 0.3, 0.0, 1.0};
  const auto s = build_schrodinger_1d(spec, 2.0);
  EXPECT_LE((s.instance.H.entries() - periodic_laplacian(6, 0.5)).norm(), 1e-14);
  for (int j = 0; j < 6; ++j) EXPECT_EQ(s.instance.V(j, j), Complex(spec.potential[j]));
  EXPECT_EQ(s.instance.V.norm(), Matrix(s.instance.V.diagonal().asDiagonal()).norm());
  // oracle: singular values of M_v (-Delta - i)^{-1} by SVD
  const Matrix w = s.instance.V * s.instance.H.resolvent(Complex(0.0, 1.0));
  const RealVector sv = Eigen::JacobiSVD<Matrix>(w).singularValues();
  EXPECT_NEAR(s.relative_norm, sv.norm(), 1e-12);
  double lp = 0.0;
  for (double v : spec.potential) lp += v * v;
  EXPECT_NEAR(s.potential_norm, std::sqrt(lp), 1e-14);
}

TEST(Dirac, CliffordRelations) {
  const auto e = clifford_generators();
  const Matrix id = Matrix::Identity(2, 2);
  EXPECT_LE((e[0] * e[0] - id).norm(), 1e-15);
  EXPECT_LE((e[1] * e[1] - id).norm(), 1e-15);
  EXPECT_LE((e[0] * e[1] + e[1] * e[0]).norm(), 1e-15);
}

TEST(Dirac, HermitianWithMassGap) {
  ModelSpec spec;
  spec.kind = ModelKind::dirac1d;
  spec.dim = 8;
  spec.spacing = 0.5;
  spec.mass = 1.0;
  spec.potential = std::vector<double>(8, 0.0);
  spec.potential[2] = 0.4;
  const auto m = build_dirac_1d(spec);
  EXPECT_EQ(m.H.dim(), 16);
  // D^2 = m^2 + D_1^2 because the generators anticommute
  for (Eigen::Index i = 0; i < 16; ++i) EXPECT_GE(std::abs(m.H.eigenvalues()(i)), 1.0 - 1e-12);
  EXPECT_LE(hermitian_residual(m.V), 1e-15);
  EXPECT_EQ(m.V(2, 2), Complex(0.4));
  EXPECT_EQ(m.V(10, 10), Complex(0.4));
}

TEST(Dirac, SpectrumSymmetric) {
  // e_2 = i e_0 e_1 anticommutes with D, so the spectrum is symmetric
  ModelSpec spec;
  spec.kind = ModelKind::dirac1d;
  spec.dim = 6;
  spec.mass = 0.3;
  spec.potential = std::vector<double>(6, 0.0);
  const auto m = build_dirac_1d(spec);
  const RealVector& ev = m.H.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev(i), -ev(ev.size() - 1 - i), 1e-12);
}

TEST(Diagonal, BuildsFromLists) {
  ModelSpec spec;
  spec.kind = ModelKind::diagonal;
  spec.spectrum = {0.0};
  spec.potential = {1.0};
  const auto m = build_model(spec);
  EXPECT_EQ(m.H.dim(), 1);
  EXPECT_EQ(m.V(0, 0), Complex(1.0));
}

TEST(PerturbedResolvent, HoldsOnRandomAndModelInstances) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const HermitianOperator h(ssf::testing::random_hermitian(s, 5, 3.0));
    const Matrix v = ssf::testing::random_hermitian(s + 50, 5);
    const Matrix w = ssf::testing::random_hermitian(s + 90, 5, 2.0);
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
      const auto r = perturbed_resolvent_check(h, v, w, p);
      EXPECT_TRUE(r.holds()) << r.margin();
      EXPECT_GT(r.lhs, 0.0);
    }
  }
}

TEST(PerturbedResolvent, ZeroPerturbationIsEquality) {
  const HermitianOperator h(ssf::testing::random_hermitian(3, 4));
  const Matrix v = ssf::testing::random_hermitian(4, 4);
  const auto r = perturbed_resolvent_check(h, v, Matrix::Zero(4, 4), 2.0);
  EXPECT_NEAR(r.margin(), 0.0, 1e-13);
}
