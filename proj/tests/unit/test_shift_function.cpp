#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ssf/shift_function.hpp"
#include "ssf/taylor.hpp"
#include "support.hpp"

using namespace ssf;
using ssf::testing::random_hermitian;
using ssf::testing::scalar;

namespace {

std::vector<TestFunction> battery() {
  return {make_gaussian(0.0, 1.0), make_gaussian(0.5, 0.6), make_resolvent({0.2, 1.0}, 1),
          make_resolvent({-0.4, -0.7}, 2), make_bump(2.5, 8, 0.1)};
}

}  // namespace

TEST(ShiftFunction, ScalarFirstOrderIsIndicator) {
  const auto eta = ssf_bspline(HermitianOperator(scalar(0.5)), scalar(1.5), 1);
  for (double x : {0.4, 2.1}) EXPECT_NEAR(eta.sample(x), 0.0, 1e-14) << x;
  for (double x : {0.5, 1.0, 1.99}) EXPECT_NEAR(eta.sample(x), 1.0, 1e-14) << x;
  const auto k = krein_ssf(HermitianOperator(scalar(0.5)), scalar(1.5));
  for (double x : {0.4, 0.5, 1.0, 1.99, 2.1}) EXPECT_NEAR(k.sample(x), eta.sample(x), 1e-14) << x;
}

TEST(ShiftFunction, NegativePerturbationFlipsSign) {
  const auto eta = ssf_bspline(HermitianOperator(scalar(0.0)), scalar(-1.0), 1);
  EXPECT_NEAR(eta.sample(-0.5), -1.0, 1e-14);
  EXPECT_NEAR(eta.sample(0.5), 0.0, 1e-14);
}

TEST(ShiftFunction, ScalarSecondOrderIsRamp) {
  // f(a+v) - f(a) - f'(a) v = \int_a^{a+v} f''(x) (a + v - x) dx
  const double a = -0.3, v = 2.0;
  const auto eta = ssf_bspline(HermitianOperator(scalar(a)), scalar(v), 2);
  for (double x = a; x < a + v; x += 0.1) EXPECT_NEAR(eta.sample(x), a + v - x, 1e-13) << x;
  EXPECT_NEAR(eta.sample(a + v + 0.1), 0.0, 1e-14);
}

TEST(ShiftFunction, ZeroPerturbationVanishes) {
  const HermitianOperator h(random_hermitian(3, 4));
  for (int n = 1; n <= 3; ++n) {
    const auto eta = ssf_bspline(h, Matrix::Zero(4, 4), n);
    EXPECT_EQ(eta.density.max_abs_coefficient(), 0.0);
    EXPECT_TRUE(eta.atoms().empty());
    EXPECT_EQ(eta.relative_schatten, 0.0);
  }
}

TEST(ShiftFunction, PiecewiseDegreeAndHull) {
  for (int n = 1; n <= 4; ++n) {
    const HermitianOperator h(random_hermitian(10 + n, 4, 2.0));
    const Matrix v = random_hermitian(20 + n, 4);
    const auto eta = ssf_bspline(h, v, n);
    EXPECT_LE(eta.density.degree(), n - 1);
    const HermitianOperator hv(Matrix(h.entries() + v));
    const double lo = std::min(h.eigenvalues().minCoeff(), hv.eigenvalues().minCoeff());
    const double hi = std::max(h.eigenvalues().maxCoeff(), hv.eigenvalues().maxCoeff());
    EXPECT_GE(eta.hull().lo, lo - 1e-12);
    EXPECT_LE(eta.hull().hi, hi + 1e-12);
    EXPECT_NEAR(eta.relative_schatten, std::pow(schatten_norm(weighted_perturbation(v, h), n), n),
                1e-10);
  }
}

TEST(ShiftFunction, TraceFormulaOnRandomPairs) {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const HermitianOperator h(random_hermitian(100 + 10 * n + s, 5, 2.0));
      const Matrix v = random_hermitian(200 + 10 * n + s, 5, 0.8);
      const auto eta = ssf_bspline(h, v, n);
      for (const auto& f : battery()) {
        const auto r = verify_trace_formula(h, v, eta, f);
        EXPECT_TRUE(r.quadrature_converged);
        EXPECT_LE(r.residual, 1e-9) << f.name() << " n=" << n;
      }
    }
  }
}

TEST(ShiftFunction, TraceFormulaWithDegenerateSpectrum) {
  Matrix h = Matrix::Zero(4, 4);
  h.diagonal() << 0.0, 0.0, 1.0, 1.0;
  const Matrix v = random_hermitian(7, 4, 0.5);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& f : battery()) {
      EXPECT_LE(verify_trace_formula(HermitianOperator(h), v, n, f).residual, 1e-9) << n;
    }
  }
}

TEST(ShiftFunction, TraceFormulaWithAtoms) {
  // V commuting with a degenerate H: every perturbed eigenvalue may coincide
  // with an unperturbed one, producing fully confluent tuples
  Matrix h = Matrix::Zero(3, 3);
  h.diagonal() << -1.0, 0.5, 2.0;
  Matrix v = Matrix::Zero(3, 3);
  v(1, 1) = 0.75;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& f : battery()) {
      EXPECT_LE(verify_trace_formula(HermitianOperator(h), v, n, f).residual, 1e-9) << n;
    }
  }
}

TEST(ShiftFunction, KreinEquivalenceUpToConstant) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const HermitianOperator h(random_hermitian(300 + s, 5, 2.0));
    const Matrix v = random_hermitian(400 + s, 5);
    const auto u = uniqueness_mod_polynomial(ssf_bspline(h, v, 1), krein_ssf(h, v), 1);
    EXPECT_TRUE(u.pass()) << u.residual_l1;
    EXPECT_LE(u.residual_l1, 1e-6);
  }
}

TEST(ShiftFunction, RecursiveAgreesModuloPolynomial) {
  for (int n = 2; n <= 3; ++n) {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const HermitianOperator h(random_hermitian(500 + s, 4, 2.0));
      const Matrix v = random_hermitian(600 + s, 4);
      const auto rec = ssf_recursive(h, v, n);
      const auto u = uniqueness_mod_polynomial(ssf_bspline(h, v, n), rec, n);
      EXPECT_LE(u.residual_l1, 1e-6) << n;
      EXPECT_EQ(u.polynomial.size(), static_cast<std::size_t>(n));
      const auto f = make_gaussian(0.3, 0.9);
      EXPECT_LE(verify_trace_formula(h, v, rec, f).residual, 1e-9);
    }
  }
}

TEST(ShiftFunction, UniquenessDetectsNonPolynomialDifference) {
  const HermitianOperator h(random_hermitian(700, 4, 2.0));
  const Matrix v = random_hermitian(701, 4);
  const auto a = ssf_bspline(h, v, 2);
  auto b = a;
  b.density *= 2.0;
  EXPECT_FALSE(uniqueness_mod_polynomial(a, b, 2).pass());
  const auto other = ssf_bspline(h, Matrix(2.0 * v), 2);
  EXPECT_THROW(uniqueness_mod_polynomial(a, other, 2), std::invalid_argument);
}

TEST(ShiftFunction, UniquenessRecoversAddedPolynomial) {
  const HermitianOperator h(random_hermitian(710, 4, 2.0));
  const Matrix v = random_hermitian(711, 4);
  const auto a = ssf_bspline(h, v, 3);
  auto b = a;
  b.polynomial_adjust = {0.5, -1.0, 0.25};
  const auto u = uniqueness_mod_polynomial(b, a, 3);
  EXPECT_TRUE(u.pass());
  ASSERT_EQ(u.polynomial.size(), 3u);
  EXPECT_NEAR(u.polynomial[0], 0.5, 1e-8);
  EXPECT_NEAR(u.polynomial[1], -1.0, 1e-8);
  EXPECT_NEAR(u.polynomial[2], 0.25, 1e-8);
}

TEST(ShiftFunction, RealValuedOnRealBattery) {
  const std::vector<TestFunction> real = {make_gaussian(0.0, 1.0), make_gaussian(-0.5, 0.4),
                                          make_bump(2.0, 7)};
  for (int n = 1; n <= 4; ++n) {
    const HermitianOperator h(random_hermitian(800 + n, 5, 2.0));
    const Matrix v = random_hermitian(900 + n, 5);
    const auto r = realness_report(h, v, n, real);
    EXPECT_LE(r.max_defect, 1e-8) << n << " " << r.worst;
    EXPECT_LE(ssf_bspline(h, v, n).imaginary_defect, 1e-10);
  }
}

TEST(WeightedL1, IndicatorOfUnitInterval) {
  // \int_0^1 (1 + x)^{-2} dx = 1/2
  const auto eta = ssf_bspline(HermitianOperator(scalar(0.0)), scalar(1.0), 1);
  const auto r = weighted_l1_report(eta, 1.0);
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  // ||V (H - i)^{-1}||_1 = 1 / |0 - i| = 1
  EXPECT_NEAR(r.reference, 2.0, 1e-12);
  EXPECT_NEAR(r.ratio, 0.25, 1e-12);
}

TEST(WeightedL1, RatioFiniteAndDecreasingInEpsilon) {
  const HermitianOperator h(random_hermitian(1000, 4, 2.0));
  const Matrix v = random_hermitian(1001, 4);
  for (int n = 1; n <= 3; ++n) {
    const auto eta = ssf_bspline(h, v, n);
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.1, 0.5, 1.0, 2.0}) {
      const auto r = weighted_l1_report(eta, eps);
      EXPECT_TRUE(std::isfinite(r.ratio));
      EXPECT_GT(r.ratio, 0.0);
      EXPECT_LE(r.value, prev + 1e-15);
      prev = r.value;
    }
  }
}

TEST(Output, CsvFormat) {
  const auto eta = ssf_bspline(HermitianOperator(scalar(0.0)), scalar(1.0), 1);
  const auto xs = sample_grid(eta, 5);
  ASSERT_EQ(xs.size(), 5u);
  EXPECT_NEAR(xs.front(), -0.1, 1e-15);
  EXPECT_NEAR(xs.back(), 1.1, 1e-15);
  std::ostringstream out;
  write_csv(out, eta, xs);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,eta");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    ASSERT_NE(comma, std::string::npos);
    const double x = std::stod(line.substr(0, comma));
    const double y = std::stod(line.substr(comma + 1));
    EXPECT_EQ(y, (x >= 0.0 && x < 1.0) ? 1.0 : 0.0) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST(Output, JsonFields) {
  const auto eta = ssf_bspline(HermitianOperator(scalar(0.0)), scalar(1.0), 2);
  const auto j = to_json(eta);
  EXPECT_EQ(j.at("order").get<int>(), 2);
  EXPECT_EQ(j.at("knots").size(), 2u);
  ASSERT_EQ(j.at("pieces").size(), 1u);
  EXPECT_EQ(j.at("pieces")[0].at("bernstein").size(), 2u);
  EXPECT_TRUE(j.contains("atoms"));
  EXPECT_TRUE(j.contains("polynomial_adjust"));
  EXPECT_TRUE(j.contains("relative_schatten"));
  EXPECT_TRUE(j.contains("imaginary_defect"));
}
