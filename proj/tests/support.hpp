#pragma once

#include <cstdint>
#include <functional>

#include "ssf/matrix_core.hpp"
#include "ssf/models.hpp"

namespace ssf::testing {

inline Matrix random_hermitian(std::uint64_t seed, Eigen::Index dim, double scale = 1.0) {
  NormalSource rng(seed);
  Matrix h = gaussian_hermitian(rng, dim);
  const double r = schatten_norm(h, kInfinity);
  return r > 0.0 ? Matrix(h * (scale / r)) : h;
}

inline Matrix random_general(std::uint64_t seed, Eigen::Index dim) {
  NormalSource rng(seed);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.next();
      a(i, j) = Complex(re, rng.next());
    }
  }
  return a;
}

inline Matrix scalar(Complex c) {
  Matrix m(1, 1);
  m(0, 0) = c;
  return m;
}

/// Five-point central difference of order k at t = 0 with step h, then one
/// Richardson step against h/2.
inline Matrix richardson_derivative(const std::function<Matrix(double)>& g, int k, double h) {
  auto fd = [&](double s) -> Matrix {
    const Matrix m2 = g(-2 * s), m1 = g(-s), p1 = g(s), p2 = g(2 * s);
    switch (k) {
      case 1: return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * s);
      case 2: return (-m2 + 16.0 * m1 - 30.0 * g(0.0) + 16.0 * p1 - p2) / (12.0 * s * s);
      case 3: return (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * s * s * s);
      default: throw std::invalid_argument("finite difference order");
    }
  };
  const Matrix coarse = fd(h), fine = fd(h / 2);
  // leading error is O(h^4) for k = 1, 2 and O(h^2) for k = 3
  const double gain = k == 3 ? 4.0 : 16.0;
  return (gain * fine - coarse) / (gain - 1.0);
}

}  // namespace ssf::testing
