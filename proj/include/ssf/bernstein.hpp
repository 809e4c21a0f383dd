#pragma once

// Polynomials on a reference interval [0, 1] in the Bernstein basis
// b_{k,m}(s) = C(m,k) s^k (1-s)^{m-k}.

#include <cstddef>
#include <vector>

namespace ssf::bernstein {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// de Casteljau evaluation at s in [0, 1].
template <typename T>
T evaluate(const std::vector<T>& c, double s) {
  if (c.empty()) return T{};
  std::vector<T> work(c);
  for (std::size_t r = 1; r < work.size(); ++r) {
    for (std::size_t i = 0; i + r < work.size(); ++i) {
      work[i] = (1.0 - s) * work[i] + s * work[i + 1];
    }
  }
  return work[0];
}

/// Monomial coefficients a_j (of s^j) to Bernstein coefficients.
template <typename T>
std::vector<T> from_monomial(const std::vector<T>& a) {
  const int m = static_cast<int>(a.size()) - 1;
  std::vector<T> b(a.size(), T{});
  for (int k = 0; k <= m; ++k) {
    for (int j = 0; j <= k; ++j) {
      b[static_cast<std::size_t>(k)] +=
          a[static_cast<std::size_t>(j)] * (binomial(k, j) / binomial(m, j));
    }
  }
  return b;
}

/// Coefficients of d/ds (degree drops by one).
template <typename T>
std::vector<T> derivative(const std::vector<T>& c) {
  if (c.size() <= 1) return {T{}};
  const double m = static_cast<double>(c.size() - 1);
  std::vector<T> d(c.size() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) d[i] = m * (c[i + 1] - c[i]);
  return d;
}

/// \int_0^1 p(s) ds.
template <typename T>
T integral(const std::vector<T>& c) {
  T sum{};
  for (const auto& v : c) sum += v;
  return sum / static_cast<double>(c.size());
}

/// Coefficients of P(s) = \int_0^s p, degree raised by one, P(0) = 0.
template <typename T>
std::vector<T> antiderivative(const std::vector<T>& c) {
  const double m1 = static_cast<double>(c.size());
  std::vector<T> out(c.size() + 1, T{});
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = out[k - 1] + c[k - 1] / m1;
  return out;
}

/// Raise the degree to `target` (>= current degree).
template <typename T>
std::vector<T> elevate(std::vector<T> c, std::size_t target_degree) {
  while (c.size() < target_degree + 1) {
    const std::size_t m = c.size();  // new degree
    std::vector<T> e(m + 1);
    e[0] = c[0];
    e[m] = c[m - 1];
    for (std::size_t i = 1; i < m; ++i) {
      const double w = static_cast<double>(i) / static_cast<double>(m);
      e[i] = w * c[i - 1] + (1.0 - w) * c[i];
    }
    c = std::move(e);
  }
  return c;
}

/// Coefficients of the restriction to [alpha, beta] within [0, 1],
/// reparametrised to [0, 1] (de Casteljau subdivision).
template <typename T>
std::vector<T> segment(const std::vector<T>& c, double alpha, double beta) {
  auto split_left = [](const std::vector<T>& in, double t) {
    std::vector<T> work(in), left(in.size());
    for (std::size_t r = 0; r < in.size(); ++r) {
      left[r] = work[0];
      for (std::size_t i = 0; i + r + 1 < in.size(); ++i) {
        work[i] = (1.0 - t) * work[i] + t * work[i + 1];
      }
    }
    return left;
  };
  auto split_right = [](const std::vector<T>& in, double t) {
    std::vector<T> work(in), right(in.size());
    const std::size_t m = in.size();
    for (std::size_t r = 0; r < m; ++r) {
      right[m - 1 - r] = work[m - 1 - r];
      for (std::size_t i = 0; i + r + 1 < m; ++i) {
        work[i] = (1.0 - t) * work[i] + t * work[i + 1];
      }
    }
    return right;
  };
  if (c.empty()) return c;
  std::vector<T> left = beta < 1.0 ? split_left(c, beta) : c;
  if (alpha <= 0.0) return left;
  return split_right(left, alpha / beta);
}

}  // namespace ssf::bernstein
