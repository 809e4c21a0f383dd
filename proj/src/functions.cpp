#include "ssf/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ssf {

namespace {

constexpr int kSmoothOrder = 40;

double factorial(int n) { return std::tgamma(n + 1.0); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Physicists' Hermite polynomial H_k(t) by the three-term recurrence.
double hermite(int k, double t) {
  double h0 = 1.0;
  if (k == 0) return h0;
  double h1 = 2.0 * t;
  for (int m = 1; m < k; ++m) {
    const double h2 = 2.0 * t * h1 - 2.0 * m * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// k-th derivative of sum_j c_j x^j.
template <typename T>
T polynomial_derivative(const std::vector<T>& c, int k, double x) {
  T acc{};
  for (int j = static_cast<int>(c.size()) - 1; j >= k; --j) {
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= (j - i);
    acc = acc * x + c[static_cast<std::size_t>(j)] * falling;
  }
  return acc;
}

Complex ipow(Complex base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  Complex r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

TestFunction::TestFunction(std::string name, int max_order, Evaluator eval)
    : name_(std::move(name)), max_order_(max_order), eval_(std::move(eval)) {}

Complex TestFunction::derivative(int k, double x) const {
  if (k < 0 || k > max_order_) {
    std::ostringstream os;
    os << name_ << ": derivative of order " << k << " unavailable (max "
       << max_order_ << ")";
    throw OrderError(os.str());
  }
  return eval_(k, x);
}

std::optional<double> TestFunction::fourier_l1(int k) const {
  if (!fourier_l1_) return std::nullopt;
  return fourier_l1_(k);
}

TestFunction& TestFunction::with_support(Interval s) {
  support_ = s;
  return *this;
}
TestFunction& TestFunction::with_breakpoints(std::vector<double> b) {
  breakpoints_ = std::move(b);
  return *this;
}
TestFunction& TestFunction::with_flags(ClassFlags f) {
  flags_ = f;
  return *this;
}
TestFunction& TestFunction::with_fourier_l1(FourierL1 fn) {
  fourier_l1_ = std::move(fn);
  return *this;
}
TestFunction& TestFunction::with_real_valued(bool real) {
  real_valued_ = real;
  return *this;
}

TestFunction make_resolvent(Complex z, int k) {
  if (z.imag() == 0.0) {
    throw std::invalid_argument("resolvent requires Im z != 0");
  }
  if (k < 1) throw std::invalid_argument("resolvent power must be positive");
  std::ostringstream name;
  name << "resolvent(z=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
       << "i,k=" << k << ")";
  // d^m/dx^m (z - x)^{-k} = (k)_m (z - x)^{-k-m}, rising factorial (k)_m
  TestFunction f(name.str(), kSmoothOrder, [z, k](int m, double x) {
    double rising = 1.0;
    for (int i = 0; i < m; ++i) rising *= (k + i);
    return rising * ipow(z - x, -(k + m));
  });
  const double y = std::abs(z.imag());
  // (z - x)^{-k} = (-i)^k/(k-1)! \int_0^oo s^{k-1} e^{i(z-x)s} ds, so the
  // transform of the m-th derivative has modulus |t|^{m+k-1} e^{-y|t|}/(k-1)!
  f.with_fourier_l1([k, y](int m) -> std::optional<double> {
     return std::exp(std::lgamma(m + k) - std::lgamma(k) -
                     (m + k) * std::log(y));
   })
      .with_flags({ClassFlags::kAllOrders, ClassFlags::kAllOrders, 0})
      .with_real_valued(false);
  return f;
}

TestFunction make_gaussian(double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  std::ostringstream name;
  name << "gaussian(c=" << center << ",w=" << width << ")";
  TestFunction f(name.str(), kSmoothOrder, [center, width](int m, double x) {
    const double t = (x - center) / width;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return Complex(sign * std::pow(width, -m) * hermite(m, t) * std::exp(-t * t),
                   0.0);
  });
  // (f^(m))^(t) = (it)^m (w/(2 sqrt(pi))) e^{-w^2 t^2/4}, whose L1 norm is
  // (w/(2 sqrt(pi))) Gamma((m+1)/2) (2/w)^{m+1}
  f.with_fourier_l1([width](int m) -> std::optional<double> {
     return width / (2.0 * std::sqrt(std::numbers::pi)) *
            std::tgamma((m + 1) / 2.0) * std::pow(2.0 / width, m + 1);
   })
      .with_flags({ClassFlags::kAllOrders, ClassFlags::kAllOrders, 0});
  return f;
}

TestFunction make_bump(double a, int degree, double center) {
  if (!(a > 0.0)) throw std::invalid_argument("bump radius must be positive");
  if (degree < 3) {
    throw OrderError("bump degree must be at least n + 2 for some n >= 1");
  }
  // (1 - s^2)^degree in powers of s = (x - center)/a
  std::vector<double> coeffs(static_cast<std::size_t>(2 * degree + 1), 0.0);
  for (int j = 0; j <= degree; ++j) {
    coeffs[static_cast<std::size_t>(2 * j)] =
        binomial(degree, j) * ((j % 2 == 0) ? 1.0 : -1.0);
  }
  std::ostringstream name;
  name << "bump(c=" << center << ",a=" << a << ",deg=" << degree << ")";
  TestFunction f(name.str(), 2 * degree + 1,
                 [coeffs, a, center](int m, double x) {
                   const double s = (x - center) / a;
                   if (s <= -1.0 || s >= 1.0) return Complex(0.0, 0.0);
                   return Complex(
                       polynomial_derivative(coeffs, m, s) * std::pow(a, -m), 0.0);
                 });
  f.with_support({center - a, center + a})
      .with_breakpoints({center - a, center + a})
      .with_flags({degree - 2, degree - 2, degree - 2});
  return f;
}

TestFunction make_polynomial(std::vector<Complex> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  const bool real = std::all_of(coefficients.begin(), coefficients.end(),
                                [](Complex c) { return c.imag() == 0.0; });
  std::ostringstream name;
  name << "polynomial(deg=" << coefficients.size() - 1 << ")";
  TestFunction f(name.str(), kSmoothOrder, [coefficients](int m, double x) {
    return polynomial_derivative(coefficients, m, x);
  });
  f.with_real_valued(real);
  return f;
}

TestFunction weight_u() { return make_polynomial({Complex(0.0, -1.0), 1.0}); }

TestFunction weighted(const TestFunction& f, int p) {
  if (p < 0) throw std::invalid_argument("weight power must be non-negative");
  if (p == 0) return f;
  auto base = std::make_shared<TestFunction>(f);
  // (f u^p)^(m) = sum_k C(m,k) f^(m-k) (u^p)^(k), (u^p)^(k) = p!/(p-k)! u^{p-k}
  TestFunction g(f.name() + "*u^" + std::to_string(p), f.max_order(),
                 [base, p](int m, double x) {
                   const Complex u(x, -1.0);
                   Complex acc = 0.0;
                   for (int k = 0; k <= std::min(m, p); ++k) {
                     const double coeff =
                         binomial(m, k) * factorial(p) / factorial(p - k);
                     acc += coeff * base->derivative(m - k, x) *
                            ipow(u, p - k);
                   }
                   return acc;
                 });
  if (f.support()) g.with_support(*f.support());
  g.with_breakpoints(f.breakpoints()).with_real_valued(false);
  return g;
}

MembershipReport check_membership_wn(const TestFunction& f, int n) {
  if (n < 1) throw std::invalid_argument("membership order must be >= 1");
  if (f.max_order() < n) {
    throw OrderError(f.name() + ": insufficient derivative order for W_n probe");
  }
  MembershipReport report;
  report.n = n;
  report.analytic_flag = f.flags().in_wn(n);

  // geometric grid 1, 10, ..., 1e6 on both sides
  std::vector<double> grid;
  for (int e = 0; e <= 6; ++e) {
    grid.push_back(std::pow(10.0, e));
    grid.push_back(-std::pow(10.0, e));
  }
  const double far = 1e6;
  auto peak = [&](auto&& g) {
    double m = 0.0;
    for (double x : grid) m = std::max(m, std::abs(g(x)));
    for (double x = -1.0; x <= 1.0; x += 0.125) m = std::max(m, std::abs(g(x)));
    return m;
  };
  constexpr double kThreshold = 1e-3;

  auto decays = [&](auto&& g) {
    const double top = std::max(peak(g), 1e-300);
    return std::abs(g(far)) <= kThreshold * top &&
           std::abs(g(-far)) <= kThreshold * top;
  };

  const bool c0 = decays([&](double x) { return f(x); });
  const bool nth = decays([&](double x) {
    return f.derivative(n, x) * std::pow(std::abs(x), n);
  });
  report.vanishes_at_infinity = c0 && nth;

  // integrable tail: |g(x)| |x| -> 0 for g = f^(k) (1+|x|)^{k-1}
  bool integrable = true;
  for (int k = 1; k <= n; ++k) {
    integrable = integrable && decays([&](double x) {
                   return f.derivative(k, x) * std::pow(1.0 + std::abs(x), k - 1) *
                          std::abs(x);
                 });
  }
  report.weighted_integrable = integrable;

  if (auto l1 = f.fourier_l1(n)) {
    report.fourier_integrable = std::isfinite(*l1);
  } else if (f.max_order() >= n + 1) {
    // f^(n), f^(n+1) in L^2 suffices; probe |g|^2 |x| -> 0
    report.fourier_integrable =
        decays([&](double x) {
          return std::norm(f.derivative(n, x)) * std::abs(x);
        }) &&
        decays([&](double x) {
          return std::norm(f.derivative(n + 1, x)) * std::abs(x);
        });
  }
  return report;
}

}  // namespace ssf
