#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssf/matrix_core.hpp"

namespace ssf {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Analytic class membership, recorded as the largest order n for which the
/// claim holds (0 = never). `kAllOrders` means every n >= 1.
struct ClassFlags {
  static constexpr int kAllOrders = 1 << 20;
  int wn = 0;    // admissible class W_n
  int bn = 0;    // auxiliary class B_n
  int ccn1 = 0;  // C_c^{n+1}

  bool in_wn(int n) const { return n >= 1 && n <= wn; }
  bool in_bn(int n) const { return n >= 1 && n <= bn; }
  bool in_ccn1(int n) const { return n >= 1 && n <= ccn1; }
};

class OrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scalar function on the real line with exact derivatives.
///
/// Values are complex so that weighted families f u^p share the same type.
class TestFunction {
 public:
  using Evaluator = std::function<Complex(int order, double x)>;
  using FourierL1 = std::function<std::optional<double>(int order)>;

  TestFunction(std::string name, int max_order, Evaluator eval);

  const std::string& name() const { return name_; }
  int max_order() const { return max_order_; }

  Complex operator()(double x) const { return eval_(0, x); }
  Complex derivative(int k, double x) const;

  /// ||(f^(k))^||_1 with the transform normalised so that
  /// f^(k)(x) = \int e^{itx} (f^(k))^(t) dt; exact or a valid upper bound.
  std::optional<double> fourier_l1(int k) const;

  const std::optional<Interval>& support() const { return support_; }
  /// Points where some derivative up to max_order() fails to be smooth.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const ClassFlags& flags() const { return flags_; }
  bool real_valued() const { return real_valued_; }

  TestFunction& with_support(Interval s);
  TestFunction& with_breakpoints(std::vector<double> b);
  TestFunction& with_flags(ClassFlags f);
  TestFunction& with_fourier_l1(FourierL1 fn);
  TestFunction& with_real_valued(bool real);

 private:
  std::string name_;
  int max_order_;
  Evaluator eval_;
  FourierL1 fourier_l1_;
  std::optional<Interval> support_;
  std::vector<double> breakpoints_;
  ClassFlags flags_;
  bool real_valued_ = true;
};

/// f(x) = (z - x)^{-k}, Im z != 0.
TestFunction make_resolvent(Complex z, int k);

/// f(x) = exp(-((x - center)/width)^2).
TestFunction make_gaussian(double center, double width);

/// f(x) = (1 - ((x - center)/a)^2)^degree on [center - a, center + a], zero
/// outside; (degree - 1) times continuously differentiable.
TestFunction make_bump(double a, int degree, double center = 0.0);

/// Polynomial with complex coefficients c_0 + c_1 x + ...
TestFunction make_polynomial(std::vector<Complex> coefficients);

/// The weight u(x) = x - i.
TestFunction weight_u();

/// Product f u^p with derivatives from the Leibniz rule.
TestFunction weighted(const TestFunction& f, int p);

/// Numeric probe of the W_n conditions. Advisory; the analytic flag wins.
struct MembershipReport {
  int n = 0;
  bool vanishes_at_infinity = false;      // f in C_0 and f^(n) = o(|x|^{-n})
  bool weighted_integrable = false;       // f^(k) (1+|x|)^{k-1} integrable tails
  bool fourier_integrable = false;        // (f^(n))^ in L^1
  bool analytic_flag = false;
  bool numeric_pass() const {
    return vanishes_at_infinity && weighted_integrable && fourier_integrable;
  }
  bool member() const { return analytic_flag; }
};

MembershipReport check_membership_wn(const TestFunction& f, int n);

}  // namespace ssf
