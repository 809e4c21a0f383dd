#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "ssf/matrix_core.hpp"

namespace ssf {

struct QuadratureResult {
  Complex value = 0.0;
  double error = 0.0;      // estimated absolute error
  int evaluations = 0;
  bool converged = true;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_error() const { return achieved_; }

 private:
  double achieved_;
};

struct QuadratureOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  int max_subdivisions = 4000;
};

using ScalarIntegrand = std::function<Complex(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Never throws; check
/// `converged`.
QuadratureResult integrate(const ScalarIntegrand& f, double a, double b,
                           const QuadratureOptions& options = {});

/// Same, split at the sorted `breaks` that fall inside (a, b).
QuadratureResult integrate(const ScalarIntegrand& f, double a, double b,
                           std::span<const double> breaks,
                           const QuadratureOptions& options = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace ssf
