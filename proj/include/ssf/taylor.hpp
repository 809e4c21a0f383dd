#pragma once

#include <vector>

#include "ssf/moi.hpp"

namespace ssf {

/// f(H + V) expanded around H to order n.
struct RemainderProblem {
  HermitianOperator H;
  Matrix V;
  TestFunction f;
  int n = 1;

  /// Throws unless V is Hermitian of matching size, n >= 1 and f has order n + 1.
  void validate() const;
  HermitianOperator perturbed() const;
};

/// (1/k!) d^k/dt^k f(H + tV) at t = 0, as T^{H,...,H}_{f^[k]}(V,...,V).
Matrix gateaux_derivative(const HermitianOperator& h, const Matrix& v,
                          const TestFunction& f, int k);

/// f(H + V) - f(H) - sum_{k=1}^{n-1} (1/k!) d^k/dt^k f(H + tV)|_0.
Matrix remainder_direct(const RemainderProblem& p);

/// T^{H+V,H,...,H}_{f^[n]}(V,...,V).
Matrix remainder_moi(const RemainderProblem& p);

struct IdentityCheck {
  Matrix lhs;
  Matrix rhs;
  double residual() const { return (lhs - rhs).norm(); }
};

/// Moves one resolvent weight into slot j in {0, ..., n}. The perturbation
/// list is padded with V_0 = V_{n+1} = I, so slot 0 puts (H_0 - i)^{-1} on
/// the left and slot n leaves V_n (H_n - i)^{-1} as a right factor.
IdentityCheck add_one_weight(const MoiProblem& p, int j);

struct WeightExpansion {
  std::vector<std::vector<int>> subsets;  // 0 < j_1 < ... < j_p <= n
  std::vector<Matrix> terms;              // signed
  Matrix sum;
  Matrix direct;                          // T_{f^[n]}(V_1, ..., V_n)
  double residual() const { return (sum - direct).norm(); }
};

/// All 2^n signed terms T^{H_0,H_{j_1},...}_{(fu^p)^[p]}(Vt_{0,j_1}, ...) Vt_{j_p,n}
/// with Vt_{j,l} = Vt_{j+1} ... Vt_l and Vt_j = V_j (H_j - i)^{-1}.
WeightExpansion full_weight_expansion(const MoiProblem& p);

/// The same for T^{H+V,H,...,H}_{f^[n]}(V,...,V).
WeightExpansion full_weight_expansion(const RemainderProblem& p);

/// Compositions (j_1, ..., j_{parts+1}) of `total` with j_1..j_parts >= 1 and
/// the last entry >= 0, lexicographic. Cached.
const std::vector<std::vector<int>>& weight_compositions(int total, int parts);

/// Rt^0, ..., Rt^{n-1}; the remainder is sum_p (-1)^{n-1-p} Rt^p.
std::vector<Matrix> remainder_decomposition(const RemainderProblem& p);

/// Alternating sum of remainder_decomposition.
Matrix recombine(const std::vector<Matrix>& parts);

/// T^{H_0+V_0,H_1,...}_{f^[k]}(V_1..V_k) - T^{H_0,...}_{f^[k]}(V_1..V_k) against
/// T^{H_0+V_0,H_0,H_1,...}_{f^[k+1]}(V_0, V_1, ..., V_k). `ops` holds H_0..H_k.
IdentityCheck perturbation_identity(const std::vector<HermitianOperator>& ops,
                                    const Matrix& v0, const std::vector<Matrix>& v,
                                    const TestFunction& f);

}  // namespace ssf
