#include "ssf/taylor.hpp"

#include <map>
#include <mutex>

namespace ssf {

namespace {

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

Matrix moi(const std::vector<const HermitianOperator*>& ops,
           const std::vector<Matrix>& perts, const TestFunction& f) {
  return multiple_operator_integral(ops, perts, f);
}

void check_slot(int j, int n) {
  if (j < 0 || j > n) {
    throw std::out_of_range("weight slot " + std::to_string(j) + " outside 0.." +
                            std::to_string(n));
  }
}

}  // namespace

void RemainderProblem::validate() const {
  if (n < 1) throw std::invalid_argument("remainder order must be >= 1");
  require_operator(V, H.dim(), "perturbation");
  const double res = hermitian_residual(V);
  if (res > std::max(1e-12 * V.cwiseAbs().maxCoeff(), kAbsoluteFloor)) {
    throw NonHermitianError(res);
  }
  if (f.max_order() < n) {
    throw OrderError(f.name() + " has too few derivatives for order " + std::to_string(n));
  }
}

HermitianOperator RemainderProblem::perturbed() const {
  return HermitianOperator(H.entries() + V);
}

Matrix gateaux_derivative(const HermitianOperator& h, const Matrix& v,
                          const TestFunction& f, int k) {
  if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
  require_operator(v, h.dim(), "perturbation");
  OperatorList ops(static_cast<std::size_t>(k + 1), &h);
  std::vector<Matrix> perts(static_cast<std::size_t>(k), v);
  return multiple_operator_integral(ops, perts, f);
}

Matrix remainder_direct(const RemainderProblem& p) {
  p.validate();
  const HermitianOperator hv = p.perturbed();
  Matrix r = apply_function(hv, p.f) - apply_function(p.H, p.f);
  for (int k = 1; k < p.n; ++k) r -= gateaux_derivative(p.H, p.V, p.f, k);
  return r;
}

Matrix remainder_moi(const RemainderProblem& p) {
  p.validate();
  const HermitianOperator hv = p.perturbed();
  OperatorList ops(static_cast<std::size_t>(p.n + 1), &p.H);
  ops[0] = &hv;
  std::vector<Matrix> perts(static_cast<std::size_t>(p.n), p.V);
  return multiple_operator_integral(ops, perts, p.f);
}

IdentityCheck add_one_weight(const MoiProblem& p, int j) {
  p.validate();
  const int n = p.order();
  if (n < 1) throw std::invalid_argument("adding a weight needs n >= 1");
  check_slot(j, n);
  const auto ops = p.operator_list();
  const auto ju = static_cast<std::size_t>(j);
  const Matrix weight = p.operators[ju].resolvent(Complex(0.0, 1.0));  // (H_j - i)^{-1}
  const TestFunction fu = weighted(p.symbol, 1);

  IdentityCheck out;
  out.lhs = moi_eigensum(p);

  std::vector<const HermitianOperator*> short_ops;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (k != ju) short_ops.push_back(ops[k]);
  }

  if (j == 0) {
    Matrix second = moi(short_ops,
                        std::vector<Matrix>(p.perturbations.begin() + 1, p.perturbations.end()),
                        p.symbol);
    out.rhs = weight * moi(ops, p.perturbations, fu) - weight * p.perturbations[0] * second;
    return out;
  }

  std::vector<Matrix> first = p.perturbations;
  first[ju - 1] = p.perturbations[ju - 1] * weight;
  out.rhs = moi(ops, first, fu);

  if (j == n) {
    std::vector<Matrix> rest(p.perturbations.begin(), p.perturbations.end() - 1);
    out.rhs -= moi(short_ops, rest, p.symbol) * first[ju - 1];
  } else {
    std::vector<Matrix> rest;
    for (std::size_t k = 0; k < p.perturbations.size(); ++k) {
      if (k == ju - 1) continue;
      rest.push_back(k == ju ? Matrix(first[ju - 1] * p.perturbations[ju]) : p.perturbations[k]);
    }
    out.rhs -= moi(short_ops, rest, p.symbol);
  }
  return out;
}

WeightExpansion full_weight_expansion(const MoiProblem& p) {
  p.validate();
  const int n = p.order();
  const Eigen::Index d = p.dim();
  const auto ops = p.operator_list();

  // tilde[j] = Vt_j for j = 1..n
  std::vector<Matrix> tilde(static_cast<std::size_t>(n + 1));
  for (int j = 1; j <= n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    tilde[ju] = weighted_perturbation(p.perturbations[ju - 1], p.operators[ju]);
  }
  auto span_product = [&](int from, int to) {  // Vt_{from,to}
    Matrix m = identity(d);
    for (int k = from + 1; k <= to; ++k) m = m * tilde[static_cast<std::size_t>(k)];
    return m;
  };

  WeightExpansion out;
  out.direct = moi_eigensum(p);
  out.sum = Matrix::Zero(d, d);
  std::vector<TestFunction> symbols;
  for (int q = 0; q <= n; ++q) symbols.push_back(weighted(p.symbol, q));

  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int j = 1; j <= n; ++j) {
      if (mask & (1u << (j - 1))) subset.push_back(j);
    }
    const int q = static_cast<int>(subset.size());
    std::vector<const HermitianOperator*> term_ops{ops[0]};
    std::vector<Matrix> perts;
    int prev = 0;
    for (int j : subset) {
      term_ops.push_back(ops[static_cast<std::size_t>(j)]);
      perts.push_back(span_product(prev, j));
      prev = j;
    }
    const double sign = ((n - q) % 2 == 0) ? 1.0 : -1.0;
    Matrix term = sign * moi(term_ops, perts, symbols[static_cast<std::size_t>(q)]) *
                  span_product(prev, n);
    out.sum += term;
    out.subsets.push_back(std::move(subset));
    out.terms.push_back(std::move(term));
  }
  return out;
}

WeightExpansion full_weight_expansion(const RemainderProblem& p) {
  p.validate();
  MoiProblem m{{}, {}, p.f};
  m.operators.push_back(p.perturbed());
  for (int k = 0; k < p.n; ++k) {
    m.operators.push_back(p.H);
    m.perturbations.push_back(p.V);
  }
  return full_weight_expansion(m);
}

const std::vector<std::vector<int>>& weight_compositions(int total, int parts) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  if (total < 0 || parts < 0) throw std::invalid_argument("negative composition size");
  const std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({total, parts});
  if (!inserted) return it->second;

  auto& out = it->second;
  std::vector<int> current;
  auto recurse = [&](auto&& self, int left, int slot) -> void {
    if (slot == parts) {
      current.push_back(left);
      out.push_back(current);
      current.pop_back();
      return;
    }
    for (int j = 1; j <= left; ++j) {
      current.push_back(j);
      self(self, left - j, slot + 1);
      current.pop_back();
    }
  };
  recurse(recurse, total, 0);
  return out;
}

std::vector<Matrix> remainder_decomposition(const RemainderProblem& p) {
  p.validate();
  const int n = p.n;
  const Eigen::Index d = p.H.dim();
  const HermitianOperator hv = p.perturbed();
  const Matrix vt = weighted_perturbation(p.V, p.H);

  std::vector<Matrix> powers{identity(d)};
  for (int k = 1; k < n; ++k) powers.push_back(powers.back() * vt);
  auto power = [&](int k) -> const Matrix& { return powers[static_cast<std::size_t>(k)]; };

  std::vector<Matrix> out;
  out.push_back((apply_function(hv, p.f) - apply_function(p.H, p.f)) * power(n - 1));

  for (int q = 1; q < n; ++q) {
    const TestFunction g = weighted(p.f, q);
    Matrix acc = Matrix::Zero(d, d);
    for (const auto& comp : weight_compositions(n - 1, q)) {
      std::vector<Matrix> perts;
      for (int k = 0; k < q; ++k) perts.push_back(power(comp[static_cast<std::size_t>(k)]));
      OperatorList shifted(static_cast<std::size_t>(q + 1), &p.H);
      shifted[0] = &hv;
      const OperatorList plain(static_cast<std::size_t>(q + 1), &p.H);
      const Matrix& tail = power(comp.back());
      acc += (moi(shifted, perts, g) - moi(plain, perts, g)) * tail;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

Matrix recombine(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty decomposition");
  const int n = static_cast<int>(parts.size());
  Matrix r = Matrix::Zero(parts.front().rows(), parts.front().cols());
  for (int q = 0; q < n; ++q) {
    const double sign = ((n - 1 - q) % 2 == 0) ? 1.0 : -1.0;
    r += sign * parts[static_cast<std::size_t>(q)];
  }
  return r;
}

IdentityCheck perturbation_identity(const std::vector<HermitianOperator>& ops,
                                    const Matrix& v0, const std::vector<Matrix>& v,
                                    const TestFunction& f) {
  if (ops.size() != v.size() + 1) {
    throw DimensionError("perturbation identity needs k + 1 operators for k perturbations");
  }
  const HermitianOperator shifted(ops[0].entries() + v0);
  OperatorList base;
  for (const auto& h : ops) base.push_back(&h);
  OperatorList moved = base;
  moved[0] = &shifted;

  IdentityCheck out;
  out.lhs = moi(moved, v, f) - moi(base, v, f);

  OperatorList longer{&shifted};
  longer.insert(longer.end(), base.begin(), base.end());
  std::vector<Matrix> perts{v0};
  perts.insert(perts.end(), v.begin(), v.end());
  out.rhs = moi(longer, perts, f);
  return out;
}

}  // namespace ssf
