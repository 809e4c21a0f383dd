#include "ssf/moi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssf {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Depth-first walk over eigen-index tuples (i_0, ..., i_n) accumulating
// prod_k Atilde_k(i_{k-1}, i_k) and the flat part-tuple index.
class TupleWalk {
 public:
  TupleWalk(const OperatorList& ops, std::span<const SpectralPartition> parts,
            std::span<const Matrix> perturbations)
      : n_(static_cast<int>(perturbations.size())), d_(ops.front()->dim()) {
    if (ops.size() != perturbations.size() + 1 || parts.size() != ops.size()) {
      throw DimensionError("multiple operator integral needs n + 1 operators for n perturbations");
    }
    for (const auto* op : ops) {
      if (op->dim() != d_) throw DimensionError("operators differ in dimension");
    }
    for (std::size_t k = 0; k < perturbations.size(); ++k) {
      require_operator(perturbations[k], d_, "perturbation");
      tilde_.push_back(ops[k]->eigenvectors().adjoint() * perturbations[k] *
                       ops[k + 1]->eigenvectors());
    }
    extents_.resize(parts.size());
    stride_.assign(parts.size(), 1);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      extents_[k] = parts[k].values.size();
      part_of_.push_back(&parts[k].part_of_index);
    }
    for (std::size_t k = parts.size() - 1; k-- > 0;) {
      stride_[k] = stride_[k + 1] * extents_[k + 1];
    }
  }

  std::size_t tensor_size() const {
    std::size_t s = 1;
    for (auto e : extents_) s *= e;
    return s;
  }
  const std::vector<std::size_t>& extents() const { return extents_; }

  // leaf(i_0, i_n, flat, product)
  template <typename Leaf>
  void run(Leaf&& leaf) const {
    for (Eigen::Index a = 0; a < d_; ++a) {
      const int pa = (*part_of_[0])[static_cast<std::size_t>(a)];
      if (pa < 0) continue;
      const std::size_t flat = static_cast<std::size_t>(pa) * stride_[0];
      if (n_ == 0) {
        leaf(a, a, flat, Complex(1.0));
      } else {
        descend(1, a, a, flat, Complex(1.0), leaf);
      }
    }
  }

 private:
  template <typename Leaf>
  void descend(int level, Eigen::Index first, Eigen::Index prev, std::size_t flat,
               Complex prod, Leaf& leaf) const {
    const auto lk = static_cast<std::size_t>(level);
    const Matrix& a = tilde_[lk - 1];
    const auto& parts = *part_of_[lk];
    for (Eigen::Index i = 0; i < d_; ++i) {
      const int pi = parts[static_cast<std::size_t>(i)];
      if (pi < 0) continue;
      const Complex v = a(prev, i);
      if (v == Complex(0.0)) continue;
      const std::size_t f = flat + static_cast<std::size_t>(pi) * stride_[lk];
      if (level == n_) {
        leaf(first, i, f, prod * v);
      } else {
        descend(level + 1, first, i, f, prod * v, leaf);
      }
    }
  }

  int n_;
  Eigen::Index d_;
  std::vector<Matrix> tilde_;
  std::vector<const std::vector<int>*> part_of_;
  std::vector<std::size_t> extents_;
  std::vector<std::size_t> stride_;
};

}  // namespace

SpectralPartition spectral_groups(const HermitianOperator& h) {
  SpectralPartition p;
  for (const auto& g : h.groups()) p.values.push_back(g.value);
  p.part_of_index = h.group_of_index();
  return p;
}

SpectralPartition spectral_bins(const HermitianOperator& h, int m, int cutoff,
                                double offset, bool& truncated) {
  if (m < 1 || cutoff < 1) throw std::invalid_argument("grid density and cutoff must be positive");
  SpectralPartition p;
  std::vector<long> labels;
  p.part_of_index.assign(static_cast<std::size_t>(h.dim()), -1);
  for (Eigen::Index i = 0; i < h.dim(); ++i) {
    const long l = static_cast<long>(std::floor(h.eigenvalues()(i) * m + offset));
    if (std::abs(l) >= cutoff) {
      truncated = true;
      continue;
    }
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) {
      labels.push_back(l);
      p.values.push_back(static_cast<double>(l) / m);
      it = labels.end() - 1;
    }
    p.part_of_index[static_cast<std::size_t>(i)] =
        static_cast<int>(std::distance(labels.begin(), it));
  }
  if (p.values.empty()) {
    // keep a dummy part so tensor extents stay non-zero
    p.values.push_back(0.0);
  }
  return p;
}

Matrix contract(const OperatorList& ops, std::span<const SpectralPartition> parts,
                std::span<const Matrix> perturbations, const TupleSymbol& phi) {
  const TupleWalk walk(ops, parts, perturbations);
  const auto& extents = walk.extents();
  const std::size_t slots = extents.size();

  std::vector<Complex> symbol(walk.tensor_size());
  std::vector<double> tags(slots);
  std::vector<std::size_t> idx(slots, 0);
  for (std::size_t flat = 0; flat < symbol.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = slots; k-- > 0;) {
      idx[k] = rem % extents[k];
      rem /= extents[k];
      tags[k] = parts[k].values[idx[k]];
    }
    symbol[flat] = phi(tags);
  }

  const Eigen::Index d = ops.front()->dim();
  Matrix inner = Matrix::Zero(d, d);
  walk.run([&](Eigen::Index a, Eigen::Index b, std::size_t flat, Complex prod) {
    inner(a, b) += symbol[flat] * prod;
  });
  return ops.front()->eigenvectors() * inner * ops.back()->eigenvectors().adjoint();
}

void TraceCoefficients::for_each(
    const std::function<void(std::span<const double>, Complex)>& fn) const {
  std::vector<double> tags(slots());
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    if (data[flat] == Complex(0.0)) continue;
    std::size_t rem = flat;
    for (std::size_t k = slots(); k-- > 0;) {
      tags[k] = values[k][rem % extents[k]];
      rem /= extents[k];
    }
    fn(tags, data[flat]);
  }
}

TraceCoefficients trace_coefficients(const OperatorList& ops,
                                     std::span<const SpectralPartition> parts,
                                     std::span<const Matrix> perturbations) {
  const TupleWalk walk(ops, parts, perturbations);
  TraceCoefficients out;
  out.extents = walk.extents();
  for (const auto& p : parts) out.values.push_back(p.values);
  out.data.assign(walk.tensor_size(), 0.0);
  // Tr(U_0 X U_n^*) = sum_{a,b} X(a,b) (U_n^* U_0)(b,a)
  const Matrix closing = ops.back()->eigenvectors().adjoint() * ops.front()->eigenvectors();
  walk.run([&](Eigen::Index a, Eigen::Index b, std::size_t flat, Complex prod) {
    out.data[flat] += prod * closing(b, a);
  });
  return out;
}

Matrix multiple_operator_integral(const OperatorList& ops,
                                  std::span<const Matrix> perturbations,
                                  const TestFunction& f) {
  std::vector<SpectralPartition> parts;
  parts.reserve(ops.size());
  for (const auto* op : ops) parts.push_back(spectral_groups(*op));
  return contract(ops, parts, perturbations,
                  [&f](std::span<const double> tags) { return divided_difference(f, tags); });
}

OperatorList MoiProblem::operator_list() const {
  OperatorList out;
  for (const auto& op : operators) out.push_back(&op);
  return out;
}

void MoiProblem::validate() const {
  if (operators.size() != perturbations.size() + 1) {
    std::ostringstream os;
    os << "MOI problem needs n + 1 operators for n perturbations (got "
       << operators.size() << " and " << perturbations.size() << ")";
    throw DimensionError(os.str());
  }
  for (const auto& op : operators) {
    if (op.dim() != dim()) throw DimensionError("MOI operators differ in dimension");
  }
  for (const auto& v : perturbations) require_operator(v, dim(), "MOI perturbation");
}

Matrix moi_eigensum(const MoiProblem& p) {
  p.validate();
  return multiple_operator_integral(p.operator_list(), p.perturbations, p.symbol);
}

DiscretizedMoi moi_discretized(const MoiProblem& p, int m, int cutoff, double offset) {
  p.validate();
  DiscretizedMoi out;
  std::vector<SpectralPartition> parts;
  for (const auto& op : p.operators) {
    parts.push_back(spectral_bins(op, m, cutoff, offset, out.truncated));
  }
  out.value = contract(p.operator_list(), parts, p.perturbations,
                       [&](std::span<const double> tags) {
                         return divided_difference(p.symbol, tags);
                       });
  return out;
}

double combined_exponent(std::span<const double> alphas) {
  double inv = 0.0;
  for (double a : alphas) {
    if (!(a >= 1.0)) throw std::invalid_argument("Schatten exponents must be >= 1");
    inv += 1.0 / a;
  }
  if (inv > 1.0 + 1e-12) {
    throw std::invalid_argument("exponents must satisfy sum 1/alpha_j <= 1");
  }
  return inv == 0.0 ? kInfinity : 1.0 / std::min(inv, 1.0);
}

namespace {

double perturbation_product(const MoiProblem& p, std::span<const double> alphas) {
  double prod = 1.0;
  for (std::size_t j = 0; j < p.perturbations.size(); ++j) {
    prod *= schatten_norm(p.perturbations[j], alphas[j]);
  }
  return prod;
}

double sup_derivative_on_hull(const MoiProblem& p) {
  const int n = p.order();
  double lo = kInfinity, hi = -kInfinity;
  std::vector<double> points;
  for (const auto& op : p.operators) {
    for (Eigen::Index i = 0; i < op.dim(); ++i) {
      const double x = op.eigenvalues()(i);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      points.push_back(x);
    }
  }
  constexpr int kSamples = 4000;
  for (int i = 0; i <= kSamples; ++i) points.push_back(lo + (hi - lo) * i / kSamples);
  for (double b : p.symbol.breakpoints()) {
    if (b >= lo && b <= hi) points.push_back(b);
  }
  double sup = 0.0;
  for (double x : points) sup = std::max(sup, std::abs(p.symbol.derivative(n, x)));
  return sup;
}

}  // namespace

SchattenBoundReport schatten_bound_check(const MoiProblem& p,
                                         std::span<const double> alphas) {
  p.validate();
  if (alphas.size() != p.perturbations.size()) {
    throw std::invalid_argument("one exponent per perturbation required");
  }
  for (double a : alphas) {
    if (!(a > 1.0) || std::isinf(a)) {
      throw std::invalid_argument("Schatten bound needs exponents in (1, oo)");
    }
  }
  SchattenBoundReport r;
  r.alpha = combined_exponent(alphas);
  r.moi_norm = schatten_norm(moi_eigensum(p), r.alpha);
  r.sup_derivative = sup_derivative_on_hull(p);
  r.perturbation_product = perturbation_product(p, alphas);
  const double denom = r.sup_derivative * r.perturbation_product;
  r.ratio = denom > 0.0 ? r.moi_norm / denom : 0.0;
  return r;
}

FourierBoundReport fourier_bound_check(const MoiProblem& p,
                                       std::span<const double> alphas) {
  p.validate();
  if (alphas.size() != p.perturbations.size()) {
    throw std::invalid_argument("one exponent per perturbation required");
  }
  const int n = p.order();
  const auto l1 = p.symbol.fourier_l1(n);
  if (!l1) {
    throw MissingFourierData(p.symbol.name() + ": no Fourier L1 data for the symbol");
  }
  FourierBoundReport r;
  r.alpha = combined_exponent(alphas);
  r.moi_norm = schatten_norm(moi_eigensum(p), r.alpha);
  r.bound = *l1 / factorial(n) * perturbation_product(p, alphas);
  r.margin = r.bound - r.moi_norm;
  return r;
}

}  // namespace ssf
