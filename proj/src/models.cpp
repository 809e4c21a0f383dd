#include "ssf/models.hpp"

#include <cmath>
#include <numbers>

namespace ssf {

ModelKind parse_model_kind(const std::string& name) {
  if (name == "random") return ModelKind::random;
  if (name == "schrodinger1d") return ModelKind::schrodinger1d;
  if (name == "dirac1d") return ModelKind::dirac1d;
  if (name == "diagonal") return ModelKind::diagonal;
  throw std::invalid_argument("unknown model kind '" + name + "'");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::random: return "random";
    case ModelKind::schrodinger1d: return "schrodinger1d";
    case ModelKind::dirac1d: return "dirac1d";
    case ModelKind::diagonal: return "diagonal";
  }
  return "random";
}

void ModelSpec::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("model." + field + ": " + why);
  };
  switch (kind) {
    case ModelKind::random:
      if (dim < 1) fail("dim", "must be >= 1");
      if (!(spectral_scale >= 0.0)) fail("spectral_scale", "must be >= 0");
      if (!(perturbation_norm >= 0.0)) fail("perturbation_norm", "must be >= 0");
      if (!(schatten_index >= 1.0)) fail("schatten_index", "must be >= 1");
      break;
    case ModelKind::schrodinger1d:
    case ModelKind::dirac1d:
      if (dim < 2) fail("dim", "grid needs at least 2 points");
      if (!(spacing > 0.0)) fail("spacing", "must be positive");
      if (!potential.empty() && potential.size() != static_cast<std::size_t>(dim)) {
        fail("potential", "length must equal the grid size");
      }
      if (kind == ModelKind::dirac1d && !(mass >= 0.0)) fail("mass", "must be >= 0");
      break;
    case ModelKind::diagonal:
      if (spectrum.empty()) fail("spectrum", "must not be empty");
      if (potential.size() != spectrum.size()) {
        fail("potential", "length must equal the spectrum length");
      }
      break;
  }
}

double NormalSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Matrix gaussian_hermitian(NormalSource& rng, Eigen::Index dim) {
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.next();
      a(i, j) = Complex(re, rng.next());
    }
  }
  return 0.5 * (a + a.adjoint());
}

ModelInstance build_random(const ModelSpec& spec) {
  spec.validate();
  NormalSource rng(spec.seed);
  Matrix h = gaussian_hermitian(rng, spec.dim);
  const double radius = schatten_norm(h, kInfinity);
  if (radius > 0.0) h *= spec.spectral_scale / radius;
  ModelInstance out{HermitianOperator(h), gaussian_hermitian(rng, spec.dim)};
  const double current =
      schatten_norm(weighted_perturbation(out.V, out.H), spec.schatten_index);
  if (current > 0.0) out.V *= spec.perturbation_norm / current;
  return out;
}

Matrix periodic_laplacian(int points, double spacing) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  const double s = 1.0 / (spacing * spacing);
  Matrix m = Matrix::Zero(points, points);
  for (int j = 0; j < points; ++j) {
    m(j, j) += 2.0 * s;
    m(j, (j + 1) % points) -= s;
    m(j, (j + points - 1) % points) -= s;
  }
  return m;
}

Matrix periodic_central_difference(int points, double spacing) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  const double s = 0.5 / spacing;
  Matrix m = Matrix::Zero(points, points);
  for (int j = 0; j < points; ++j) {
    m(j, (j + 1) % points) += s;
    m(j, (j + points - 1) % points) -= s;
  }
  return m;
}

std::array<Matrix, 2> clifford_generators() {
  Matrix e0(2, 2), e1(2, 2);
  e0 << 1.0, 0.0, 0.0, -1.0;
  e1 << 0.0, 1.0, 1.0, 0.0;
  return {e0, e1};
}

namespace {

Matrix potential_matrix(const ModelSpec& spec) {
  Matrix v = Matrix::Zero(spec.dim, spec.dim);
  for (std::size_t j = 0; j < spec.potential.size(); ++j) {
    v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = spec.potential[j];
  }
  return v;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

SchrodingerModel build_schrodinger_1d(const ModelSpec& spec, double p) {
  spec.validate();
  if (spec.kind != ModelKind::schrodinger1d) {
    throw std::invalid_argument("model.kind: expected schrodinger1d");
  }
  SchrodingerModel out;
  out.p = p;
  out.instance = {HermitianOperator(periodic_laplacian(spec.dim, spec.spacing)),
                  potential_matrix(spec)};
  out.relative_norm = schatten_norm(weighted_perturbation(out.instance.V, out.instance.H), p);
  double sum = 0.0;
  for (double v : spec.potential) sum += std::pow(std::abs(v), p);
  out.potential_norm = std::pow(sum, 1.0 / p);
  return out;
}

ModelInstance build_dirac_1d(const ModelSpec& spec) {
  spec.validate();
  if (spec.kind != ModelKind::dirac1d) throw std::invalid_argument("model.kind: expected dirac1d");
  const auto [e0, e1] = clifford_generators();
  const Matrix d1 =
      periodic_central_difference(spec.dim, spec.spacing) / Complex(0.0, 1.0);
  const Matrix id = Matrix::Identity(spec.dim, spec.dim);
  const Matrix d = kron(e0, spec.mass * id) + kron(e1, d1);
  return {HermitianOperator(d), kron(Matrix::Identity(2, 2), potential_matrix(spec))};
}

ModelInstance build_diagonal(const ModelSpec& spec) {
  spec.validate();
  const auto d = static_cast<Eigen::Index>(spec.spectrum.size());
  Matrix h = Matrix::Zero(d, d);
  Matrix v = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    h(i, i) = spec.spectrum[static_cast<std::size_t>(i)];
    v(i, i) = spec.potential[static_cast<std::size_t>(i)];
  }
  return {HermitianOperator(h), v};
}

ModelInstance build_model(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::random: return build_random(spec);
    case ModelKind::schrodinger1d: return build_schrodinger_1d(spec).instance;
    case ModelKind::dirac1d: return build_dirac_1d(spec);
    case ModelKind::diagonal: return build_diagonal(spec);
  }
  throw std::invalid_argument("model.kind: unsupported");
}

PerturbedResolventReport perturbed_resolvent_check(const HermitianOperator& h,
                                                   const Matrix& v, const Matrix& w,
                                                   double p) {
  require_operator(v, h.dim(), "V");
  require_operator(w, h.dim(), "W");
  const HermitianOperator hw(h.entries() + w);
  PerturbedResolventReport r;
  r.lhs = schatten_norm(weighted_perturbation(v, hw), p);
  r.rhs = schatten_norm(weighted_perturbation(v, h), p) * (1.0 + schatten_norm(w, kInfinity));
  return r;
}

}  // namespace ssf
