#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ssf/matrix_core.hpp"

namespace ssf {

enum class ModelKind { random, schrodinger1d, dirac1d, diagonal };

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

struct ModelSpec {
  ModelKind kind = ModelKind::random;
  int dim = 4;                      // matrix size, or grid points for the 1-D models
  double spacing = 1.0;             // grid spacing h
  double spectral_scale = 1.0;      // random: spectral radius of H
  double perturbation_norm = 0.5;   // random: target ||V (H - i)^{-1}||_q
  double schatten_index = 2.0;      // random: the q above
  std::vector<double> potential;    // grid models: v; diagonal: diagonal of V
  std::vector<double> spectrum;     // diagonal: diagonal of H
  double mass = 0.0;                // dirac
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ModelInstance {
  HermitianOperator H;
  Matrix V;
};

/// Standard normal samples from mt19937_64 by Box-Muller; identical on every
/// platform for a given seed.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}
  double next();
  double uniform();  // in [0, 1)
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// (A + A^*)/2 with i.i.d. complex Gaussian entries of A.
Matrix gaussian_hermitian(NormalSource& rng, Eigen::Index dim);

ModelInstance build_random(const ModelSpec& spec);

/// Periodic -Delta_h with the 3-point stencil.
Matrix periodic_laplacian(int points, double spacing);
/// Periodic central difference (f_{j+1} - f_{j-1}) / 2h.
Matrix periodic_central_difference(int points, double spacing);
/// e_0 = sigma_3, e_1 = sigma_1.
std::array<Matrix, 2> clifford_generators();

struct SchrodingerModel {
  ModelInstance instance;
  double p = 2.0;
  double relative_norm = 0.0;  // ||M_v (-Delta_h - i)^{-1}||_p
  double potential_norm = 0.0; // (sum |v_j|^p)^{1/p}
};

SchrodingerModel build_schrodinger_1d(const ModelSpec& spec, double p = 2.0);

/// D = e_0 (x) m I + e_1 (x) D_1 with D_1 = (1/i) central difference,
/// V = I_2 (x) diag(v).
ModelInstance build_dirac_1d(const ModelSpec& spec);

/// H = diag(spectrum), V = diag(potential).
ModelInstance build_diagonal(const ModelSpec& spec);

ModelInstance build_model(const ModelSpec& spec);

struct PerturbedResolventReport {
  double lhs = 0.0;  // ||V (H + W - i)^{-1}||_p
  double rhs = 0.0;  // ||V (H - i)^{-1}||_p (1 + ||W||)
  double margin() const { return rhs - lhs; }
  bool holds() const { return margin() >= -1e-12; }
};

PerturbedResolventReport perturbed_resolvent_check(const HermitianOperator& h,
                                                   const Matrix& v, const Matrix& w,
                                                   double p);

}  // namespace ssf
