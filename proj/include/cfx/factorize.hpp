#pragma once

// Fejér–Riesz factorization: θ with θ ⋆ θ̃ = ψ for positive definite ψ.

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cfx/poly_roots.hpp"
#include "cfx/seq_core.hpp"

namespace cfx {

enum class FactorMethod { Roots, Spectral };

std::string to_string(FactorMethod method);

struct Factorization {
  std::variant<SeqZ, SeqZm> theta;
  /// max |θ⋆θ̃ − ψ| over all indices.
  double residual = 0.0;
  FactorMethod method = FactorMethod::Roots;
};

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Factor supported in [0, N] when supp ψ ⊆ [−N, N], with θ(0) real positive.
/// Throws FactorizationError when ψ is not positive definite at `tol`, when the
/// roots cannot be paired, or when the residual exceeds `tol`.
Factorization fejer_riesz_z(const SeqZ& psi, double tol = kPdTol);

/// θ̂(ν) = m^{-1/2} √ψ̂(ν) e^{iφ_ν}. Spectral values in [−tol, 0) are clamped
/// to 0. `phases` may be empty (all zero) or of length m.
Factorization sqrt_zm(const SeqZm& psi, const std::vector<double>& phases = {},
                      double tol = kPdTol);

/// max |θ⋆θ̃ − ψ|.
double factor_residual(const SeqZ& theta, const SeqZ& psi);
double factor_residual(const SeqZm& theta, const SeqZm& psi);

}  // namespace cfx
