#pragma once

// Extremal constants on Z_m by linear programming:
//   K_m(H)  = max |ψ(1)| over real positive definite ψ, ψ(0) = 1, supp ψ ⊆ H,
//   CF_m(H) = the same over complex ψ,
// the finite duality K_m(H)·K_m(H*) against H* = (Z_m \ H) ∪ {−1,0,1}, and a
// direct solver on arbitrary finite abelian groups used as an oracle.

#include <cstddef>
#include <vector>

#include "cfx/finite_group.hpp"
#include "cfx/report.hpp"
#include "cfx/seq_core.hpp"

namespace cfx {

inline constexpr double kDefaultTol = 1e-8;
inline constexpr std::size_t kOracleMaxOrder = 4096;

/// K_m(H). Solves max ψ(1) and max −ψ(1) and reports the larger optimum.
/// Throws std::invalid_argument for inadmissible H.
SolveReport k_m(const SupportZm& h, double tol = kDefaultTol,
                Formulation formulation = Formulation::Auto);

/// CF_m(H), through the direction sweep with symmetry angle 2π/m.
SolveReport cf_m(const SupportZm& h, double tol = kDefaultTol,
                 Formulation formulation = Formulation::Auto);

SolveReport solve_zm(const SupportZm& h, ValueMode mode, double tol = kDefaultTol,
                     Formulation formulation = Formulation::Auto);

/// The two signed optima max ψ(1) and max −ψ(1) over the real class.
struct SignedOptima {
  double plus = 0.0;
  double minus = 0.0;
};

SignedOptima k_m_signed(const SupportZm& h, Formulation formulation = Formulation::Auto);

/// (Z_m \ H) ∪ {−1, 0, 1}.
SupportZm dual_set_zm(const SupportZm& h);

struct DualityReportZm {
  SupportZm set;
  SupportZm dual;
  double k_set = 0.0;
  double k_dual = 0.0;
  double product = 0.0;
  /// max ψ(1) on H times max −ψ(1) on H*, and the reverse pairing.
  double signed_product = 0.0;
  double signed_product_reverse = 0.0;
  bool passed = false;
};

DualityReportZm verify_duality_zm(const SupportZm& h, double tol = kDefaultTol);

/// The extremal problem solved directly on a finite group G (|G| ≤ 4096)
/// over all characters. `omega` lists element indices of a symmetric set
/// containing 0 and ±z. Throws std::invalid_argument on violated
/// preconditions.
SolveReport brute_group_oracle(const FiniteAbelianGroup& g, const std::vector<std::size_t>& omega,
                               std::size_t z, ValueMode mode, double tol = kDefaultTol,
                               Formulation formulation = Formulation::Auto);

}  // namespace cfx
