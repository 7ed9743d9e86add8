#pragma once

// Result record shared by the extremal-constant solvers.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cfx/finite_group.hpp"
#include "cfx/seq_core.hpp"

namespace cfx {

enum class ValueMode { Real, Complex };

std::string to_string(ValueMode mode);

/// Which LP parametrization a finite solve used.
enum class Formulation {
  Auto,
  /// Spectral values ψ̂(ν) ≥ 0 as variables, support conditions as equalities.
  Fourier,
  /// Coefficients ψ(k), k ∈ H, as free variables, ψ̂(ν) ≥ 0 as rows.
  Coefficient,
};

std::string to_string(Formulation f);

using Extremal = std::variant<SeqZ, SeqZm, GroupFunction>;

struct SolveMeta {
  int iterations = 0;
  int lp_solves = 0;
  double seconds = 0.0;
  std::string formulation;
  /// Set when a method stopped on its iteration cap before converging.
  bool converged = true;
};

struct SolveReport {
  double value = 0.0;
  Extremal extremal;
  PdCertificate certificate;
  /// Certified interval [lower, upper] containing the true constant.
  double lower = 0.0;
  double upper = 0.0;
  SolveMeta meta;
  /// (m, K_m) pairs from the discretization cross-check, when run.
  std::vector<std::pair<long long, double>> grid_sequence;
};

}  // namespace cfx
