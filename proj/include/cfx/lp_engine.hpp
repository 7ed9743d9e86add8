#pragma once

// Dense simplex solver and the direction sweep used to maximize the modulus
// of a complex linear functional over a polytope.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cfx {

enum class RowKind { LessEqual, Equal };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus status);

/// maximize objective·x  subject to  A x (≤ | =) rhs,  x_j ≥ 0 or free.
struct LinearProgram {
  std::vector<double> objective;
  Eigen::MatrixXd constraints;
  std::vector<double> rhs;
  std::vector<RowKind> row_kinds;
  /// true marks a variable with lower bound −∞; default is x_j ≥ 0.
  std::vector<bool> free_variable;

  LinearProgram() = default;
  LinearProgram(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return static_cast<std::size_t>(constraints.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(constraints.cols()); }

  /// Throws std::invalid_argument on inconsistent sizes or non-finite data.
  void validate() const;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> point;
  /// Row multipliers y with A^T y ≥ c (= c on free columns), y ≥ 0 on ≤ rows.
  std::vector<double> duals;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int pivots = 0;
  /// Structural columns in the final basis (for solve_lp_via_dual: the rows
  /// of the original program whose multipliers are basic).
  std::vector<std::size_t> basis;

  bool optimal() const { return status == LpStatus::Optimal; }
};

/// `warm_basis`, when given, lists structural columns (one per row) to start
/// phase 2 from; an unusable basis falls back to the cold start.
LpSolution solve_lp(const LinearProgram& lp, const std::vector<std::size_t>* warm_basis = nullptr);

/// Solves max c·x s.t. A x ≤ b with every x_j free through its dual
/// min b·y s.t. A^T y = c, y ≥ 0. Tall programs (many rows, few columns)
/// become short ones; the primal point is read off the dual multipliers.
/// `warm_rows` plays the role of solve_lp's warm basis for the dual program,
/// e.g. the `basis` of a previous solve after appending rows.
LpSolution solve_lp_via_dual(const LinearProgram& lp,
                             const std::vector<std::size_t>* warm_rows = nullptr);

/// One directional solve: value h(θ) of the support function and the value
/// of the complex functional at the maximizer.
struct DirectionalResult {
  LpStatus status = LpStatus::Optimal;
  double support = 0.0;
  std::complex<double> functional{};
  std::vector<double> point;
};

using DirectionalOracle = std::function<DirectionalResult(double theta)>;

struct ModulusResult {
  double value = 0.0;
  /// Largest modulus in the polygon circumscribed by all sampled
  /// supporting lines; a certified upper bound on the true maximum.
  double upper_bound = 0.0;
  double theta = 0.0;
  std::complex<double> functional{};
  std::vector<double> point;
  int lp_solves = 0;
};

inline constexpr int kModulusGrid = 16;
inline constexpr double kModulusThetaTol = 1e-10;
inline constexpr double kModulusCertifyTol = 1e-11;
inline constexpr int kModulusCertifyBudget = 400;

/// Maximizes |ℓ(x)| over the feasible set by sweeping the direction θ over
/// [0, symmetry_angle): a 16-point grid, then probes toward the vertices of
/// the circumscribed polygon until the upper bound is within
/// kModulusCertifyTol.
/// symmetry_angle must be a rotation angle under which the attainable set
/// of ℓ-values is invariant (2π always is). Throws std::runtime_error when a
/// directional LP is not optimal.
ModulusResult max_modulus(const DirectionalOracle& oracle, double symmetry_angle);

/// Convenience form: `base` supplies the constraints, ℓ = ell_re·x + i ell_im·x.
ModulusResult max_modulus(const LinearProgram& base, std::span<const double> ell_re,
                          std::span<const double> ell_im, double symmetry_angle);

}  // namespace cfx
