#pragma once

// The constant CF(H) = K(H) on Z for finite symmetric H:
//   max ψ(1) over real even ψ with ψ(0) = 1, supp ψ ⊆ H and
//   T(t) = 1 + 2 Σ_{k>0} ψ(k) cos(2πkt) ≥ 0 on [0,1).
// Solved by an exchange (cutting-plane) method and cross-checked against
// the grid relaxations K_m, m = m_0·2^j, which decrease to the same limit.
// Also the classical values M([0,n]) = 2·CF([−n,n]), the duality against
// H* = (N \ H) ∪ {−1,0,1}, the sparse family and the search for Λ(n).

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cfx/report.hpp"
#include "cfx/seq_core.hpp"

namespace cfx {

inline constexpr int kExchangeMaxRounds = 200;
inline constexpr double kExchangeDedup = 1e-12;
inline constexpr long long kGridMaxModulus = 1LL << 22;
inline constexpr long long kLambdaBudget = 100000;

/// Raised when the exchange and grid values disagree beyond 10·tol.
class SolverDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Working state of the exchange method.
struct ExchangeState {
  /// Sorted points of [0, ½] (evenness folds [½, 1) onto it).
  std::vector<double> working_points;
  /// Most negative value of T found after the last LP.
  double violation = 0.0;
  int round = 0;
};

struct CfzOptions {
  double tol = 1e-8;
  /// Run the grid-doubling cross-check.
  bool cross_check = true;
  long long max_grid = kGridMaxModulus;
};

struct CfzReport {
  SolveReport report;
  ExchangeState state;
  /// Limit of the grid sequence when the cross-check ran and converged.
  std::optional<double> grid_value;
  /// Richardson extrapolation (4K_{2m} − K_m)/3 of the last two grid values;
  /// informational only.
  std::optional<double> extrapolated;
  /// |grid value − exchange value| ≤ 3·tol.
  bool agrees = true;
};

/// Throws std::invalid_argument for inadmissible H, SolverDisagreement when
/// the two methods differ by more than 10·tol, std::runtime_error when the
/// exchange fails to converge in kExchangeMaxRounds rounds.
CfzReport cf_z_full(const SupportZ& h, const CfzOptions& options = {});

SolveReport cf_z(const SupportZ& h, double tol = 1e-8);

/// Exchange method alone.
SolveReport cf_z_exchange(const SupportZ& h, double tol = 1e-8, ExchangeState* state = nullptr);

/// K_m(H) for the grid {ν/m}, m > 2·max H, by cutting planes over the grid.
double grid_constant(const SupportZ& h, long long m, double tol = 1e-8);

struct GridSequence {
  std::vector<std::pair<long long, double>> values;
  bool converged = false;
};

/// K_{m_j} for m_j = m_0·2^j, m_0 the least power of two above 8·max H,
/// until two successive values differ by at most tol or m exceeds max_grid.
GridSequence grid_doubling(const SupportZ& h, double tol = 1e-8, long long max_grid = kGridMaxModulus);

/// M([0,n]) = 2·CF({0, ±1, …, ±n}).
double m_classic(int n, double tol = 1e-8);

inline constexpr long long kClassicGrid = 1LL << 14;
/// Slack allowed when testing that K_m does not increase along the doubling.
inline constexpr double kMonotoneSlack = 1e-9;

/// M([0,n]) by the exchange method and on the grid of size `grid`, next to
/// the closed forms 2cos(π/(n+2)) and 2cos(2π/(n+2)).
struct ClassicRow {
  int n = 0;
  double exchange = 0.0;
  double grid = 0.0;
  double cos_pi = 0.0;
  double cos_two_pi = 0.0;
};

std::vector<ClassicRow> classic_table(int n_lo, int n_hi, long long grid = kClassicGrid,
                                      double tol = 1e-8);

/// The doubling sequence next to the exchange value.
struct ConvergenceStudy {
  GridSequence grid;
  double exchange = 0.0;
  /// K_{m_{j+1}} ≤ K_{m_j} + kMonotoneSlack throughout.
  bool monotone = true;
  /// |last grid value − exchange value|.
  double delta = 0.0;
};

ConvergenceStudy convergence_study(const SupportZ& h, double tol = 1e-8,
                                   long long max_grid = kGridMaxModulus);

/// {1} ∪ ([1, universe] \ H⁺), symmetrized.
SupportZ dual_set_z(const SupportZ& h, int universe);

struct DualityRowZ {
  int universe = 0;
  double m_set = 0.0;
  double m_dual = 0.0;
  double product = 0.0;
};

struct DualityReportZ {
  std::vector<DualityRowZ> rows;
  /// |product(U_j) − product(U_{j−1})| ≤ tol at the last step.
  bool converged = false;
  double final_product = 0.0;
};

/// M(H)·M(H*) over truncation bounds `universes` (ascending); H must have
/// max H⁺ ≤ every universe.
DualityReportZ verify_duality_z(const SupportZ& h, const std::vector<int>& universes,
                                double tol = 1e-8);

struct LambdaEvaluation {
  std::vector<int> half;
  double value = 0.0;
};

struct LambdaResult {
  std::vector<int> best_half;
  double best_value = 0.0;
  std::vector<LambdaEvaluation> evaluations;
};

/// Exhaustive max of M(H)/2 over H⁺ ⊆ [1, U], 1 ∈ H⁺, |H⁺| = n. Throws
/// std::invalid_argument when C(U−1, n−1) exceeds kLambdaBudget.
LambdaResult lambda_search(int n, int universe, double tol = 1e-8);

struct SparseFamilyResult {
  double value = 0.0;
  /// (M', CF) for the truncations M' ≤ M.
  std::vector<std::pair<int, double>> trend;
  bool monotone = true;
};

/// CF({0, ±1} ∪ {±N, …, ±M}). Requires N ≥ 4 and M ≥ 2N.
SparseFamilyResult sparse_family_cf(int n, int m, double tol = 1e-8);

/// The support {0, ±1} ∪ {±N, …, ±M}.
SupportZ sparse_family_support(int n, int m);

}  // namespace cfx
