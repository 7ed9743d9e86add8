#include "cfx/lp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cfx {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kReducedCostTol = 1e-10;
// A ray is reported as unboundedness only when its reduced cost is this
// clearly negative.
constexpr double kRayReducedCostTol = 1e-8;
constexpr int kDegenerateBeforeBland = 50;
constexpr double kPerturbation = 1e-8;
constexpr double kBasisFeasTol = 1e-9;
constexpr double kHarrisTol = 1e-9;
// Pivots between refactorizations: at least this many, and at least one per
// row, since a refactorization costs about as much as `rows` pivots.
constexpr int kRefactorInterval = 50;
// Primal and dual slack accepted by a warm start before phase 2.
constexpr double kWarmFeasTol = 1e-7;

enum class ColumnRole { Structural, Slack, Artificial };

// Tableau form of an LP after sign normalization (rhs ≥ 0), free-variable
// splitting and slack/artificial augmentation.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, bool perturb) : lp_(lp), perturb_(perturb) { build(); }

  /// True when the optimal basis of the perturbed program is not feasible
  /// for the original right-hand side.
  bool rejected() const { return rejected_; }

  LpSolution run(const std::vector<std::size_t>* warm = nullptr) {
    LpSolution sol;
    std::vector<double> phase2(cols_, 0.0);
    for (std::size_t j = 0; j < lp_.cols(); ++j) {
      phase2[pos_col_[j]] = lp_.objective[j];
      if (neg_col_[j] != kNone) phase2[neg_col_[j]] = -lp_.objective[j];
    }
    const bool warmed = warm != nullptr && try_warm_start(*warm, phase2);
    if (!warmed && artificial_count_ > 0) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = 0; j < cols_; ++j)
        if (roles_[j] == ColumnRole::Artificial) phase1[j] = -1.0;
      const LpStatus s1 = optimize(phase1, /*allow_artificial=*/true);
      if (s1 == LpStatus::IterationLimit) {
        sol.status = s1;
        sol.pivots = pivots_;
        return sol;
      }
      const double infeas = -objective_value(phase1);
      if (infeas > 1e-9 * (1.0 + rhs_scale_)) {
        sol.status = LpStatus::Infeasible;
        sol.pivots = pivots_;
        return sol;
      }
      drive_out_artificials();
    }
    LpStatus s2 = optimize(phase2, /*allow_artificial=*/false);
    if (s2 == LpStatus::Optimal && perturb_) s2 = unperturb(phase2);
    sol.pivots = pivots_;
    sol.status = s2;
    if (s2 != LpStatus::Optimal) return sol;
    rejected_ = !extract(phase2, sol);
    for (std::size_t j = 0; j < lp_.cols(); ++j)
      if (std::find(basis_.begin(), basis_.end(), pos_col_[j]) != basis_.end()) sol.basis.push_back(j);
    return sol;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void build() {
    const std::size_t m = lp_.rows();
    const std::size_t n = lp_.cols();
    pos_col_.assign(n, kNone);
    neg_col_.assign(n, kNone);
    std::size_t structural = 0;
    for (std::size_t j = 0; j < n; ++j) {
      pos_col_[j] = structural++;
      if (lp_.free_variable[j]) neg_col_[j] = structural++;
    }
    sign_.assign(m, 1.0);
    std::size_t slacks = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (lp_.rhs[i] < 0.0) sign_[i] = -1.0;
      if (lp_.row_kinds[i] == RowKind::LessEqual) ++slacks;
      if (lp_.row_kinds[i] == RowKind::Equal || sign_[i] < 0.0) ++artificial_count_;
    }
    cols_ = structural + slacks + artificial_count_;
    roles_.assign(cols_, ColumnRole::Structural);
    a_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(cols_));
    b_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    basis_.assign(m, kNone);
    identity_col_.assign(m, kNone);
    std::size_t next_slack = structural;
    std::size_t next_art = structural + slacks;
    rhs_scale_ = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      for (std::size_t j = 0; j < n; ++j) {
        const double v = sign_[i] * lp_.constraints(r, static_cast<Eigen::Index>(j));
        a_(r, static_cast<Eigen::Index>(pos_col_[j])) = v;
        if (neg_col_[j] != kNone) a_(r, static_cast<Eigen::Index>(neg_col_[j])) = -v;
      }
      b_(r) = sign_[i] * lp_.rhs[i];
      rhs_scale_ = std::max(rhs_scale_, std::abs(b_(r)));
      if (lp_.row_kinds[i] == RowKind::LessEqual) {
        const std::size_t s = next_slack++;
        roles_[s] = ColumnRole::Slack;
        a_(r, static_cast<Eigen::Index>(s)) = sign_[i];
        if (sign_[i] > 0.0) basis_[i] = s;
      }
      if (basis_[i] == kNone) {
        const std::size_t art = next_art++;
        roles_[art] = ColumnRole::Artificial;
        a_(r, static_cast<Eigen::Index>(art)) = 1.0;
        basis_[i] = art;
      }
      identity_col_[i] = basis_[i];
    }
    tab_ = a_;
    rhs_ = b_;
    if (perturb_) {
      // Small positive shifts of the right-hand side break the ties that make
      // degenerate vertices stall the pricing. The final basis is re-solved
      // against the true right-hand side in extract().
      std::uint64_t state = 0x9E3779B97F4A7C15ULL;
      for (Eigen::Index i = 0; i < rhs_.size(); ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = 0.5 + 0.5 * static_cast<double>(state >> 11) * 0x1.0p-53;
        rhs_(i) += kPerturbation * (1.0 + std::abs(b_(i))) * u;
      }
    }
    b_work_ = rhs_;
    max_iterations_ = 50 * static_cast<int>(m + cols_) + 1000;
  }

  double objective_value(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      v += cost[basis_[i]] * rhs_(static_cast<Eigen::Index>(i));
    return v;
  }

  // Reduced costs d_j = c_B^T B^{-1} A_j − c_j for the current tableau.
  Eigen::VectorXd reduced_costs(const std::vector<double>& cost) const {
    Eigen::VectorXd cb(static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      cb(static_cast<Eigen::Index>(i)) = cost[basis_[i]];
    Eigen::VectorXd d = tab_.transpose() * cb;
    for (std::size_t j = 0; j < cols_; ++j) d(static_cast<Eigen::Index>(j)) -= cost[j];
    return d;
  }

  void pivot(std::size_t row, std::size_t col) {
    const auto r = static_cast<Eigen::Index>(row);
    const auto c = static_cast<Eigen::Index>(col);
    const double p = tab_(r, c);
    tab_.row(r) /= p;
    rhs_(r) /= p;
    const Eigen::RowVectorXd prow = tab_.row(r);
    Eigen::VectorXd factors = tab_.col(c);
    factors(r) = 0.0;
    tab_.noalias() -= factors * prow;
    rhs_ -= factors * rhs_(r);
    tab_.col(c).setZero();
    tab_(r, c) = 1.0;
    basis_[row] = col;
    ++pivots_;
  }

  // Restores the true right-hand side under the optimal basis of the
  // perturbed program. The basis stays dual feasible, so dual simplex pivots
  // repair any infeasibility and primal phase 2 finishes. A failed repair
  // leaves the basis for extract() to reject.
  LpStatus unperturb(const std::vector<double>& cost) {
    b_work_ = b_;
    if (!refactor()) return LpStatus::Optimal;
    if (rhs_.minCoeff() < -feas_tol() && !dual_simplex(cost, feas_tol())) return LpStatus::Optimal;
    for (Eigen::Index i = 0; i < rhs_.size(); ++i) rhs_(i) = std::max(rhs_(i), 0.0);
    return optimize(cost, /*allow_artificial=*/false);
  }

  double feas_tol() const { return kBasisFeasTol * (1.0 + rhs_scale_); }

  // Installs the basis made of the listed structural columns. A basis that
  // is primal feasible starts phase 2 directly; one that is only dual
  // feasible (the right-hand side moved) is first repaired by dual simplex
  // pivots. Anything else restores the slack/artificial start.
  bool try_warm_start(const std::vector<std::size_t>& columns, const std::vector<double>& cost) {
    if (columns.size() != basis_.size() || basis_.empty()) return false;
    const std::vector<std::size_t> initial = basis_;
    bool ok = true;
    for (std::size_t i = 0; i < columns.size() && ok; ++i) {
      if (columns[i] >= lp_.cols()) ok = false;
      else basis_[i] = pos_col_[columns[i]];
    }
    ok = ok && refactor();
    if (ok && rhs_.minCoeff() < -kWarmFeasTol) ok = dual_simplex(cost, kWarmFeasTol);
    if (ok) {
      for (Eigen::Index i = 0; i < rhs_.size(); ++i) rhs_(i) = std::max(rhs_(i), 0.0);
      return true;
    }
    basis_ = initial;
    tab_ = a_;
    rhs_ = b_work_;
    return false;
  }

  // Dual simplex from a dual feasible basis: the most negative basic
  // variable leaves, the entering column keeps every reduced cost ≥ 0.
  bool dual_simplex(const std::vector<double>& true_cost, double tol) {
    Eigen::VectorXd d = reduced_costs(true_cost);
    for (std::size_t j = 0; j < cols_; ++j)
      if (roles_[j] != ColumnRole::Artificial && d(static_cast<Eigen::Index>(j)) < -kWarmFeasTol)
        return false;
    // Lowering the cost of every nonbasic column by a distinct small amount
    // separates the many zero reduced costs of a degenerate dual; phase 2
    // afterwards restores the true costs.
    std::vector<double> cost = true_cost;
    std::vector<bool> basic(cols_, false);
    for (std::size_t b : basis_) basic[b] = true;
    std::uint64_t state = 0xD1B54A32D192ED03ULL;
    for (std::size_t j = 0; j < cols_; ++j) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      const double u = 0.5 + 0.5 * static_cast<double>(state >> 11) * 0x1.0p-53;
      if (!basic[j]) cost[j] -= kPerturbation * (1.0 + std::abs(cost[j])) * u;
    }
    d = reduced_costs(cost);
    // A stalled repair is abandoned for the cold start.
    const int cap = 4 * static_cast<int>(basis_.size()) + 100;
    int since_refactor = 0;
    for (int it = 0; it < cap; ++it) {
      Eigen::Index r = 0;
      if (rhs_.minCoeff(&r) >= -tol) return true;
      if (since_refactor >= refactor_interval()) {
        if (!refactor()) return false;
        since_refactor = 0;
        d = reduced_costs(cost);
        if (rhs_.minCoeff(&r) >= -tol) return true;
      }
      std::size_t enter = kNone;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < cols_; ++j) {
        if (roles_[j] == ColumnRole::Artificial) continue;
        const double arj = tab_(r, static_cast<Eigen::Index>(j));
        if (arj >= -kPivotTol) continue;
        const double ratio = std::max(d(static_cast<Eigen::Index>(j)), 0.0) / -arj;
        if (ratio < best) {
          best = ratio;
          enter = j;
        }
      }
      if (enter == kNone) return false;
      pivot(static_cast<std::size_t>(r), enter);
      ++since_refactor;
      d = reduced_costs(cost);
    }
    return false;
  }

  // Recomputes the tableau from the original data and the current basis,
  // discarding the round-off accumulated by the rank-one updates.
  int refactor_interval() const { return std::max(kRefactorInterval, static_cast<int>(basis_.size())); }

  bool refactor() {
    const auto m = static_cast<Eigen::Index>(basis_.size());
    if (m == 0) return false;
    Eigen::MatrixXd bmat(m, m);
    for (Eigen::Index i = 0; i < m; ++i) bmat.col(i) = a_.col(static_cast<Eigen::Index>(basis_[static_cast<std::size_t>(i)]));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
    if (!(lu.rcond() > 1e-13)) return false;
    Eigen::MatrixXd tab = lu.solve(a_);
    Eigen::VectorXd rhs = lu.solve(b_work_);
    if (!tab.allFinite() || !rhs.allFinite()) return false;
    tab_ = std::move(tab);
    rhs_ = std::move(rhs);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto c = static_cast<Eigen::Index>(basis_[static_cast<std::size_t>(i)]);
      tab_.col(c).setZero();
      tab_(i, c) = 1.0;
    }
    return true;
  }

  LpStatus optimize(const std::vector<double>& cost, bool allow_artificial) {
    int degenerate_run = 0;
    int iterations = 0;
    int since_refactor = 0;
    std::vector<char> blocked(cols_, 0);
    while (true) {
      if (++iterations > max_iterations_) return LpStatus::IterationLimit;
      if (since_refactor >= refactor_interval()) {
        refactor();
        since_refactor = 0;
      }
      const Eigen::VectorXd d = reduced_costs(cost);
      const bool bland = degenerate_run >= kDegenerateBeforeBland;
      std::size_t enter = kNone;
      if (bland || allow_artificial) {
        // Dantzig pricing (Bland: first improving column). Phase 1 keeps it
        // since steepest edge stalls on the all-artificial start.
        double best = -kReducedCostTol;
        for (std::size_t j = 0; j < cols_; ++j) {
          if (blocked[j] || (!allow_artificial && roles_[j] == ColumnRole::Artificial)) continue;
          const double dj = d(static_cast<Eigen::Index>(j));
          if (dj < best) {
            enter = j;
            if (bland) break;
            best = dj;
          }
        }
      } else {
        // Steepest edge: the tableau holds every edge direction, so the
        // exact weights 1 + |column|² cost one pass over it.
        const Eigen::VectorXd norms = tab_.colwise().squaredNorm().transpose();
        double best = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) {
          if (blocked[j] || roles_[j] == ColumnRole::Artificial) continue;
          const auto jj = static_cast<Eigen::Index>(j);
          const double dj = d(jj);
          if (dj >= -kReducedCostTol) continue;
          const double score = dj * dj / (1.0 + norms(jj));
          if (score > best) {
            best = score;
            enter = j;
          }
        }
      }
      if (enter == kNone) return LpStatus::Optimal;

      // Two-pass (Harris) ratio test: the bound allows each basic variable a
      // slack of kHarrisTol, and among the rows within the bound the largest
      // pivot wins. Bland mode keeps the textbook rule.
      const auto c = static_cast<Eigen::Index>(enter);
      double bound = std::numeric_limits<double>::infinity();
      double min_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < tab_.rows(); ++i) {
        const double aij = tab_(i, c);
        if (aij <= kPivotTol) continue;
        bound = std::min(bound, (std::max(rhs_(i), 0.0) + kHarrisTol) / aij);
        min_ratio = std::min(min_ratio, std::max(rhs_(i), 0.0) / aij);
      }
      if (!std::isfinite(bound)) {
        // Phase 1 is bounded, and a ray with a reduced cost at noise level is
        // not evidence of unboundedness; skip the column until the next pivot.
        if (allow_artificial || d(c) > -kRayReducedCostTol) {
          blocked[enter] = 1;
          continue;
        }
        return LpStatus::Unbounded;
      }
      std::size_t leave = kNone;
      for (Eigen::Index i = 0; i < tab_.rows(); ++i) {
        const double aij = tab_(i, c);
        if (aij <= kPivotTol) continue;
        const double ratio = std::max(rhs_(i), 0.0) / aij;
        const auto row = static_cast<std::size_t>(i);
        if (bland) {
          if (ratio <= min_ratio + 1e-12 && (leave == kNone || basis_[row] < basis_[leave])) leave = row;
        } else if (ratio <= bound &&
                   (leave == kNone || aij > tab_(static_cast<Eigen::Index>(leave), c))) {
          leave = row;
        }
      }
      const double step = std::max(rhs_(static_cast<Eigen::Index>(leave)), 0.0) /
                          tab_(static_cast<Eigen::Index>(leave), c);
      degenerate_run = (step * -d(c) <= 1e-13) ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      std::fill(blocked.begin(), blocked.end(), 0);
      ++since_refactor;
      for (Eigen::Index i = 0; i < rhs_.size(); ++i)
        if (rhs_(i) < 0.0 && rhs_(i) > -kHarrisTol) rhs_(i) = 0.0;
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (roles_[basis_[i]] != ColumnRole::Artificial) continue;
      const auto r = static_cast<Eigen::Index>(i);
      std::size_t best = kNone;
      double best_abs = 1e-9;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (roles_[j] == ColumnRole::Artificial) continue;
        const double v = std::abs(tab_(r, static_cast<Eigen::Index>(j)));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      // A row with no usable entry is redundant; its artificial stays basic
      // at level zero and can never move in phase 2.
      if (best == kNone) continue;
      rhs_(r) = 0.0;
      pivot(i, best);
    }
  }

  // Re-solves the final basis from the original data so the reported point
  // and multipliers do not carry accumulated tableau round-off.
  bool extract(const std::vector<double>& cost, LpSolution& sol) const {
    bool feasible = true;
    const std::size_t m = basis_.size();
    const std::size_t n = lp_.cols();
    Eigen::VectorXd xb = rhs_;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    if (m > 0) {
      Eigen::MatrixXd bmat(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      Eigen::VectorXd cb(static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i) {
        bmat.col(static_cast<Eigen::Index>(i)) = a_.col(static_cast<Eigen::Index>(basis_[i]));
        cb(static_cast<Eigen::Index>(i)) = cost[basis_[i]];
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
      Eigen::VectorXd refined = lu.solve(b_);
      Eigen::VectorXd yr = lu.transpose().solve(cb);
      if (refined.allFinite() && yr.allFinite() &&
          (bmat * refined - b_).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + rhs_scale_)) {
        xb = refined;
        y = yr;
        if (refined.minCoeff() < -kBasisFeasTol * (1.0 + rhs_scale_)) feasible = false;
      } else {
        if (perturb_) feasible = false;
        // Reduced cost of each row's initial identity column is its multiplier.
        const Eigen::VectorXd d = reduced_costs(cost);
        for (std::size_t i = 0; i < m; ++i)
          y(static_cast<Eigen::Index>(i)) = d(static_cast<Eigen::Index>(identity_col_[i]));
      }
    }
    std::vector<double> full(cols_, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      full[basis_[i]] = std::max(0.0, xb(static_cast<Eigen::Index>(i)));
    sol.point.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      sol.point[j] = full[pos_col_[j]];
      if (neg_col_[j] != kNone) sol.point[j] -= full[neg_col_[j]];
    }
    sol.duals.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) sol.duals[i] = sign_[i] * y(static_cast<Eigen::Index>(i));

    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += lp_.objective[j] * sol.point[j];
    sol.value = value;

    double primal = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        lhs += lp_.constraints(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
               sol.point[j];
      const double viol = lp_.row_kinds[i] == RowKind::Equal ? std::abs(lhs - lp_.rhs[i])
                                                             : std::max(0.0, lhs - lp_.rhs[i]);
      primal = std::max(primal, viol);
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!lp_.free_variable[j]) primal = std::max(primal, -sol.point[j]);
    sol.primal_residual = primal;

    double dual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double aty = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        aty += lp_.constraints(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
               sol.duals[i];
      const double gap = lp_.objective[j] - aty;
      dual = std::max(dual, lp_.free_variable[j] ? std::abs(gap) : std::max(0.0, gap));
    }
    for (std::size_t i = 0; i < m; ++i)
      if (lp_.row_kinds[i] == RowKind::LessEqual) dual = std::max(dual, -sol.duals[i]);
    sol.dual_residual = dual;
    return feasible;
  }

  const LinearProgram& lp_;
  bool perturb_ = false;
  bool rejected_ = false;
  std::vector<std::size_t> pos_col_, neg_col_;
  std::vector<double> sign_;
  std::vector<ColumnRole> roles_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_col_;
  Eigen::MatrixXd a_, tab_;
  Eigen::VectorXd b_, b_work_, rhs_;
  std::size_t cols_ = 0;
  std::size_t artificial_count_ = 0;
  double rhs_scale_ = 0.0;
  int pivots_ = 0;
  int max_iterations_ = 0;
};

}  // namespace

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

LinearProgram::LinearProgram(std::size_t rows, std::size_t cols)
    : objective(cols, 0.0),
      constraints(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                        static_cast<Eigen::Index>(cols))),
      rhs(rows, 0.0),
      row_kinds(rows, RowKind::LessEqual),
      free_variable(cols, false) {}

void LinearProgram::validate() const {
  if (objective.size() != cols() || rhs.size() != rows() || row_kinds.size() != rows() ||
      free_variable.size() != cols())
    throw std::invalid_argument("LinearProgram: inconsistent dimensions");
  if (!constraints.allFinite())
    throw std::invalid_argument("LinearProgram: non-finite constraint entry");
  for (double v : objective)
    if (!std::isfinite(v)) throw std::invalid_argument("LinearProgram: non-finite objective");
  for (double v : rhs)
    if (!std::isfinite(v)) throw std::invalid_argument("LinearProgram: non-finite rhs");
}

LpSolution solve_lp(const LinearProgram& lp, const std::vector<std::size_t>* warm_basis) {
  lp.validate();
  // A basis whose exact re-solve is infeasible for the true right-hand side
  // is never reported while another attempt remains: perturbed before plain,
  // warm before cold. The cold plain solve is final.
  struct Attempt {
    const std::vector<std::size_t>* start;
    bool perturb;
  };
  std::vector<Attempt> attempts;
  if (warm_basis != nullptr) attempts = {{warm_basis, true}, {warm_basis, false}};
  attempts.push_back({nullptr, true});
  attempts.push_back({nullptr, false});
  int pivots = 0;
  for (std::size_t k = 0; k < attempts.size(); ++k) {
    Tableau tableau(lp, attempts[k].perturb);
    LpSolution sol = tableau.run(attempts[k].start);
    pivots += sol.pivots;
    sol.pivots = pivots;
    const bool accepted = !tableau.rejected() && sol.status != LpStatus::Infeasible &&
                          sol.status != LpStatus::IterationLimit;
    if (accepted || k + 1 == attempts.size()) return sol;
  }
  return {};
}

LpSolution solve_lp_via_dual(const LinearProgram& lp, const std::vector<std::size_t>* warm_rows) {
  lp.validate();
  for (auto kind : lp.row_kinds)
    if (kind != RowKind::LessEqual)
      throw std::invalid_argument("solve_lp_via_dual: only ≤ rows are supported");
  for (bool f : lp.free_variable)
    if (!f) throw std::invalid_argument("solve_lp_via_dual: all variables must be free");

  const std::size_t m = lp.rows();
  const std::size_t n = lp.cols();
  LinearProgram dual(n, m);
  dual.constraints = lp.constraints.transpose();
  for (std::size_t i = 0; i < m; ++i) dual.objective[i] = -lp.rhs[i];
  for (std::size_t j = 0; j < n; ++j) {
    dual.rhs[j] = lp.objective[j];
    dual.row_kinds[j] = RowKind::Equal;
  }
  const LpSolution ds = solve_lp(dual, warm_rows);

  LpSolution sol;
  sol.pivots = ds.pivots;
  switch (ds.status) {
    case LpStatus::Optimal: break;
    case LpStatus::Infeasible: sol.status = LpStatus::Unbounded; return sol;
    case LpStatus::Unbounded: sol.status = LpStatus::Infeasible; return sol;
    case LpStatus::IterationLimit: sol.status = LpStatus::IterationLimit; return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.point[j] = -ds.duals[j];
  sol.duals = ds.point;
  sol.basis = ds.basis;
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.point[j];

  const Eigen::Map<const Eigen::VectorXd> x(sol.point.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd lhs = lp.constraints * x;
  double primal = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    primal = std::max(primal, lhs(static_cast<Eigen::Index>(i)) - lp.rhs[i]);
  sol.primal_residual = primal;
  sol.dual_residual = std::max(ds.primal_residual, ds.dual_residual);
  return sol;
}

namespace {

using cplx = std::complex<double>;

struct Sample {
  double theta;
  double support;
  cplx functional;
};

// Largest modulus over the arc of directions [a.theta, b.theta] allowed by
// the two supporting lines Re(e^{−iθ}v) ≤ h.
double arc_bound(const Sample& a, const Sample& b) {
  const double width = b.theta - a.theta;
  const double hmax = std::max(a.support, b.support);
  // One maximizer for both directions is a maximizer on the whole arc.
  if (std::abs(a.functional - b.functional) <= 1e-12 * (1.0 + std::abs(a.functional)))
    return std::max(std::abs(a.functional), std::abs(b.functional));
  double bound = width < std::numbers::pi ? hmax / std::cos(0.5 * width)
                                          : std::numeric_limits<double>::infinity();
  if (width > 1e-7 && width < std::numbers::pi) {
    const double det = std::sin(width);
    const double ca = std::cos(a.theta), sa = std::sin(a.theta);
    const double cb = std::cos(b.theta), sb = std::sin(b.theta);
    const double x = (a.support * sb - b.support * sa) / det;
    const double y = (ca * b.support - cb * a.support) / det;
    bound = std::min(bound, std::hypot(x, y));
  }
  return bound;
}

// Direction of the vertex where the two supporting lines meet, kept strictly
// inside the arc; the midpoint when the lines are nearly parallel.
double arc_direction(const Sample& a, const Sample& b) {
  const double width = b.theta - a.theta;
  const double mid = a.theta + 0.5 * width;
  if (width <= 1e-7 || width >= std::numbers::pi) return mid;
  const double det = std::sin(width);
  const double x = (a.support * std::sin(b.theta) - b.support * std::sin(a.theta)) / det;
  const double y = (std::cos(a.theta) * b.support - std::cos(b.theta) * a.support) / det;
  double dir = std::atan2(y, x);
  dir = a.theta + std::remainder(dir - a.theta, 2.0 * std::numbers::pi);
  if (dir < a.theta) dir += 2.0 * std::numbers::pi;
  const double margin = 0.01 * width;
  if (!(dir > a.theta + margin && dir < b.theta - margin)) return mid;
  return dir;
}

DirectionalResult checked(const DirectionalOracle& oracle, double theta, int& solves) {
  ++solves;
  DirectionalResult r = oracle(theta);
  if (r.status != LpStatus::Optimal)
    throw std::runtime_error("max_modulus: directional LP " + to_string(r.status));
  return r;
}

}  // namespace

ModulusResult max_modulus(const DirectionalOracle& oracle, double symmetry_angle) {
  if (!(symmetry_angle > 0.0) || symmetry_angle > 2.0 * std::numbers::pi + 1e-12)
    throw std::invalid_argument("max_modulus: symmetry angle must lie in (0, 2π]");

  ModulusResult best;
  best.value = -1.0;
  std::vector<Sample> samples;
  auto probe = [&](double theta) {
    DirectionalResult r = checked(oracle, theta, best.lp_solves);
    const double mod = std::max(r.support, std::abs(r.functional));
    if (mod > best.value) {
      best.value = mod;
      best.theta = theta;
      best.functional = r.functional;
      best.point = r.point;
    }
    double reduced = std::fmod(theta, symmetry_angle);
    if (reduced < 0.0) reduced += symmetry_angle;
    // Rotating θ by a multiple of the symmetry angle rotates the maximizer.
    const cplx f = r.functional * std::polar(1.0, reduced - theta);
    samples.push_back({reduced, r.support, f});
    return r;
  };

  const double step = symmetry_angle / kModulusGrid;
  for (int j = 0; j < kModulusGrid; ++j) probe(step * j);

  // Every sample is a supporting line of the attainable set, so the set lies
  // in the polygon they circumscribe. Probe toward the polygon vertex with
  // the largest modulus until the polygon is tight at the maximum. The
  // attainable set is itself a polygon, so each probe either closes the gap
  // at that vertex or exposes a new edge.
  const double cert_tol = kModulusCertifyTol * std::max(1.0, best.value);
  double upper = best.value;
  for (int extra = 0;; ++extra) {
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.theta < b.theta; });
    upper = best.value;
    double worst_gap = -1.0;
    double worst_dir = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Sample& a = samples[i];
      Sample b = samples[(i + 1) % samples.size()];
      if (i + 1 == samples.size()) {
        b.theta += symmetry_angle;
        b.functional *= std::polar(1.0, symmetry_angle);
      }
      const double width = b.theta - a.theta;
      const double bound = arc_bound(a, b);
      upper = std::max(upper, bound);
      if (width > 2.0 * kModulusThetaTol && bound - best.value > worst_gap) {
        worst_gap = bound - best.value;
        worst_dir = arc_direction(a, b);
      }
    }
    if (worst_gap <= cert_tol || extra >= kModulusCertifyBudget) break;
    probe(worst_dir);
  }
  best.upper_bound = std::max(best.value, upper);
  return best;
}

ModulusResult max_modulus(const LinearProgram& base, std::span<const double> ell_re,
                          std::span<const double> ell_im, double symmetry_angle) {
  if (ell_re.size() != base.cols() || ell_im.size() != base.cols())
    throw std::invalid_argument("max_modulus: functional size mismatch");
  LinearProgram lp = base;
  DirectionalOracle oracle = [&](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t j = 0; j < lp.cols(); ++j) lp.objective[j] = c * ell_re[j] + s * ell_im[j];
    const LpSolution sol = solve_lp(lp);
    DirectionalResult r;
    r.status = sol.status;
    if (!sol.optimal()) return r;
    r.support = sol.value;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < lp.cols(); ++j) {
      re += ell_re[j] * sol.point[j];
      im += ell_im[j] * sol.point[j];
    }
    r.functional = {re, im};
    r.point = sol.point;
    return r;
  };
  return max_modulus(oracle, symmetry_angle);
}

}  // namespace cfx
