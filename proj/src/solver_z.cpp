#include "cfx/solver_z.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cfx/lp_engine.hpp"
#include "cfx/parallel.hpp"

namespace cfx {

namespace {

using Clock = std::chrono::steady_clock;


void check_admissible(const SupportZ& h, const char* who) {
  if (!h.admissible()) throw std::invalid_argument(std::string(who) + ": support must contain 0 and ±1");
}

// max a_1 s.t. 1 + 2 Σ_j a_j cos(2π h_j t_i) ≥ 0 at the given cosines.
LpSolution solve_cosine_lp(const std::vector<int>& half, const std::vector<std::vector<double>>& cosines,
                           const std::vector<std::size_t>* warm = nullptr) {
  LinearProgram lp(cosines.size(), half.size());
  std::fill(lp.free_variable.begin(), lp.free_variable.end(), true);
  std::fill(lp.rhs.begin(), lp.rhs.end(), 1.0);
  for (std::size_t i = 0; i < cosines.size(); ++i)
    for (std::size_t j = 0; j < half.size(); ++j)
      lp.constraints(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -2.0 * cosines[i][j];
  lp.objective.assign(half.size(), 0.0);
  lp.objective[0] = 1.0;
  LpSolution sol = solve_lp_via_dual(lp, warm);
  if (!sol.optimal()) throw std::runtime_error("cosine LP " + to_string(sol.status));
  return sol;
}

std::vector<double> cosines_at(const std::vector<int>& half, double t) {
  std::vector<double> row(half.size());
  for (std::size_t j = 0; j < half.size(); ++j) row[j] = std::cos(2.0 * std::numbers::pi * half[j] * t);
  return row;
}

SeqZ even_sequence(const std::vector<int>& half, const std::vector<double>& a, double scale = 1.0) {
  SeqZ psi;
  psi.set(0, 1.0);
  for (std::size_t j = 0; j < half.size(); ++j) {
    psi.set(half[j], a[j] * scale);
    psi.set(-half[j], a[j] * scale);
  }
  return psi;
}

double fold(double t) {
  t -= std::floor(t);
  return t > 0.5 ? 1.0 - t : t;
}

long long first_grid_modulus(const SupportZ& h) {
  long long m = 1;
  while (m <= 8LL * h.max_element()) m *= 2;
  return m;
}

}  // namespace

SolveReport cf_z_exchange(const SupportZ& h, double tol, ExchangeState* state_out) {
  check_admissible(h, "cf_z");
  const auto start = Clock::now();
  const std::vector<int>& half = h.half();
  const int n = h.max_element();
  const double eps = tol / 10.0;

  // Points are kept in insertion order so that the previous optimal basis
  // stays valid after new rows are appended.
  ExchangeState state;
  std::vector<double> points;
  const int initial = 4 * (2 * n + 1);
  for (int j = 0; 2 * j <= initial; ++j) points.push_back(static_cast<double>(j) / initial);
  std::vector<std::vector<double>> rows;
  for (double t : points) rows.push_back(cosines_at(half, t));
  std::vector<double> sorted = points;

  LpSolution sol;
  std::vector<std::size_t> warm;
  bool converged = false;
  int pivots = 0;
  for (state.round = 1; state.round <= kExchangeMaxRounds; ++state.round) {
    sol = solve_cosine_lp(half, rows, warm.empty() ? nullptr : &warm);
    pivots += sol.pivots;
    warm = sol.basis;
    const SeqZ psi = even_sequence(half, sol.point);
    const std::vector<TrigPoint> minima = trig_local_minima(psi);
    state.violation = minima.front().value;
    if (state.violation >= -eps) {
      converged = true;
      break;
    }
    std::size_t added = 0;
    for (const TrigPoint& p : minima) {
      if (p.value >= -eps) break;
      const double t = fold(p.t);
      const auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
      const bool near_next = it != sorted.end() && *it - t <= kExchangeDedup;
      const bool near_prev = it != sorted.begin() && t - *(it - 1) <= kExchangeDedup;
      if (near_next || near_prev) continue;
      sorted.insert(it, t);
      points.push_back(t);
      rows.push_back(cosines_at(half, t));
      ++added;
    }
    if (added == 0) break;
  }
  state.working_points = sorted;
  if (state_out) *state_out = state;
  if (!converged)
    throw std::runtime_error("cf_z: exchange method did not converge (violation " +
                             std::to_string(state.violation) + " after " +
                             std::to_string(std::min(state.round, kExchangeMaxRounds)) + " rounds)");

  const double delta = std::max(0.0, -state.violation);
  SolveReport out;
  out.value = sol.value;
  out.upper = sol.value;
  out.lower = sol.point[0] / (1.0 + delta);
  SeqZ repaired = even_sequence(half, sol.point, 1.0 / (1.0 + delta));
  out.certificate = is_pd_z(repaired);
  out.extremal = std::move(repaired);
  out.meta.iterations = state.round;
  out.meta.lp_solves = state.round;
  out.meta.formulation = "exchange";
  out.meta.converged = out.upper - out.lower <= tol;
  out.meta.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  (void)pivots;
  return out;
}

double grid_constant(const SupportZ& h, long long m, double tol) {
  check_admissible(h, "grid_constant");
  if (m <= 2LL * h.max_element()) throw std::invalid_argument("grid_constant: modulus must exceed 2·max H");
  const std::vector<int>& half = h.half();
  const long long top = m / 2;
  const double eps = tol / 10.0;

  std::vector<double> cos_table(static_cast<std::size_t>(m));
  for (long long j = 0; j < m; ++j)
    cos_table[static_cast<std::size_t>(j)] = std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
  auto row_at = [&](long long nu) {
    std::vector<double> row(half.size());
    for (std::size_t j = 0; j < half.size(); ++j) row[j] = cos_table[static_cast<std::size_t>((half[j] * nu) % m)];
    return row;
  };

  std::vector<char> used(static_cast<std::size_t>(top + 1), 0);
  std::vector<std::vector<double>> rows;
  const long long initial = 2 * (2LL * h.max_element() + 1);
  for (long long j = 0; j <= initial; ++j) {
    const long long nu = std::min(top, (j * top + initial / 2) / initial);
    if (!used[static_cast<std::size_t>(nu)]) {
      used[static_cast<std::size_t>(nu)] = 1;
      rows.push_back(row_at(nu));
    }
  }

  std::vector<double> values(static_cast<std::size_t>(top + 1));
  std::vector<std::size_t> warm;
  for (int round = 0; round < 10 * kExchangeMaxRounds; ++round) {
    const LpSolution sol = solve_cosine_lp(half, rows, warm.empty() ? nullptr : &warm);
    warm = sol.basis;
    for (long long nu = 0; nu <= top; ++nu) {
      double acc = 1.0;
      for (std::size_t j = 0; j < half.size(); ++j)
        acc += 2.0 * sol.point[j] * cos_table[static_cast<std::size_t>((half[j] * nu) % m)];
      values[static_cast<std::size_t>(nu)] = acc;
    }
    std::size_t added = 0;
    for (long long nu = 0; nu <= top; ++nu) {
      const double v = values[static_cast<std::size_t>(nu)];
      if (v >= -eps || used[static_cast<std::size_t>(nu)]) continue;
      // The grid is symmetric about 0 and ½, so the endpoints compare
      // against their mirror neighbours.
      const double left = nu == 0 ? values[1] : values[static_cast<std::size_t>(nu - 1)];
      const double right = nu == top ? values[static_cast<std::size_t>(top - 1)] : values[static_cast<std::size_t>(nu + 1)];
      if (v > left || v > right) continue;
      used[static_cast<std::size_t>(nu)] = 1;
      rows.push_back(row_at(nu));
      ++added;
    }
    if (added == 0) {
      const double mn = *std::min_element(values.begin(), values.end());
      if (mn < -eps) throw std::runtime_error("grid_constant: cutting planes stalled");
      return sol.value;
    }
  }
  throw std::runtime_error("grid_constant: round limit reached");
}

GridSequence grid_doubling(const SupportZ& h, double tol, long long max_grid) {
  GridSequence seq;
  for (long long m = first_grid_modulus(h); m <= max_grid; m *= 2) {
    seq.values.emplace_back(m, grid_constant(h, m, tol));
    const std::size_t n = seq.values.size();
    if (n >= 2 && std::abs(seq.values[n - 1].second - seq.values[n - 2].second) <= tol) {
      seq.converged = true;
      break;
    }
  }
  return seq;
}

CfzReport cf_z_full(const SupportZ& h, const CfzOptions& options) {
  CfzReport out;
  out.report = cf_z_exchange(h, options.tol, &out.state);
  if (!options.cross_check) return out;
  const auto start = Clock::now();
  const GridSequence seq = grid_doubling(h, options.tol, options.max_grid);
  out.report.grid_sequence = seq.values;
  out.report.meta.seconds += std::chrono::duration<double>(Clock::now() - start).count();
  if (seq.values.size() >= 2) {
    const double a = seq.values[seq.values.size() - 2].second;
    const double b = seq.values.back().second;
    out.extrapolated = (4.0 * b - a) / 3.0;
  }
  if (!seq.converged) {
    out.agrees = false;
    out.report.meta.converged = false;
    return out;
  }
  out.grid_value = seq.values.back().second;
  const double diff = std::abs(*out.grid_value - out.report.value);
  out.agrees = diff <= 3.0 * options.tol;
  if (diff > 10.0 * options.tol)
    throw SolverDisagreement("cf_z: exchange value " + std::to_string(out.report.value) +
                             " and grid limit " + std::to_string(*out.grid_value) + " disagree");
  return out;
}

SolveReport cf_z(const SupportZ& h, double tol) {
  CfzOptions options;
  options.tol = tol;
  return cf_z_full(h, options).report;
}

double m_classic(int n, double tol) {
  if (n < 1) throw std::invalid_argument("m_classic: n must be positive");
  std::vector<int> half(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) half[static_cast<std::size_t>(k - 1)] = k;
  return 2.0 * cf_z(SupportZ(half), tol).value;
}

std::vector<ClassicRow> classic_table(int n_lo, int n_hi, long long grid, double tol) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("classic_table: need 1 ≤ n_lo ≤ n_hi");
  const auto count = static_cast<std::size_t>(n_hi - n_lo + 1);
  return parallel_map<ClassicRow>(count, [&](std::size_t i) {
    ClassicRow row;
    row.n = n_lo + static_cast<int>(i);
    std::vector<int> half(static_cast<std::size_t>(row.n));
    for (int k = 1; k <= row.n; ++k) half[static_cast<std::size_t>(k - 1)] = k;
    const SupportZ h(half);
    row.exchange = 2.0 * cf_z_exchange(h, tol).value;
    row.grid = 2.0 * grid_constant(h, grid, tol);
    row.cos_pi = 2.0 * std::cos(std::numbers::pi / (row.n + 2));
    row.cos_two_pi = 2.0 * std::cos(2.0 * std::numbers::pi / (row.n + 2));
    return row;
  });
}

ConvergenceStudy convergence_study(const SupportZ& h, double tol, long long max_grid) {
  ConvergenceStudy out;
  out.exchange = cf_z_exchange(h, tol).value;
  out.grid = grid_doubling(h, tol, max_grid);
  const auto& v = out.grid.values;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].second > v[i - 1].second + kMonotoneSlack) out.monotone = false;
  if (!v.empty()) out.delta = std::abs(v.back().second - out.exchange);
  return out;
}

SupportZ dual_set_z(const SupportZ& h, int universe) {
  check_admissible(h, "dual_set_z");
  if (universe < h.max_element())
    throw std::invalid_argument("dual_set_z: universe bound below max H");
  std::vector<int> half{1};
  for (int k = 2; k <= universe; ++k)
    if (!h.contains(k)) half.push_back(k);
  return SupportZ(half);
}

DualityReportZ verify_duality_z(const SupportZ& h, const std::vector<int>& universes, double tol) {
  check_admissible(h, "verify_duality_z");
  if (universes.empty()) throw std::invalid_argument("verify_duality_z: no universe bounds");
  const double m_set = 2.0 * cf_z_exchange(h).value;
  DualityReportZ rep;
  rep.rows = parallel_map<DualityRowZ>(universes.size(), [&](std::size_t i) {
    DualityRowZ row;
    row.universe = universes[i];
    row.m_set = m_set;
    row.m_dual = 2.0 * cf_z_exchange(dual_set_z(h, universes[i])).value;
    row.product = row.m_set * row.m_dual;
    return row;
  });
  rep.final_product = rep.rows.back().product;
  rep.converged = rep.rows.size() >= 2 &&
                  std::abs(rep.rows.back().product - rep.rows[rep.rows.size() - 2].product) <= tol;
  return rep;
}

LambdaResult lambda_search(int n, int universe, double tol) {
  if (n < 1) throw std::invalid_argument("lambda_search: n must be positive");
  if (universe < n) throw std::invalid_argument("lambda_search: universe smaller than n");
  // C(U−1, n−1), stopping early once past the budget.
  double count = 1.0;
  for (int i = 1; i <= n - 1; ++i) {
    count = count * (universe - n + i) / i;
    if (count > static_cast<double>(kLambdaBudget)) break;
  }
  if (count > static_cast<double>(kLambdaBudget))
    throw std::invalid_argument("lambda_search: enumeration exceeds the budget of " +
                                std::to_string(kLambdaBudget) + " sets");

  std::vector<std::vector<int>> sets;
  std::vector<int> pick(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) pick[static_cast<std::size_t>(i)] = i + 2;
  while (true) {
    std::vector<int> half{1};
    half.insert(half.end(), pick.begin(), pick.end());
    sets.push_back(std::move(half));
    int i = n - 2;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == universe - (n - 2 - i)) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n - 1; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }

  LambdaResult out;
  out.evaluations = parallel_map<LambdaEvaluation>(sets.size(), [&](std::size_t i) {
    return LambdaEvaluation{sets[i], cf_z_exchange(SupportZ(sets[i]), tol).value};
  });
  for (const LambdaEvaluation& e : out.evaluations)
    if (out.best_half.empty() || e.value > out.best_value) {
      out.best_half = e.half;
      out.best_value = e.value;
    }
  return out;
}

SupportZ sparse_family_support(int n, int m) {
  if (n < 4) throw std::invalid_argument("sparse_family: N must be at least 4");
  if (m < 2 * n) throw std::invalid_argument("sparse_family: truncation M must be at least 2N");
  std::vector<int> half{1};
  for (int k = n; k <= m; ++k) half.push_back(k);
  return SupportZ(half);
}

SparseFamilyResult sparse_family_cf(int n, int m, double tol) {
  (void)sparse_family_support(n, m);
  std::vector<int> cuts;
  for (int c = 2 * n; c < m; c += 2 * n) cuts.push_back(c);
  cuts.push_back(m);
  SparseFamilyResult out;
  const auto values = parallel_map<double>(cuts.size(), [&](std::size_t i) {
    return cf_z_exchange(sparse_family_support(n, cuts[i]), tol).value;
  });
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    out.trend.emplace_back(cuts[i], values[i]);
    if (i > 0 && values[i] < values[i - 1] - 1e-9) out.monotone = false;
  }
  out.value = values.back();
  return out;
}

}  // namespace cfx
