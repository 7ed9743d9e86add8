#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cfx/lp_engine.hpp"

using namespace cfx;

namespace {

LinearProgram two_by_two() {
  // max x + y  s.t.  x + 2y ≤ 4,  3x + y ≤ 6.
  LinearProgram lp(2, 2);
  lp.objective = {1.0, 1.0};
  lp.constraints << 1.0, 2.0, 3.0, 1.0;
  lp.rhs = {4.0, 6.0};
  return lp;
}

}  // namespace

TEST_CASE("a small inequality program") {
  const LpSolution s = solve_lp(two_by_two());
  REQUIRE(s.optimal());
  CHECK(s.value == doctest::Approx(2.8));
  CHECK(s.point[0] == doctest::Approx(1.6));
  CHECK(s.point[1] == doctest::Approx(1.2));
  CHECK(s.duals[0] == doctest::Approx(0.4));
  CHECK(s.duals[1] == doctest::Approx(0.2));
}

TEST_CASE("equality rows and free variables") {
  // max x − y  s.t.  x + y = 1,  x ≤ 3,  y free.
  LinearProgram lp(2, 2);
  lp.objective = {1.0, -1.0};
  lp.constraints << 1.0, 1.0, 1.0, 0.0;
  lp.rhs = {1.0, 3.0};
  lp.row_kinds = {RowKind::Equal, RowKind::LessEqual};
  lp.free_variable = {false, true};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.optimal());
  CHECK(s.value == doctest::Approx(5.0));
  CHECK(s.point[1] == doctest::Approx(-2.0));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram lp(2, 1);
  lp.objective = {1.0};
  lp.constraints << 1.0, -1.0;
  lp.rhs = {1.0, -2.0};
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);

  LinearProgram open(1, 2);
  open.objective = {1.0, 0.0};
  open.constraints << -1.0, 1.0;
  open.rhs = {1.0};
  CHECK(solve_lp(open).status == LpStatus::Unbounded);
}

TEST_CASE("a degenerate cube corner") {
  // Klee–Minty in three variables, plus a redundant copy of each row.
  LinearProgram lp(6, 3);
  lp.objective = {4.0, 2.0, 1.0};
  lp.constraints << 1, 0, 0, 4, 1, 0, 8, 4, 1, 1, 0, 0, 4, 1, 0, 8, 4, 1;
  lp.rhs = {5, 25, 125, 5, 25, 125};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.optimal());
  CHECK(s.value == doctest::Approx(125.0));
}

TEST_CASE("warm start reaches the same optimum") {
  LinearProgram lp = two_by_two();
  const LpSolution cold = solve_lp(lp);
  lp.objective = {1.0, 3.0};
  const LpSolution warm = solve_lp(lp, &cold.basis);
  const LpSolution fresh = solve_lp(lp);
  REQUIRE(warm.optimal());
  CHECK(warm.value == doctest::Approx(fresh.value));
  CHECK(warm.value == doctest::Approx(6.0));
}

TEST_CASE("solving through the dual") {
  // max y over the triangle x ≥ 0, y ≥ 0, x + y ≤ 1 with both variables free.
  LinearProgram lp(3, 2);
  lp.objective = {0.0, 1.0};
  lp.constraints << -1, 0, 0, -1, 1, 1;
  lp.rhs = {0.0, 0.0, 1.0};
  lp.free_variable = {true, true};
  const LpSolution s = solve_lp_via_dual(lp);
  REQUIRE(s.optimal());
  CHECK(s.value == doctest::Approx(1.0));
  CHECK(s.point[0] == doctest::Approx(0.0));
  CHECK(s.point[1] == doctest::Approx(1.0));
}

TEST_CASE("largest modulus over a square") {
  LinearProgram lp(4, 2);
  lp.constraints << 1, 0, -1, 0, 0, 1, 0, -1;
  lp.rhs = {1, 1, 1, 1};
  lp.objective = {0.0, 0.0};
  lp.free_variable = {true, true};
  const std::vector<double> re{1.0, 0.0};
  const std::vector<double> im{0.0, 1.0};
  const ModulusResult r = max_modulus(lp, re, im, 2.0 * std::numbers::pi);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.upper_bound - r.value <= 1e-10);
  // The square is invariant under a quarter turn.
  const ModulusResult q = max_modulus(lp, re, im, 0.5 * std::numbers::pi);
  CHECK(q.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
