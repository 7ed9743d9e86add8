#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cfx/solver_z.hpp"

using namespace cfx;

namespace {

double min_on_grid(double a, double b) {
  constexpr int kSamples = 20000;
  double lo = 1e300;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = 0.5 * i / kSamples;
    lo = std::min(lo, 1.0 + 2.0 * a * std::cos(2.0 * std::numbers::pi * t) +
                          2.0 * b * std::cos(4.0 * std::numbers::pi * t));
  }
  return lo;
}

// Largest a with 1 + 2a cos 2πt + 2b cos 4πt ≥ 0 for some b: the minimum
// over t is concave in b, so ternary search over b answers each bisection
// step on a.
double ternary_oracle() {
  double lo = 0.5, hi = 1.0;
  for (int it = 0; it < 40; ++it) {
    const double a = 0.5 * (lo + hi);
    double bl = -1.0, bh = 1.0;
    for (int j = 0; j < 80; ++j) {
      const double m1 = bl + (bh - bl) / 3.0;
      const double m2 = bh - (bh - bl) / 3.0;
      if (min_on_grid(a, m1) < min_on_grid(a, m2)) bl = m1;
      else bh = m2;
    }
    (min_on_grid(a, 0.5 * (bl + bh)) >= 0.0 ? lo : hi) = a;
  }
  return lo;
}

}  // namespace

TEST_CASE("exchange against an independent search for {0, ±1, ±2}") {
  const SupportZ h({1, 2});
  const double oracle = ternary_oracle();
  CHECK(cf_z_exchange(h).value == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(oracle == doctest::Approx(std::cos(std::numbers::pi / 4.0)).epsilon(1e-6));
}

TEST_CASE("small supports on Z") {
  CHECK(cf_z(SupportZ({1})).value == doctest::Approx(0.5).epsilon(1e-10));
  const CfzReport r = cf_z_full(SupportZ({1, 2, 3}));
  CHECK(r.report.value == doctest::Approx(std::cos(std::numbers::pi / 5.0)).epsilon(1e-9));
  CHECK(r.agrees);
  CHECK(r.report.certificate.is_pd);
  CHECK(r.report.lower <= r.report.value);
  CHECK(r.report.upper >= r.report.value);
}

TEST_CASE("grid values decrease toward the limit") {
  const SupportZ h({1, 3, 5});
  const GridSequence g = grid_doubling(h);
  REQUIRE(g.values.size() >= 2);
  for (std::size_t i = 1; i < g.values.size(); ++i)
    CHECK(g.values[i].second <= g.values[i - 1].second + kMonotoneSlack);
  CHECK(g.values.back().second == doctest::Approx(cf_z(h).value).epsilon(3e-8));
}

TEST_CASE("classical values") {
  CHECK(m_classic(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m_classic(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(m_classic(4) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("dual sets on Z") {
  const SupportZ d = dual_set_z(SupportZ({1, 2}), 6);
  CHECK(d.half() == std::vector<int>{1, 3, 4, 5, 6});
  // For H = {0, ±1} the truncated dual is [0, U], so the product is the
  // classical value 2cos(π/(U+2)) and tends to 2.
  const DualityReportZ r = verify_duality_z(SupportZ({1}), {8, 16});
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].product == doctest::Approx(2.0 * std::cos(std::numbers::pi / 10.0)).epsilon(1e-8));
  CHECK(r.rows[1].product == doctest::Approx(2.0 * std::cos(std::numbers::pi / 18.0)).epsilon(1e-8));
}

TEST_CASE("exhaustive search respects its upper bound") {
  const LambdaResult r = lambda_search(2, 8);
  CHECK(r.evaluations.size() == 7);
  CHECK(r.best_value <= 1.0 - 0.5 / 9.0 + 1e-9);
  CHECK(r.best_value >= std::cos(std::numbers::pi / 4.0) - 1e-9);
}

TEST_CASE("sparse family support") {
  const SupportZ h = sparse_family_support(4, 9);
  CHECK(h.half() == std::vector<int>{1, 4, 5, 6, 7, 8, 9});
  CHECK_THROWS_AS(sparse_family_cf(3, 10), std::invalid_argument);
}
