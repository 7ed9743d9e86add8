#include <doctest.h>

#include "cfx/factorize.hpp"
#include "cfx/instances.hpp"

using namespace cfx;

TEST_CASE("factors of random positive definite sequences on Z") {
  Rng rng(5);
  for (int n = 1; n <= 12; ++n) {
    const SeqZ psi = random_pd_z(rng, n);
    const Factorization f = fejer_riesz_z(psi);
    const SeqZ& theta = std::get<SeqZ>(f.theta);
    CHECK(f.residual <= 1e-8 * psi.max_abs());
    CHECK(theta.entries().begin()->first >= 0);
    CHECK(theta.entries().rbegin()->first <= n);
    CHECK(theta(0).real() > 0.0);
  }
}

TEST_CASE("square roots on Z_m") {
  Rng rng(6);
  for (int m : {2, 7, 16, 33}) {
    const SeqZm psi = random_pd_zm(rng, m);
    const Factorization f = sqrt_zm(psi);
    CHECK(f.residual <= 1e-10 * (1.0 + std::abs(psi[0])));
    CHECK(factor_residual(std::get<SeqZm>(f.theta), psi) == doctest::Approx(f.residual));
  }
}

TEST_CASE("indefinite input is rejected") {
  CHECK_THROWS_AS(fejer_riesz_z(SeqZ{{0, 1.0}, {1, 1.0}, {-1, 1.0}}), FactorizationError);
  CHECK_THROWS_AS(sqrt_zm(SeqZm({1.0, 1.0, 0.0, 1.0})), FactorizationError);
}

TEST_CASE("a double root on the circle") {
  // (1 + w)(1 + 1/w) has a double root at −1.
  const Factorization f = fejer_riesz_z(SeqZ{{0, 2.0}, {1, 1.0}, {-1, 1.0}});
  const SeqZ& theta = std::get<SeqZ>(f.theta);
  CHECK(std::abs(theta(0) - 1.0) < 1e-7);
  CHECK(std::abs(theta(1) - 1.0) < 1e-7);
}
