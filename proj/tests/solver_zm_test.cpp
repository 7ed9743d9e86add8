#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cfx/finite_group.hpp"
#include "cfx/instances.hpp"
#include "cfx/solver_zm.hpp"

using namespace cfx;

TEST_CASE("three-point support on Z_m") {
  for (int m = 4; m <= 12; ++m) {
    const SupportZm h(m, {0, 1, -1});
    const double expected = 1.0 / (2.0 * std::cos(std::numbers::pi / m));
    CHECK(cf_m(h).value == doctest::Approx(expected).epsilon(1e-10));
    if (m % 2 == 0) CHECK(k_m(h).value == doctest::Approx(0.5).epsilon(1e-10));
    // On odd m the real optimum equals the complex one.
    if (m % 2 == 1) CHECK(k_m(h).value == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("moduli two and three") {
  for (int m : {2, 3}) {
    const SupportZm h(m, {0, 1, -1});
    CHECK(k_m(h).value == 1.0);
    CHECK(cf_m(h).value == 1.0);
  }
}

TEST_CASE("formulations agree and the extremal function certifies") {
  Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const SupportZm h = random_support_zm(rng, 10 + 3 * trial);
    for (ValueMode mode : {ValueMode::Real, ValueMode::Complex}) {
      const SolveReport a = solve_zm(h, mode, 1e-8, Formulation::Fourier);
      const SolveReport b = solve_zm(h, mode, 1e-8, Formulation::Coefficient);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
      CHECK(a.certificate.is_pd);
      const SeqZm& psi = std::get<SeqZm>(a.extremal);
      CHECK(std::abs(psi[0] - 1.0) < 1e-9);
      for (int k = 0; k < h.modulus(); ++k)
        if (!h.contains(k)) CHECK(std::abs(psi[k]) < 1e-9);
    }
  }
}

TEST_CASE("brute force on the cyclic group matches") {
  Rng rng(8);
  for (int trial = 0; trial < 4; ++trial) {
    const SupportZm h = random_support_zm(rng, 9 + 4 * trial);
    std::vector<std::size_t> omega;
    for (int r : h.residues()) omega.push_back(static_cast<std::size_t>(r));
    const FiniteAbelianGroup g({h.modulus()});
    for (ValueMode mode : {ValueMode::Real, ValueMode::Complex}) {
      const double direct = solve_zm(h, mode).value;
      CHECK(brute_group_oracle(g, omega, 1, mode).value == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("finite duality on even moduli") {
  Rng rng(4);
  for (int m : {8, 12, 20}) {
    const DualityReportZm r = verify_duality_zm(random_support_zm(rng, m));
    CHECK(r.product == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.signed_product == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("dual set") {
  const SupportZm d = dual_set_zm(SupportZm(8, {0, 1, -1, 3, -3}));
  CHECK(d.half() == std::vector<int>{1, 2, 4});
}

TEST_CASE("inadmissible sets are rejected") {
  CHECK_THROWS_AS(k_m(SupportZm(8, {0, 2, -2})), std::invalid_argument);
}
