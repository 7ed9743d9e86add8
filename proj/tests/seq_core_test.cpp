#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfx/instances.hpp"
#include "cfx/poly_roots.hpp"
#include "cfx/seq_core.hpp"

using namespace cfx;

TEST_CASE("dft and inverse round trip") {
  Rng rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  SeqZm s(9);
  for (int k = 0; k < 9; ++k) s[k] = {n(rng), n(rng)};
  const SeqZm back = idft_zm(dft_zm(s));
  for (int k = 0; k < 9; ++k) CHECK(std::abs(back[k] - s[k]) < 1e-13);
}

TEST_CASE("dft of the delta at zero is flat with the 1/m factor") {
  SeqZm delta(8);
  delta[0] = 1.0;
  const SeqZm spectrum = dft_zm(delta);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(spectrum[k] - cplx(0.125)) < 1e-15);
}

TEST_CASE("positive definiteness on Z_m") {
  Rng rng(3);
  CHECK(is_pd_zm(random_pd_zm(rng, 12)).is_pd);
  // 1 + 2cos(πν/2) is negative at ν = 2.
  const PdCertificate c = is_pd_zm(SeqZm({1.0, 1.0, 0.0, 1.0}));
  CHECK_FALSE(c.is_pd);
  CHECK(c.min_location == doctest::Approx(2.0));
  CHECK(c.min_value == doctest::Approx(-0.25));
}

TEST_CASE("positive definiteness on Z") {
  CHECK(is_pd_z(triangle_sequence(5)).is_pd);
  const SeqZ bad{{0, 1.0}, {1, 0.6}, {-1, 0.6}};
  const PdCertificate c = is_pd_z(bad);
  CHECK_FALSE(c.is_pd);
  CHECK(c.min_location == doctest::Approx(0.5));
  CHECK(c.min_value == doctest::Approx(-0.2));
  CHECK_FALSE(is_pd_z(SeqZ{{0, 1.0}, {1, cplx(0.0, 0.5)}}).is_pd);
}

TEST_CASE("minimum of a trigonometric polynomial") {
  const SeqZ s{{0, 1.0}, {1, 0.5}, {-1, 0.5}};
  const TrigPoint p = min_trig(s);
  CHECK(p.t == doctest::Approx(0.5));
  CHECK(std::abs(p.value) < 1e-12);
  CHECK(trig_eval(s, 0.25).real() == doctest::Approx(1.0));
}

TEST_CASE("self-converse detection") {
  CHECK(is_self_converse(SeqZ{{1, cplx(0, 1)}, {-1, cplx(0, -1)}}, 1e-12));
  CHECK_FALSE(is_self_converse(SeqZ{{1, cplx(0, 1)}}, 1e-12));
  CHECK(is_self_converse(SeqZm({1.0, cplx(0.2, 0.1), cplx(0.2, -0.1)}), 1e-12));
}

TEST_CASE("support sets validate symmetry") {
  CHECK_THROWS_AS(SupportZm(8, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SupportZ::from_elements({0, 1, -1, 3}), std::invalid_argument);
  const SupportZm h(8, {0, 1, -1, 4});
  CHECK(h.admissible());
  CHECK(h.half() == std::vector<int>{1, 4});
  CHECK(SupportZ::from_elements({0, 2, -2, 1, -1}).half() == std::vector<int>{1, 2});
}

TEST_CASE("convolution with the reverse conjugate") {
  const SeqZ theta{{0, 1.0}, {1, cplx(0.0, 2.0)}};
  const SeqZ psi = convolve(theta, reverse_conjugate(theta));
  CHECK(psi(0).real() == doctest::Approx(5.0));
  CHECK(std::abs(psi(1) - cplx(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(psi(-1) - cplx(0.0, -2.0)) < 1e-15);
}

TEST_CASE("polynomial roots") {
  // (w − 1)(w − 2)(w + i)
  const std::vector<cplx> coeffs{cplx(0, 2), cplx(2, -3), cplx(-3, 1), 1.0};
  auto roots = poly_roots(coeffs);
  REQUIRE(roots.size() == 3);
  for (const cplx target : {cplx(1), cplx(2), cplx(0, -1)}) {
    double best = 1.0;
    for (const cplx r : roots) best = std::min(best, std::abs(r - target));
    CHECK(best < 1e-10);
  }
}
