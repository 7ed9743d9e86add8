#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cfx/io.hpp"
#include "cfx/lca_reduce.hpp"

using namespace cfx;

namespace {

OmegaDescriptor boxes(const GroupDescriptor& g, const std::string& text) {
  return omega_from_json(g, Json::parse(text));
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(format_rational(Rational(2, 4)) == "1/2");
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("group descriptors and elements") {
  const GroupDescriptor g = GroupDescriptor::parse("Z4xT");
  CHECK(g.rank() == 2);
  CHECK_FALSE(g.is_finite());
  const GroupElement x = parse_element(g, "3,3/4");
  CHECK(format_element(add(g, x, x)) == "2,1/2");
  CHECK(is_zero(add(g, x, negate(g, x))));
  CHECK(order(g, x) == 4);
  CHECK_FALSE(order(GroupDescriptor::parse("R"), parse_element(GroupDescriptor::parse("R"), "1/3")));
  CHECK_THROWS_AS(parse_element(g, "1/2,0"), std::invalid_argument);
}

TEST_CASE("reduction on a finite product") {
  const GroupDescriptor g = GroupDescriptor::parse("Z4xZ6");
  const OmegaDescriptor all = boxes(g, R"({"boxes":[[["-inf","inf"],["-inf","inf"]]]})");
  const ReducedProblem r = reduce(g, all, parse_element(g, "1,2"), std::nullopt);
  REQUIRE(r.order);
  CHECK(*r.order == 12);
  CHECK(std::get<SupportZm>(r.support).is_full());
}

TEST_CASE("reduction on the circle and the line") {
  const GroupDescriptor t = GroupDescriptor::parse("T");
  const GroupSolveReport c = solve_group(t, boxes(t, R"({"boxes":[[["-3/10","3/10"]]]})"),
                                         parse_element(t, "1/5"), ValueMode::Complex);
  CHECK(c.report.value == doctest::Approx(1.0 / (2.0 * std::cos(std::numbers::pi / 5.0))).epsilon(1e-9));

  const GroupDescriptor r = GroupDescriptor::parse("R");
  const ReducedProblem line = reduce(r, boxes(r, R"({"boxes":[[["-5/2","5/2"]]]})"), parse_element(r, "1"));
  CHECK_FALSE(line.order);
  CHECK(std::get<SupportZ>(line.support).half() == std::vector<int>{1, 2});
  CHECK(line.exhausted);
  const GroupSolveReport half = solve_group(r, boxes(r, R"({"boxes":[[["-3/2","3/2"]]]})"),
                                            parse_element(r, "1"), ValueMode::Real);
  CHECK(half.report.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("order two gives one") {
  const GroupDescriptor g = GroupDescriptor::parse("Z2xZ2");
  const OmegaDescriptor all = boxes(g, R"({"boxes":[[["-inf","inf"],["-inf","inf"]]]})");
  CHECK(solve_group(g, all, parse_element(g, "1,1"), ValueMode::Complex).report.value == 1.0);
}

TEST_CASE("witness lift and restriction") {
  const GroupDescriptor g = GroupDescriptor::parse("Z4xZ2");
  const OmegaDescriptor omega = boxes(g, R"({"explicit":[["0","0"],["1","0"],["3","0"]]})");
  const GroupElement z = parse_element(g, "1,0");
  const GroupSolveReport r = solve_group(g, omega, z, ValueMode::Complex);
  CHECK(r.report.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  const SeqZm& psi = std::get<SeqZm>(r.report.extremal);
  const GroupFunction f = lift_witness(psi, g, z, omega);
  CHECK(is_pd_group(f).is_pd);
  const SeqZm back = restrict(f, g.finite().index(std::vector<long long>{1, 0}));
  for (int k = 0; k < psi.modulus(); ++k) CHECK(back[k] == psi[k]);
}

TEST_CASE("invalid regions are rejected") {
  const GroupDescriptor g = GroupDescriptor::parse("Z5");
  CHECK_THROWS_AS(validate_omega(g, boxes(g, R"({"explicit":[["0"],["1"]]})")), std::invalid_argument);
  const GroupDescriptor r = GroupDescriptor::parse("R");
  const OmegaDescriptor ray = boxes(r, R"({"boxes":[[["-inf","inf"]]]})");
  CHECK_THROWS_AS(reduce(r, ray, parse_element(r, "1")), std::invalid_argument);
  const ReducedProblem cut = reduce(r, ray, parse_element(r, "1"), 6);
  CHECK(cut.truncated);
  CHECK(std::get<SupportZ>(cut.support).half().size() == 6);
}
