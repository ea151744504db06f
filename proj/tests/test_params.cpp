#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coalbranch/params.hpp"
#include "coalbranch/params_json.hpp"

using namespace coalbranch;

namespace {

AtomicMeasure orthant(int d, std::vector<Atom> atoms) {
  return AtomicMeasure(d, Domain::kPositiveOrthant, std::move(atoms));
}
AtomicMeasure cube(int d, std::vector<Atom> atoms) {
  return AtomicMeasure(d, Domain::kUnitCube, std::move(atoms));
}

}  // namespace

TEST_CASE("integrate single-atom linearity") {
  const auto m = orthant(1, {{{0.5}, 2.0}});
  CHECK(m.integrate([](const std::vector<double>& u) { return u[0]; }) ==
        doctest::Approx(1.0));
}

TEST_CASE("integrate empty measure") {
  const auto m = orthant(1, {});
  CHECK(m.integrate([](const std::vector<double>&) { return 42.0; }) == 0.0);
}

TEST_CASE("integrate two-atom product") {
  const auto m = orthant(2, {{{0.5, 0.25}, 1.0}, {{0.2, 0.2}, 3.0}});
  const double v =
      m.integrate([](const std::vector<double>& u) { return u[0] * u[1]; });
  CHECK(v == doctest::Approx(0.245));
}

TEST_CASE("integrate is additive over disjoint atom unions") {
  const std::vector<Atom> a{{{0.1, 0.4}, 0.7}, {{1.5, 0.2}, 1.1}};
  const std::vector<Atom> b{{{2.0, 3.0}, 0.3}};
  auto f = [](const std::vector<double>& u) { return std::exp(-u[0]) + u[1]; };
  std::vector<Atom> both = a;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(orthant(2, both).integrate(f) ==
        doctest::Approx(orthant(2, a).integrate(f) + orthant(2, b).integrate(f)));
}

TEST_CASE("atomic measure invariants") {
  CHECK_THROWS_AS(orthant(1, {{{0.0}, 1.0}}), std::invalid_argument);   // origin
  CHECK_THROWS_AS(orthant(1, {{{0.5}, 0.0}}), std::invalid_argument);   // weight
  CHECK_THROWS_AS(orthant(1, {{{0.5}, -1.0}}), std::invalid_argument);  // weight
  CHECK_THROWS_AS(orthant(2, {{{0.5}, 1.0}}), std::invalid_argument);   // dim
  CHECK_THROWS_AS(orthant(1, {{{0.5}, 1.0}, {{0.5}, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(cube(1, {{{1.5}, 1.0}}), std::invalid_argument);  // outside cube
  CHECK_THROWS_AS(orthant(1, {{{-0.5}, 1.0}}), std::invalid_argument);
  CHECK_NOTHROW(cube(1, {{{1.0}, 1.0}}));  // boundary is inside the cube
  // merging collapses coincident points instead of throwing
  const auto merged = AtomicMeasure::with_merging(
      1, Domain::kUnitCube, {{{0.5}, 1.0}, {{0.5}, 2.0}, {{0.25}, 1.0}});
  CHECK(merged.size() == 2);
  CHECK(merged.total_mass() == doctest::Approx(4.0));
}

TEST_CASE("validate_branching pure drift") {
  SquareMatrix B(1);
  B(0, 0) = -1.0;
  const BranchingParams p(1, B, {0.0}, {orthant(1, {})});
  CHECK(validate_branching(p).ok);
}

TEST_CASE("validate_branching rejects negative off-diagonal") {
  SquareMatrix B(2);
  B(0, 1) = -0.5;
  const BranchingParams p(2, B, {0.0, 0.0}, {orthant(2, {}), orthant(2, {})});
  const auto report = validate_branching(p);
  CHECK_FALSE(report.ok);
  const auto* check = report.find("offdiag_nonneg");
  REQUIRE(check != nullptr);
  CHECK_FALSE(check->passed);
  CHECK(check->value == doctest::Approx(-0.5));
  CHECK_FALSE(simulatable(report));
}

TEST_CASE("validate_branching truncation value") {
  // atom at 2.0: xi truncates to 1, squared contribution 1 * weight
  SquareMatrix B(1);
  const BranchingParams p(1, B, {0.0}, {orthant(1, {{{2.0}, 1.0}})});
  const auto report = validate_branching(p);
  CHECK(report.ok);
  const auto* check = report.find("mu_integrability_0");
  REQUIRE(check != nullptr);
  CHECK(check->value == doctest::Approx(1.0));
}

TEST_CASE("branching structural mismatch throws") {
  SquareMatrix B(2);
  CHECK_THROWS_AS(BranchingParams(2, B, {0.0}, {orthant(2, {}), orthant(2, {})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BranchingParams(2, SquareMatrix(3), {0.0, 0.0},
                                  {orthant(2, {}), orthant(2, {})}),
                  std::invalid_argument);
}

TEST_CASE("validate_coalescent kingman") {
  SquareMatrix rho(1);
  rho(0, 0) = 1.0;
  const CoalescentParams p(1, rho, {cube(1, {})});
  const auto report = validate_coalescent(p);
  CHECK(report.ok);
  CHECK(p.is_prop());
}

TEST_CASE("validate_coalescent flags boundary mass") {
  SquareMatrix rho(1);
  const CoalescentParams p(1, rho, {cube(1, {{{1.0}, 1.0}})});
  const auto report = validate_coalescent(p);
  const auto* prop = report.find("prop");
  REQUIRE(prop != nullptr);
  CHECK_FALSE(prop->passed);
  CHECK_FALSE(p.is_prop());
  // still a legitimate coalescent for the simulators
  CHECK(simulatable(report));
}

TEST_CASE("validate_coalescent integrability sum") {
  SquareMatrix rho(2);
  const CoalescentParams p(2, rho,
                           {cube(2, {{{0.5, 0.5}, 2.0}}), cube(2, {})});
  const auto report = validate_coalescent(p);
  const auto* check = report.find("Q_integrability_0");
  REQUIRE(check != nullptr);
  CHECK(check->value == doctest::Approx(1.5));  // 2*(0.25 + 0.5)
}

TEST_CASE("bl_distance") {
  const auto m1 = cube(1, {{{0.5}, 1.0}});
  const auto m2 = cube(1, {{{0.5}, 2.0}});
  std::vector<std::function<double(const std::vector<double>&)>> probes{
      [](const std::vector<double>&) { return 1.0; }};
  CHECK(bl_distance(m1, m1, probes) == 0.0);
  CHECK(bl_distance(m1, m2, probes) == doctest::Approx(1.0));
  CHECK(bl_distance(m1, m2, probes) == bl_distance(m2, m1, probes));
  CHECK_THROWS_AS(bl_distance(m1, m2, {}), std::invalid_argument);
  const auto other = orthant(1, {{{0.5}, 1.0}});
  CHECK_THROWS_AS(bl_distance(m1, other, probes), std::invalid_argument);
}

TEST_CASE("bl_distance shrinks along weight perturbations") {
  std::vector<std::function<double(const std::vector<double>&)>> probes{
      [](const std::vector<double>&) { return 1.0; }};
  const auto base = cube(1, {{{0.5}, 2.0}});
  double prev = 1e100;
  for (int n = 1; n <= 64; n *= 2) {
    const auto scaled = cube(1, {{{0.5}, 2.0 * (1.0 + 1.0 / n)}});
    const double dist = bl_distance(base, scaled, probes);
    CHECK(dist == doctest::Approx(2.0 / n));
    CHECK(dist < prev);
    prev = dist;
  }
}

TEST_CASE("json round trip preserves parameters") {
  SquareMatrix B(2);
  B(0, 0) = -0.25;
  B(0, 1) = 0.5;
  B(1, 0) = 1.5;
  B(1, 1) = 0.0;
  const BranchingParams p(
      2, B, {1.0, 0.5},
      {orthant(2, {{{0.5, 0.0}, 2.0}}), orthant(2, {{{1.0, 2.0}, 0.25}})});
  const auto j = branching_to_json(p);
  CHECK(j.at("d") == 2);
  CHECK(j.at("B")[0][1] == 0.5);
  CHECK(j.at("mu")[0][0].at("weight") == 2.0);
  const BranchingParams q = branching_from_json(j);
  CHECK(q.B(1, 0) == 1.5);
  CHECK(q.mu[1].atoms()[0].point[1] == 2.0);
  CHECK(digest(p) == digest(q));

  SquareMatrix rho(2);
  rho(0, 1) = 3.0;
  const CoalescentParams cp(2, rho, {cube(2, {{{0.5, 0.25}, 1.0}}), cube(2, {})});
  const CoalescentParams cq = coalescent_from_json(coalescent_to_json(cp));
  CHECK(cq.rho(0, 1) == 3.0);
  CHECK(digest(cp) == digest(cq));
}

TEST_CASE("json field errors are named") {
  nlohmann::json j{{"d", 1}, {"c", {0.0}}};
  j["mu"] = nlohmann::json::array({nlohmann::json::array()});
  CHECK_THROWS_WITH_AS(branching_from_json(j), doctest::Contains("'B'"),
                       std::runtime_error);
  CHECK(detect_params_kind(j) == ParamsKind::kBranching);
  nlohmann::json neither{{"d", 1}};
  CHECK_THROWS_AS(detect_params_kind(neither), std::runtime_error);
}
