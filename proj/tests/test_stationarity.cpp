#include "mpfbm/error.hpp"
#include "mpfbm/stationarity.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mpfbm;

namespace {
constexpr double kVarQuarterUnitCell = 1.6821627548042177;  // 2 + √2 - √3
const double kPi = std::numbers::pi;
}  // namespace

TEST_SUITE("stationarity") {

TEST_CASE("rigid motions must be orthogonal") {
  Eigen::MatrixXd shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK_THROWS_AS(RigidMotion(shear, Eigen::VectorXd::Zero(2)), DomainError);
  const auto g = RigidMotion::planar_rotation(kPi / 2, point({1, 1}), Eigen::VectorXd::Zero(2));
  CHECK((g(point({2, 1})) - point({1, 2})).norm() < 1e-15);
}

TEST_CASE("translation stationarity") {
  const std::vector<Point> probes{point({1, 1}), point({2, 1}), point({0.5, 2.5})};
  const std::vector<Point> shifts{point({1, 1}), point({0.3, 2})};
  const auto levy = check_translation(Kernel::levy(0.35), probes, shifts);
  CHECK(levy.holds);
  CHECK(levy.max_discrepancy <= 1e-10);

  const auto mp = check_translation(Kernel::mpfbm(0.25), {point({1, 1}), point({2, 1})},
                                    {point({1, 1})});
  CHECK_FALSE(mp.holds);
  CHECK(mp.max_discrepancy > 0.01);
  CHECK_FALSE(mp.witness.description.empty());

  const auto zero = check_translation(Kernel::mpfbm(0.25), probes, {point({0, 0})});
  CHECK(zero.max_discrepancy == 0.0);
  CHECK(zero.holds);
}

TEST_CASE("strong stationarity") {
  const std::vector<Point> probes{point({1, 1}), point({2, 1}), point({1, 2}), point({2.5, 2})};
  const auto rot30 = RigidMotion::planar_rotation(kPi / 6, point({2, 2}), Eigen::Vector2d(3, 3));
  const auto levy = check_strong(Kernel::levy(0.3), probes, {rot30});
  CHECK(levy.holds);
  CHECK(levy.max_discrepancy <= 1e-10);

  const std::vector<Point> square{point({1, 1}), point({2, 1}), point({1, 2}), point({1.5, 1.8})};
  const auto rot90 = RigidMotion::planar_rotation(kPi / 2, point({1.5, 1.5}), Eigen::Vector2d::Zero());
  const auto sheet = check_strong(Kernel::sheet({0.3, 0.3}), square, {rot90});
  CHECK_FALSE(sheet.holds);
  CHECK(sheet.max_discrepancy > 1e-3);

  const auto id = check_strong(Kernel::sheet({0.3, 0.3}), square, {RigidMotion::identity(2)});
  CHECK(id.max_discrepancy == 0.0);

  // Rotating about the origin pushes (2,1) out of the quadrant.
  const auto out = RigidMotion::planar_rotation(kPi / 3, point({0, 0}), Eigen::Vector2d::Zero());
  CHECK_THROWS_WITH_AS(check_strong(Kernel::levy(0.3), probes, {out}), "no admissible motions",
                       DomainError);
  const auto mixed = check_strong(Kernel::levy(0.3), probes, {out, rot30});
  CHECK(mixed.diagnostics.size() == 1);
}

TEST_CASE("increment translation stationarity") {
  const std::vector<Box> boxes{lower_box(point({1, 1})), lower_box(point({2, 0.5})),
                               lower_box(point({0.7, 2.2}))};
  const std::vector<Point> shifts{point({1, 1}), point({0.5, 2}), point({3, 0})};
  const auto sheet = check_increment_translation(Kernel::sheet({0.3, 0.6}), boxes, shifts);
  CHECK(sheet.holds);
  CHECK(sheet.max_discrepancy <= 1e-10);
  const auto levy = check_increment_translation(Kernel::levy(0.45), boxes, shifts);
  CHECK(levy.holds);
  CHECK(levy.max_discrepancy <= 1e-10);

  const auto mp = check_increment_translation(Kernel::mpfbm(0.25), {lower_box(point({1, 1}))},
                                              {point({1, 1})});
  CHECK_FALSE(mp.holds);
  CHECK(mp.witness.reference == doctest::Approx(1.0));
  CHECK(mp.witness.transformed == doctest::Approx(kVarQuarterUnitCell));

  CHECK_THROWS_AS(check_increment_translation(Kernel::levy(0.3),
                                              {Box(point({1, 1}), point({2, 2}))}, shifts),
                  DomainError);
}

TEST_CASE("increment strong stationarity") {
  const std::vector<Box> boxes{lower_box(point({1, 0.2})), lower_box(point({2, 0.5})),
                               lower_box(point({1.5, 1.5})), lower_box(point({0.4, 2}))};
  std::vector<RigidMotion> motions;
  for (int k = 0; k < 6; ++k)
    motions.push_back(RigidMotion::planar_rotation(k * kPi / 12, point({2, 2}), Eigen::Vector2d(3, 3)));
  const auto levy = check_increment_strong(Kernel::levy(0.3), boxes, motions);
  CHECK(levy.holds);
  CHECK(levy.max_discrepancy <= 1e-10);
  CHECK_FALSE(levy.diagnostics.empty());

  const auto id = check_increment_strong(Kernel::mpfbm(0.25), boxes, {RigidMotion::identity(2)});
  CHECK(id.max_discrepancy == 0.0);

  const RigidMotion shift(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1, 1));
  const auto mp = check_increment_strong(Kernel::mpfbm(0.25), {lower_box(point({1, 1}))}, {shift});
  CHECK_FALSE(mp.holds);
  CHECK(mp.max_discrepancy == doctest::Approx(kVarQuarterUnitCell - 1.0));

  const auto flip = RigidMotion::planar_rotation(kPi, point({0, 0}), Eigen::Vector2d(5, 5));
  CHECK_THROWS_AS(check_increment_strong(Kernel::levy(0.3), boxes, {flip}), DomainError);
}

TEST_CASE("measure stationarity") {
  const auto leb = MeasureSpec::lebesgue();
  const MeasureTriple doc{point({3, 1}), point({2, 2}), point({1, 1})};
  const auto mp = check_measure_stationarity(Kernel::mpfbm(0.25), leb, {doc});
  CHECK(mp.holds);
  CHECK(mp.max_discrepancy <= 1e-12);
  CHECK(mp.witness.reference == doctest::Approx(std::sqrt(3.0)));

  const MeasureTriple trivial{point({1.5, 2}), point({1.5, 2}), point({0, 0})};
  CHECK(check_measure_stationarity(Kernel::levy(0.7), leb, {trivial}).max_discrepancy == 0.0);

  const auto battery = standard_battery(2);
  const auto triples = measure_triples(leb, battery);
  CHECK(triples.size() == 20);
  const auto brownian_sheet = check_measure_stationarity(Kernel::sheet({0.5, 0.5}), leb, triples);
  CHECK(brownian_sheet.holds);
  CHECK(brownian_sheet.max_discrepancy <= 1e-12);

  // Triples that only raise the last coordinate cannot separate a constant-H
  // sheet from MS; one that moves both coordinates refutes H != 1/2.
  const auto sheet03 = check_measure_stationarity(Kernel::sheet({0.3, 0.3}), leb, triples);
  CHECK(sheet03.holds);
  const auto refuted = check_measure_stationarity(Kernel::sheet({0.3, 0.3}), leb, {doc});
  CHECK_FALSE(refuted.holds);
  CHECK(refuted.witness.reference == doctest::Approx(std::pow(3.0, 0.6)));
  CHECK(refuted.max_discrepancy > 0.2);
  CHECK(check_measure_stationarity(Kernel::sheet({0.5, 0.5}), leb, {doc}).max_discrepancy <= 1e-12);

  const MeasureTriple bad{point({3, 1}), point({2, 2}), point({1, 1.5})};
  CHECK_THROWS_AS(check_measure_stationarity(Kernel::mpfbm(0.25), leb, {bad}), DomainError);
}

TEST_CASE("increment measure stationarity") {
  const auto leb = MeasureSpec::lebesgue();
  const UnionPair unit{BoxUnion{lower_box(point({1, 1}))},
                       BoxUnion{Box(point({1, 1}), point({2, 2}))}};
  const auto half = check_increment_measure(Kernel::mpfbm(0.5), leb, standard_battery(2).union_pairs);
  CHECK(half.holds);

  const auto quarter = check_increment_measure(Kernel::mpfbm(0.25), leb, {unit});
  CHECK_FALSE(quarter.holds);
  CHECK(quarter.witness.reference == doctest::Approx(1.0));
  CHECK(quarter.witness.transformed == doctest::Approx(kVarQuarterUnitCell));
  CHECK(quarter.max_discrepancy >= 0.5);

  const UnionPair same{unit.first, unit.first};
  CHECK(check_increment_measure(Kernel::mpfbm(0.25), leb, {same}).max_discrepancy == 0.0);

  const UnionPair mismatched{BoxUnion{lower_box(point({1, 1}))},
                             BoxUnion{Box(point({1, 1}), point({3, 2}))}};
  CHECK_THROWS_AS(check_increment_measure(Kernel::mpfbm(0.25), leb, {mismatched}), DomainError);
}

TEST_CASE("standard battery layout") {
  const auto leb = MeasureSpec::lebesgue();
  for (Eigen::Index n = 1; n <= 3; ++n) {
    const auto b = standard_battery(n);
    CHECK(b.probes.size() == 8);
    CHECK(b.shifts.size() == 4);
    CHECK(b.motions.size() == 6);
    CHECK(b.union_pairs.size() == 5);
    for (const Point& p : b.probes) {
      CHECK((p.array() > 0.0).all());
      CHECK((p.array() <= 3.0).all());
    }
    for (const auto& u : b.union_pairs)
      CHECK(union_measure(leb, u.first) == union_measure(leb, u.second));
  }
}

TEST_CASE("implication suite verdicts") {
  const auto leb = MeasureSpec::lebesgue();
  const auto battery = standard_battery(2);

  const auto levy = implication_suite(Kernel::levy(0.4), leb, battery);
  for (Property p : {Property::ST, Property::SSS, Property::IST, Property::ISSS}) {
    REQUIRE(levy.holds(p).has_value());
    CHECK(*levy.holds(p));
  }
  CHECK(levy.violations.empty());

  for (double h : {0.1, 0.25, 0.4}) {
    const auto mp = implication_suite(Kernel::mpfbm(h), leb, battery);
    CHECK(mp.holds(Property::MS) == std::optional<bool>(true));
    CHECK(mp.holds(Property::IMS) == std::optional<bool>(false));
    CHECK(mp.violations.empty());
  }
  const auto bs = implication_suite(Kernel::mpfbm(0.5), leb, battery);
  CHECK(bs.holds(Property::MS) == std::optional<bool>(true));
  CHECK(bs.holds(Property::IMS) == std::optional<bool>(true));
  CHECK(bs.violations.empty());

  const auto sheet = implication_suite(Kernel::sheet({0.3, 0.6}), leb, battery);
  CHECK(sheet.holds(Property::IST) == std::optional<bool>(true));
  CHECK(sheet.violations.empty());
}

TEST_CASE("witnesses are reproducible") {
  const auto leb = MeasureSpec::lebesgue();
  const auto battery = standard_battery(2);
  const auto a = implication_suite(Kernel::mpfbm(0.25), leb, battery);
  const auto b = implication_suite(Kernel::mpfbm(0.25), leb, battery);
  for (Property p : kAllProperties) {
    const auto& ra = a.entry(p).report;
    const auto& rb = b.entry(p).report;
    REQUIRE(ra.has_value() == rb.has_value());
    if (!ra) continue;
    CHECK(ra->max_discrepancy == rb->max_discrepancy);
    CHECK(ra->witness.description == rb->witness.description);
  }
}

}  // TEST_SUITE
