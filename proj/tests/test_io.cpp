#include "mpfbm/error.hpp"
#include "mpfbm/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace mpfbm;
using io::Json;

TEST_SUITE("io") {

TEST_CASE("doubles print with 17 significant digits") {
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  for (double x : {1.0 / 3.0, 1.6821627548042177, -2.5e-300, 6.02214076e23})
    CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("kernel and measure round trip") {
  const auto dens = MeasureSpec::product_density(
      {AxisDensity({{0, 1}, {2, 3}}), AxisDensity({{0, 2}, {1, 2}, {4, 0.5}})});
  for (const Kernel& k : {Kernel::mpfbm(0.3), Kernel::mpfbm(0.2, dens), Kernel::levy(0.7, 3),
                          Kernel::sheet({0.2, 0.9})}) {
    const Kernel back = io::kernel_from_json(io::to_json(k));
    CHECK(io::to_json(back) == io::to_json(k));
    const Point s = point({0.5, 1.5, 0.7}).head(k.dim().value_or(2));
    const Point t = point({1.1, 0.4, 2.0}).head(k.dim().value_or(2));
    CHECK(cov(back, s, t) == cov(k, s, t));
  }
  CHECK_THROWS_AS(io::kernel_from_json(Json{{"variant", "cauchy"}, {"H", 0.3}}), InputError);
  CHECK_THROWS_AS(io::kernel_from_json(Json{{"variant", "levy"}}), InputError);
  CHECK_THROWS_AS(io::kernel_from_json(Json{{"variant", "mpfbm"}, {"H", 0.7}}), DomainError);
  CHECK_THROWS_AS(io::parse_json("{\"kernel\":"), InputError);
}

TEST_CASE("flow round trip") {
  const std::vector<FlowSpec> flows{
      FlowSpec::linear(Eigen::Vector2d(1, 0), 0, 2, true, Eigen::Vector2d(0, 1)),
      FlowSpec::power(Eigen::Vector2d(0.5, 2), Eigen::Vector2d(1, 3), 0.5, 2),
      FlowSpec::tabulated({0, 1, 2}, {point({0, 0}), point({1, 1}), point({1.5, 3})})};
  for (const auto& f : flows) {
    const FlowSpec back = io::flow_from_json(io::to_json(f));
    CHECK(io::to_json(back) == io::to_json(f));
    CHECK(back(1.3) == f(1.3));
  }
}

TEST_CASE("boxes and functionals") {
  const Box b(point({1, 0}), point({2, 3}));
  CHECK(io::box_from_json(io::to_json(b)) == b);
  CHECK_THROWS_AS(io::box_from_json(Json{{"lower", {2, 0}}, {"upper", {1, 1}}}), DomainError);
  const Json f = io::to_json(delta_functional(lower_box(point({1, 1}))));
  REQUIRE(f.size() == 4);
  CHECK(f[0]["coefficient"] == 1);
  CHECK(f[3]["point"] == Json::array({1.0, 1.0}));
}

TEST_CASE("shipped battery equals the generated one") {
  const Json j = io::parse_json(io::read_file(MPFBM_BATTERY_FILE));
  CHECK(j.at("version") == std::string(kBatteryVersion));
  for (Eigen::Index n = 1; n <= 3; ++n) {
    const Battery file = io::battery_from_json(j, n);
    const Battery gen = standard_battery(n);
    CHECK(io::battery_hash(file) == io::battery_hash(gen));
    REQUIRE(file.probes.size() == gen.probes.size());
    for (std::size_t i = 0; i < gen.probes.size(); ++i) CHECK(file.probes[i] == gen.probes[i]);
    REQUIRE(file.motions.size() == gen.motions.size());
    for (std::size_t i = 0; i < gen.motions.size(); ++i) {
      CHECK(file.motions[i].rotation() == gen.motions[i].rotation());
      CHECK(file.motions[i].translation() == gen.motions[i].translation());
    }
  }
  CHECK_THROWS_AS(io::battery_from_json(j, 4), InputError);
}

TEST_CASE("sample CSV round trip") {
  const auto c = assemble_cov(Kernel::levy(0.4), std::vector<Point>{point({0.5}), point({1.0})});
  const auto s = sample(c, 5, 9);
  std::stringstream ss;
  io::write_samples_csv(ss, s);
  CHECK(ss.str().rfind("p0,p1\n", 0) == 0);
  const auto rows = io::read_numeric_csv(ss);
  REQUIRE(rows.size() == 5);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(rows[r][j] == s.paths(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)));
  const Json side = io::sample_sidecar(s, c.points, c.kernel, 0.1);
  CHECK(side.at("seed") == 9);
  CHECK(side.contains("jitter_epsilon"));
  CHECK(side.contains("min_eigenvalue"));
}

}  // TEST_SUITE
