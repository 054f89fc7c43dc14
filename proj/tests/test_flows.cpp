#include "mpfbm/error.hpp"
#include "mpfbm/flows.hpp"
#include "mpfbm/gaussian.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace mpfbm;

namespace {

std::vector<std::pair<double, double>> grid_pairs(double a, double b, int n) {
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      out.emplace_back(a + (b - a) * i / n, a + (b - a) * j / n);
  return out;
}

}  // namespace

TEST_SUITE("flows") {

TEST_CASE("theta along linear and power flows") {
  const auto leb = MeasureSpec::lebesgue();
  const auto lin = FlowSpec::linear(Eigen::Vector2d(1, 1), 0, 5);
  CHECK(theta(lin, leb, 2.0) == 4.0);
  const auto pw = FlowSpec::power(Eigen::Vector2d(1, 2), Eigen::Vector2d(1, 1), 0, 5);
  CHECK(theta(pw, leb, 3.0) == 27.0);
  CHECK(theta(pw, leb, 0.0) == 0.0);
  CHECK_THROWS_AS(lin(6.0), DomainError);
}

TEST_CASE("flow validation") {
  CHECK_THROWS_AS(FlowSpec::linear(Eigen::Vector2d(1, 0), 0, 1), DomainError);
  CHECK_NOTHROW(FlowSpec::linear(Eigen::Vector2d(1, 0), 0, 1, true));
  CHECK_THROWS_AS(FlowSpec::linear(Eigen::Vector2d(0, 0), 0, 1, true), DomainError);
  CHECK_THROWS_AS(FlowSpec::linear(Eigen::Vector2d(-1, 1), 0, 1, true), DomainError);
  CHECK_THROWS_AS(FlowSpec::power(Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1), 0, 1), DomainError);
  CHECK_THROWS_AS(FlowSpec::tabulated({0, 1, 2}, {point({0, 0}), point({1, 1}), point({0.5, 2})}),
                  DomainError);
  CHECK_THROWS_AS(FlowSpec::tabulated({0, 1, 1}, {point({0, 0}), point({1, 1}), point({2, 2})}),
                  DomainError);
  const auto tab = FlowSpec::tabulated({0, 1, 3}, {point({0, 0}), point({1, 2}), point({3, 3})});
  CHECK((tab(2.0) - point({2, 2.5})).norm() < 1e-15);
}

TEST_CASE("projected kernel matches the MpfBm covariance") {
  const auto k = Kernel::mpfbm(0.25);
  const auto lin = FlowSpec::linear(Eigen::Vector2d(1, 1), 0, 4);
  const auto pk = projected_kernel(k, lin);
  CHECK(pk(1.0, 2.0) == doctest::Approx(0.6339745962155614).epsilon(1e-14));

  const auto density = MeasureSpec::product_density(
      {AxisDensity({{0, 1}, {2, 3}, {5, 0.5}}), AxisDensity({{0, 2}, {5, 1}})});
  const std::vector<FlowSpec> flows{
      lin,
      FlowSpec::power(Eigen::Vector2d(0.5, 2), Eigen::Vector2d(1, 0.3), 0, 3),
      FlowSpec::tabulated({0, 1, 2.5, 4}, {point({0, 0}), point({0.4, 1}), point({2, 1.5}),
                                          point({3, 4})})};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& kk : {k, Kernel::mpfbm(0.4, density)}) {
    for (const auto& f : flows) {
      const auto proj = projected_kernel(kk, f);
      for (int i = 0; i < 50; ++i) {
        const double u = f.lower() + (f.upper() - f.lower()) * unit(rng);
        const double v = f.lower() + (f.upper() - f.lower()) * unit(rng);
        CHECK(std::abs(proj(u, v) - cov(kk, f(u), f(v))) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(projected_kernel(Kernel::levy(0.3), lin), DomainError);
}

TEST_CASE("fBm preservation along flows") {
  const auto probes = grid_pairs(0.0, 3.0, 8);
  const auto line = FlowSpec::linear(Eigen::Vector2d(1, 2), 0, 3);
  const auto levy = check_flow_preserves_fbm(Kernel::levy(0.35), line, probes);
  CHECK(levy.holds);
  CHECK(levy.fitted_hurst == doctest::Approx(0.35));
  CHECK(levy.fitted_scale == doctest::Approx(std::pow(5.0, 0.35)));

  const auto curve = FlowSpec::power(Eigen::Vector2d(1, 2), Eigen::Vector2d(1, 1), 0, 3);
  const auto bent = check_flow_preserves_fbm(Kernel::levy(0.35), curve, probes);
  CHECK_FALSE(bent.holds);
  CHECK(bent.max_deviation > 1e-3);

  const auto axis = FlowSpec::linear(Eigen::Vector2d(1, 0), 0, 3, true, Eigen::Vector2d(0, 1.5));
  const auto sheet = check_flow_preserves_fbm(Kernel::sheet({0.3, 0.7}), axis, grid_pairs(0.0, 3.0, 6));
  CHECK(sheet.holds);
  CHECK(sheet.fitted_hurst == doctest::Approx(0.3));

  // MpfBm along a diagonal line is fBm in θ = u², i.e. H' = 2H.
  const auto mp = check_flow_preserves_fbm(Kernel::mpfbm(0.2), FlowSpec::linear(Eigen::Vector2d(1, 1), 0, 3),
                                           probes);
  CHECK(mp.fitted_hurst == doctest::Approx(0.4));
  CHECK_FALSE(mp.holds);
}

TEST_CASE("theta Hölder exponent") {
  const auto leb = MeasureSpec::lebesgue();
  const auto lin = FlowSpec::linear(Eigen::Vector2d(1, 1), 0, 2);
  CHECK(theta_holder_exponent(lin, leb, 0.0) == 2.0);
  CHECK(theta_holder_exponent(lin, leb, 1.0) == 1.0);
  const auto pw = FlowSpec::power(Eigen::Vector2d(0.25, 0.5), Eigen::Vector2d(1, 1), 0, 2);
  CHECK(theta_holder_exponent(pw, leb, 0.0) == doctest::Approx(0.75));
  CHECK(theta_holder_exponent(pw, leb, 1.0) == 1.0);
  const auto axis = FlowSpec::linear(Eigen::Vector2d(1, 0), 0, 2, true);
  CHECK(theta_holder_exponent(axis, leb, 1.0) == std::numeric_limits<double>::infinity());
  const auto tab = FlowSpec::tabulated({0, 1}, {point({0, 0}), point({1, 1})});
  CHECK_THROWS_AS(theta_holder_exponent(tab, leb, 0.5), DomainError);
}

TEST_CASE("field samples along a flow follow the projected kernel") {
  const auto k = Kernel::mpfbm(0.3);
  const auto f = FlowSpec::power(Eigen::Vector2d(1, 0.5), Eigen::Vector2d(1, 2), 0, 2);
  const auto pk = projected_kernel(k, f);
  const std::vector<double> us{0.25, 0.5, 0.9, 1.3, 1.7, 2.0};
  std::vector<Point> pts;
  for (double u : us) pts.push_back(f(u));
  const long n = 20000;
  const auto e = empirical_cov(sample(assemble_cov(k, pts), n, 19));
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = 0; j < us.size(); ++j) {
      const double cij = pk(us[i], us[j]);
      const double sd = std::sqrt((pk(us[i], us[i]) * pk(us[j], us[j]) + cij * cij) / n);
      CHECK(std::abs(e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - cij) <= 5.0 * sd);
    }
}

}  // TEST_SUITE
