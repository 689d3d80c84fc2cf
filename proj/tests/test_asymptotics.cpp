#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "orbitcensus/asymptotics.hpp"
#include "orbitcensus/errors.hpp"
#include "orbitcensus/thermo.hpp"

using namespace orbitcensus;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd scalar(double h) { return Eigen::MatrixXd::Constant(1, 1, h); }

}  // namespace

TEST_CASE("gaussian weight") {
  CHECK(gaussian_weight(5.0, HomologyClass{0}, scalar(1.0)) == 1.0);
  CHECK(gaussian_weight(2.0, HomologyClass{2}, scalar(1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  Eigen::MatrixXd h(2, 2);
  h << 2.0, 0.5, 0.5, 1.0;
  CHECK(gaussian_weight(3.0, HomologyClass{1, -2}, h) == gaussian_weight(3.0, HomologyClass{-1, 2}, h));
  CHECK(gaussian_weight(3.0, HomologyClass{1, -2}, h) == doctest::Approx(std::exp(-(2.0 - 2.0 + 4.0) / 6.0)).epsilon(1e-15));
}

TEST_CASE("local limit prediction") {
  const ThermoSummary s = ThermoSummary::from_parts(0.5, {0.1}, scalar(1.3));
  const double T = 12.0;
  const double base = std::exp(s.h * T) / (s.h * T * std::sqrt(2 * std::numbers::pi) * s.sigma * std::sqrt(T));
  CHECK(local_limit_prediction(T, HomologyClass{0}, s) == doctest::Approx(base).epsilon(1e-13));
  CHECK(local_limit_prediction(T, HomologyClass{3}, s) / local_limit_prediction(T, HomologyClass{0}, s) ==
        doctest::Approx(gaussian_weight(T, HomologyClass{3}, s.H)).epsilon(1e-13));

  const ThermoSummary g = ThermoSummary::from_model(bouquet_model(1, {{1.0, {1}}, {oracle::kPhi, {-1}}}));
  double total = 0.0;
  for (std::int64_t a = -200; a <= 200; ++a) total += local_limit_prediction(15.0, HomologyClass{a}, g);
  const double ratio = total / (std::exp(g.h * 15.0) / (g.h * 15.0));
  CHECK(ratio >= 0.95);
  CHECK(ratio <= 1.05);
}

TEST_CASE("gaussian pair sum against direct summation") {
  const double T = 1e4;
  double direct = 0.0;
  for (std::int64_t a = -1000; a <= 1000; ++a) {
    const double x = static_cast<double>(a);
    direct += std::exp(-(x * x + x * x) / (2 * T));
  }
  const double value = gaussian_pair_sum(T, HomologyClass{0}, 10.0, scalar(1.0));
  CHECK(value == doctest::Approx(direct).epsilon(1e-12));
  CHECK(value / std::sqrt(T) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(0.005));
}

TEST_CASE("gaussian pair sum grows with the radius and decays with beta") {
  double prev = 0.0;
  for (double d : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    const double v = gaussian_pair_sum(400.0, HomologyClass{0}, d, scalar(1.0));
    CHECK(v >= prev);
    prev = v;
  }
  // the beta shift costs a factor of roughly exp(-|beta|^2/4T)
  const double T = 2500.0;
  const double v0 = gaussian_pair_sum(T, HomologyClass{0}, 6.0, scalar(1.0));
  const double v4 = gaussian_pair_sum(T, HomologyClass{4}, 6.0, scalar(1.0));
  CHECK(v4 < v0);
  CHECK((v0 - v4) / v0 <= 4.0 / std::sqrt(T));
  Eigen::MatrixXd h2 = Eigen::MatrixXd::Identity(2, 2);
  CHECK(gaussian_pair_sum(100.0, HomologyClass{1, 0}, 4.0, h2) ==
        doctest::Approx(gaussian_pair_sum(100.0, HomologyClass{-1, 0}, 4.0, h2)).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_pair_sum(1e12, HomologyClass{0, 0}, 10.0, h2, 1000), ResourceError);
}

TEST_CASE("gaussian tail") {
  CHECK(gaussian_tail(0.0, 3) == 1.0);
  CHECK(gaussian_tail(1.959964, 1) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(gaussian_tail(2.0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  double prev = 1.0;
  for (double d = 0.25; d < 10; d += 0.25) {
    const double t = gaussian_tail(d, 3);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(prev < 1e-15);
  for (std::size_t k : {1u, 2u, 4u}) CHECK(gaussian_tail(default_delta(k), k) < 0.01);
}

TEST_CASE("pair count prediction") {
  const ThermoSummary g = ThermoSummary::from_model(bouquet_model(1, {{1.0, {1}}, {oracle::kPhi, {-1}}}));
  for (double T : {5.0, 11.0}) {
    CHECK(theorem1_prediction(T, g) == doctest::Approx(g.c_pair * std::exp(2 * g.h * T) / std::pow(T, 2.5)).epsilon(1e-13));
    CHECK(theorem1_prediction(2 * T, g) / theorem1_prediction(T, g) ==
          doctest::Approx(std::exp(2 * g.h * T) * std::pow(2.0, -2.5)).epsilon(1e-12));
  }
  const ThermoSummary genus2 = ThermoSummary::from_constants(4, 1.0, 1.0);
  CHECK(theorem1_prediction(7.0, genus2) == doctest::Approx(0.25 * std::exp(14.0) / std::pow(7.0, 4)).epsilon(1e-12));
}

TEST_CASE("gaussian box mass, quadrature branch") {
  CHECK(gaussian_box_mass(Box::whole_space(1), scalar(1.0)) == 1.0);
  CHECK(gaussian_box_mass(Box{{0.0}, {kInf}}, scalar(1.0)) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(gaussian_box_mass(Box{{-1.0}, {1.0}}, scalar(1.0)) == doctest::Approx(std::erf(1 / std::sqrt(2.0))).epsilon(1e-10));
  CHECK(gaussian_box_mass(Box{{-1.0}, {1.0}}, scalar(1.0)) == doctest::Approx(0.682689).epsilon(1e-6));
  CHECK(gaussian_box_mass(Box{{1.0}, {0.0}}, scalar(1.0)) == 0.0);
  CHECK(gaussian_box_mass(Box{{-1e300}, {1e300}}, scalar(1.0)) == doctest::Approx(1.0).epsilon(1e-12));

  // independent coordinates factorize
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 1.0, 4.0, 0.25;
  const Box b{{-1.0, -0.5, 0.0}, {1.0, 1.0, kInf}};
  const double expected = std::erf(1 / std::sqrt(2.0)) *
                          0.5 * (std::erf(1.0 * 2 / std::sqrt(2.0)) + std::erf(0.5 * 2 / std::sqrt(2.0))) * 0.5;
  CHECK(gaussian_box_mass(b, d) == doctest::Approx(expected).epsilon(1e-8));

  // correlated 2-d quadrant: P(X>0, Y>0) = 1/4 + asin(r)/(2 pi)
  const double r = 0.6;
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, r, r, 1.0;
  const Box q{{0.0, 0.0}, {kInf, kInf}};
  CHECK(gaussian_box_mass(q, cov.inverse()) ==
        doctest::Approx(0.25 + std::asin(r) / (2 * std::numbers::pi)).epsilon(1e-8));
}

TEST_CASE("gaussian box mass, quasi Monte Carlo branch") {
  // orthant probability of an exchangeable 4-d normal with correlation 1/2 is 1/5
  Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(4, 4, 0.5);
  cov.diagonal().setOnes();
  const Box q{{0, 0, 0, 0}, {kInf, kInf, kInf, kInf}};
  const double v = gaussian_box_mass(q, cov.inverse());
  CHECK(std::abs(v - 0.2) <= 1e-4);
  CHECK(gaussian_box_mass(q, cov.inverse(), 7) == doctest::Approx(v).epsilon(1e-3));
  CHECK(gaussian_box_mass(q, cov.inverse()) == v);

  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(5, 5);
  const Box cube{std::vector<double>(5, -1.0), std::vector<double>(5, 1.0)};
  CHECK(std::abs(gaussian_box_mass(cube, id) - std::pow(std::erf(1 / std::sqrt(2.0)), 5)) <= 1e-4);
  CHECK(gaussian_box_mass(Box::whole_space(5), id) == 1.0);
}
