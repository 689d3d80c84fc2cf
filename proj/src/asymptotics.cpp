#include "orbitcensus/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/random/sobol.hpp>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

namespace {

double quadratic_form(const Eigen::MatrixXd& H, const HomologyClass& alpha) {
  if (static_cast<std::size_t>(H.rows()) != alpha.dimension()) throw DomainError("H and alpha dimensions differ");
  double q = 0.0;
  for (Eigen::Index i = 0; i < H.rows(); ++i)
    for (Eigen::Index j = 0; j < H.cols(); ++j)
      q += static_cast<double>(alpha[static_cast<std::size_t>(i)]) * H(i, j) *
           static_cast<double>(alpha[static_cast<std::size_t>(j)]);
  return q;
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// P(a <= Z <= b), evaluated on the side that avoids cancellation in the tails.
double normal_interval(double a, double b) {
  if (a >= 0.0) return std_normal_cdf(-a) - std_normal_cdf(-b);
  if (b <= 0.0) return std_normal_cdf(b) - std_normal_cdf(a);
  return 1.0 - std_normal_cdf(a) - std_normal_cdf(-b);
}

constexpr double kTruncation = 12.0;  // standard deviations

}  // namespace

double gaussian_weight(double T, const HomologyClass& alpha, const Eigen::MatrixXd& H) {
  if (!(T > 0.0)) throw DomainError("gaussian_weight: T must be positive");
  return std::exp(-quadratic_form(H, alpha) / (2.0 * T));
}

double local_limit_prediction(double T, const HomologyClass& alpha, const ThermoSummary& summary) {
  if (!(T > 0.0)) throw DomainError("local_limit_prediction: T must be positive");
  const double k = static_cast<double>(summary.k);
  const double log_value = summary.h * T - std::log(summary.h * T) - quadratic_form(summary.H, alpha) / (2.0 * T) -
                           0.5 * k * std::log(2.0 * std::numbers::pi) - k * std::log(summary.sigma) -
                           0.5 * k * std::log(T);
  return std::exp(log_value);
}

double gaussian_pair_sum(double T, const HomologyClass& beta, double Delta, const Eigen::MatrixXd& H,
                         std::uint64_t point_budget) {
  if (!(T > 0.0)) throw DomainError("gaussian_pair_sum: T must be positive");
  if (!(Delta > 0.0)) throw DomainError("gaussian_pair_sum: Delta must be positive");
  const std::size_t k = beta.dimension();
  if (static_cast<std::size_t>(H.rows()) != k) throw DomainError("H and beta dimensions differ");

  // Bounding box of the ellipsoid <a, H a> <= r^2: |a_i| <= r sqrt((H^{-1})_{ii}).
  const double radius_sq = Delta * Delta * T;
  const Eigen::MatrixXd cov = H.inverse();
  std::vector<std::int64_t> extent(k);
  double points = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    extent[i] = static_cast<std::int64_t>(
        std::floor(std::sqrt(radius_sq * cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)))));
    points *= static_cast<double>(2 * extent[i] + 1);
  }
  if (points > static_cast<double>(point_budget)) {
    throw ResourceError("gaussian_pair_sum: lattice ball needs " + std::to_string(points) +
                        " points, budget is " + std::to_string(point_budget));
  }

  HomologyClass alpha(k);
  for (std::size_t i = 0; i < k; ++i) alpha[i] = -extent[i];
  double total = 0.0;
  for (;;) {
    const double q = quadratic_form(H, alpha);
    if (q <= radius_sq) {
      const double q_shift = quadratic_form(H, alpha + beta);
      total += std::exp(-(q + q_shift) / (2.0 * T));
    }
    std::size_t i = 0;
    while (i < k && alpha[i] == extent[i]) {
      alpha[i] = -extent[i];
      ++i;
    }
    if (i == k) break;
    ++alpha[i];
  }
  return total;
}

double gaussian_tail(double Delta, std::size_t k) {
  if (!(Delta >= 0.0)) throw DomainError("gaussian_tail: Delta must be nonnegative");
  if (k == 0) throw DomainError("gaussian_tail: k must be at least 1");
  if (Delta == 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * static_cast<double>(k), 0.5 * Delta * Delta);
}

double default_delta(std::size_t k, double epsilon) {
  if (k == 0 || !(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("default_delta: need k >= 1, 0 < epsilon < 1");
  double delta = std::sqrt(2.0 * boost::math::gamma_q_inv(0.5 * static_cast<double>(k), epsilon));
  while (gaussian_tail(delta, k) >= epsilon) delta *= 1.0 + 1e-12;
  return delta;
}

double theorem1_prediction(double T, const ThermoSummary& summary) {
  if (!(T > 0.0)) throw DomainError("theorem1_prediction: T must be positive");
  const double k = static_cast<double>(summary.k);
  return summary.c_pair * std::exp(2.0 * summary.h * T - (2.0 + 0.5 * k) * std::log(T));
}

namespace {

// z-space bounds for coordinate i given the earlier standard normal draws:
// x = L z, so a_i <= sum_{j<i} L_ij z_j + L_ii z_i <= b_i.
std::pair<double, double> conditional_bounds(const Box& box, const Eigen::MatrixXd& L, std::size_t i,
                                             const std::vector<double>& z) {
  double shift = 0.0;
  for (std::size_t j = 0; j < i; ++j) shift += L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * z[j];
  const double d = L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  return {(box.lo[i] - shift) / d, (box.hi[i] - shift) / d};
}

double nested_quadrature(const Box& box, const Eigen::MatrixXd& L, std::size_t i, std::vector<double>& z) {
  auto [a, b] = conditional_bounds(box, L, i, z);
  const std::size_t k = box.dimension();
  if (i + 1 == k) {
    if (a >= b) return 0.0;
    return normal_interval(a, b);
  }
  a = std::max(a, -kTruncation);
  b = std::min(b, kTruncation);
  if (a >= b) return 0.0;
  auto integrand = [&](double t) {
    z[i] = t;
    return std_normal_pdf(t) * nested_quadrature(box, L, i + 1, z);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 12, 1e-11);
}

double genz_qmc(const Box& box, const Eigen::MatrixXd& L, std::uint64_t seed) {
  const std::size_t k = box.dimension();
  const boost::math::normal_distribution<double> normal;
  constexpr int kShifts = 16;
  constexpr int kPoints = 1 << 13;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double sum = 0.0;
  for (int shift = 0; shift < kShifts; ++shift) {
    std::vector<double> offset(k - 1);
    for (auto& o : offset) o = uniform(rng);
    boost::random::sobol sobol(static_cast<unsigned>(k - 1));
    const double span = static_cast<double>(sobol.max() - sobol.min()) + 1.0;
    double estimate = 0.0;
    std::vector<double> z(k, 0.0);
    std::vector<double> w(k - 1);
    for (int p = 0; p < kPoints; ++p) {
      for (auto& coordinate : w) coordinate = static_cast<double>(sobol() - sobol.min()) / span;
      double weight = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        auto [a, b] = conditional_bounds(box, L, i, z);
        const double lo = std_normal_cdf(a);
        const double hi = std_normal_cdf(b);
        weight *= std::max(hi - lo, 0.0);
        if (weight == 0.0) break;
        if (i + 1 < k) {
          double shifted = w[i] + offset[i];
          shifted -= std::floor(shifted);
          const double u = std::clamp(lo + shifted * (hi - lo), 1e-300, 1.0 - 1e-16);
          z[i] = boost::math::quantile(normal, u);
        }
      }
      estimate += weight;
    }
    sum += estimate / kPoints;
  }
  return sum / kShifts;
}

}  // namespace

double gaussian_box_mass(const Box& box, const Eigen::MatrixXd& H, std::uint64_t seed) {
  const std::size_t k = box.dimension();
  if (k == 0 || box.hi.size() != k) throw DomainError("gaussian_box_mass: malformed box");
  if (static_cast<std::size_t>(H.rows()) != k) throw DomainError("gaussian_box_mass: H and box dimensions differ");
  if (box.empty()) return 0.0;
  bool whole = true;
  for (std::size_t i = 0; i < k; ++i) whole = whole && std::isinf(box.lo[i]) && box.lo[i] < 0 && std::isinf(box.hi[i]);
  if (whole) return 1.0;

  Eigen::LLT<Eigen::MatrixXd> llt(H.inverse());
  if (llt.info() != Eigen::Success) throw DomainError("gaussian_box_mass: H must be positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  if (k <= 3) {
    std::vector<double> z(k, 0.0);
    return std::clamp(nested_quadrature(box, L, 0, z), 0.0, 1.0);
  }
  return std::clamp(genz_qmc(box, L, seed), 0.0, 1.0);
}

}  // namespace orbitcensus
