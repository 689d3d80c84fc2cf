#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "orbitcensus/box.hpp"
#include "orbitcensus/homology.hpp"
#include "orbitcensus/thermo.hpp"

namespace orbitcensus {

/// e_T(alpha) = exp(-<alpha, H alpha> / 2T).
double gaussian_weight(double T, const HomologyClass& alpha, const Eigen::MatrixXd& H);

/// Gaussian local-limit prediction for pi~_alpha(T):
/// (e^{hT} / hT) e_T(alpha) / ((2 pi)^{k/2} sigma^k T^{k/2}).
double local_limit_prediction(double T, const HomologyClass& alpha, const ThermoSummary& summary);

/// Sum of e_T(alpha) e_T(alpha + beta) over lattice points with ||alpha|| <= Delta sqrt(T)
/// in the H-norm. Throws ResourceError when the bounding box of the ellipsoid
/// holds more than point_budget lattice points.
double gaussian_pair_sum(double T, const HomologyClass& beta, double Delta, const Eigen::MatrixXd& H,
                         std::uint64_t point_budget = 200'000'000);

/// Gaussian mass outside the H-norm ball of radius Delta, i.e. P(chi^2_k > Delta^2).
double gaussian_tail(double Delta, std::size_t k);

/// Smallest convenient Delta with gaussian_tail(Delta, k) < epsilon (chi-square quantile root).
double default_delta(std::size_t k, double epsilon = 0.01);

/// Pair-count prediction C(phi) e^{2hT} / T^{2 + k/2}; no beta dependence.
double theorem1_prediction(double T, const ThermoSummary& summary);

/// Mass of the box under the centred Gaussian with covariance H^{-1}.
/// k <= 3: nested adaptive Gauss-Kronrod quadrature (accuracy ~1e-8).
/// k > 3: randomized quasi-Monte Carlo (Sobol points, seeded shifts; ~1e-4).
double gaussian_box_mass(const Box& box, const Eigen::MatrixXd& H, std::uint64_t seed = 20240601);

}  // namespace orbitcensus
