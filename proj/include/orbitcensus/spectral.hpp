#pragma once

#include <span>

#include <Eigen/Dense>

#include "orbitcensus/model.hpp"

namespace orbitcensus {

struct SpectralOptions {
  double tolerance = 1e-13;
  int max_iterations = 100000;
};

/// Leading eigen-data of the vertex transfer matrix
///
///   A(s, xi)_{uv} = sum over edges e: u -> v of exp(<xi, w_e> - s l_e).
///
/// The matrix is nonnegative and irreducible for a strongly connected model.
struct PerronData {
  double log_radius = 0.0;
  Eigen::VectorXd right;  // positive, unit 1-norm
  Eigen::VectorXd left;   // positive, unit 1-norm
  // Edge occupation measure p_e = u_{from} A_e v_{to} / (lambda <u, v>); sums to 1.
  Eigen::VectorXd edge_measure;
  // d log(lambda) / ds = -E_p[length]
  double d_ds = 0.0;
  // d log(lambda) / d xi = E_p[weight]
  Eigen::VectorXd d_dxi;
};

/// Power iteration on the shifted matrix A + cI (primitive even when A is
/// periodic), stopped when the Collatz-Wielandt bounds on lambda agree to the
/// relative tolerance. The radius itself is the two-sided Rayleigh quotient
/// <u, A v> / <u, v>. Throws NumericError when the iteration cap is reached.
PerronData perron_data(const MarkovFlowModel& model, double s, std::span<const double> xi,
                       const SpectralOptions& options = {});

}  // namespace orbitcensus
