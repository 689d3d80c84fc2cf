#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "orbitcensus/model.hpp"

namespace orbitcensus {

/// log of the spectral radius of A(s, xi) (see spectral.hpp).
double shift_pressure(const MarkovFlowModel& model, double s, std::span<const double> xi);

/// Flow pressure p(xi): the unique s with shift_pressure(s, xi) = 0.
double flow_pressure(const MarkovFlowModel& model, std::span<const double> xi);

/// Analytic gradient of p at xi: E[weight] / E[length] under the Gibbs edge measure.
Eigen::VectorXd flow_pressure_gradient(const MarkovFlowModel& model, std::span<const double> xi);

/// Hessian of p at xi by central second differences of p, step 1e-4, one
/// Richardson extrapolation, symmetrized.
Eigen::MatrixXd flow_pressure_hessian(const MarkovFlowModel& model, std::span<const double> xi);

/// Winding cycle Phi_0 of the measure of maximal entropy (= grad p(0)).
std::vector<double> winding_cycle(const MarkovFlowModel& model);

struct PressureHessian {
  Eigen::MatrixXd pressure_hessian;  // grad^2 p(0)
  Eigen::MatrixXd H;                 // its inverse, -grad^2 h(Phi_0)
  double sigma = 0.0;                // det(H)^{-1/(2k)}
};

/// Throws ModelError when some homology direction carries no variance.
PressureHessian pressure_hessian(const MarkovFlowModel& model);

/// Legendre inverse xi(rho) = (grad p)^{-1}(rho), by damped Newton from 0.
/// Throws DomainError for rho outside the interior of the winding-cycle set.
std::vector<double> xi_of_rho(const MarkovFlowModel& model, std::span<const double> rho);

/// Entropy function h(rho) = p(xi(rho)) - <xi(rho), rho>.
double entropy_function(const MarkovFlowModel& model, std::span<const double> rho);

/// C(rho) = |det grad^2 h(rho)|^{1/2} / ((2 pi)^{k/2} h(rho)).
double local_constant(const MarkovFlowModel& model, std::span<const double> rho);

struct ThermoSummary {
  std::size_t k = 0;
  double h = 0.0;
  std::vector<double> phi0;
  Eigen::MatrixXd pressure_hessian;
  Eigen::MatrixXd H;
  double sigma = 0.0;
  double c_phi0 = 0.0;
  double c_pair = 0.0;

  /// Full computation from a model.
  static ThermoSummary from_model(const MarkovFlowModel& model);
  /// Completes a summary from h, Phi_0 and the positive-definite matrix H.
  static ThermoSummary from_parts(double h, std::vector<double> phi0, const Eigen::MatrixXd& H);
  /// Isotropic summary with H = sigma^{-2} I chosen so that C(Phi_0) = c_phi0.
  static ThermoSummary from_constants(std::size_t k, double h, double c_phi0);
};

/// C(Phi_0) = ((2 pi)^{k/2} sigma^k h)^{-1}.
double local_constant_at_winding_cycle(std::size_t k, double sigma, double h);

/// Pair constant 1 / (2^k pi^{k/2} sigma^k h^2).
double pair_constant(const ThermoSummary& summary);

/// Pair constant assembled as C(Phi_0)^2 pi^{k/2} sigma^k.
double pair_constant_composed(const ThermoSummary& summary);

/// Human-readable multi-line rendering.
std::string format_summary(const ThermoSummary& summary);

/// Single-line machine record, comma separated, 17 significant digits:
///   thermo,k,h,phi0_1..phi0_k,hess_11..hess_kk,H_11..H_kk,sigma,c_phi0,c_pair
/// (matrices row-major).
std::string summary_record(const ThermoSummary& summary);
ThermoSummary parse_summary_record(std::string_view line);

}  // namespace orbitcensus
