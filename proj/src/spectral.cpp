#include "orbitcensus/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

namespace {

// Returns the Perron vector of (B + cI) or of its transpose.
Eigen::VectorXd perron_vector(const Eigen::MatrixXd& shifted, double shift, const SpectralOptions& options) {
  const Eigen::Index n = shifted.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double gap = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd y = shifted * x;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(x[i] > 0.0)) throw ModelError("transfer matrix is reducible (Perron vector lost positivity)");
      const double q = y[i] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    x = y / y.sum();
    gap = (hi - lo) / std::max(lo - shift, std::numeric_limits<double>::min());
    if (gap <= options.tolerance) return x;
  }
  throw NumericError("power iteration did not converge: relative Collatz-Wielandt gap " + std::to_string(gap) +
                     " after " + std::to_string(options.max_iterations) + " iterations");
}

}  // namespace

PerronData perron_data(const MarkovFlowModel& model, double s, std::span<const double> xi,
                       const SpectralOptions& options) {
  if (xi.size() != model.k()) throw DomainError("xi has dimension " + std::to_string(xi.size()) + ", model has k = " + std::to_string(model.k()));
  if (!std::isfinite(s)) throw DomainError("pressure parameter s must be finite");
  require_strongly_connected(model);

  const auto& edges = model.edges();
  std::vector<double> exponent(edges.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    double x = -s * edges[i].length;
    for (std::size_t j = 0; j < xi.size(); ++j) x += xi[j] * static_cast<double>(edges[i].weight[j]);
    exponent[i] = x;
    top = std::max(top, x);
  }
  if (!std::isfinite(top)) throw DomainError("non-finite transfer matrix exponent");

  // Entries are scaled by exp(-top) so the largest is 1; lambda = exp(top) * lambda(B).
  const auto n = static_cast<Eigen::Index>(model.vertex_count());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> scaled(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    scaled[i] = std::exp(exponent[i] - top);
    B(static_cast<Eigen::Index>(edges[i].from), static_cast<Eigen::Index>(edges[i].to)) += scaled[i];
  }

  PerronData out;
  if (n == 1) {
    out.right = out.left = Eigen::VectorXd::Ones(1);
  } else {
    const double shift = B.rowwise().sum().maxCoeff();
    Eigen::MatrixXd shifted = B;
    shifted.diagonal().array() += shift;
    out.right = perron_vector(shifted, shift, options);
    out.left = perron_vector(shifted.transpose(), shift, options);
  }

  const double uv = out.left.dot(out.right);
  const double lambda = out.left.dot(B * out.right) / uv;
  if (!(lambda > 0.0)) throw NumericError("non-positive spectral radius");
  out.log_radius = top + std::log(lambda);

  out.edge_measure.resize(static_cast<Eigen::Index>(edges.size()));
  out.d_ds = 0.0;
  out.d_dxi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.k()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double p = out.left[static_cast<Eigen::Index>(edges[i].from)] * scaled[i] *
                     out.right[static_cast<Eigen::Index>(edges[i].to)] / (lambda * uv);
    out.edge_measure[static_cast<Eigen::Index>(i)] = p;
    out.d_ds -= p * edges[i].length;
    for (std::size_t j = 0; j < model.k(); ++j) {
      out.d_dxi[static_cast<Eigen::Index>(j)] += p * static_cast<double>(edges[i].weight[j]);
    }
  }
  return out;
}

}  // namespace orbitcensus
