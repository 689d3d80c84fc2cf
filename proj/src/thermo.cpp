#include "orbitcensus/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "orbitcensus/errors.hpp"
#include "orbitcensus/spectral.hpp"

namespace orbitcensus {

namespace {

constexpr double kHessianStep = 1e-4;
constexpr double kJacobianStep = 1e-5;
constexpr double kXiResidual = 1e-10;
constexpr double kXiLimit = 200.0;

void require_dimension(const MarkovFlowModel& model, std::size_t dimension, const char* what) {
  if (dimension != model.k()) {
    throw DomainError(std::string(what) + " has dimension " + std::to_string(dimension) + ", model has k = " +
                      std::to_string(model.k()));
  }
}

std::span<const double> as_span(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

Eigen::VectorXd to_eigen(std::span<const double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double shift_pressure(const MarkovFlowModel& model, double s, std::span<const double> xi) {
  require_dimension(model, xi.size(), "xi");
  return perron_data(model, s, xi).log_radius;
}

double flow_pressure(const MarkovFlowModel& model, std::span<const double> xi) {
  require_dimension(model, xi.size(), "xi");
  require_strongly_connected(model);
  auto f = [&](double s) { return perron_data(model, s, xi).log_radius; };

  // shift_pressure is strictly decreasing in s, from +inf to -inf.
  double lo = 0.0, hi = 0.0;
  const double f0 = f(0.0);
  if (f0 == 0.0) return 0.0;
  if (f0 > 0.0) {
    hi = 1.0;
    while (f(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e12) throw NumericError("flow_pressure: failed to bracket the pressure root");
    }
  } else {
    lo = -1.0;
    while (f(lo) < 0.0) {
      hi = lo;
      lo *= 2.0;
      if (lo < -1e12) throw NumericError("flow_pressure: failed to bracket the pressure root");
    }
  }
  while (hi - lo > 1e-6 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }

  // Newton polish, safeguarded by the bracket.
  double s = 0.5 * (lo + hi);
  double best_s = s;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 60; ++iter) {
    const PerronData d = perron_data(model, s, xi);
    const double r = d.log_radius;
    if (std::abs(r) < best_residual) {
      best_residual = std::abs(r);
      best_s = s;
    }
    if (r == 0.0) break;
    (r > 0.0 ? lo : hi) = s;
    double next = s - r / d.d_ds;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - s);
    s = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s))) {
      const double rs = std::abs(f(s));
      if (rs < best_residual) {
        best_residual = rs;
        best_s = s;
      }
      break;
    }
  }
  if (!(best_residual <= 1e-12)) {
    throw NumericError("flow_pressure: root residual " + format_double(best_residual) + " exceeds 1e-12");
  }
  return best_s;
}

Eigen::VectorXd flow_pressure_gradient(const MarkovFlowModel& model, std::span<const double> xi) {
  const double s = flow_pressure(model, xi);
  const PerronData d = perron_data(model, s, xi);
  return d.d_dxi / (-d.d_ds);
}

Eigen::MatrixXd flow_pressure_hessian(const MarkovFlowModel& model, std::span<const double> xi) {
  require_dimension(model, xi.size(), "xi");
  const auto k = static_cast<Eigen::Index>(model.k());
  const Eigen::VectorXd center = to_eigen(xi);
  auto p_at = [&](const Eigen::VectorXd& offset) {
    const Eigen::VectorXd point = center + offset;
    return flow_pressure(model, as_span(point));
  };
  const double p0 = flow_pressure(model, xi);

  auto second_differences = [&](double step) {
    Eigen::MatrixXd D(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      Eigen::VectorXd ei = Eigen::VectorXd::Zero(k);
      ei[i] = step;
      D(i, i) = (p_at(ei) - 2.0 * p0 + p_at(-ei)) / (step * step);
      for (Eigen::Index j = 0; j < i; ++j) {
        Eigen::VectorXd ej = Eigen::VectorXd::Zero(k);
        ej[j] = step;
        D(i, j) = D(j, i) = (p_at(ei + ej) - p_at(ei - ej) - p_at(ej - ei) + p_at(-ei - ej)) / (4.0 * step * step);
      }
    }
    return D;
  };
  const Eigen::MatrixXd coarse = second_differences(kHessianStep);
  const Eigen::MatrixXd fine = second_differences(0.5 * kHessianStep);
  const Eigen::MatrixXd richardson = (4.0 * fine - coarse) / 3.0;
  return 0.5 * (richardson + richardson.transpose());
}

std::vector<double> winding_cycle(const MarkovFlowModel& model) {
  const std::vector<double> zero(model.k(), 0.0);
  const Eigen::VectorXd g = flow_pressure_gradient(model, zero);
  return {g.data(), g.data() + g.size()};
}

PressureHessian pressure_hessian(const MarkovFlowModel& model) {
  const std::vector<double> zero(model.k(), 0.0);
  PressureHessian out;
  out.pressure_hessian = flow_pressure_hessian(model, zero);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.pressure_hessian);
  // finite differences leave ~1e-8 noise in a degenerate direction, so compare against the spread
  if (eig.eigenvalues().minCoeff() <= 1e-6 * std::max(1.0, eig.eigenvalues().maxCoeff())) {
    throw ModelError("homology direction carries no variance (pressure Hessian eigenvalue " +
                     format_double(eig.eigenvalues().minCoeff()) + ")");
  }
  out.H = out.pressure_hessian.inverse();
  out.H = 0.5 * (out.H + out.H.transpose());
  out.sigma = std::pow(out.H.determinant(), -1.0 / (2.0 * static_cast<double>(model.k())));
  return out;
}

std::vector<double> xi_of_rho(const MarkovFlowModel& model, std::span<const double> rho) {
  require_dimension(model, rho.size(), "rho");
  require_strongly_connected(model);
  const std::size_t k = model.k();
  for (double r : rho) {
    if (!std::isfinite(r)) throw DomainError("rho must be finite");
  }
  // Every winding cycle averages the edge slopes w_e / l_e, so rho has to lie
  // strictly inside their per-coordinate range.
  for (std::size_t j = 0; j < k; ++j) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& e : model.edges()) {
      const double slope = static_cast<double>(e.weight[j]) / e.length;
      lo = std::min(lo, slope);
      hi = std::max(hi, slope);
    }
    if (!(rho[j] > lo && rho[j] < hi)) {
      throw DomainError("rho lies outside the interior of the winding-cycle set (coordinate " + std::to_string(j + 1) +
                        ")");
    }
  }

  const Eigen::VectorXd target = to_eigen(rho);
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  auto residual_at = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(flow_pressure_gradient(model, as_span(x)) - target); };
  Eigen::VectorXd residual = residual_at(xi);

  for (int iter = 0; iter < 200; ++iter) {
    if (residual.lpNorm<Eigen::Infinity>() <= kXiResidual) return {xi.data(), xi.data() + xi.size()};

    Eigen::MatrixXd jacobian(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(k); ++j) {
      Eigen::VectorXd ej = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
      ej[j] = kJacobianStep;
      jacobian.col(j) = (residual_at(xi + ej) - residual_at(xi - ej)) / (2.0 * kJacobianStep);
    }
    jacobian = 0.5 * (jacobian + jacobian.transpose());
    Eigen::LDLT<Eigen::MatrixXd> solver(jacobian);
    if (solver.info() != Eigen::Success || !solver.isPositive() || solver.vectorD().minCoeff() <= 0.0) {
      throw DomainError("rho lies outside the interior of the winding-cycle set (flat pressure direction)");
    }
    const Eigen::VectorXd step = solver.solve(-residual);

    double damping = 1.0;
    const double norm = residual.norm();
    for (;;) {
      const Eigen::VectorXd trial = xi + damping * step;
      if (trial.norm() > kXiLimit) {
        throw DomainError("rho lies outside the interior of the winding-cycle set (Legendre inverse diverges)");
      }
      const Eigen::VectorXd trial_residual = residual_at(trial);
      if (trial_residual.norm() < norm) {
        xi = trial;
        residual = trial_residual;
        break;
      }
      damping *= 0.5;
      if (damping < 1e-12) throw NumericError("xi_of_rho: damped Newton stalled at residual " + format_double(norm));
    }
  }
  throw NumericError("xi_of_rho: Newton iteration cap reached at residual " +
                     format_double(residual.lpNorm<Eigen::Infinity>()));
}

double entropy_function(const MarkovFlowModel& model, std::span<const double> rho) {
  const std::vector<double> xi = xi_of_rho(model, rho);
  double value = flow_pressure(model, xi);
  for (std::size_t i = 0; i < xi.size(); ++i) value -= xi[i] * rho[i];
  return value;
}

double local_constant(const MarkovFlowModel& model, std::span<const double> rho) {
  const std::vector<double> xi = xi_of_rho(model, rho);
  double entropy = flow_pressure(model, xi);
  for (std::size_t i = 0; i < xi.size(); ++i) entropy -= xi[i] * rho[i];
  if (!(entropy > 0.0)) throw NumericError("local_constant: entropy function is not positive at rho");
  // grad^2 h(rho) = -(grad^2 p(xi))^{-1}; only the absolute determinant is used.
  const double det_p = flow_pressure_hessian(model, xi).determinant();
  if (!(det_p > 0.0)) throw NumericError("local_constant: degenerate pressure Hessian");
  const double k = static_cast<double>(model.k());
  return std::pow(det_p, -0.5) / (std::pow(2.0 * std::numbers::pi, k / 2.0) * entropy);
}

// ---------------------------------------------------------------------------
// Summary

double local_constant_at_winding_cycle(std::size_t k, double sigma, double h) {
  const double kd = static_cast<double>(k);
  return 1.0 / (std::pow(2.0 * std::numbers::pi, kd / 2.0) * std::pow(sigma, kd) * h);
}

double pair_constant(const ThermoSummary& summary) {
  const double k = static_cast<double>(summary.k);
  return 1.0 / (std::pow(2.0, k) * std::pow(std::numbers::pi, k / 2.0) * std::pow(summary.sigma, k) * summary.h *
                summary.h);
}

double pair_constant_composed(const ThermoSummary& summary) {
  const double k = static_cast<double>(summary.k);
  return summary.c_phi0 * summary.c_phi0 * std::pow(std::numbers::pi, k / 2.0) * std::pow(summary.sigma, k);
}

ThermoSummary ThermoSummary::from_parts(double h, std::vector<double> phi0, const Eigen::MatrixXd& H) {
  const std::size_t k = phi0.size();
  if (k == 0) throw DomainError("summary: k must be at least 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("summary: h must be positive");
  if (H.rows() != static_cast<Eigen::Index>(k) || H.cols() != static_cast<Eigen::Index>(k)) {
    throw DomainError("summary: H must be k x k");
  }
  const Eigen::MatrixXd symmetric = 0.5 * (H + H.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(symmetric);
  if (llt.info() != Eigen::Success) throw DomainError("summary: H must be positive definite");

  ThermoSummary s;
  s.k = k;
  s.h = h;
  s.phi0 = std::move(phi0);
  s.H = symmetric;
  s.pressure_hessian = symmetric.inverse();
  s.sigma = std::pow(symmetric.determinant(), -1.0 / (2.0 * static_cast<double>(k)));
  s.c_phi0 = local_constant_at_winding_cycle(k, s.sigma, h);
  s.c_pair = pair_constant(s);
  return s;
}

ThermoSummary ThermoSummary::from_constants(std::size_t k, double h, double c_phi0) {
  if (k == 0 || !(h > 0.0) || !(c_phi0 > 0.0)) throw DomainError("summary: need k >= 1, h > 0, C(Phi_0) > 0");
  const double kd = static_cast<double>(k);
  const double sigma_k = 1.0 / (std::pow(2.0 * std::numbers::pi, kd / 2.0) * h * c_phi0);
  const double sigma = std::pow(sigma_k, 1.0 / kd);
  ThermoSummary s = from_parts(h, std::vector<double>(k, 0.0),
                               Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) /
                                   (sigma * sigma));
  // keep the defining inputs exact rather than round-tripping through det(H)
  s.sigma = sigma;
  s.c_phi0 = c_phi0;
  s.c_pair = pair_constant(s);
  return s;
}

ThermoSummary ThermoSummary::from_model(const MarkovFlowModel& model) {
  require_strongly_connected(model);
  const std::vector<double> zero(model.k(), 0.0);
  ThermoSummary s;
  s.k = model.k();
  s.h = flow_pressure(model, zero);
  if (!(s.h > 0.0)) throw ModelError("topological entropy is not positive");
  s.phi0 = winding_cycle(model);
  PressureHessian ph = orbitcensus::pressure_hessian(model);
  s.pressure_hessian = std::move(ph.pressure_hessian);
  s.H = std::move(ph.H);
  s.sigma = ph.sigma;
  s.c_phi0 = local_constant_at_winding_cycle(s.k, s.sigma, s.h);
  s.c_pair = pair_constant(s);
  return s;
}

std::string format_summary(const ThermoSummary& s) {
  auto matrix = [](const Eigen::MatrixXd& m) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out += i ? ", [" : "[";
      for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + format_double(m(i, j));
      out += "]";
    }
    return out + "]";
  };
  std::string out;
  out += "k                = " + std::to_string(s.k) + "\n";
  out += "h                = " + format_double(s.h) + "\n";
  out += "phi0             = (";
  for (std::size_t i = 0; i < s.phi0.size(); ++i) out += (i ? ", " : "") + format_double(s.phi0[i]);
  out += ")\n";
  out += "pressure_hessian = " + matrix(s.pressure_hessian) + "\n";
  out += "H                = " + matrix(s.H) + "\n";
  out += "sigma            = " + format_double(s.sigma) + "\n";
  out += "c_phi0           = " + format_double(s.c_phi0) + "\n";
  out += "c_pair           = " + format_double(s.c_pair) + "\n";
  return out;
}

std::string summary_record(const ThermoSummary& s) {
  std::string out = "thermo," + std::to_string(s.k) + "," + format_double(s.h);
  for (double x : s.phi0) out += "," + format_double(x);
  for (Eigen::Index i = 0; i < s.pressure_hessian.rows(); ++i)
    for (Eigen::Index j = 0; j < s.pressure_hessian.cols(); ++j) out += "," + format_double(s.pressure_hessian(i, j));
  for (Eigen::Index i = 0; i < s.H.rows(); ++i)
    for (Eigen::Index j = 0; j < s.H.cols(); ++j) out += "," + format_double(s.H(i, j));
  out += "," + format_double(s.sigma) + "," + format_double(s.c_phi0) + "," + format_double(s.c_pair);
  return out;
}

ThermoSummary parse_summary_record(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end = line.find(',', pos);
    if (end == std::string_view::npos) end = line.size();
    std::string f(line.substr(pos, end - pos));
    while (!f.empty() && (f.back() == '\r' || f.back() == '\n' || f.back() == ' ')) f.pop_back();
    fields.push_back(std::move(f));
    pos = end + 1;
  }
  if (fields.size() < 2 || fields[0] != "thermo") throw IngestionError("summary record must start with 'thermo,k'");
  char* end = nullptr;
  const long k = std::strtol(fields[1].c_str(), &end, 10);
  if (k < 1 || *end != '\0') throw IngestionError("summary record: bad k");
  const std::size_t ku = static_cast<std::size_t>(k);
  const std::size_t expected = 2 + 1 + ku + 2 * ku * ku + 3;
  if (fields.size() != expected) {
    throw IngestionError("summary record: expected " + std::to_string(expected) + " fields, found " +
                         std::to_string(fields.size()));
  }
  std::size_t next = 2;
  auto number = [&] {
    const std::string& f = fields[next++];
    char* e = nullptr;
    const double v = std::strtod(f.c_str(), &e);
    if (f.empty() || *e != '\0' || !std::isfinite(v)) throw IngestionError("summary record: bad number '" + f + "'");
    return v;
  };
  ThermoSummary s;
  s.k = ku;
  s.h = number();
  for (std::size_t i = 0; i < ku; ++i) s.phi0.push_back(number());
  s.pressure_hessian.resize(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) s.pressure_hessian(i, j) = number();
  s.H.resize(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) s.H(i, j) = number();
  s.sigma = number();
  s.c_phi0 = number();
  s.c_pair = number();
  if (!(s.h > 0.0) || !(s.sigma > 0.0)) throw IngestionError("summary record: h and sigma must be positive");
  return s;
}

}  // namespace orbitcensus
