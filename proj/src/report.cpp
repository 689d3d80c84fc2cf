#include "orbitcensus/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "orbitcensus/asymptotics.hpp"
#include "orbitcensus/errors.hpp"

namespace orbitcensus {

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<Box> default_boxes(std::size_t k) {
  Box centred = Box::whole_space(k);
  Box half = Box::whole_space(k);
  for (std::size_t i = 0; i < k; ++i) {
    centred.lo[i] = -1.0;
    centred.hi[i] = 1.0;
  }
  half.lo[0] = 0.0;
  return {centred, half};
}

namespace {

double ratio_of(double measured, double predicted) { return predicted > 0.0 ? measured / predicted : 0.0; }

void check_grid(const OrbitTable& table, const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || t_grid[i] > table.t_max()) {
      throw OutOfRangeError("T grid value " + format_number(t_grid[i]) + " outside (0, T_max = " +
                            format_number(table.t_max()) + "]");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw UsageError("T grid must be increasing");
  }
}

}  // namespace

std::vector<CltRow> clt_table(const OrbitTable& table, const ThermoSummary& summary, const std::vector<double>& t_grid,
                              const std::vector<Box>& boxes, std::uint64_t seed) {
  check_grid(table, t_grid);
  std::vector<double> masses;
  for (const auto& box : boxes) masses.push_back(gaussian_box_mass(box, summary.H, seed));
  std::vector<CltRow> rows;
  for (double T : t_grid) {
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      rows.push_back(CltRow{T, b, empirical_clt(table, T, summary.phi0, boxes[b]), masses[b]});
    }
  }
  return rows;
}

std::string clt_csv(const std::vector<CltRow>& rows, const std::vector<Box>& boxes) {
  std::string out;
  for (std::size_t b = 0; b < boxes.size(); ++b) out += "# box" + std::to_string(b) + "=" + boxes[b].to_string() + "\n";
  out += "T,box,empirical,gaussian,deviation\n";
  for (const auto& r : rows) {
    out += format_number(r.T) + ",box" + std::to_string(r.box) + "," + format_number(r.empirical) + "," +
           format_number(r.gaussian) + "," + format_number(std::abs(r.empirical - r.gaussian)) + "\n";
  }
  return out;
}

CensusReport convergence_report(const OrbitTable& table, const ThermoSummary& summary,
                                const std::vector<HomologyClass>& betas, const std::vector<double>& t_grid,
                                double delta, const ReportOptions& options) {
  if (summary.k != table.k()) throw DomainError("summary and orbit table have different k");
  if (!(delta > 0.0)) throw DomainError("report: Delta must be positive");
  check_grid(table, t_grid);

  CensusReport report;
  report.source = table.source();
  report.summary = summary;
  report.delta = delta;
  report.delta_tail = gaussian_tail(delta, table.k());
  report.t_grid = t_grid;
  report.boxes = options.boxes.empty() ? default_boxes(table.k()) : options.boxes;
  const std::vector<HomologyClass> alphas =
      options.alphas.empty() ? std::vector<HomologyClass>{HomologyClass(table.k())} : options.alphas;

  const double k = static_cast<double>(table.k());
  const double gaussian_limit = std::pow(std::numbers::pi, k / 2.0) * std::pow(summary.sigma, k);

  for (double T : t_grid) {
    const double prediction = theorem1_prediction(T, summary);
    for (const auto& beta : betas) {
      PairRow row{T, beta, pair_count_direct(table, T, beta), pair_count_convolution(table, T, beta, summary.phi0),
                  prediction, 0.0};
      row.ratio = ratio_of(static_cast<double>(row.direct), prediction);
      report.pairs.push_back(std::move(row));
      report.gaussian_pairs.push_back(
          GaussianPairRow{T, beta, gaussian_pair_sum(T, beta, delta, summary.H) / std::pow(T, k / 2.0), gaussian_limit});
    }
    for (const auto& alpha : alphas) {
      LocalRow row{T, alpha, shifted_count(table, T, alpha, summary.phi0), local_limit_prediction(T, alpha, summary),
                   0.0};
      row.ratio = ratio_of(static_cast<double>(row.measured), row.prediction);
      report.locals.push_back(std::move(row));
    }
    const auto windows = shifted_class_counts(table, T, summary.phi0);
    std::uint64_t pi = 0;
    for (const auto& [alpha, count] : windows) pi += count;
    // every ordered pair has exactly one difference, so summing over all beta
    // is summing over all pairs
    std::uint64_t pair_total = 0;
    for (const auto& [a, ca] : windows)
      for (const auto& [b, cb] : windows) pair_total += ca * cb;
    report.totals.push_back(TotalRow{T, pi, pair_total});
  }
  report.clt = clt_table(table, summary, t_grid, report.boxes, options.seed);
  return report;
}

std::string report_csv(const CensusReport& report) {
  std::string out;
  out += "# source=" + (report.source.empty() ? std::string("unknown") : report.source) + "\n";
  out += "# delta=" + format_number(report.delta) + "\n";
  out += "# delta_tail=" + format_number(report.delta_tail) + "\n";
  out += "# " + summary_record(report.summary) + "\n";
  for (std::size_t b = 0; b < report.boxes.size(); ++b) {
    out += "# box" + std::to_string(b) + "=" + report.boxes[b].to_string() + "\n";
  }
  out += "kind,T,index,measured,check,predicted,ratio,log_residual\n";
  auto log_residual = [](double ratio) {
    return ratio > 0.0 ? format_number(std::log(ratio)) : std::string("-inf");
  };
  for (const auto& r : report.pairs) {
    out += "pair," + format_number(r.T) + "," + r.beta.to_string() + "," + std::to_string(r.direct) + "," +
           std::to_string(r.convolution) + "," + format_number(r.prediction) + "," + format_number(r.ratio) + "," +
           log_residual(r.ratio) + "\n";
  }
  for (const auto& r : report.gaussian_pairs) {
    const double ratio = r.normalized_sum / r.limit;
    out += "gaussian_pair," + format_number(r.T) + "," + r.beta.to_string() + "," + format_number(r.normalized_sum) +
           ",," + format_number(r.limit) + "," + format_number(ratio) + "," + log_residual(ratio) + "\n";
  }
  for (const auto& r : report.locals) {
    out += "local," + format_number(r.T) + "," + r.alpha.to_string() + "," + std::to_string(r.measured) + ",," +
           format_number(r.prediction) + "," + format_number(r.ratio) + "," + log_residual(r.ratio) + "\n";
  }
  for (const auto& r : report.clt) {
    const double ratio = ratio_of(r.empirical, r.gaussian);
    out += "clt," + format_number(r.T) + ",box" + std::to_string(r.box) + "," + format_number(r.empirical) + ",," +
           format_number(r.gaussian) + "," + format_number(ratio) + "," + log_residual(ratio) + "\n";
  }
  for (const auto& r : report.totals) {
    const double pi = static_cast<double>(r.pi);
    out += "total," + format_number(r.T) + ",," + std::to_string(r.pair_total) + "," + std::to_string(r.pi * r.pi) +
           "," + format_number(pi * pi) + "," + format_number(ratio_of(static_cast<double>(r.pair_total), pi * pi)) +
           ",\n";
  }
  return out;
}

}  // namespace orbitcensus
