#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbitcensus/box.hpp"
#include "orbitcensus/census.hpp"
#include "orbitcensus/thermo.hpp"

namespace orbitcensus {

struct PairRow {
  double T = 0.0;
  HomologyClass beta;
  std::uint64_t direct = 0;
  std::uint64_t convolution = 0;
  double prediction = 0.0;  // pair-count asymptotic, independent of beta
  double ratio = 0.0;
};

struct GaussianPairRow {
  double T = 0.0;
  HomologyClass beta;
  double normalized_sum = 0.0;  // gaussian_pair_sum / T^{k/2}
  double limit = 0.0;           // pi^{k/2} sigma^k
};

struct LocalRow {
  double T = 0.0;
  HomologyClass alpha;
  std::uint64_t measured = 0;  // pi~_alpha(T)
  double prediction = 0.0;     // Gaussian local-limit prediction
  double ratio = 0.0;
};

struct CltRow {
  double T = 0.0;
  std::size_t box = 0;
  double empirical = 0.0;
  double gaussian = 0.0;
};

struct TotalRow {
  double T = 0.0;
  std::uint64_t pi = 0;
  // sum over every beta of pi_2^beta(T); equals pi^2
  std::uint64_t pair_total = 0;
};

struct CensusReport {
  std::string source;
  ThermoSummary summary;
  double delta = 0.0;
  double delta_tail = 0.0;
  std::vector<double> t_grid;
  std::vector<Box> boxes;
  std::vector<PairRow> pairs;
  std::vector<GaussianPairRow> gaussian_pairs;
  std::vector<LocalRow> locals;
  std::vector<CltRow> clt;
  std::vector<TotalRow> totals;
};

struct ReportOptions {
  std::vector<HomologyClass> alphas;  // empty: {0}
  std::vector<Box> boxes;             // empty: default_boxes(k)
  std::uint64_t seed = 20240601;
};

/// [-1,1]^k and [0,inf) x R^{k-1}.
std::vector<Box> default_boxes(std::size_t k);

/// Measured-versus-predicted tables over a T grid. Ratios are measured/predicted
/// (0 when nothing is measured). Throws OutOfRangeError if the grid leaves (0, T_max].
CensusReport convergence_report(const OrbitTable& table, const ThermoSummary& summary,
                                const std::vector<HomologyClass>& betas, const std::vector<double>& t_grid,
                                double delta, const ReportOptions& options = {});

/// Report CSV: '#' metadata lines, then
///   kind,T,index,measured,check,predicted,ratio,log_residual
std::string report_csv(const CensusReport& report);

/// Empirical-versus-Gaussian box table:  T,box,empirical,gaussian,deviation
std::vector<CltRow> clt_table(const OrbitTable& table, const ThermoSummary& summary, const std::vector<double>& t_grid,
                              const std::vector<Box>& boxes, std::uint64_t seed = 20240601);
std::string clt_csv(const std::vector<CltRow>& rows, const std::vector<Box>& boxes);

std::string format_number(double x);

}  // namespace orbitcensus
