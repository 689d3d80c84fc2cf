// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitcensus/asymptotics.hpp"
#include "orbitcensus/census.hpp"
#include "orbitcensus/model.hpp"
#include "orbitcensus/orbit_table_io.hpp"
#include "orbitcensus/report.hpp"
#include "orbitcensus/thermo.hpp"

using namespace orbitcensus;

namespace {

constexpr double kPhi = 1.6180339887498949;
const double kInf = std::numeric_limits<double>::infinity();

MarkovFlowModel golden() { return bouquet_model(1, {{1.0, {1}}, {kPhi, {-1}}}); }

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Outputs of criterion 1 as text, so criterion 11 can compare them byte for byte.
std::string eq4_outputs(unsigned workers, bool* identity_holds) {
  const OrbitTable t = enumerate_prime_orbits(golden(), 12.0, {workers, 50'000'000});
  const std::vector<double> phi0 = winding_cycle(golden());
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> uniform(0.0, 12.0);
  std::vector<double> times;
  for (int i = 0; i < 20; ++i) times.push_back(uniform(rng));
  std::ostringstream out;
  bool ok = true;
  for (double T : times) {
    for (std::int64_t b = -20; b <= 20; ++b) {
      const std::uint64_t d = pair_count_direct(t, T, HomologyClass{b});
      const std::uint64_t c = pair_count_convolution(t, T, HomologyClass{b}, phi0);
      ok = ok && d == c;
      out << format_number(T) << ',' << b << ',' << d << ',' << c << '\n';
    }
  }
  if (identity_holds) *identity_holds = ok;
  return out.str();
}

Verdict criterion1() {
  const auto t0 = Clock::now();
  bool ok = false;
  const std::string out = eq4_outputs(1, &ok);
  const double secs = seconds_since(t0);
  const auto rows = std::count(out.begin(), out.end(), '\n');
  return {ok && secs < 10.0, std::to_string(rows) + " (T, beta) pairs, direct == convolution: " + (ok ? "yes" : "no") +
                                 ", " + fmt("%.2f s", secs)};
}

Verdict criterion2() {
  const OrbitTable t = enumerate_prime_orbits(bouquet_model(1, {{1.0, {0}}, {1.0, {1}}}), 12.0);
  auto moebius = [](int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
    return n > 1 ? -r : r;
  };
  Verdict v;
  std::uint64_t below = 0;
  std::string counts;
  for (int n = 1; n <= 12; ++n) {
    long long expected = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) expected += moebius(d) * (1LL << (n / d));
    }
    expected /= n;
    const std::uint64_t upto = count_orbits(t, n);
    v.pass = v.pass && upto - below == static_cast<std::uint64_t>(expected);
    counts += (n > 1 ? " " : "") + std::to_string(upto - below);
    below = upto;
  }
  v.detail = "counts n=1..12: " + counts;
  return v;
}

Verdict criterion3() {
  Verdict v;
  for (int g : {2, 3}) {
    const ThermoSummary s = ThermoSummary::from_constants(static_cast<std::size_t>(2 * g), 1.0, std::pow(g - 1.0, g));
    const double expected = std::pow(g - 1.0, g) / std::pow(2.0, g);
    const double err = relative(pair_constant(s), expected);
    v.pass = v.pass && err <= 1e-12;
    v.detail += "g=" + std::to_string(g) + ": " + fmt("%.15g", pair_constant(s)) + fmt(" (rel err %.1e)  ", err);
  }
  return v;
}

Verdict criterion4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uh(0.1, 3.0), entry(-1.0, 1.0);
  std::uniform_int_distribution<int> uk(1, 5);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto k = static_cast<Eigen::Index>(uk(rng));
    Eigen::MatrixXd a(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) a(r, c) = entry(rng);
    }
    const Eigen::MatrixXd h = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(k, k);
    const ThermoSummary s = ThermoSummary::from_parts(uh(rng), std::vector<double>(static_cast<std::size_t>(k), 0.0), h);
    worst = std::max(worst, relative(pair_constant_composed(s), pair_constant(s)));
  }
  return {worst <= 1e-12, fmt("10 random summaries, worst relative difference %.2e", worst)};
}

Verdict criterion5() {
  const auto t0 = Clock::now();
  const MarkovFlowModel g = golden();
  // bisection on e^{-s} + e^{-phi s} = 1
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(-mid) + std::exp(-kPhi * mid) > 1.0 ? lo : hi) = mid;
  }
  const double h = 0.5 * (lo + hi);
  const double residual = std::abs(shift_pressure(g, h, std::vector<double>{0.0}));
  const double h_model = flow_pressure(g, std::vector<double>{0.0});

  const double analytic = winding_cycle(g)[0];
  const double step = 1e-5;
  const double fd = (flow_pressure(g, std::vector<double>{step}) - flow_pressure(g, std::vector<double>{-step})) / (2 * step);
  const PressureHessian ph = pressure_hessian(g);
  const double duality = std::abs((ph.H * ph.pressure_hessian)(0, 0) - 1.0);
  const double secs = seconds_since(t0);

  const bool ok = residual <= 1e-10 && std::abs(h_model - h) <= 1e-10 && std::abs(h - 0.5401) < 1e-4 &&
                  std::abs(analytic - fd) <= 1e-6 && duality <= 1e-6 && secs < 1.0;
  return {ok, fmt("h=%.15f", h) + fmt(" |p(h,0)|=%.1e", residual) + fmt(" |Phi0-fd|=%.1e", std::abs(analytic - fd)) +
                  fmt(" |H*hess-I|=%.1e", duality) + fmt(" %.3f s", secs)};
}

Verdict criterion6() {
  const MarkovFlowModel g = golden();
  const ThermoSummary s = ThermoSummary::from_model(g);
  const double hq = s.H(0, 0);
  std::vector<double> xs, ys;
  for (int i = 0; i <= 8; ++i) {
    const double norm = std::pow(10.0, -3.0 + 2.0 * i / 8.0);
    const double rho = norm / std::sqrt(hq);  // H-norm of rho equals `norm`
    const double remainder = std::abs(entropy_function(g, std::vector<double>{s.phi0[0] + rho}) - s.h + norm * norm / 2);
    xs.push_back(std::log(norm));
    ys.push_back(std::log(remainder));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {std::abs(slope - 3.0) <= 0.3, fmt("log-log slope %.4f over |rho| in [1e-3, 1e-1]", slope)};
}

Verdict criterion7() {
  const auto t0 = Clock::now();
  const ThermoSummary s = ThermoSummary::from_model(golden());
  const double delta = default_delta(1);
  const double limit = std::sqrt(std::numbers::pi) * s.sigma;
  std::vector<double> values;
  bool ok = gaussian_tail(delta, 1) < 0.01;
  std::string detail = fmt("Delta=%.4f", delta) + fmt(" limit=%.6f:", limit);
  for (std::int64_t beta : {0, 1, 5}) {
    const double v = gaussian_pair_sum(1e4, HomologyClass{beta}, delta, s.H) / 100.0;
    values.push_back(v);
    ok = ok && relative(v, limit) <= 0.02;
    detail += fmt(" %.6f", v);
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  ok = ok && (*mx - *mn) / *mn <= 0.01;
  const double secs = seconds_since(t0);
  ok = ok && secs < 5.0;
  return {ok, detail + fmt(", spread %.2e", (*mx - *mn) / *mn) + fmt(", %.3f s", secs)};
}

std::vector<Box> clt_boxes() { return {Box{{-1.0}, {1.0}}, Box{{0.0}, {kInf}}}; }

std::string clt_outputs(unsigned workers, std::vector<CltRow>* rows_out) {
  const MarkovFlowModel g = golden();
  const OrbitTable t = enumerate_prime_orbits(g, 22.0, {workers, 50'000'000});
  const ThermoSummary s = ThermoSummary::from_model(g);
  const auto rows = clt_table(t, s, {14.0, 18.0, 22.0}, clt_boxes());
  if (rows_out) *rows_out = rows;
  return orbit_table_csv(t) + clt_csv(rows, clt_boxes());
}

Verdict criterion8() {
  const auto t0 = Clock::now();
  std::vector<CltRow> rows;
  clt_outputs(1, &rows);
  const double secs = seconds_since(t0);
  bool ok = secs < 300.0;
  std::string detail;
  for (std::size_t b = 0; b < 2; ++b) {
    std::vector<double> dev;
    for (const auto& r : rows) {
      if (r.box == b) dev.push_back(std::abs(r.empirical - r.gaussian));
    }
    const bool close = dev.back() <= 0.1;
    const bool trend = std::is_sorted(dev.rbegin(), dev.rend());
    ok = ok && close && trend;
    detail += "box " + clt_boxes()[b].to_string() + " deviations T=14,18,22:" + fmt(" %.4f", dev[0]) +
              fmt(" %.4f", dev[1]) + fmt(" %.4f", dev[2]) + (close ? " (within 0.1 at 22" : " (NOT within 0.1 at 22") +
              (trend ? ", nonincreasing); " : ", NOT nonincreasing); ");
  }
  return {ok, detail + fmt("%.2f s", secs)};
}

Verdict criterion9() {
  const MarkovFlowModel g = golden();
  const OrbitTable t = enumerate_prime_orbits(g, 22.0);
  const ThermoSummary s = ThermoSummary::from_model(g);
  auto ratios = [&](double T) {
    std::vector<double> r;
    for (std::int64_t beta : {0, 2, 4}) {
      r.push_back(static_cast<double>(pair_count_direct(t, T, HomologyClass{beta})) / theorem1_prediction(T, s));
    }
    return r;
  };
  auto spread = [](const std::vector<double>& r) {
    return *std::max_element(r.begin(), r.end()) / *std::min_element(r.begin(), r.end());
  };
  const auto r14 = ratios(14.0), r22 = ratios(22.0);
  bool ok = spread(r22) < spread(r14);
  for (double x : r22) ok = ok && x >= 0.3 && x <= 3.0;
  return {ok, fmt("ratios at T=22: %.4f", r22[0]) + fmt(" %.4f", r22[1]) + fmt(" %.4f", r22[2]) +
                  fmt("; spread %.4f (T=14)", spread(r14)) + fmt(" -> %.4f (T=22)", spread(r22))};
}

Verdict criterion10() {
  const MarkovFlowModel g = golden();
  const OrbitTable t = enumerate_prime_orbits(g, 22.0);
  const ThermoSummary s = ThermoSummary::from_model(g);
  const double base = sup_normalized_count(t, 10.0, s.phi0, s.h);
  double worst = 0.0;
  for (int T = 10; T <= 22; ++T) worst = std::max(worst, sup_normalized_count(t, T, s.phi0, s.h));
  return {base > 0.0 && worst <= 10.0 * base, fmt("value at T=10 %.4f", base) + fmt(", max over T=10..22 %.4f", worst)};
}

Verdict criterion11() {
  const bool eq4 = eq4_outputs(1, nullptr) == eq4_outputs(4, nullptr);
  const bool clt = clt_outputs(1, nullptr) == clt_outputs(4, nullptr);
  return {eq4 && clt, std::string("criterion 1 outputs identical: ") + (eq4 ? "yes" : "no") +
                          ", criterion 8 outputs identical: " + (clt ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"pair-count identity (direct == convolution), golden model", criterion1},
      {"necklace counts of the unit full 2-shift", criterion2},
      {"surface pair constant (g-1)^g/2^g", criterion3},
      {"pair constant composition identity", criterion4},
      {"thermodynamic cross-checks, golden model", criterion5},
      {"entropy function cubic remainder", criterion6},
      {"lattice Gaussian pair sum at T=1e4", criterion7},
      {"empirical homology distribution vs Gaussian boxes", criterion8},
      {"pair count vs asymptotic prediction, beta independence", criterion9},
      {"normalized local count stays bounded", criterion10},
      {"determinism across worker counts", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("criterion %2zu: %s  %s -- %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
