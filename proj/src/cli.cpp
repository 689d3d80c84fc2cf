#include "orbitcensus/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbitcensus/asymptotics.hpp"
#include "orbitcensus/census.hpp"
#include "orbitcensus/errors.hpp"
#include "orbitcensus/model_io.hpp"
#include "orbitcensus/orbit_table_io.hpp"
#include "orbitcensus/report.hpp"
#include "orbitcensus/thermo.hpp"

namespace orbitcensus {

std::vector<double> parse_t_grid(const std::string& spec) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(':', pos);
    if (end == std::string::npos) end = spec.size();
    const std::string field = spec.substr(pos, end - pos);
    char* stop = nullptr;
    const double v = std::strtod(field.c_str(), &stop);
    if (field.empty() || stop != field.c_str() + field.size() || !std::isfinite(v)) {
      throw UsageError("cannot parse T grid '" + spec + "' (expected start:stop:step)");
    }
    parts.push_back(v);
    pos = end + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw UsageError("T grid '" + spec + "' must be start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(start > 0.0) || !(step > 0.0) || stop < start) throw UsageError("T grid '" + spec + "' is not increasing and positive");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  if (n > 1'000'000) throw UsageError("T grid '" + spec + "' has too many points");
  for (long i = 0; i <= n; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

namespace {

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::Validate: return "validate";
    case Subcommand::Census: return "census";
    case Subcommand::Thermo: return "thermo";
    case Subcommand::Report: return "report";
    case Subcommand::Clt: return "clt";
  }
  return "?";
}

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return kExitUsage;
    case ErrorKind::Resource: return kExitResource;
    case ErrorKind::Numeric: return kExitNumeric;
    default: return kExitFailure;
  }
}

MarkovFlowModel load_checked_model(const RunConfig& config, std::ostream& err) {
  if (config.model.empty()) throw UsageError(std::string(subcommand_name(config.subcommand)) + " requires --model");
  MarkovFlowModel model = load_model(config.model);
  const ValidationReport report = validate_model(model);
  if (!report.strongly_connected) throw ModelError("model graph is not strongly connected (flow is not transitive)");
  if (report.lattice_warning) {
    err << "notice: cycle lengths look rationally related; the flow may not be weak-mixing\n";
  }
  return model;
}

void emit(const RunConfig& config, const std::string& file_name, const std::string& contents, std::ostream& out) {
  if (config.out.empty()) {
    out << contents;
    return;
  }
  std::filesystem::create_directories(config.out);
  write_file_atomically(config.out / file_name, contents);
}

std::string read_first_line(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open summary '" + path.string() + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("thermo,", 0) == 0) return line;
  }
  throw IngestionError("summary file '" + path.string() + "' holds no 'thermo,' record");
}

struct Inputs {
  OrbitTable table;
  ThermoSummary summary;
};

Inputs gather_inputs(const RunConfig& config, std::ostream& err) {
  if (config.t_grid.empty()) throw UsageError("--tgrid is required");
  const double grid_max = *std::max_element(config.t_grid.begin(), config.t_grid.end());
  if (!config.table.empty()) {
    if (config.summary.empty()) throw UsageError("--table requires --summary (a thermo record)");
    OrbitTable table = ingest_orbit_table(config.table, config.t_max);
    ThermoSummary summary = parse_summary_record(read_first_line(config.summary));
    if (summary.k != table.k()) throw IngestionError("summary k differs from orbit table k");
    return {std::move(table), std::move(summary)};
  }
  const MarkovFlowModel model = load_checked_model(config, err);
  const double t_max = config.t_max.value_or(grid_max);
  ThermoSummary summary = config.summary.empty() ? ThermoSummary::from_model(model)
                                                 : parse_summary_record(read_first_line(config.summary));
  OrbitTable table = enumerate_prime_orbits(model, t_max, CensusOptions{config.workers, config.budget});
  return {std::move(table), std::move(summary)};
}

void check_dimensions(const RunConfig& config, std::size_t k) {
  for (const auto& b : config.betas) {
    if (b.dimension() != k) throw UsageError("--beta " + b.to_string() + " does not have dimension " + std::to_string(k));
  }
  for (const auto& a : config.alphas) {
    if (a.dimension() != k) throw UsageError("--alpha " + a.to_string() + " does not have dimension " + std::to_string(k));
  }
  for (const auto& b : config.boxes) {
    if (b.dimension() != k) throw UsageError("--box " + b.to_string() + " does not have dimension " + std::to_string(k));
  }
}

int run_unchecked(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.workers == 0) throw UsageError("--workers must be at least 1");
  switch (config.subcommand) {
    case Subcommand::Validate: {
      if (config.model.empty()) throw UsageError("validate requires --model");
      const MarkovFlowModel model = load_model(config.model);
      const ValidationReport report = validate_model(model);
      std::ostringstream text;
      text << "strongly_connected=" << (report.strongly_connected ? "true" : "false") << "\n"
           << "lattice_warning=" << (report.lattice_warning ? "true" : "false") << "\n"
           << "k=" << report.k << "\n"
           << "edge_count=" << report.edge_count << "\n";
      emit(config, "validation.txt", text.str(), out);
      if (report.lattice_warning) {
        err << "notice: cycle lengths look rationally related; the flow may not be weak-mixing\n";
      }
      if (!report.strongly_connected) {
        err << "error: model: graph is not strongly connected\n";
        return kExitFailure;
      }
      return kExitOk;
    }
    case Subcommand::Census: {
      if (!config.t_max) throw UsageError("census requires --tmax");
      const MarkovFlowModel model = load_checked_model(config, err);
      const OrbitTable table = enumerate_prime_orbits(model, *config.t_max, CensusOptions{config.workers, config.budget});
      emit(config, "orbits.csv", orbit_table_csv(table), out);
      return kExitOk;
    }
    case Subcommand::Thermo: {
      const MarkovFlowModel model = load_checked_model(config, err);
      const ThermoSummary summary = ThermoSummary::from_model(model);
      if (config.out.empty()) {
        out << format_summary(summary) << summary_record(summary) << "\n";
      } else {
        emit(config, "thermo.txt", format_summary(summary), out);
        emit(config, "thermo.record", summary_record(summary) + "\n", out);
        out << format_summary(summary) << summary_record(summary) << "\n";
      }
      return kExitOk;
    }
    case Subcommand::Report: {
      Inputs in = gather_inputs(config, err);
      check_dimensions(config, in.table.k());
      const std::vector<HomologyClass> betas =
          config.betas.empty() ? std::vector<HomologyClass>{HomologyClass(in.table.k())} : config.betas;
      const double delta = config.delta.value_or(default_delta(in.table.k()));
      ReportOptions options{config.alphas, config.boxes, config.seed};
      const CensusReport report = convergence_report(in.table, in.summary, betas, config.t_grid, delta, options);
      emit(config, "report.csv", report_csv(report), out);
      return kExitOk;
    }
    case Subcommand::Clt: {
      Inputs in = gather_inputs(config, err);
      check_dimensions(config, in.table.k());
      const std::vector<Box> boxes = config.boxes.empty() ? default_boxes(in.table.k()) : config.boxes;
      const auto rows = clt_table(in.table, in.summary, config.t_grid, boxes, config.seed);
      emit(config, "clt.csv", clt_csv(rows, boxes), out);
      return kExitOk;
    }
  }
  throw UsageError("unknown subcommand");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_unchecked(config, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitFailure;
  }
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Prime periodic orbit census and pair-correlation diagnostics for symbolic flow models"};
  app.require_subcommand(1);

  RunConfig config;
  std::string t_grid;
  std::vector<std::string> betas, alphas, boxes;
  double t_max = 0.0, delta = 0.0;

  struct Spec {
    const char* name;
    Subcommand sub;
    const char* help;
  };
  const Spec specs[] = {
      {"validate", Subcommand::Validate, "check a model file and print its validation report"},
      {"census", Subcommand::Census, "enumerate prime orbits up to --tmax and write the orbit table CSV"},
      {"thermo", Subcommand::Thermo, "compute entropy, winding cycle, Hessian and constants"},
      {"report", Subcommand::Report, "measured-versus-predicted counts over a T grid"},
      {"clt", Subcommand::Clt, "empirical homology distribution versus Gaussian box masses"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--model", config.model, "model file (JSON)");
    sub->add_option("--tmax", t_max, "census length cutoff");
    sub->add_option("--tgrid", t_grid, "T grid, start:stop:step");
    sub->add_option("--beta", betas, "homology difference(s); components separated by ';' or ','")->allow_extra_args(false);
    sub->add_option("--alpha", alphas, "homology window(s) for local-limit rows")->allow_extra_args(false);
    sub->add_option("--box", boxes, "box lo:hi[,lo:hi...] for CLT rows")->allow_extra_args(false);
    sub->add_option("--delta", delta, "lattice ball radius (default: chi-square 99% root)");
    sub->add_option("--workers", config.workers, "enumeration threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", config.out, "output directory (default: stdout)");
    sub->add_option("--seed", config.seed, "seed for quasi-Monte Carlo box masses");
    sub->add_option("--budget", config.budget, "maximum number of prime orbits");
    sub->add_option("--table", config.table, "ingest an orbit table CSV instead of enumerating");
    sub->add_option("--summary", config.summary, "thermo record file (required with --table)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    config.subcommand = specs[i].sub;
    if (subs[i]->count("--tmax")) config.t_max = t_max;
    if (subs[i]->count("--delta")) config.delta = delta;
  }
  if (!t_grid.empty()) config.t_grid = parse_t_grid(t_grid);
  for (const auto& b : betas) config.betas.push_back(parse_homology(b));
  for (const auto& a : alphas) config.alphas.push_back(parse_homology(a));
  for (const auto& b : boxes) config.boxes.push_back(Box::parse(b));
  return config;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_command_line(argc, argv, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitUsage;
  }
  if (!config) return kExitOk;
  return run(*config, out, err);
}

}  // namespace orbitcensus
