#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ingap/ingest.hpp"
#include "ingap/io.hpp"
#include "ingap/pipeline.hpp"
#include "ingap/solver.hpp"

namespace ingap {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string out_path(const RunConfig& c, const std::string& name) {
  return (std::filesystem::path(c.output_dir) / name).string();
}

void prepare_output(const RunConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + c.output_dir + "': " + ec.message());
}

// nlohmann::json keeps object keys sorted, which gives stable report layout.
std::string dump(const json& j) { return j.dump(2) + "\n"; }

json summary_json(const MetricSummary& s) { return json{{"mean", s.mean}, {"std", s.stddev}}; }

json method_json(const MethodSummary& m) {
  return json{{"correlation", summary_json(m.correlation)},
              {"mafe", summary_json(m.mafe)},
              {"relative_error", summary_json(m.relative_error)}};
}

IngestResult ingest(const RunConfig& c) { return ingest_csv(c.input_path, c.timestamp_column, c.value_column); }

}  // namespace

CommandResult cmd_solve(const RunConfig& config) {
  auto warnings = validate_config(config, true);
  prepare_output(config);
  const auto t0 = Clock::now();
  IngestResult in = ingest(config);
  const SampledSeries& series = in.series;
  const double t_ingest = seconds_since(t0);
  if (config.n_coeffs > series.size()) {
    warnings.push_back("n_coeffs exceeds the number of valid observations");
  }

  const WeightKernel kernel = config.make_kernel();
  const auto t1 = Clock::now();
  const InterpSolution sol = solve(series, kernel, config.n_coeffs);
  const double t_solve = seconds_since(t1);
  warnings.insert(warnings.end(), sol.warnings.begin(), sol.warnings.end());

  const NodeMapping map = series.mapping().value_or(NodeMapping{});
  const std::size_t dense = std::max<std::size_t>(4 * config.n_coeffs, 2 * series.size());
  const auto grid = NominalGrid{dense}.nodes();
  const auto on_grid = sol.reconstruct(grid);
  const auto at_obs = sol.reconstruct(series.nodes());
  std::vector<io::ReconstructionRow> rows;
  rows.reserve(grid.size() + series.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back({"grid", grid[i], map.to_time(grid[i]), on_grid[i], 0.0, false});
  }
  for (std::size_t j = 0; j < series.size(); ++j) {
    const double t = series.origin_timestamps() ? (*series.origin_timestamps())[j] : map.to_time(series.nodes()[j]);
    rows.push_back({"observed", series.nodes()[j], t, at_obs[j], series.values()[j], true});
  }

  CommandResult result;
  const std::string spectrum_file = out_path(config, "spectrum.csv");
  const std::string recon_file = out_path(config, "reconstruction.csv");
  const std::string report_file = out_path(config, "solve_report.json");
  io::write_text_atomic(spectrum_file, io::spectrum_csv(sol.spectrum, kernel));
  io::write_text_atomic(recon_file, io::reconstruction_csv(rows));

  json report{
      {"config", config.echo()},
      {"method", to_string(sol.method)},
      {"cost", sol.cost},
      {"stationarity_residual", sol.stationarity_residual},
      {"condition_estimate", sol.condition_estimate},
      {"mean_offset", sol.offset},
      {"n_coeffs", config.n_coeffs},
      {"observations", series.size()},
      {"equispaced", series.equispaced()},
      {"ingest", {{"rows_read", in.rows_read},
                  {"dropped_invalid", in.dropped_invalid},
                  {"dropped_duplicates", in.dropped_duplicates},
                  {"log", in.log}}},
      {"dense_grid_points", dense},
      {"node_mapping", {{"t_min", map.t_min}, {"span", map.span}}},
      {"warnings", warnings},
  };
  if (config.report_timings) report["timings_seconds"] = {{"ingest", t_ingest}, {"solve", t_solve}};
  io::write_text_atomic(report_file, dump(report));
  result.files = {spectrum_file, recon_file, report_file};
  result.warnings = std::move(warnings);
  if (!(sol.stationarity_residual <= SolveOptions{}.stationarity_tolerance)) {
    throw NumericalError("solve did not reach stationarity (residual " + io::format_double(sol.stationarity_residual) + ")");
  }
  return result;
}

CommandResult cmd_eval(const RunConfig& config) {
  auto warnings = validate_config(config, true);
  prepare_output(config);
  const IngestResult in = ingest(config);
  if (config.replicates == 1) warnings.push_back("replicates = 1: standard deviations reported as 0");

  ProtocolConfig pc;
  pc.n_coeffs = config.n_coeffs;
  pc.kernel = config.make_kernel();
  pc.fractions = config.fractions;
  pc.modes = config.modes;
  pc.replicates = config.replicates;
  pc.permutations = config.permutations;
  pc.seed = config.seed;
  const auto t0 = Clock::now();
  const ProtocolReport rep = run_protocol(in.series, pc);
  const double t_eval = seconds_since(t0);
  warnings.insert(warnings.end(), rep.warnings.begin(), rep.warnings.end());

  json cells = json::array();
  std::string csv = "mode,fraction,replicate,seed,ok,method,mafe,correlation,relative_error\n";
  for (const EvalReport& cell : rep.cells) {
    cells.push_back(json{
        {"mode", to_string(cell.mode)},
        {"fraction", cell.fraction},
        {"replicates", cell.replicates},
        {"permutations", cell.permutations},
        {"inverse", method_json(cell.inverse)},
        {"baseline", method_json(cell.baseline)},
        {"p_values", {{"correlation", cell.p_correlation},
                      {"mafe", cell.p_mafe},
                      {"relative_error", cell.p_relative_error}}},
        {"warnings", cell.warnings},
    });
    for (std::size_t r = 0; r < cell.per_replicate.size(); ++r) {
      const ReplicateResult& rr = cell.per_replicate[r];
      const auto row = [&](const char* method, const MethodMetrics& m) {
        csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(cell.mode), io::format_double(cell.fraction), r,
                           rr.seed, rr.ok ? 1 : 0, method, io::format_double(m.mafe),
                           io::format_double(m.correlation), io::format_double(m.relative_error));
      };
      row("inffft", rr.inverse);
      row("ifft", rr.baseline);
    }
  }
  json report{{"config", config.echo()},
              {"observations", in.series.size()},
              {"cells", cells},
              {"warnings", warnings}};
  if (config.report_timings) report["timings_seconds"] = {{"protocol", t_eval}};

  CommandResult result;
  const std::string report_file = out_path(config, "eval_report.json");
  const std::string csv_file = out_path(config, "replicates.csv");
  io::write_text_atomic(report_file, dump(report));
  io::write_text_atomic(csv_file, csv);
  result.files = {report_file, csv_file};
  result.warnings = std::move(warnings);
  return result;
}

CommandResult cmd_kernel(const RunConfig& config) {
  auto warnings = validate_config(config, false);
  prepare_output(config);
  io::KernelTable table;
  const long half = static_cast<long>(config.n_coeffs / 2);
  for (long k = -half; k < half; ++k) table.z.push_back(static_cast<double>(k) / static_cast<double>(config.n_coeffs));
  if (config.kernel == KernelFamily::Sobolev) {
    for (double g : config.gammas) {
      table.columns.push_back("gamma=" + io::format_double(g));
      table.curves.push_back(sobolev_kernel(config.n_coeffs, SobolevParams{config.alpha, config.beta, g}).weights);
    }
  } else {
    table.columns.push_back(to_string(config.kernel));
    table.curves.push_back(config.make_kernel().weights);
  }
  const std::string file = out_path(config, "kernel.csv");
  io::write_text_atomic(file, io::kernel_csv(table));
  return CommandResult{{file}, std::move(warnings)};
}

CommandResult cmd_transform(const RunConfig& config) {
  auto warnings = validate_config(config, true);
  prepare_output(config);
  const IngestResult in = ingest(config);
  const TransformMatrix a = build_type1(in.series.nodes(), config.n_coeffs);
  const Spectrum s = forward(a, in.series.values());
  const std::string file = out_path(config, "transform.csv");
  io::write_text_atomic(file, io::transform_csv(s));
  return CommandResult{{file}, std::move(warnings)};
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ingap: direct iNFFT spectra and gap interpolation for irregular time series"};
  app.require_subcommand(1);
  std::string config_path;
  std::size_t n_coeffs = 0;
  std::string gamma, out_dir, input;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value configuration file");
    sub->add_option("--input", input, "input CSV (overrides the config)");
    sub->add_option("--n-coeffs", n_coeffs, "number of Fourier coefficients (even)");
    sub->add_option("--gamma", gamma, "Sobolev gamma, comma-separated for kernel dumps");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out", out_dir, "output directory");
  };
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve for the spectrum and reconstruct the series");
  CLI::App* eval_cmd = app.add_subcommand("eval", "cross-validate against the truncated iFFT baseline");
  CLI::App* kernel_cmd = app.add_subcommand("kernel", "dump weight kernel curves");
  CLI::App* transform_cmd = app.add_subcommand("transform", "unnormalized forward NDFT of the series");
  for (CLI::App* sub : {solve_cmd, eval_cmd, kernel_cmd, transform_cmd}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    auto given = [&](const char* name) {
      return app.get_subcommands().front()->count(name) > 0;
    };
    if (given("--input")) config.input_path = input;
    if (given("--n-coeffs")) config.n_coeffs = n_coeffs;
    if (given("--gamma")) apply_setting(config, "gamma", gamma);
    if (given("--seed")) config.seed = seed;
    if (given("--out")) config.output_dir = out_dir;

    CommandResult result;
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen == solve_cmd) result = cmd_solve(config);
    else if (chosen == eval_cmd) result = cmd_eval(config);
    else if (chosen == kernel_cmd) result = cmd_kernel(config);
    else result = cmd_transform(config);
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    for (const auto& f : result.files) out << f << "\n";
    return 0;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ingap
