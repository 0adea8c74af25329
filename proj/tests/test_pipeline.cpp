#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ingap/ingest.hpp"
#include "ingap/io.hpp"
#include "ingap/pipeline.hpp"
#include "ingap/evaluate.hpp"
#include "ingap/synthetic.hpp"

using namespace ingap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(INGAP_TEST_TMP) / "pipeline" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

// 10-minute cadence series with a daily-ish cycle on top of an offset.
std::string cadence_csv(std::size_t m, std::size_t skip_every = 0) {
  std::ostringstream os;
  os << "timestamp,value\n";
  for (std::size_t j = 0; j < m; ++j) {
    if (skip_every && j % skip_every == 3) continue;
    const double v = 20.0 + 3.0 * std::sin(2 * std::numbers::pi * 4.0 * j / m) + std::cos(2 * std::numbers::pi * 9.0 * j / m);
    os << 1700000000 + 600 * static_cast<long>(j) << "," << io::format_double(v) << "\n";
  }
  return os.str();
}

RunConfig small_config(const fs::path& dir, const fs::path& input) {
  RunConfig c;
  c.input_path = input.string();
  c.output_dir = (dir / "out").string();
  c.n_coeffs = 32;
  c.replicates = 3;
  c.permutations = 200;
  return c;
}

}  // namespace

TEST_CASE("ingest drops invalid rows and sorts", "[pipeline]") {
  const fs::path dir = scratch("ingest");
  write_file(dir / "a.csv", "timestamp,value\n1200,3.0\n0,1.0\n600,NaN\n1800,4.5\n");
  const IngestResult r = ingest_csv((dir / "a.csv").string(), "timestamp", "value");
  CHECK(r.rows_read == 4);
  CHECK(r.dropped_invalid == 1);
  REQUIRE(r.series.size() == 3);
  CHECK(r.series.values() == std::vector<double>{1.0, 3.0, 4.5});
  CHECK(r.series.nodes().front() == -0.5);
  CHECK(r.series.nodes().back() < 0.5);

  write_file(dir / "b.csv", "value,timestamp\n1,100\n2,100\n3,200\n4,300\n");
  const IngestResult d = ingest_csv((dir / "b.csv").string(), "timestamp", "value");
  CHECK(d.dropped_duplicates == 1);
  CHECK(d.series.values() == std::vector<double>{1.0, 3.0, 4.0});

  write_file(dir / "c.csv", cadence_csv(48));
  CHECK(ingest_csv((dir / "c.csv").string(), "timestamp", "value").series.equispaced());

  write_file(dir / "d.csv", "time,v\n0,1\n");
  CHECK_THROWS_AS(ingest_csv((dir / "d.csv").string(), "timestamp", "value"), IoError);
  write_file(dir / "e.csv", "timestamp,value\n0,1\n60,banana\n");
  CHECK_THROWS_AS(ingest_csv((dir / "e.csv").string(), "timestamp", "value"), IoError);
  CHECK_THROWS_AS(ingest_csv((dir / "missing.csv").string(), "timestamp", "value"), IoError);
}

TEST_CASE("timestamp parsing", "[pipeline]") {
  CHECK(parse_timestamp("0") == 0.0);
  CHECK(parse_timestamp("-60") == -60.0);
  CHECK(parse_timestamp("1970-01-01") == 0.0);
  CHECK(parse_timestamp("1970-01-02T00:00:00Z") == 86400.0);
  CHECK(parse_timestamp("2000-03-01T12:30:15") == 951913815.0);
  CHECK(parse_timestamp("2000-03-01T12:30:15.25+01:00") == 951910215.25);
  CHECK(parse_timestamp("2000-03-01 12:30") == 951913800.0);
  CHECK_THROWS_AS(parse_timestamp("yesterday"), InvalidArgument);
  CHECK_THROWS_AS(parse_timestamp("2000-13-01"), InvalidArgument);
  CHECK(split_csv_line(R"(a,"b,c",,"d""e")") == std::vector<std::string>{"a", "b,c", "", "d\"e"});
}

TEST_CASE("config parsing", "[pipeline]") {
  const fs::path dir = scratch("config");
  write_file(dir / "run.cfg",
             "# comment\ninput = data.csv\nn_coeffs = 64\nkernel = fejer\ngamma = 0.1, 0.01\n"
             "modes = random\nfractions = 0.2\nseed = 9   # trailing\nreport_timings = true\n");
  const RunConfig c = load_config((dir / "run.cfg").string());
  CHECK(c.input_path == "data.csv");
  CHECK(c.n_coeffs == 64);
  CHECK(c.kernel == KernelFamily::Fejer);
  CHECK(c.gammas == std::vector<double>{0.1, 0.01});
  CHECK(c.modes == std::vector<MaskMode>{MaskMode::Random});
  CHECK(c.seed == 9);
  CHECK(c.report_timings);

  RunConfig bad;
  CHECK_THROWS_AS(apply_setting(bad, "colour", "blue"), ConfigError);
  CHECK_THROWS_AS(apply_setting(bad, "n_coeffs", "many"), ConfigError);
  bad.gammas = {-1.0};
  CHECK_THROWS_AS(validate_config(bad, false), ConfigError);
  RunConfig odd;
  odd.n_coeffs = 33;
  CHECK_THROWS_AS(validate_config(odd, false), ConfigError);
  CHECK_THROWS_AS(validate_config(RunConfig{}, true), ConfigError);
}

TEST_CASE("solve command writes its outputs", "[pipeline]") {
  const fs::path dir = scratch("solve");
  write_file(dir / "series.csv", cadence_csv(96));
  const RunConfig c = small_config(dir, dir / "series.csv");
  const CommandResult r = cmd_solve(c);
  REQUIRE(r.files.size() == 3);
  for (const auto& f : r.files) CHECK(fs::exists(f));

  const auto report = nlohmann::json::parse(io::read_text(c.output_dir + "/solve_report.json"));
  CHECK(report["method"] == "EquispacedClosedForm");
  CHECK(report["stationarity_residual"].get<double>() <= 1e-8);
  CHECK_FALSE(report.contains("timings_seconds"));
  CHECK(report["config"]["n_coeffs"] == "32");

  const auto table = io::parse_spectrum_csv(io::read_text(c.output_dir + "/spectrum.csv"));
  CHECK(table.spectrum.size() == 32);
  const auto rows = io::parse_reconstruction_csv(io::read_text(c.output_dir + "/reconstruction.csv"));
  std::vector<double> rec, obs;
  for (const auto& row : rows) {
    if (!row.has_observed) continue;
    rec.push_back(row.reconstructed);
    obs.push_back(row.observed);
  }
  CHECK(obs.size() == 96);
  CHECK(correlation(rec, obs) > 0.95);

  write_file(dir / "gapped.csv", cadence_csv(96, 5));
  RunConfig g = small_config(dir, dir / "gapped.csv");
  cmd_solve(g);
  const auto gr = nlohmann::json::parse(io::read_text(g.output_dir + "/solve_report.json"));
  CHECK(gr["method"] == "KailathLU");
}

TEST_CASE("CSV writers round-trip", "[pipeline]") {
  std::vector<cplx> c(8);
  for (std::size_t i = 0; i < 8; ++i) c[i] = cplx(std::sqrt(2.0) * i - 3.1, 1.0 / (i + 3.0));
  const Spectrum s(c);
  const auto w = sobolev_kernel(8);
  const auto back = io::parse_spectrum_csv(io::spectrum_csv(s, w));
  CHECK(back.spectrum.coeffs() == s.coeffs());
  CHECK(back.weights == w.weights);
  CHECK(io::parse_transform_csv(io::transform_csv(s)).coeffs() == s.coeffs());

  std::vector<io::ReconstructionRow> rows{{"grid", -0.5, 1e9, 1.0 / 3.0, 0.0, false},
                                          {"observed", 0.1, 1e9 + 600, 2.0, 2.0 + 1e-13, true}};
  const auto rb = io::parse_reconstruction_csv(io::reconstruction_csv(rows));
  REQUIRE(rb.size() == 2);
  CHECK(std::abs(rb[0].reconstructed - 1.0 / 3.0) <= 1e-12);
  CHECK(rb[1].has_observed);
  CHECK_FALSE(rb[0].has_observed);
  CHECK(std::abs(rb[1].observed - rows[1].observed) <= 1e-12);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("eval command runs the full grid", "[pipeline]") {
  const fs::path dir = scratch("eval");
  write_file(dir / "series.csv", cadence_csv(200));
  RunConfig c = small_config(dir, dir / "series.csv");
  const CommandResult r = cmd_eval(c);
  const auto report = nlohmann::json::parse(io::read_text(c.output_dir + "/eval_report.json"));
  REQUIRE(report["cells"].size() == 6);
  for (const auto& cell : report["cells"]) {
    for (const char* key : {"correlation", "mafe", "relative_error"}) {
      CHECK(cell["inverse"][key].contains("mean"));
      CHECK(cell["inverse"][key].contains("std"));
      CHECK(cell["baseline"][key].contains("mean"));
      const double p = cell["p_values"][key].get<double>();
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
    }
  }
  const std::string first = io::read_text(c.output_dir + "/eval_report.json");
  const std::string first_csv = io::read_text(c.output_dir + "/replicates.csv");
  cmd_eval(c);
  CHECK(io::read_text(c.output_dir + "/eval_report.json") == first);
  CHECK(io::read_text(c.output_dir + "/replicates.csv") == first_csv);

  c.replicates = 1;
  const CommandResult one = cmd_eval(c);
  bool warned = false;
  for (const auto& w : one.warnings) warned = warned || w.find("replicates = 1") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("kernel command and command line", "[pipeline]") {
  const fs::path dir = scratch("cli");
  const std::string out = (dir / "out").string();
  std::ostringstream so, se;
  const char* argv[] = {"ingap", "kernel", "--n-coeffs", "16", "--gamma", "0.1,0.01,0.001", "--out", out.c_str()};
  CHECK(cli_main(8, argv, so, se) == 0);
  const auto table = io::parse_kernel_csv(io::read_text(out + "/kernel.csv"));
  CHECK(table.columns.size() == 3);
  CHECK(table.z.size() == 16);
  CHECK(table.z.front() == -0.5);

  const char* missing[] = {"ingap", "solve", "--out", out.c_str()};
  CHECK(cli_main(4, missing, so, se) == 2);
  const char* bad_gamma[] = {"ingap", "kernel", "--gamma", "-1", "--out", out.c_str()};
  CHECK(cli_main(6, bad_gamma, so, se) == 2);
  const char* unknown[] = {"ingap", "fly"};
  CHECK(cli_main(2, unknown, so, se) == 2);

  write_file(dir / "s.csv", cadence_csv(64));
  const std::string in = (dir / "s.csv").string();
  const char* tr[] = {"ingap", "transform", "--input", in.c_str(), "--n-coeffs", "8", "--out", out.c_str()};
  CHECK(cli_main(8, tr, so, se) == 0);
  const Spectrum t = io::parse_transform_csv(io::read_text(out + "/transform.csv"));
  // k = 0 of the unnormalized transform is the plain sum of the values.
  const auto series = ingest_csv(in, "timestamp", "value").series;
  double sum = 0;
  for (double v : series.values()) sum += v;
  CHECK(t.at(0).real() == Catch::Approx(sum).epsilon(1e-13));
}
