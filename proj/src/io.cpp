#include "ingap/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ingap/ingest.hpp"

namespace ingap::io {

namespace {

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw IoError("bad number '" + s + "'");
  return v;
}

std::vector<std::vector<std::string>> parse_rows(const std::string& text, const std::vector<std::string>& expected_header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty table");
  const auto header = split_csv_line(line);
  if (!expected_header.empty() && header != expected_header) throw IoError("unexpected header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  rows.push_back(header);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw IoError("ragged row '" + line + "'");
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out << content;
    if (!out.flush()) throw IoError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string spectrum_csv(const Spectrum& spectrum, const WeightKernel& kernel) {
  if (kernel.size() != spectrum.size()) throw DimensionError("spectrum_csv: kernel length mismatch");
  std::string out = "k,re,im,weight\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const cplx c = spectrum.coeffs()[i];
    out += fmt::format("{},{},{},{}\n", spectrum.frequency(i), format_double(c.real()), format_double(c.imag()),
                       format_double(kernel.weights[i]));
  }
  return out;
}

SpectrumTable parse_spectrum_csv(const std::string& text) {
  const auto rows = parse_rows(text, {"k", "re", "im", "weight"});
  std::vector<cplx> coeffs;
  std::vector<double> weights;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    coeffs.emplace_back(to_double(rows[r][1]), to_double(rows[r][2]));
    weights.push_back(to_double(rows[r][3]));
  }
  return SpectrumTable{Spectrum(std::move(coeffs)), std::move(weights)};
}

std::string transform_csv(const Spectrum& spectrum) {
  std::string out = "k,re,im\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const cplx c = spectrum.coeffs()[i];
    out += fmt::format("{},{},{}\n", spectrum.frequency(i), format_double(c.real()), format_double(c.imag()));
  }
  return out;
}

Spectrum parse_transform_csv(const std::string& text) {
  const auto rows = parse_rows(text, {"k", "re", "im"});
  std::vector<cplx> coeffs;
  for (std::size_t r = 1; r < rows.size(); ++r) coeffs.emplace_back(to_double(rows[r][1]), to_double(rows[r][2]));
  return Spectrum(std::move(coeffs));
}

std::string reconstruction_csv(const std::vector<ReconstructionRow>& rows) {
  std::string out = "kind,node,timestamp,reconstructed,observed\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", r.kind, format_double(r.node), format_double(r.timestamp),
                       format_double(r.reconstructed), r.has_observed ? format_double(r.observed) : std::string());
  }
  return out;
}

std::vector<ReconstructionRow> parse_reconstruction_csv(const std::string& text) {
  const auto rows = parse_rows(text, {"kind", "node", "timestamp", "reconstructed", "observed"});
  std::vector<ReconstructionRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    ReconstructionRow row;
    row.kind = rows[r][0];
    row.node = to_double(rows[r][1]);
    row.timestamp = to_double(rows[r][2]);
    row.reconstructed = to_double(rows[r][3]);
    row.has_observed = !rows[r][4].empty();
    if (row.has_observed) row.observed = to_double(rows[r][4]);
    out.push_back(row);
  }
  return out;
}

std::string kernel_csv(const KernelTable& table) {
  std::string out = "z";
  for (const auto& c : table.columns) out += "," + c;
  out += "\n";
  for (std::size_t i = 0; i < table.z.size(); ++i) {
    out += format_double(table.z[i]);
    for (const auto& curve : table.curves) out += "," + format_double(curve.at(i));
    out += "\n";
  }
  return out;
}

KernelTable parse_kernel_csv(const std::string& text) {
  const auto rows = parse_rows(text, {});
  if (rows.front().empty() || rows.front()[0] != "z") throw IoError("kernel table must start with a z column");
  KernelTable t;
  t.columns.assign(rows.front().begin() + 1, rows.front().end());
  t.curves.resize(t.columns.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    t.z.push_back(to_double(rows[r][0]));
    for (std::size_t c = 0; c < t.columns.size(); ++c) t.curves[c].push_back(to_double(rows[r][c + 1]));
  }
  return t;
}

}  // namespace ingap::io
