#pragma once

// On-disk formats: UTF-8 CSV with a header row and '.' decimals, doubles
// printed with 17 significant digits; JSON reports with sorted keys.

#include <string>
#include <vector>

#include "ingap/kernels.hpp"
#include "ingap/series.hpp"

namespace ingap::io {

/// "%.17g"; round-trips every finite double.
std::string format_double(double x);

/// Writes to "<path>.tmp" and renames over path.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

// spectrum.csv: k,re,im,weight
struct SpectrumTable {
  Spectrum spectrum;
  std::vector<double> weights;
};
std::string spectrum_csv(const Spectrum& spectrum, const WeightKernel& kernel);
SpectrumTable parse_spectrum_csv(const std::string& text);

// transform.csv: k,re,im
std::string transform_csv(const Spectrum& spectrum);
Spectrum parse_transform_csv(const std::string& text);

// reconstruction.csv: kind,node,timestamp,reconstructed,observed
// kind is "grid" or "observed"; observed is empty on grid rows.
struct ReconstructionRow {
  std::string kind;
  double node = 0.0;
  double timestamp = 0.0;
  double reconstructed = 0.0;
  double observed = 0.0;
  bool has_observed = false;
};
std::string reconstruction_csv(const std::vector<ReconstructionRow>& rows);
std::vector<ReconstructionRow> parse_reconstruction_csv(const std::string& text);

// kernel.csv: z, then one weight column per curve
struct KernelTable {
  std::vector<std::string> columns;  // curve names, without the leading z
  std::vector<double> z;
  std::vector<std::vector<double>> curves;
};
std::string kernel_csv(const KernelTable& table);
KernelTable parse_kernel_csv(const std::string& text);

}  // namespace ingap::io
