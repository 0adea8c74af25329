#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ingap/series.hpp"

namespace ingap {

/// File missing, unreadable or structurally broken.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestResult {
  SampledSeries series;
  std::size_t rows_read = 0;
  std::size_t dropped_invalid = 0;     // NaN, NA or empty value cells
  std::size_t dropped_duplicates = 0;  // repeated timestamps, first occurrence kept
  std::vector<std::string> log;
};

/// Reads a headered CSV, drops invalid values and duplicate timestamps, sorts
/// by time and normalizes the timestamps onto [-1/2, 1/2).
IngestResult ingest_csv(const std::string& path, const std::string& timestamp_column,
                        const std::string& value_column);

/// Integer epoch seconds, or ISO-8601 "YYYY-MM-DD[THH:MM[:SS[.fff]]][Z|+HH:MM]".
/// Throws InvalidArgument for anything else.
double parse_timestamp(const std::string& text);

/// Splits one CSV record. Handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace ingap
