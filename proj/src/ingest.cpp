#include "ingap/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>

namespace ingap {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Days since 1970-01-01 in the proleptic Gregorian calendar.
long days_from_civil(long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

long to_long(std::string_view s) {
  long v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

[[noreturn]] void bad_timestamp(const std::string& text) {
  throw InvalidArgument("unparseable timestamp '" + text + "' (expected ISO-8601 or integer epoch seconds)");
}

std::optional<double> parse_value(const std::string& cell) {
  if (cell.empty() || cell == "NaN" || cell == "nan" || cell == "NAN" || cell == "NA") return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw IoError("unparseable value '" + cell + "'");
  }
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

double parse_timestamp(const std::string& raw) {
  const std::string text = trim(raw);
  {
    std::string_view s = text;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (all_digits(s)) {
      const double t = static_cast<double>(to_long(s));
      return text[0] == '-' ? -t : t;
    }
  }
  // YYYY-MM-DD
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') bad_timestamp(raw);
  const std::string_view sv = text;
  if (!all_digits(sv.substr(0, 4)) || !all_digits(sv.substr(5, 2)) || !all_digits(sv.substr(8, 2))) bad_timestamp(raw);
  const long year = to_long(sv.substr(0, 4));
  const auto month = static_cast<unsigned>(to_long(sv.substr(5, 2)));
  const auto day = static_cast<unsigned>(to_long(sv.substr(8, 2)));
  if (month < 1 || month > 12 || day < 1 || day > 31) bad_timestamp(raw);
  double seconds = static_cast<double>(days_from_civil(year, month, day)) * 86400.0;
  std::size_t pos = 10;
  if (pos == text.size()) return seconds;
  if (text[pos] != 'T' && text[pos] != ' ') bad_timestamp(raw);
  ++pos;
  auto two = [&](std::size_t at) -> long {
    if (at + 2 > text.size() || !all_digits(sv.substr(at, 2))) bad_timestamp(raw);
    return to_long(sv.substr(at, 2));
  };
  const long hh = two(pos);
  if (pos + 2 >= text.size() || text[pos + 2] != ':') bad_timestamp(raw);
  const long mm = two(pos + 3);
  pos += 5;
  double ss = 0.0;
  if (pos < text.size() && text[pos] == ':') {
    ss = static_cast<double>(two(pos + 1));
    pos += 3;
    if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
      std::size_t end = pos + 1;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end == pos + 1) bad_timestamp(raw);
      ss += std::stod("0." + text.substr(pos + 1, end - pos - 1));
      pos = end;
    }
  }
  if (hh > 23 || mm > 59 || ss >= 61.0) bad_timestamp(raw);
  seconds += static_cast<double>(hh * 3600 + mm * 60) + ss;
  if (pos == text.size()) return seconds;
  if (text[pos] == 'Z' && pos + 1 == text.size()) return seconds;
  if (text[pos] == '+' || text[pos] == '-') {
    const double sign = text[pos] == '+' ? 1.0 : -1.0;
    const long oh = two(pos + 1);
    long om = 0;
    std::size_t after = pos + 3;
    if (after < text.size() && text[after] == ':') ++after;
    if (after < text.size()) {
      om = two(after);
      after += 2;
    }
    if (after != text.size()) bad_timestamp(raw);
    return seconds - sign * static_cast<double>(oh * 3600 + om * 60);
  }
  bad_timestamp(raw);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

IngestResult ingest_csv(const std::string& path, const std::string& timestamp_column,
                        const std::string& value_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("input file '" + path + "' is empty");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split_csv_line(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError("column '" + name + "' not found in '" + path + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t tcol = column(timestamp_column);
  const std::size_t vcol = column(value_column);

  struct Row {
    double t;
    double v;
    std::size_t order;
  };
  std::vector<Row> rows;
  std::size_t read = 0, invalid = 0, line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++read;
    const auto cells = split_csv_line(line);
    if (cells.size() <= std::max(tcol, vcol)) {
      throw IoError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " fields");
    }
    double t = 0.0;
    try {
      t = parse_timestamp(cells[tcol]);
    } catch (const InvalidArgument& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    std::optional<double> v;
    try {
      v = parse_value(cells[vcol]);
    } catch (const IoError& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!v) {
      ++invalid;
      continue;
    }
    rows.push_back({t, *v, rows.size()});
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
  std::vector<double> ts, vs;
  std::size_t duplicates = 0;
  for (const Row& r : rows) {
    if (!ts.empty() && r.t == ts.back()) {
      ++duplicates;
      continue;
    }
    ts.push_back(r.t);
    vs.push_back(r.v);
  }
  if (ts.size() < 2) throw IoError("input '" + path + "' has fewer than 2 valid rows");

  std::vector<std::string> log;
  if (invalid > 0) log.push_back("dropped " + std::to_string(invalid) + " rows with missing or NaN values");
  if (duplicates > 0) log.push_back("dropped " + std::to_string(duplicates) + " rows with duplicate timestamps (first kept)");
  return IngestResult{SampledSeries::from_timestamps(std::move(ts), std::move(vs)), read, invalid, duplicates,
                      std::move(log)};
}

}  // namespace ingap
