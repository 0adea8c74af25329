#include "ingap/pipeline.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ingap/io.hpp"
#include "ingap/ingest.hpp"

namespace ingap {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config key '" + key + "': '" + text + "' is not a valid number");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("config key '" + key + "': expected true or false");
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

}  // namespace

WeightKernel RunConfig::make_kernel() const {
  switch (kernel) {
    case KernelFamily::Fejer: return fejer_kernel(n_coeffs);
    case KernelFamily::Flat: return flat_kernel(n_coeffs);
    case KernelFamily::Sobolev: break;
  }
  return sobolev_kernel(n_coeffs, SobolevParams{alpha, beta, gammas.at(0)});
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::vector<std::string> g, m, f;
  for (double v : gammas) g.push_back(io::format_double(v));
  for (MaskMode v : modes) m.push_back(to_string(v));
  for (double v : fractions) f.push_back(io::format_double(v));
  return {
      {"input", input_path},
      {"timestamp_column", timestamp_column},
      {"value_column", value_column},
      {"n_coeffs", std::to_string(n_coeffs)},
      {"kernel", to_string(kernel)},
      {"alpha", io::format_double(alpha)},
      {"beta", std::to_string(beta)},
      {"gamma", join(g)},
      {"modes", join(m)},
      {"fractions", join(f)},
      {"replicates", std::to_string(replicates)},
      {"permutations", std::to_string(permutations)},
      {"output_dir", output_dir},
      {"seed", std::to_string(seed)},
      {"report_timings", report_timings ? "true" : "false"},
  };
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "input") {
    c.input_path = value;
  } else if (key == "timestamp_column") {
    c.timestamp_column = value;
  } else if (key == "value_column") {
    c.value_column = value;
  } else if (key == "n_coeffs") {
    c.n_coeffs = parse_number<std::size_t>(key, value);
  } else if (key == "kernel") {
    try {
      c.kernel = kernel_family_from_string(value);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "alpha") {
    c.alpha = parse_number<double>(key, value);
  } else if (key == "beta") {
    c.beta = parse_number<int>(key, value);
  } else if (key == "gamma") {
    c.gammas.clear();
    for (const auto& item : split_list(value)) c.gammas.push_back(parse_number<double>(key, item));
  } else if (key == "modes") {
    c.modes.clear();
    for (const auto& item : split_list(value)) {
      try {
        c.modes.push_back(mask_mode_from_string(item));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }
  } else if (key == "fractions") {
    c.fractions.clear();
    for (const auto& item : split_list(value)) c.fractions.push_back(parse_number<double>(key, item));
  } else if (key == "replicates") {
    c.replicates = parse_number<int>(key, value);
  } else if (key == "permutations") {
    c.permutations = parse_number<int>(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "report_timings") {
    c.report_timings = parse_bool(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

std::vector<std::string> validate_config(const RunConfig& c, bool require_input) {
  std::vector<std::string> warnings;
  if (c.n_coeffs < 2 || c.n_coeffs % 2 != 0) throw ConfigError("n_coeffs must be even and >= 2");
  if (c.gammas.empty()) throw ConfigError("at least one gamma is required");
  for (double g : c.gammas) {
    if (!(g > 0.0)) throw ConfigError("gamma must be positive (got " + io::format_double(g) + ")");
  }
  if (!(c.alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (c.beta < 1) throw ConfigError("beta must be a positive integer");
  for (double f : c.fractions) {
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("mask fractions must lie in (0, 1)");
  }
  if (c.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (c.permutations < 100) throw ConfigError("permutations must be >= 100");
  if (c.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (require_input) {
    if (c.input_path.empty()) throw ConfigError("no input file configured");
    if (!std::filesystem::is_regular_file(c.input_path)) {
      throw IoError("input file '" + c.input_path + "' does not exist");
    }
  }
  return warnings;
}

}  // namespace ingap
