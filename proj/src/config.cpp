#include "expcert/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace expcert {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw ConfigError("config: " + key + " expects a non-negative integer, got '" + value + "'");
  }
  try {
    return std::stoull(v);
  } catch (const std::out_of_range&) {
    throw ConfigError("config: " + key + " out of range: '" + value + "'");
  }
}

std::vector<std::uint64_t> parse_list(const std::string& key, const std::string& value) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_u64(key, item));
  }
  return out;
}

template <typename T>
T narrow(const std::string& key, std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
    throw ConfigError("config: " + key + " out of range");
  }
  return static_cast<T>(v);
}

}  // namespace

EngineOptions Config::engine() const {
  EngineOptions opt;
  opt.schedule = schedule();
  opt.divisor_bound = divisor_search_bound;
  return opt;
}

SieveConfig Config::sieve() const {
  SieveConfig s;
  s.moduli = sieve_moduli;
  s.jobs = jobs;
  return s;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"precision_start_bits", "precision_cap_bits", "divisor_search_bound",
                                             "sieve_moduli",         "x_max",              "y_max",
                                             "z_max",                "jobs",               "output"};
  return keys;
}

void set_config_value(Config& cfg, const std::string& key, const std::string& value) {
  if (key == "precision_start_bits") {
    cfg.precision_start_bits = narrow<unsigned long>(key, parse_u64(key, value));
  } else if (key == "precision_cap_bits") {
    cfg.precision_cap_bits = narrow<unsigned long>(key, parse_u64(key, value));
  } else if (key == "divisor_search_bound") {
    cfg.divisor_search_bound = parse_u64(key, value);
  } else if (key == "sieve_moduli") {
    cfg.sieve_moduli = parse_list(key, value);
  } else if (key == "x_max") {
    cfg.x_max = narrow<unsigned long>(key, parse_u64(key, value));
  } else if (key == "y_max") {
    cfg.y_max = narrow<unsigned long>(key, parse_u64(key, value));
  } else if (key == "z_max") {
    cfg.z_max = narrow<unsigned long>(key, parse_u64(key, value));
  } else if (key == "jobs") {
    cfg.jobs = narrow<unsigned>(key, parse_u64(key, value));
  } else if (key == "output") {
    cfg.output = trim(value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

Config parse_config(const std::string& text, Config base) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

Config load_config_file(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string emit_config(const Config& cfg) {
  std::ostringstream out;
  out << "precision_start_bits = " << cfg.precision_start_bits << "\n";
  out << "precision_cap_bits = " << cfg.precision_cap_bits << "\n";
  out << "divisor_search_bound = " << cfg.divisor_search_bound << "\n";
  out << "sieve_moduli = ";
  for (std::size_t i = 0; i < cfg.sieve_moduli.size(); ++i) out << (i ? "," : "") << cfg.sieve_moduli[i];
  out << "\n";
  out << "x_max = " << cfg.x_max << "\n";
  out << "y_max = " << cfg.y_max << "\n";
  out << "z_max = " << cfg.z_max << "\n";
  out << "jobs = " << cfg.jobs << "\n";
  out << "output = " << cfg.output << "\n";
  return out.str();
}

void apply_env_overrides(Config& cfg,
                         const std::function<std::optional<std::string>(const std::string&)>& getenv) {
  for (const std::string& key : config_keys()) {
    std::string name = "EXPCERT_";
    for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    std::optional<std::string> value;
    if (getenv) {
      value = getenv(name);
    } else if (const char* v = std::getenv(name.c_str())) {
      value = std::string(v);
    }
    if (value) set_config_value(cfg, key, *value);
  }
}

void validate(const Config& cfg) {
  if (cfg.precision_start_bits == 0 || cfg.precision_cap_bits == 0) {
    throw ConfigError("config: precision bits must be positive");
  }
  if (cfg.precision_start_bits > cfg.precision_cap_bits) {
    throw ConfigError("config: precision_start_bits exceeds precision_cap_bits");
  }
  if (cfg.divisor_search_bound == 0) throw ConfigError("config: divisor_search_bound must be positive");
  if (std::any_of(cfg.sieve_moduli.begin(), cfg.sieve_moduli.end(), [](std::uint64_t m) { return m < 2; })) {
    throw ConfigError("config: sieve moduli must exceed 1");
  }
  if (cfg.x_max < 2 || cfg.y_max < 2 || cfg.z_max < 2) throw ConfigError("config: box sides must be at least 2");
  if (cfg.jobs == 0) throw ConfigError("config: jobs must be positive");
}

}  // namespace expcert
