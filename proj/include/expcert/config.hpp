#ifndef EXPCERT_CONFIG_HPP
#define EXPCERT_CONFIG_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "expcert/certifier.hpp"
#include "expcert/search.hpp"

namespace expcert {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Run settings. Text form is one `key = value` per line; `#` starts a comment.
struct Config {
  unsigned long precision_start_bits = 128;
  unsigned long precision_cap_bits = 65536;
  std::uint64_t divisor_search_bound = 1'000'000;
  std::vector<std::uint64_t> sieve_moduli{8, 3, 5, 7, 11, 13, 16, 9};
  unsigned long x_max = 30;
  unsigned long y_max = 30;
  unsigned long z_max = 30;
  unsigned jobs = 1;
  std::string output;  // empty means stdout

  friend bool operator==(const Config&, const Config&) = default;

  PrecisionSchedule schedule() const { return {precision_start_bits, precision_cap_bits}; }
  EngineOptions engine() const;
  SieveConfig sieve() const;
  SearchBox box() const { return {x_max, y_max, z_max}; }
};

const std::vector<std::string>& config_keys();

/// Sets one key from its text value. Throws ConfigError on an unknown key or a bad value.
void set_config_value(Config& cfg, const std::string& key, const std::string& value);

Config parse_config(const std::string& text, Config base = {});
Config load_config_file(const std::string& path, Config base = {});
std::string emit_config(const Config& cfg);

/// Applies EXPCERT_<KEY> variables (key upper-cased). `getenv` is injectable for tests.
void apply_env_overrides(Config& cfg,
                         const std::function<std::optional<std::string>(const std::string&)>& getenv = {});

/// Throws ConfigError unless every field is positive and start <= cap.
void validate(const Config& cfg);

}  // namespace expcert

#endif  // EXPCERT_CONFIG_HPP
