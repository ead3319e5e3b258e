#include <doctest.h>
#include <json.hpp>

#include <map>

#include "expcert/config.hpp"
#include "expcert/serialize.hpp"

using namespace expcert;
using nlohmann::json;

TEST_CASE("config text round trip") {
  Config cfg;
  cfg.precision_start_bits = 96;
  cfg.precision_cap_bits = 4096;
  cfg.divisor_search_bound = 5000;
  cfg.sieve_moduli = {8, 9, 25};
  cfg.x_max = 12;
  cfg.y_max = 13;
  cfg.z_max = 14;
  cfg.jobs = 3;
  cfg.output = "out.json";
  CHECK(parse_config(emit_config(cfg)) == cfg);
  CHECK(parse_config(emit_config(Config{})) == Config{});
}

TEST_CASE("config parsing") {
  const Config cfg = parse_config("# comment\nx_max = 7  # trailing\n\njobs=2\n");
  CHECK(cfg.x_max == 7);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.y_max == Config{}.y_max);
  CHECK_THROWS_AS(parse_config("nonsense = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("x_max"), ConfigError);
  CHECK_THROWS_AS(parse_config("x_max = -3"), ConfigError);
  CHECK_THROWS_AS(parse_config("jobs = 99999999999999"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/expcert.conf"), ConfigError);
}

TEST_CASE("environment overrides") {
  const std::map<std::string, std::string> env{{"EXPCERT_Z_MAX", "9"}, {"EXPCERT_SIEVE_MODULI", "3,5"}};
  Config cfg;
  apply_env_overrides(cfg, [&](const std::string& name) -> std::optional<std::string> {
    const auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
  CHECK(cfg.z_max == 9);
  CHECK(cfg.sieve_moduli == std::vector<std::uint64_t>{3, 5});
  CHECK(cfg.x_max == Config{}.x_max);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(Config{}));
  Config c;
  c.precision_start_bits = 1024;
  c.precision_cap_bits = 512;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = Config{};
  c.jobs = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = Config{};
  c.sieve_moduli = {1};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = Config{};
  c.x_max = 1;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("instance document") {
  const json j = json::parse(instance_json(build_instance(2, 1, 6)));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["kind"] == "instance");
  CHECK(j["instance"]["a"] == "117");
  CHECK(j["instance"]["b"] == "44");
  CHECK(j["instance"]["c"] == "5");
  CHECK(j["instance"]["identity"]["holds"] == true);
  CHECK(j["instance"]["gcd_a_b"] == "1");
}

TEST_CASE("certificate document") {
  const json j = json::parse(certificate_json(certify(build_instance(4402337, 16, 2))));
  CHECK(j["kind"] == "certificate");
  CHECK(j["verdict"] == "ConjectureHolds");
  CHECK(j["open_branches"].empty());
  REQUIRE(j["trace"].is_array());
  for (const auto& node : j["trace"]) {
    CHECK(node["closed"] == true);
    if (!node["children"].empty()) CHECK(node["closure"] == "split");
  }
  CHECK_FALSE(j["rules"].empty());
}

TEST_CASE("search document") {
  const Instance inst = build_instance(2, 1, 2);
  const json j = json::parse(search_report_json(exhaustive_search(inst, {10, 10, 10})));
  CHECK(j["kind"] == "search");
  CHECK(j["solutions"] == json::array({json::array({2, 2, 2})}));
  CHECK(j["only_trivial"] == true);
}

TEST_CASE("elimination document") {
  const Instance inst = build_instance(3, 2, 2);
  const json j = json::parse(elimination_json(inst, eliminate_y1(inst)));
  CHECK(j["kind"] == "cfcheck");
  CHECK(j["verdict"] == "eliminated");
  CHECK(j["continued_fraction"]["partial_quotients"].size() == j["continued_fraction"]["denominators"].size());
}
