#include <stdexcept>
#include "doctest.h"
#include "uwalk/config.hpp"

using namespace uwalk;

TEST_CASE("parse and serialize round trip") {
  const RunConfig c = RunConfig::parse(
      "# comment\n"
      "model = saw\n"
      "dimension = 5\n"
      "sizes = 5, 7,9\n"
      "fugacity = 0.1\n"
      "lifted = true\n"
      "measure_interval_sweeps = 0.05\n"
      "chains = 3\n"
      "seed = 18446744073709551615\n"
      "two_point_l1_radius = -1\n");
  CHECK(c.model == Model::Saw);
  CHECK(c.sizes == std::vector<std::int64_t>{5, 7, 9});
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.coupling() == 0.1);
  CHECK(RunConfig::parse(c.serialize()) == c);
  RunConfig d;
  d.burn_in_sweeps = 0.1 + 0.2;
  d.length_law = "half_normal:2.5:40";
  CHECK(RunConfig::parse(d.serialize()) == d);
}

TEST_CASE("configuration errors name the key") {
  auto message = [](const std::string& text) {
    try {
      RunConfig::parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("sizez = 4\n").find("sizez") != std::string::npos);
  CHECK(message("seed = 1\nseed = 2\n").find("duplicate key 'seed'") != std::string::npos);
  CHECK(message("chains = two\n").find("chains") != std::string::npos);
  CHECK(message("lifted = yes\n").find("lifted") != std::string::npos);
  CHECK(message("sizes = 1\n").find("sizes") != std::string::npos);
  CHECK(message("tanh_beta = 1.5\n").find("tanh_beta") != std::string::npos);
  CHECK(message("length_law = poisson:3\n").find("length_law") != std::string::npos);
  CHECK(message("no equals sign\n").find("line 1") != std::string::npos);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("critical points") {
  const auto saw5 = default_critical_point(Model::Saw, 5);
  REQUIRE(saw5);
  CHECK(saw5->value == 0.11314084);
  CHECK(default_critical_point(Model::IsingWorm, 2)->value == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK_FALSE(default_critical_point(Model::Saw, 3));
  RunConfig c;
  c.model = Model::IsingWorm;
  c.dimension = 5;
  CHECK(c.coupling() == default_critical_point(Model::IsingWorm, 5)->value);
  c.dimension = 3;
  CHECK_THROWS_AS(c.coupling(), ConfigError);
  c.tanh_beta = 0.2;
  CHECK(c.coupling() == 0.2);
}

TEST_CASE("length law selection") {
  RunConfig c;
  c.model = Model::Rllerw;
  const TorusSpec spec(5, 3);
  CHECK(c.law_for(spec).max_value() == 242);
  c.length_law = "geometric:0.5";
  CHECK(c.law_for(spec).to_string() == "geometric:0.5");
}
