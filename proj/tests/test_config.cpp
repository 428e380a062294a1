#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tilecocycle/config.hpp"

using namespace tc;

TEST_CASE("builtin system with bernoulli sampler parses") {
  const RunConfig cfg = parse_config(R"({
    "system": {"builtin": "tmpd"},
    "sampler": {"kind": "bernoulli", "p": [0.5, 0.5], "seed": 42},
    "experiment": {"R": 10}
  })");
  CHECK(cfg.system.num_types() == 2);
  CHECK(cfg.system.num_rules() == 2);
  CHECK(cfg.sampler.seed == 42);
  CHECK(cfg.experiment.at("R").get<double>() == 10.0);
}

TEST_CASE("full schema round-trips a Fibonacci-style system") {
  const RunConfig cfg = parse_config(R"({
    "system": {
      "basis": {
        "dim": 1, "rank": 2,
        "embedding": [[1.0, {"polynomial": [-1, -1, 1], "approx": 1.6}]],
        "mult_tables": [[[0, 1], [1, 1]]],
        "theta": [{"polynomial": [-1, -1, 1], "approx": 1.6}]
      },
      "prototiles": [{"length": [0, 1]}, {"length": [1, 0]}],
      "rules": [{"theta_index": 0, "digits": [
        [{"child": 0, "offset": [0, 0]}, {"child": 1, "offset": [0, 1]}],
        [{"child": 0, "offset": [0, 0]}]
      ]}]
    },
    "sampler": {"kind": "explicit", "word": [0]}
  })");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(cfg.system.basis.embedding(0, 1) == doctest::Approx(phi).epsilon(1e-12));
  CHECK(cfg.system.theta(0) == doctest::Approx(phi).epsilon(1e-12));
  CHECK(cfg.system.tile_width(0) == doctest::Approx(phi));
  CHECK(cfg.system.tile_width(1) == doctest::Approx(1.0));
}

TEST_CASE("all schema errors are collected, not just the first") {
  try {
    parse_config(R"({})");
    FAIL("expected ConfigParseError");
  } catch (const ConfigParseError& e) {
    REQUIRE(e.errors().size() == 2);  // missing system and sampler
  }
}

TEST_CASE("probability errors carry a JSON pointer") {
  try {
    parse_config(R"({
      "system": {"builtin": "tmpd"},
      "sampler": {"kind": "bernoulli", "p": [0.9, 0.9], "seed": 1}
    })");
    FAIL("expected ConfigParseError");
  } catch (const ConfigParseError& e) {
    REQUIRE_FALSE(e.errors().empty());
    CHECK(e.errors()[0].pointer == "/sampler");
  }
}

TEST_CASE("missing seed on a stochastic sampler is an error") {
  CHECK_THROWS_AS(parse_config(R"({
    "system": {"builtin": "tmpd"},
    "sampler": {"kind": "bernoulli", "p": [0.5, 0.5]}
  })"),
                  ConfigParseError);
}

TEST_CASE("invalid JSON is reported as such") {
  try {
    parse_config("{nope");
    FAIL("expected ConfigParseError");
  } catch (const ConfigParseError& e) {
    CHECK(e.errors()[0].pointer == "/");
  }
}

TEST_CASE("unknown builtin points at the field") {
  try {
    parse_config(R"({
      "system": {"builtin": "does-not-exist"},
      "sampler": {"kind": "explicit", "word": [0]}
    })");
    FAIL("expected ConfigParseError");
  } catch (const ConfigParseError& e) {
    CHECK(e.errors()[0].pointer == "/system/builtin");
  }
}
