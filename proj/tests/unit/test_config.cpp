#include <doctest.h>

#include "elab/config.hpp"
#include "elab/errors.hpp"

using namespace elab;

TEST_SUITE_BEGIN("config");

TEST_CASE("empty config yields defaults") {
  RunConfig cfg = parse_config("{}");
  CHECK(cfg.seed == 0);
  CHECK(cfg.frame.provenance() == Provenance::Flat);
  CHECK(cfg.integrator.rel_tol == 1e-10);
  CHECK(cfg.sampler.box.x[1] == 1.2);
  CHECK(cfg.regions == RegionChoice::Flat);
}

TEST_CASE("full config parses") {
  const char* text = R"({
    "seed": 99,
    "frame": {"type": "normal_form",
              "phi": [{"coef": 0.05, "exp": [1,0,0,0]}],
              "psi1": [],
              "psi2": [{"coef": 0.05, "exp": [1,0,0,0]}]},
    "integrator": {"rel_tol": 1e-9, "abs_tol": 1e-9, "max_step": 0.1,
                   "event_tol": 1e-11},
    "sampler": {"n_paths": 500, "pieces_per_path": 4, "horizon": 0.8,
                "strategy": "bang_bang", "chi_max": 2.0,
                "box": {"x": [0, 0.9], "y": [-0.5, 0.5], "z": [-0.5, 0.5],
                        "w": [-0.5, 0.5]}},
    "regions": "weak_general",
    "slack": 1e-6,
    "probe": {"delta": 0.04, "x_max": 0.9},
    "verify": {"grid_n": 11, "oracle_points": 100, "mc_paths": 10,
               "geodesics": 5},
    "output": {"cloud": "c.csv", "report": "r.json"}
  })";
  RunConfig cfg = parse_config(text);
  CHECK(cfg.seed == 99);
  CHECK(cfg.frame.provenance() == Provenance::NormalForm);
  CHECK(cfg.frame.z_free());
  CHECK(cfg.integrator.max_step == 0.1);
  CHECK(cfg.sampler.n_paths == 500);
  CHECK(cfg.sampler.strategy == SampleStrategy::BangBang);
  CHECK(cfg.regions == RegionChoice::WeakGeneral);
  CHECK(cfg.slack == 1e-6);
  CHECK(cfg.probe.delta == 0.04);
  CHECK(cfg.verify.grid_n == 11);
  CHECK(cfg.out_cloud == "c.csv");
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_AS(parse_config(R"({"sneaky": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"frame": {"type": "flat", "x": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"integrator": {"reltol": 1e-9}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"sampler": {"box": {"x": [0,1], "v": [0,1]}}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(
          R"({"frame": {"type": "normal_form",
                        "phi": [{"coef": 1, "exp": [0,0,0,0], "deg": 2}]}})"),
      ConfigError);
}

TEST_CASE("malformed values are rejected") {
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seed": -3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"regions": "all"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sampler": {"strategy": "dense"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sampler": {"box": {"x": [1, 0]}}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"frame": {"type": "normal_form",
                                 "psi1": [{"coef": 1, "exp": [0,0,1,0]}]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"frame": {"type": "normal_form",
                                 "phi": [{"coef": 1, "exp": [0,0,-1,0]}]}})"),
      ConfigError);
}

TEST_CASE("custom frames parse componentwise") {
  const char* text = R"({
    "frame": {"type": "custom",
      "x_field": [[{"coef": 1, "exp": [0,0,0,0]}], [], [], []],
      "y_field": [[], [{"coef": 1, "exp": [0,0,0,0]}], [], []]}
  })";
  RunConfig cfg = parse_config(text);
  CHECK(cfg.frame.provenance() == Provenance::Custom);
  CHECK(cfg.frame.X().comp[0] == Poly4(1.0));
  CHECK(cfg.frame.Y().comp[1] == Poly4(1.0));
}

TEST_CASE("config hash is deterministic and seed sensitive") {
  RunConfig a = parse_config(R"({"seed": 1})");
  RunConfig b = parse_config(R"({"seed": 1})");
  RunConfig c = parse_config(R"({"seed": 2})");
  CHECK(a.config_hash() == b.config_hash());
  CHECK(a.config_hash() != c.config_hash());
  CHECK(a.config_hash().rfind("fnv1a:", 0) == 0);
}

TEST_CASE("report serialization carries every check field") {
  VerificationReport rep;
  rep.tool_version = "0.1.0";
  rep.config_hash = "fnv1a:nil";
  rep.add(CheckResult::pass("demo", "anchor text", 1e-12, "origin"));
  rep.add(CheckResult::fail("boom", "other anchor", 0.5, "", "synthetic"));
  CHECK(rep.any_fail());
  CHECK(rep.count(CheckStatus::Pass) == 1);
  std::string json = rep.to_json();
  CHECK(json.find("\"anchor\": \"anchor text\"") != std::string::npos);
  CHECK(json.find("\"status\": \"FAIL\"") != std::string::npos);
  CHECK(json.find("\"worst_residual\"") != std::string::npos);
  std::string text = rep.to_text();
  CHECK(text.find("[PASS] demo") != std::string::npos);
}

TEST_SUITE_END();
