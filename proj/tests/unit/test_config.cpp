#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "boidol/errors.hpp"
#include "config.hpp"

using namespace boidol;
using namespace boidol::cli;

namespace {

std::string error_location(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.location;
  }
  return "no error";
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
  const ExperimentConfig c = parse_config("{}");
  const ExperimentConfig d;
  EXPECT_EQ(c.hash(), d.hash());
  EXPECT_EQ(c.sequences.size(), 4u);
  EXPECT_EQ(c.omega_plans.size(), 1u);
  EXPECT_EQ(c.zero_plans.size(), 2u);
  EXPECT_EQ(c.dstar_plans.size(), 3u);
  EXPECT_EQ(c.grids().linear.n, 512);
}

TEST(Config, EffectiveConfigRoundTrips) {
  ExperimentConfig c;
  c.L = 10.0;
  c.ratio = 0.2;
  c.tamper = Tamper::SpikeGamma0;
  c.norm_plane = {{2.0, -1.0}};
  const ExperimentConfig back = parse_config(c.to_json().dump());
  EXPECT_EQ(back.hash(), c.hash());
  EXPECT_EQ(back.to_json(), c.to_json());
}

TEST(Config, HashIgnoresOutputLocationAndThreads) {
  ExperimentConfig a, b;
  b.output_dir = "/tmp/elsewhere";
  b.threads = 8;
  EXPECT_EQ(a.hash(), b.hash());
  b.compact_tol = 2e-3;
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 64u);
}

TEST(Config, KeyOrderIsStable) {
  const auto j = ExperimentConfig().to_json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> expected{"seed", "threads", "grid_scale", "output_dir", "test_function", "grids",
                                          "tolerances", "orbits", "converge", "dstar", "norms", "diagnostic"};
  EXPECT_EQ(keys, expected);
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(error_location(R"({"grids": {"nodes": 3}})"), "/grids/nodes");
  EXPECT_EQ(error_location(R"({"grids": {"n_linear": 511}})"), "/grids/n_linear");
  EXPECT_EQ(error_location(R"({"tolerances": {"ratio": "x"}})"), "/tolerances/ratio");
  EXPECT_EQ(error_location(R"({"grid_scale": 3})"), "/grid_scale");
  EXPECT_EQ(error_location(R"({"converge": {"omega": {"plans": [{"regime": "sideways"}]}}})"),
            "/converge/omega/plans/0/regime");
  EXPECT_EQ(error_location(R"({"orbits": {"witness_ks": [10, 5]}})"), "/orbits/witness_ks/1");
  EXPECT_EQ(error_location(R"({"dstar": {"tamper": "everything"}})"), "/dstar/tamper");
  EXPECT_EQ(error_location(R"({"norms": {"plane": [[1, 2, 3]]}})"), "/norms/plane/0");
}

TEST(Config, SyntaxErrorsGiveLineAndColumn) {
  EXPECT_EQ(error_location("{\n  \"seed\": 1,\n  \"grids\": {,}\n}"), "line 3, column 13");
  EXPECT_EQ(error_location("[1, 2"), "line 1, column 6");
}

TEST(Config, TestFunctionFromRelativePath) {
  const auto dir = std::filesystem::temp_directory_path() / "boidol_cfg_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "f.json") << R"({"adjoint": false, "terms": []})";
    std::ofstream(dir / "c.json") << R"({"test_function": "f.json"})";
  }
  const ExperimentConfig c = load_config((dir / "c.json").string());
  EXPECT_TRUE(c.test_function.is_zero());
  {
    std::ofstream(dir / "d.json") << R"({"test_function": "missing.json"})";
  }
  EXPECT_THROW(load_config((dir / "d.json").string()), ConfigError);
  EXPECT_THROW(load_config((dir / "none.json").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Config, PlanOverrides) {
  PlanSpec p;
  p.name = "const_R";
  p.R = PowerLaw{0.0, 0.0, 3.0};
  EXPECT_THROW(verify_plan(p.build()), PlanInfeasible);
  PlanSpec z;
  z.regime = Regime::OmegaZero;
  z.lambda = {1.0, -4.0};
  z.R = PowerLaw{1.0, 0.75};
  const SequencePlan built = z.build();
  EXPECT_NEAR(built.R(16), 8.0, 1e-12);
  EXPECT_NEAR(built.T(16), std::pow(16.0 * 16.0 / 65536.0, -0.5), 1e-9);
  PlanSpec g;
  g.regime = Regime::Gamma2;
  g.eps = Sign::Minus;
  EXPECT_EQ(g.build().eps, Sign::Minus);
}

TEST(Config, GridScaleAppliesToGrids) {
  ExperimentConfig c;
  c.grid_scale = 4;
  EXPECT_EQ(c.grids().linear.n, 2048);
  EXPECT_EQ(c.grids().log_pair.half_width, 40.0);
}
