#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "boidol/errors.hpp"
#include "commands.hpp"

using namespace boidol;
using namespace boidol::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunContext small_context(const fs::path& out) {
  RunContext ctx;
  ctx.config.L = 12.0;
  ctx.config.n_linear = 128;
  ctx.config.n_log = 128;
  ctx.config.witness_ks = {10, 100};
  ctx.out_dir = out;
  return ctx;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("boidol_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, OutputDirectoryPrecedence) {
  ExperimentConfig c;
  ::setenv("BOIDOL_OUT_DIR", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_output_dir("", c), fs::path("/tmp/from_env"));
  c.output_dir = "/tmp/from_config";
  EXPECT_EQ(resolve_output_dir("", c), fs::path("/tmp/from_config"));
  EXPECT_EQ(resolve_output_dir("/tmp/from_flag", c), fs::path("/tmp/from_flag"));
  ::unsetenv("BOIDOL_OUT_DIR");
  c.output_dir.clear();
  EXPECT_EQ(resolve_output_dir("", c), fs::path("boidol_out"));
}

TEST_F(CliTest, NormsEmbedHashAndDiagnostic) {
  const RunContext ctx = small_context(dir_);
  ASSERT_EQ(cmd_norms(ctx), Ok);
  const auto doc = nlohmann::ordered_json::parse(slurp(dir_ / "norms.json"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "config_hash", "grid_diagnostic", "config", "result"}));
  EXPECT_EQ(doc["config_hash"], ctx.config.hash());
  EXPECT_TRUE(doc["grid_diagnostic"]["enabled"].get<bool>());
  EXPECT_EQ(doc["grid_diagnostic"]["n_linear"][1], 256);
  EXPECT_EQ(doc["result"]["gamma3"].size(), ctx.config.norm_gamma3.size());
  for (const char* f : {"norms_gamma3.csv", "norms_plane.csv"}) {
    std::istringstream csv(slurp(dir_ / f));
    std::string l1, l2, l3;
    std::getline(csv, l1);
    std::getline(csv, l2);
    std::getline(csv, l3);
    EXPECT_EQ(l1, "# config_hash=" + ctx.config.hash());
    EXPECT_EQ(l2.rfind("# grid_diagnostic=", 0), 0u);
    EXPECT_TRUE(l3 == "rho,lambda,norm" || l3 == "mu,nu,norm") << l3;
  }
}

TEST_F(CliTest, OutputsAreReproducible) {
  RunContext ctx = small_context(dir_ / "a");
  ctx.config.diagnostic = false;
  ASSERT_EQ(cmd_norms(ctx), Ok);
  ctx.out_dir = dir_ / "b";
  ASSERT_EQ(cmd_norms(ctx), Ok);
  for (const char* f : {"norms_gamma3.csv", "norms_plane.csv", "norms.json"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
}

TEST_F(CliTest, OperatorDumpsAreWritten) {
  RunContext ctx = small_context(dir_);
  ctx.config.diagnostic = false;
  ctx.config.norm_gamma3 = {{0.0, 1.0}};
  ctx.config.norm_plane = {};
  ctx.dump_operators = true;
  ASSERT_EQ(cmd_norms(ctx), Ok);
  const KernelOperator a = read_operator_dump((dir_ / "operators" / "pi_0_1.bop").string());
  EXPECT_EQ(a.domain.n, 128);
}

TEST_F(CliTest, OrbitsReportLimitSetsAndWitnesses) {
  RunContext ctx = small_context(dir_);
  ctx.config.diagnostic = false;
  ASSERT_EQ(cmd_orbits(ctx), Ok);
  const auto doc = nlohmann::json::parse(slurp(dir_ / "orbits.json"));
  const auto& seqs = doc["result"]["sequences"];
  ASSERT_EQ(seqs.size(), 4u);
  EXPECT_EQ(seqs[0]["limit_set"], "TwoPoints(TwoDim(omega=1,sigma=-),TwoDim(omega=-1,sigma=+))");
  EXPECT_EQ(seqs[1]["limit_set"], "Gamma1UnionGamma0");
  for (const auto& row : seqs[0]["witness"])
    if (row["k"] == 100) EXPECT_LT(row["distance"].get<double>(), 0.011);
  EXPECT_TRUE(fs::exists(dir_ / "orbits_hausdorff.csv"));
}

TEST_F(CliTest, EmptySequenceListGivesEmptyReport) {
  RunContext ctx = small_context(dir_);
  ctx.config.diagnostic = false;
  ctx.config.sequences.clear();
  ASSERT_EQ(cmd_orbits(ctx), Ok);
  const auto doc = nlohmann::json::parse(slurp(dir_ / "orbits.json"));
  EXPECT_TRUE(doc["result"]["sequences"].empty());
}

TEST_F(CliTest, ConvergeZeroFunctionGivesZeroTables) {
  RunContext ctx = small_context(dir_);
  ctx.config.diagnostic = false;
  ctx.config.test_function = TestFunction();
  ctx.config.zero_plans.resize(1);
  ctx.config.zero_plans[0].ks = {2, 4, 8};
  ASSERT_EQ(cmd_converge(ctx, Regime::OmegaZero), Ok);
  const auto doc = nlohmann::json::parse(slurp(dir_ / "converge_zero.json"));
  for (const auto& t : doc["result"]["plans"][0]["tables"])
    for (const auto& r : t["rows"]) EXPECT_EQ(r["value"].get<double>(), 0.0);
}

TEST_F(CliTest, InfeasiblePlanIsRefused) {
  RunContext ctx = small_context(dir_);
  ctx.config.omega_plans[0].R = PowerLaw{0.0, 0.0, 3.0};
  EXPECT_THROW(cmd_converge(ctx, Regime::OmegaNonzero), PlanInfeasible);
}
