#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "boidol/convergence.hpp"
#include "boidol/errors.hpp"

using namespace boidol;

namespace {

FieldGrids small_grids() {
  FieldGrids g;
  g.linear = GridSpec::linear(12.0, 128);
  g.log_pair = GridSpec::log_pair(10.0, 128);
  return g;
}

}  // namespace

TEST(Tables, CsvAndJson) {
  Table t{"dev", "rule", {{2, 4.0, 0.25, 1.5, 0.125, std::numeric_limits<double>::quiet_NaN()}}, true};
  const std::string csv = t.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,rho_k,lambda_k,R_k,value,bound");
  EXPECT_NE(csv.find("2,4,0.25,1.5,0.125,\n"), std::string::npos);
  const auto j = t.to_json();
  EXPECT_TRUE(j["rows"][0]["bound"].is_null());
  EXPECT_EQ(j["rows"][0]["k"], 2);
  EXPECT_EQ(t.values(), std::vector<double>{0.125});
}

TEST(Convergence, ToLinearRecoversPi) {
  const TestFunction f = TestFunction::default_function();
  const GridSpec lin = GridSpec::linear(12.0, 512);
  const GridSpec pair = GridSpec::log_pair(12.0, 1024);
  for (const auto& [rho, lambda] : {std::pair{2.0, 0.5}, {-1.0, -1.0}}) {
    const KernelOperator back = to_linear(kernel_conjugated(f, rho, lambda, pair), rho, lambda, lin);
    const KernelOperator direct = kernel_pi_rho_lambda(f, rho, lambda, lin);
    EXPECT_LT(op_norm(back - direct), 2e-2 * op_norm(direct)) << rho;
  }
}

TEST(Convergence, SigmaOmegaIsBlockDiagonalAndCut) {
  const SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 2}, PowerLaw{1, -2}, {2, 4}, "w");
  const OperatorField field = fourier_field(TestFunction::default_function(), plan_sample(p), small_grids());
  const KernelOperator s = sigma_k_omega(field, p, 4);
  EXPECT_EQ(block(s, Sign::Plus, Sign::Minus).entries.norm(), 0.0);
  const GridSpec& g = s.domain;
  for (int j = 0; j < g.size(); ++j)
    if (std::abs(g.point(j)) < p.lower_cut(4)) EXPECT_EQ(s.entries.col(j).norm(), 0.0);
  EXPECT_THROW(sigma_k_zero(field, p, 4), PlanInfeasible);
}

TEST(Convergence, CutsOutsideTheWindowAreRefused) {
  const SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 2}, PowerLaw{1, -2}, {64}, "w");
  FieldGrids g = small_grids();
  g.log_pair = GridSpec::log_pair(2.0, 64);
  const OperatorField field = zero_field(plan_sample(p), g);
  EXPECT_THROW(sigma_k_omega(field, p, 64), WindowTooSmall);
}

TEST(Convergence, ZeroFieldGivesZeroTables) {
  const SequencePlan p = default_plan(Regime::OmegaZero, PowerLaw{1, 2}, PowerLaw{1, -4}, {2, 4, 8}, "z");
  const OperatorField field = zero_field(plan_sample(p), small_grids());
  const ConvergenceReport r = run_convergence(field, p);
  EXPECT_TRUE(r.passed);
  EXPECT_GE(r.tables.size(), 4u);
  for (const auto& t : r.tables)
    for (const auto& row : t.rows) EXPECT_EQ(row.value, 0.0) << t.name;
}

TEST(Convergence, OmegaPlanDeviationsDecay) {
  const SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 2}, PowerLaw{1, -2}, {2, 8, 32}, "w");
  FieldGrids g;
  g.linear = GridSpec::linear(12.0, 256);
  g.log_pair = GridSpec::log_pair(10.0, 256);
  const OperatorField field = fourier_field(TestFunction::default_function(), plan_sample(p), g);
  const Table t = deviation_table(field, p);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_LT(t.rows[2].value, 0.1 * t.rows[0].value);
  EXPECT_TRUE(t.passed);
  const Table tail = check_lemma_tail(field, p);
  for (const auto& r : tail.rows) EXPECT_LT(r.value, 1e-12);
}

TEST(Convergence, DekMukBound) {
  const TestFunction f = TestFunction::default_function();
  const DekMuk d = check_dek_muk(f, 0.1, 1.0, GridSpec::linear(12.0, 256));
  EXPECT_TRUE(d.passed);
  EXPECT_GT(d.measured, 0.0);
  EXPECT_LE(d.measured, 1.05 * d.bound);
}
