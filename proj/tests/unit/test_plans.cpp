#include <gtest/gtest.h>

#include <cmath>

#include "boidol/errors.hpp"
#include "boidol/plans.hpp"

using namespace boidol;

namespace {

const std::vector<long> kKs{2, 4, 8, 16, 32};

std::string infeasible_reason(const SequencePlan& p) {
  try {
    verify_plan(p);
  } catch (const PlanInfeasible& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Plans, ConvergenceRules) {
  EXPECT_TRUE(tends_to_zero({1.0, 0.5, 0.2, 0.05}));
  EXPECT_FALSE(tends_to_zero({1.0, 0.5, 0.2, 0.15}));
  EXPECT_FALSE(tends_to_zero({1.0, 0.01, 0.5, 0.05, 0.09}));
  EXPECT_TRUE(tends_to_zero({1.0, 0.01, 0.5, 0.05, 0.052}));
  EXPECT_TRUE(tends_to_zero({0.0, 1e-14, 0.0}));
  EXPECT_TRUE(tends_to_infinity({1.0, 5.0, 20.0}));
  EXPECT_FALSE(tends_to_infinity({1.0, 20.0, 5.0}));
  EXPECT_FALSE(tends_to_infinity({1.0}));
}

TEST(Plans, PowerLaw) {
  const PowerLaw p{2.0, -1.0, 1.0};
  EXPECT_DOUBLE_EQ(p(4), 1.5);
}

TEST(Plans, DefaultOmegaPlan) {
  const SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 2}, PowerLaw{1, -2}, kKs, "w");
  EXPECT_NEAR(p.omega, 1.0, 1e-12);
  EXPECT_EQ(p.eps, Sign::Plus);
  EXPECT_NEAR(p.R(8), std::pow(64.0, 2.0 / 3.0), 1e-9);
  EXPECT_NEAR(p.lower_cut(8), std::pow(64.0, 2.0 / 3.0) / 64.0, 1e-12);
  EXPECT_EQ(p.mu(8), 1.0);
  EXPECT_NO_THROW(verify_plan(p));
}

TEST(Plans, NegativeLambdaFlipsEpsilon) {
  const SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 1}, PowerLaw{-1, -1}, kKs);
  EXPECT_EQ(p.eps, Sign::Minus);
  EXPECT_NEAR(p.omega, -1.0, 1e-12);
  EXPECT_NEAR(p.mu(4), 1.0, 1e-12);
  EXPECT_NO_THROW(verify_plan(p));
}

TEST(Plans, DefaultZeroPlanHasOrderedZones) {
  const SequencePlan p = default_plan(Regime::OmegaZero, PowerLaw{1, 2}, PowerLaw{1, -4}, kKs, "z");
  EXPECT_NO_THROW(verify_plan(p));
  for (long k : kKs) {
    const Zones z = zones(p, k);
    EXPECT_LE(z.a, z.b);
    EXPECT_LE(z.b, z.c);
    EXPECT_TRUE(z.J1.contains(0.5 * (z.a + z.b)));
    EXPECT_TRUE(z.I3.contains(-2.0 * z.c));
    EXPECT_FALSE(z.I2.contains(z.b));
  }
}

TEST(Plans, BrokenPlansNameTheirInvariant) {
  SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 2}, PowerLaw{1, -2}, kKs, "r");
  p.R = [](long) { return 3.0; };
  EXPECT_NE(infeasible_reason(p).find("R_k -> infinity"), std::string::npos);

  SequencePlan q = default_plan(Regime::OmegaNonzero, PowerLaw{1, 2}, PowerLaw{1, -2}, kKs, "q");
  q.R = [](long k) { return static_cast<double>(k) * k * k; };
  EXPECT_NE(infeasible_reason(q).find("R_k |lambda_k| -> 0"), std::string::npos);

  SequencePlan w = default_plan(Regime::OmegaZero, PowerLaw{1, 1}, PowerLaw{1, -1}, kKs, "w");
  EXPECT_NE(infeasible_reason(w).find("omega_k -> 0"), std::string::npos);

  SequencePlan s = default_plan(Regime::OmegaNonzero, PowerLaw{1, 1}, PowerLaw{0, 0, 1}, kKs, "s");
  EXPECT_NE(infeasible_reason(s).find("lambda_k -> 0"), std::string::npos);

  EXPECT_THROW(default_plan(Regime::OmegaNonzero, PowerLaw{}, PowerLaw{}, {}), PlanInfeasible);
  EXPECT_THROW(default_plan(Regime::Gamma2, PowerLaw{}, PowerLaw{}, kKs), PlanInfeasible);
}

TEST(Plans, OverlappingZonesAreRejected) {
  SequencePlan p = default_plan(Regime::OmegaZero, PowerLaw{1, 2}, PowerLaw{1, -4}, kKs, "o");
  p.S = [](long) { return 1e9; };
  EXPECT_THROW(zones(p, 4), ZoneOverlap);
}

TEST(Plans, Gamma2Plan) {
  const SequencePlan p = gamma2_plan(Sign::Minus, PowerLaw{1, -2}, kKs, "g");
  EXPECT_NO_THROW(verify_plan(p));
  EXPECT_NEAR(p.omega_k(4), -1.0 / 16, 1e-15);
  EXPECT_EQ(p.lower_cut(4), 0.0);
  EXPECT_NEAR(p.T(4), 4.0, 1e-12);
}

TEST(Plans, SamplesContainTheLimitPoints) {
  const SequencePlan w = default_plan(Regime::OmegaNonzero, PowerLaw{1, 2}, PowerLaw{1, -2}, kKs);
  const SpectrumSample s = plan_sample(w);
  EXPECT_EQ(s.gamma3_frame.size(), kKs.size());
  auto has = [&](Point2 p) { return std::find(s.plane.begin(), s.plane.end(), p) != s.plane.end(); };
  EXPECT_TRUE(has({1.0, -1.0}));
  EXPECT_TRUE(has({-1.0, 1.0}));
  const SequencePlan z = default_plan(Regime::OmegaZero, PowerLaw{1, 2}, PowerLaw{1, -4}, kKs);
  const SpectrumSample t = plan_sample(z);
  auto has_t = [&](Point2 p) { return std::find(t.plane.begin(), t.plane.end(), p) != t.plane.end(); };
  EXPECT_TRUE(has_t({0.0, 0.0}));
  EXPECT_TRUE(has_t({0.0, -1.0}));
  EXPECT_TRUE(has_t({z.mu(4), 0.0}));
}
