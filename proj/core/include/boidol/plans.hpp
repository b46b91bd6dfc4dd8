#pragma once

#include <functional>
#include <string>
#include <vector>

#include "boidol/fields.hpp"
#include "boidol/operator.hpp"

namespace boidol {

using Seq = std::function<double(long)>;

enum class Regime { OmegaNonzero, OmegaZero, Gamma2 };

const char* to_string(Regime r);

/// A degenerating sequence with its auxiliary scales. Gamma3 regimes use rho/lambda;
/// Gamma2 plans use omega_abs (the Gamma2 points (eps*w_k, -eps), (-eps*w_k, eps)).
struct SequencePlan {
  std::string name;
  Regime regime = Regime::OmegaNonzero;
  Sign eps = Sign::Plus;
  double omega = 0.0;  // lim rho_k lambda_k (OmegaNonzero)
  Seq rho, lambda, omega_abs;
  Seq R, S, T;
  std::vector<long> ks;
  bool use_omega_k = false;  // sigma_k^omega built from omega_k instead of the limit

  /// rho_k lambda_k (Gamma3) or eps * omega_abs(k) (Gamma2).
  double omega_k(long k) const;
  /// First coordinate of the + half limit point: eps*omega (or eps*omega_k).
  double mu(long k, bool limit = true) const;
  /// R_k |lambda_k|; 0 for Gamma2 plans.
  double lower_cut(long k) const;
};

/// Zone edges a = R|lambda| < b = |omega_k| S_k <= c = |omega_k| T_k on |u|:
/// J1 = ]a, b], I2 = ]b, c], I3 = ]c, inf[.
struct Zones {
  double a = 0, b = 0, c = 0;
  IntervalSpec J1, I2, I3;
};
Zones zones(const SequencePlan& plan, long k);

SequencePlan default_plan(Regime regime, Seq rho, Seq lambda, std::vector<long> ks,
                          std::string name = {});
/// S_k = max(|omega_k|^{-1/4}, R_k/|rho_k|), T_k = |omega_k|^{-1/2} from the current R.
void attach_zone_scales(SequencePlan& plan);
SequencePlan gamma2_plan(Sign eps, Seq omega_abs, std::vector<long> ks, std::string name = {});

/// Re-checks the regime invariants on a doubling horizon from ks.front() to 1e6 and the
/// pointwise ones on ks. PlanInfeasible names the violated invariant.
void verify_plan(const SequencePlan& plan);

/// Points a field needs for the convergence checks of `plan`.
SpectrumSample plan_sample(const SequencePlan& plan);

/// "Tends to 0": last <= ratio * first and the second half of the steps is monotone up to
/// a relative `wiggle`. Sequences whose entries are all below `floor` pass.
bool tends_to_zero(const std::vector<double>& v, double ratio = 0.1, double wiggle = 0.1,
                   double floor = 1e-12);
/// last >= growth * first, second half of the steps nondecreasing up to `wiggle`.
bool tends_to_infinity(const std::vector<double>& v, double growth = 10.0, double wiggle = 0.1);

/// Closed-form family c * k^p + d.
struct PowerLaw {
  double coeff = 1.0;
  double power = 0.0;
  double offset = 0.0;
  double operator()(long k) const;
};

}  // namespace boidol
