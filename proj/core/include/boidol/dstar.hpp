#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "boidol/convergence.hpp"
#include "boidol/sigma0.hpp"

namespace boidol {

struct DstarConfig {
  FieldGrids grids{};
  Sigma0Config sigma0{};
  ConvergenceOptions convergence{};
  int rank_budget = 0;  // 0: n/8
  double compact_tol = 1e-3;
  double vanish_tol = 1e-2;  // far-point norms relative to the near-point sup

  std::vector<Point2> gamma3_near{{0.0, 1.0}, {0.5, 1.0}, {-1.0, 0.5}, {1.0, -1.0}, {0.5, -0.5}};
  std::vector<Point2> gamma3_far{{64.0, 1.0}, {-64.0, 1.0}, {64.0, -1.0}};
  Point2 gamma3_base{0.5, 1.0};
  std::vector<TwoDim> gamma2_near{{0.5, Sign::Plus}, {-0.5, Sign::Minus}, {2.0, Sign::Plus}, {-2.0, Sign::Plus}};
  std::vector<TwoDim> gamma2_far{{64.0, Sign::Plus}, {-64.0, Sign::Minus}};
  TwoDim gamma2_base{0.5, Sign::Plus};
  double gamma0_base = 0.0;
  std::vector<double> gamma0_far{64.0, -64.0};
  std::vector<double> ladder{0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  bool adjoint_suite = true;

  nlohmann::ordered_json to_json() const;
};

/// Default plans: omega = 1 with rho_k = k^2, lambda_k = k^-2; omega_k -> 0 with
/// rho_k = k^2, lambda_k = k^-4; Gamma2 with omega_k = k^-2 (eps = +). k = 2, 4, ..., 32.
std::vector<SequencePlan> default_dstar_plans();

/// Sample covering every point the report evaluates.
SpectrumSample dstar_sample(const DstarConfig& cfg, const std::vector<SequencePlan>& plans);

struct ConditionResult {
  std::string name;
  std::string description;
  bool passed = false;
  nlohmann::ordered_json detail;
  std::vector<Table> tables;
};

struct DstarReport {
  std::vector<ConditionResult> conditions;
  bool passed() const;
  std::vector<std::string> failed() const;
  nlohmann::ordered_json to_json() const;
};

/// Conditions 1, 2a-2d, 3a-3d on the field and, with cfg.adjoint_suite, the same suite on
/// the adjoint field (names prefixed "4:"). Errors are recorded per condition.
DstarReport dstar_report(const OperatorField& field, const std::vector<SequencePlan>& plans,
                         const DstarConfig& cfg = {});

enum class Tamper { None, ZeroGamma2Limits, IdentityGamma1, SpikeGamma0 };
Tamper tamper_from_string(const std::string& s);
const char* to_string(Tamper t);

/// Copy of `field` with one defect injected: the sigma_k^omega limit entries zeroed, the
/// identity at the Gamma1 point (1,0), or a jump at tau = gamma0_base.
OperatorField tamper(const OperatorField& field, Tamper t, const std::vector<SequencePlan>& plans,
                     const DstarConfig& cfg = {});

}  // namespace boidol
