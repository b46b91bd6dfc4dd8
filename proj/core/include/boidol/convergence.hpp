#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "boidol/fields.hpp"
#include "boidol/plans.hpp"

namespace boidol {

struct TableRow {
  long k = 0;
  double rho = 0, lambda = 0, R = 0, value = 0, bound = 0;
};

/// Per-k table; `bound` is NaN where a table has no bound column.
struct Table {
  std::string name;
  std::string rule;
  std::vector<TableRow> rows;
  bool passed = true;

  std::vector<double> values() const;
  nlohmann::ordered_json to_json() const;
  /// Header k,rho_k,lambda_k,R_k,value,bound.
  std::string to_csv() const;
};

struct ConvergenceOptions {
  double ratio = 0.1;
  double wiggle = 0.1;
  double envelope_slack = 1.5;
  NormOptions norm{};
};

// Constructions on the LogPair frame (V_k^* ... V_k), built from the limit entries of `field`.

/// (A+ o M_{>= R|lambda|}) (+) (A- o M_{<= -R|lambda|}), A+ = tau(eps w, -eps), A- = tau(-eps w, eps).
KernelOperator sigma_k_omega(const OperatorField& field, const SequencePlan& plan, long k);
/// Three-zone operator on one half-line.
KernelOperator s_k_zero(const OperatorField& field, const SequencePlan& plan, long k, Sign half);
KernelOperator sigma_k_zero(const OperatorField& field, const SequencePlan& plan, long k);
/// sigma_k^omega or sigma_k^0 according to the plan regime.
KernelOperator sigma_k(const OperatorField& field, const SequencePlan& plan, long k);

/// V_k A V_k^* on a Linear grid by bicubic interpolation of the LogPair kernel:
/// K(s,x) = e^{i rho (ln|s| - ln|x|)} A(|lambda| s, |lambda| x) / sqrt(|s x|).
KernelOperator to_linear(const KernelOperator& log_pair_op, double rho, double lambda,
                         const GridSpec& linear);

/// || V_k^* pi V_k - sigma_k ||.
double frame_deviation(const OperatorField& field, const SequencePlan& plan, long k,
                       const NormOptions& norm = {});
/// || tau(h eps w_k, -h eps) - s_k^h ||.
double lemma_4_10_deviation(const OperatorField& field, const SequencePlan& plan, long k,
                            Sign half, const NormOptions& norm = {});

Table deviation_table(const OperatorField& field, const SequencePlan& plan,
                      const ConvergenceOptions& opt = {});
/// ||V_k^* pi V_k M_{|u| >= R_k}||.
Table check_lemma_tail(const OperatorField& field, const SequencePlan& plan,
                       const ConvergenceOptions& opt = {});
/// ||V_k^* pi V_k M_{|u| <= R_k |lambda_k|}||.
Table check_lemma_small(const OperatorField& field, const SequencePlan& plan,
                        const ConvergenceOptions& opt = {});
/// Parts (a) u > 0 and (b) u < 0 against C (|w_k| / (R_k^2 |lambda_k|) + 1/R_k), C fitted on
/// the first two indices.
std::pair<Table, Table> check_lemma_rate(const OperatorField& field, const SequencePlan& plan,
                                         const ConvergenceOptions& opt = {});
Table check_lemma_4_10(const OperatorField& field, const SequencePlan& plan, Sign half,
                       const ConvergenceOptions& opt = {});

/// Convenience overloads that build the required field first.
Table check_lemma_tail(const TestFunction& f, const SequencePlan& plan, const FieldGrids& grids = {});
Table check_lemma_small(const TestFunction& f, const SequencePlan& plan, const FieldGrids& grids = {});
std::pair<Table, Table> check_lemma_rate(const TestFunction& f, const SequencePlan& plan,
                                         const FieldGrids& grids = {});

struct ConvergenceReport {
  std::string plan;
  Regime regime = Regime::OmegaNonzero;
  std::vector<Table> tables;
  bool passed = true;
  nlohmann::ordered_json to_json() const;
};

/// All tables of a plan: deviation (and the omega_k variant), tail, small and rate for
/// omega != 0; deviation, tail, small and both three-zone halves for omega = 0; the two
/// three-zone halves for Gamma2 plans.
ConvergenceReport run_convergence(const OperatorField& field, const SequencePlan& plan,
                                  const ConvergenceOptions& opt = {});

struct DekMuk {
  double measured = 0;
  double bound = 0;
  bool passed = false;
};
/// ||pi_{rho,lambda}(f) - pi_{0,lambda}(f)|| against |rho| ||F_1||_1 (5% slack).
DekMuk check_dek_muk(const TestFunction& f, double rho, double lambda, const GridSpec& linear,
                     const KernelOptions& opt = {}, const GridSpec4D& l1 = {});

}  // namespace boidol
