#pragma once

#include <string>
#include <utility>
#include <vector>

#include "boidol/fields.hpp"

namespace boidol {

struct Sigma0Config {
  double q_width = 1.0;  // q(x,y) = b(x) b(y) / (int b)^2, b a centred mollifier of this half-width
  double T0 = 16.0;      // psi sampled on [-T0, T0]
  double dtau = 0.125;
  double t_width = 2.0;  // t-support length of the inverse transform used by the Nyquist check
  int nodes = 64;

  /// Uniform tau grid -T0, -T0 + dtau, ..., T0.
  std::vector<double> taus() const;
};

/// hat q(a, b) = int q(x,y) e^{-i(ax + by)}; hat q(0,0) = 1.
double q_hat(const Sigma0Config& cfg, double a, double b);

/// pi_{mu,nu}(E(f)) on a LogHalfLine grid, f the inverse Fourier transform of the uniformly
/// sampled psi. In the v-model the kernel is f(v - t) hat q(mu e^t, nu e^{-t}).
KernelOperator sigma0_apply(const std::vector<std::pair<double, cplx>>& psi, const Sigma0Config& cfg,
                            Point2 target, const GridSpec& log_half);

struct CompactEntry {
  std::string label;
  Point2 point;
  double defect = 0;
  bool passed = false;
};

struct CompactReport {
  std::vector<CompactEntry> entries;
  int rank = 0;
  double tol = 0;
  bool passed = true;
};

/// sigma_{rank+1}(field(p) - sigma0(field|Gamma0, p)) < tol at the four Gamma1 points.
/// rank_budget <= 0 selects n/8.
CompactReport compact_condition_check(const OperatorField& field, const Sigma0Config& cfg,
                                      int rank_budget = 0, double tol = 1e-3);

}  // namespace boidol
