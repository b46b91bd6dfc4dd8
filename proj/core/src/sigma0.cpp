#include "boidol/sigma0.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "boidol/errors.hpp"

namespace boidol {

std::vector<double> Sigma0Config::taus() const {
  const int m = static_cast<int>(std::lround(T0 / dtau));
  std::vector<double> t;
  for (int i = -m; i <= m; ++i) t.push_back(i * dtau);
  return t;
}

double q_hat(const Sigma0Config& cfg, double a, double b) {
  const double b0 = unit_bump_cosine_transform(0.0, cfg.nodes);
  return unit_bump_cosine_transform(cfg.q_width * a, cfg.nodes) *
         unit_bump_cosine_transform(cfg.q_width * b, cfg.nodes) / (b0 * b0);
}

KernelOperator sigma0_apply(const std::vector<std::pair<double, cplx>>& psi, const Sigma0Config& cfg,
                            Point2 target, const GridSpec& log_half) {
  if (log_half.kind != GridKind::LogHalfLine) throw GridMismatch("sigma0_apply expects a LogHalfLine grid");
  const double limit = 2.0 * std::numbers::pi / (2.0 * log_half.half_width + cfg.t_width);
  if (!(cfg.dtau < limit)) {
    std::ostringstream os;
    os << "dtau = " << cfg.dtau << " must be below 2 pi / (2V + t_width) = " << limit;
    throw NyquistViolation(os.str());
  }
  for (std::size_t i = 1; i < psi.size(); ++i)
    if (std::abs(psi[i].first - psi[i - 1].first - cfg.dtau) > 1e-9 * cfg.dtau)
      throw NyquistViolation("psi must be sampled on the uniform dtau grid");

  const int n = log_half.n;
  const double h = log_half.step();
  // f on the 2n-1 node differences d = (i - j) h
  std::vector<cplx> f(2 * n - 1, 0.0);
  for (int d = -(n - 1); d <= n - 1; ++d) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const double w = (i == 0 || i + 1 == psi.size()) ? 0.5 : 1.0;
      acc += w * psi[i].second * std::polar(1.0, psi[i].first * d * h);
    }
    f[d + n - 1] = acc * cfg.dtau / (2.0 * std::numbers::pi);
  }
  std::vector<double> q(n);
  for (int j = 0; j < n; ++j) {
    const double t = log_half.coord(j);
    q[j] = q_hat(cfg, target.first * std::exp(t), target.second * std::exp(-t));
  }
  // v-model kernel, then the U_sigma reversal onto the half-line grid
  KernelOperator out = KernelOperator::zero(log_half, log_half, "sigma0");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.entries(n - 1 - i, n - 1 - j) = f[i - j + n - 1] * q[j];
  return out;
}

CompactReport compact_condition_check(const OperatorField& field, const Sigma0Config& cfg,
                                      int rank_budget, double tol) {
  const GridSpec half = field.grids.log_half();
  CompactReport rep;
  rep.rank = rank_budget > 0 ? rank_budget : half.n / 8;
  rep.tol = tol;
  std::vector<std::pair<double, cplx>> psi;
  for (double t : cfg.taus()) psi.emplace_back(t, field.char_at(t));
  const char* names[] = {"O(+,0,0)", "O(-,0,0)", "O(0,+,0)", "O(0,-,0)"};
  int idx = 0;
  for (const auto& l : SpectrumSample::all_gamma1()) {
    CompactEntry e;
    e.label = names[idx++];
    e.point = plane_point(l);
    const KernelOperator d =
        field.plane_at(e.point.first, e.point.second) - sigma0_apply(psi, cfg, e.point, half);
    e.defect = compact_defect(d, rep.rank);
    e.passed = e.defect < tol;
    rep.passed = rep.passed && e.passed;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace boidol
