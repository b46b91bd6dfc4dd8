#include "boidol/convergence.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "boidol/errors.hpp"

namespace boidol {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TableRow row_for(const SequencePlan& plan, long k, double value, double bound = kNaN) {
  TableRow r;
  r.k = k;
  if (plan.regime == Regime::Gamma2) {
    r.rho = plan.omega_k(k);
  } else {
    r.rho = plan.rho(k);
    r.lambda = plan.lambda(k);
  }
  r.R = plan.R(k);
  r.value = value;
  r.bound = bound;
  return r;
}

const KernelOperator& frame_of(const OperatorField& field, const SequencePlan& plan, long k) {
  return field.frame_at(plan.rho(k), plan.lambda(k));
}

// The zone cut R|lambda| must leave one unit of log window below it.
void require_cut_in_window(const OperatorField& field, const SequencePlan& plan, long k) {
  const double cut = plan.lower_cut(k);
  const double V = field.grids.log_pair.half_width;
  if (cut > 0.0 && std::log(cut) < -V + 1.0) {
    std::ostringstream os;
    os << "plan '" << plan.name << "' k=" << k << ": cut R|lambda| = " << cut
       << " is below the log window e^-" << V << " (+1 margin)";
    throw WindowTooSmall(os.str());
  }
}

void require_gamma3(const SequencePlan& plan, const char* what) {
  if (plan.regime == Regime::Gamma2)
    throw PlanInfeasible(std::string(what) + " needs a Gamma3 plan");
}

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::vector<double> Table::values() const {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.value);
  return v;
}

nlohmann::ordered_json Table::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["rule"] = rule;
  j["passed"] = passed;
  auto& rs = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    rs.push_back({{"k", r.k},
                  {"rho_k", r.rho},
                  {"lambda_k", r.lambda},
                  {"R_k", r.R},
                  {"value", number(r.value)},
                  {"bound", number(r.bound)}});
  return j;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  os << "k,rho_k,lambda_k,R_k,value,bound\n" << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.k << ',' << r.rho << ',' << r.lambda << ',' << r.R << ',' << r.value << ',';
    if (std::isfinite(r.bound)) os << r.bound;
    os << '\n';
  }
  return os.str();
}

KernelOperator sigma_k_omega(const OperatorField& field, const SequencePlan& plan, long k) {
  if (plan.regime != Regime::OmegaNonzero) throw PlanInfeasible("sigma_k_omega needs omega != 0");
  const double e = sgn(plan.eps);
  require_cut_in_window(field, plan, k);
  const double m = plan.mu(k);
  const KernelOperator s = direct_sum(field.plane_at(m, -e), field.plane_at(-m, e));
  KernelOperator out = apply_cutoff_right(s, IntervalSpec::abs_at_least(plan.lower_cut(k)));
  out.label = "sigma_k^omega";
  return out;
}

KernelOperator s_k_zero(const OperatorField& field, const SequencePlan& plan, long k, Sign half) {
  if (plan.regime == Regime::OmegaNonzero) throw PlanInfeasible("s_k_zero needs omega_k -> 0");
  require_cut_in_window(field, plan, k);
  const Zones z = zones(plan, k);
  const double h = sgn(half);
  const double e = sgn(plan.eps);
  const double m = plan.mu(k);
  KernelOperator out = apply_cutoff_right(field.plane_at(h * m, 0.0), z.J1) +
                       apply_cutoff_right(field.plane_at(0.0, 0.0), z.I2) +
                       apply_cutoff_right(field.plane_at(0.0, -h * e), z.I3);
  out.label = half == Sign::Plus ? "s_k^+" : "s_k^-";
  return out;
}

KernelOperator sigma_k_zero(const OperatorField& field, const SequencePlan& plan, long k) {
  KernelOperator out = direct_sum(s_k_zero(field, plan, k, Sign::Plus), s_k_zero(field, plan, k, Sign::Minus));
  out.label = "sigma_k^0";
  return out;
}

KernelOperator sigma_k(const OperatorField& field, const SequencePlan& plan, long k) {
  return plan.regime == Regime::OmegaNonzero ? sigma_k_omega(field, plan, k)
                                              : sigma_k_zero(field, plan, k);
}

KernelOperator to_linear(const KernelOperator& a, double rho, double lambda, const GridSpec& linear) {
  if (a.domain.kind != GridKind::LogPair || a.codomain.kind != GridKind::LogPair)
    throw GridMismatch("to_linear expects a LogPair operator");
  if (linear.kind != GridKind::Linear) throw GridMismatch("to_linear target must be Linear");
  const int n = linear.size();
  const int m = a.domain.n;
  const double V = a.domain.half_width;
  const double L = std::abs(lambda);
  struct Stencil {
    int first = -1;
    double w[4]{};
    cplx phase;
  };
  std::vector<Stencil> st(n);
  for (int i = 0; i < n; ++i) {
    const double s = linear.point(i);
    Stencil& c = st[i];
    c.first = cubic_stencil(std::log(L * std::abs(s)), V, m, c.w);
    if (c.first >= 0 && s < 0) c.first += m;
    c.phase = std::polar(1.0 / std::sqrt(std::abs(s)), rho * std::log(std::abs(s)));
  }
  KernelOperator out = KernelOperator::zero(linear, linear, "V_k(" + a.label + ")V_k^*");
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    const Stencil& r = st[i];
    if (r.first < 0) continue;
    for (int j = 0; j < n; ++j) {
      const Stencil& c = st[j];
      if (c.first < 0) continue;
      cplx acc = 0.0;
      for (int p = 0; p < 4; ++p) {
        cplx row = 0.0;
        for (int q = 0; q < 4; ++q) row += c.w[q] * a.entries(r.first + p, c.first + q);
        acc += r.w[p] * row;
      }
      out.entries(i, j) = r.phase * acc * std::conj(c.phase);
    }
  }
  return out;
}

double frame_deviation(const OperatorField& field, const SequencePlan& plan, long k,
                       const NormOptions& norm) {
  require_gamma3(plan, "frame_deviation");
  return op_norm(frame_of(field, plan, k) - sigma_k(field, plan, k), norm);
}

double lemma_4_10_deviation(const OperatorField& field, const SequencePlan& plan, long k, Sign half,
                            const NormOptions& norm) {
  const double h = sgn(half);
  const double e = sgn(plan.eps);
  const double m = plan.mu(k);
  return op_norm(field.plane_at(h * m, -h * e) - s_k_zero(field, plan, k, half), norm);
}

Table deviation_table(const OperatorField& field, const SequencePlan& plan, const ConvergenceOptions& opt) {
  Table t;
  t.name = plan.use_omega_k ? "deviation_omega_k" : "deviation";
  t.rule = "tends to 0: last <= " + std::to_string(opt.ratio) + " x first, eventually monotone";
  for (long k : plan.ks) t.rows.push_back(row_for(plan, k, frame_deviation(field, plan, k, opt.norm)));
  t.passed = tends_to_zero(t.values(), opt.ratio, opt.wiggle);
  return t;
}

Table check_lemma_tail(const OperatorField& field, const SequencePlan& plan, const ConvergenceOptions& opt) {
  require_gamma3(plan, "check_lemma_tail");
  Table t;
  t.name = "lemma_tail";
  t.rule = "tends to 0";
  for (long k : plan.ks) {
    const auto c = apply_cutoff_right(frame_of(field, plan, k), IntervalSpec::abs_at_least(plan.R(k)));
    t.rows.push_back(row_for(plan, k, op_norm(c, opt.norm)));
  }
  t.passed = tends_to_zero(t.values(), opt.ratio, opt.wiggle);
  return t;
}

Table check_lemma_small(const OperatorField& field, const SequencePlan& plan, const ConvergenceOptions& opt) {
  require_gamma3(plan, "check_lemma_small");
  Table t;
  t.name = "lemma_small";
  t.rule = "tends to 0";
  for (long k : plan.ks) {
    const auto c = apply_cutoff_right(frame_of(field, plan, k), IntervalSpec::abs_at_most(plan.lower_cut(k)));
    t.rows.push_back(row_for(plan, k, op_norm(c, opt.norm)));
  }
  t.passed = tends_to_zero(t.values(), opt.ratio, opt.wiggle);
  return t;
}

std::pair<Table, Table> check_lemma_rate(const OperatorField& field, const SequencePlan& plan,
                                         const ConvergenceOptions& opt) {
  if (plan.regime != Regime::OmegaNonzero) throw PlanInfeasible("check_lemma_rate needs omega != 0");
  if (plan.ks.size() < 2) throw PlanInfeasible("check_lemma_rate needs at least two indices");
  const double e = sgn(plan.eps);
  auto envelope = [&](long k) {
    const double R = plan.R(k);
    return std::abs(plan.omega_k(k)) / (R * R * std::abs(plan.lambda(k))) + 1.0 / R;
  };
  std::pair<Table, Table> out;
  for (Sign half : {Sign::Plus, Sign::Minus}) {
    Table& t = half == Sign::Plus ? out.first : out.second;
    t.name = half == Sign::Plus ? "lemma_rate_a" : "lemma_rate_b";
    const double h = sgn(half);
    std::vector<double> env;
    for (long k : plan.ks) {
      const double a = plan.lower_cut(k);
      const IntervalSpec part = half == Sign::Plus ? IntervalSpec::at_least(a) : IntervalSpec::at_most(-a);
      const double m = sgn(plan.eps) * plan.omega_k(k);
      const KernelOperator& tau = field.plane_at(h * m, -h * e);
      const KernelOperator& fr = frame_of(field, plan, k);
      KernelOperator lim = half == Sign::Plus ? direct_sum(tau, KernelOperator::zero(tau.codomain, tau.domain))
                                              : direct_sum(KernelOperator::zero(tau.codomain, tau.domain), tau);
      const double v = op_norm(apply_cutoff_right(fr - lim, part), opt.norm);
      t.rows.push_back(row_for(plan, k, v));
      env.push_back(envelope(k));
    }
    double c = 0.0;
    for (std::size_t i = 0; i < 2; ++i) c = std::max(c, t.rows[i].value / env[i]);
    t.passed = true;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      t.rows[i].bound = c * env[i];
      if (i >= 2 && t.rows[i].value > opt.envelope_slack * t.rows[i].bound) t.passed = false;
    }
    std::ostringstream rule;
    rule << "value <= " << opt.envelope_slack << " x C (|omega_k|/(R_k^2 |lambda_k|) + 1/R_k), C = "
         << c << " fitted on k = " << plan.ks[0] << ", " << plan.ks[1];
    t.rule = rule.str();
  }
  return out;
}

Table check_lemma_4_10(const OperatorField& field, const SequencePlan& plan, Sign half,
                       const ConvergenceOptions& opt) {
  Table t;
  t.name = half == Sign::Plus ? "lemma_4_10_plus" : "lemma_4_10_minus";
  t.rule = "tends to 0";
  for (long k : plan.ks) t.rows.push_back(row_for(plan, k, lemma_4_10_deviation(field, plan, k, half, opt.norm)));
  t.passed = tends_to_zero(t.values(), opt.ratio, opt.wiggle);
  return t;
}

Table check_lemma_tail(const TestFunction& f, const SequencePlan& plan, const FieldGrids& grids) {
  return check_lemma_tail(fourier_field(f, plan_sample(plan), grids), plan);
}
Table check_lemma_small(const TestFunction& f, const SequencePlan& plan, const FieldGrids& grids) {
  return check_lemma_small(fourier_field(f, plan_sample(plan), grids), plan);
}
std::pair<Table, Table> check_lemma_rate(const TestFunction& f, const SequencePlan& plan,
                                         const FieldGrids& grids) {
  return check_lemma_rate(fourier_field(f, plan_sample(plan), grids), plan);
}

nlohmann::ordered_json ConvergenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["plan"] = plan;
  j["regime"] = to_string(regime);
  j["passed"] = passed;
  auto& ts = j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : tables) ts.push_back(t.to_json());
  return j;
}

ConvergenceReport run_convergence(const OperatorField& field, const SequencePlan& plan,
                                  const ConvergenceOptions& opt) {
  ConvergenceReport r;
  r.plan = plan.name;
  r.regime = plan.regime;
  if (plan.regime != Regime::Gamma2) {
    r.tables.push_back(deviation_table(field, plan, opt));
    if (plan.regime == Regime::OmegaNonzero) {
      SequencePlan pk = plan;
      pk.use_omega_k = !plan.use_omega_k;
      r.tables.push_back(deviation_table(field, pk, opt));
    }
    r.tables.push_back(check_lemma_tail(field, plan, opt));
    r.tables.push_back(check_lemma_small(field, plan, opt));
  }
  if (plan.regime == Regime::OmegaNonzero) {
    auto [a, b] = check_lemma_rate(field, plan, opt);
    r.tables.push_back(std::move(a));
    r.tables.push_back(std::move(b));
  } else {
    r.tables.push_back(check_lemma_4_10(field, plan, Sign::Plus, opt));
    r.tables.push_back(check_lemma_4_10(field, plan, Sign::Minus, opt));
  }
  for (const auto& t : r.tables) r.passed = r.passed && t.passed;
  return r;
}

DekMuk check_dek_muk(const TestFunction& f, double rho, double lambda, const GridSpec& linear,
                     const KernelOptions& opt, const GridSpec4D& l1) {
  DekMuk d;
  if (rho != 0.0) {
    d.measured = op_norm(kernel_pi_rho_lambda(f, rho, lambda, linear, opt) -
                         kernel_pi_rho_lambda(f, 0.0, lambda, linear, opt));
    d.bound = std::abs(rho) * l1_norm_F1(f, l1).value;
  }
  d.passed = d.measured <= d.bound * 1.05;
  return d;
}

}  // namespace boidol
