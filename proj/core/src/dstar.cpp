#include "boidol/dstar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "boidol/errors.hpp"

namespace boidol {

namespace {

using json = nlohmann::ordered_json;

json point_json(Point2 p) { return json::array({p.first, p.second}); }

json two_dim_json(const TwoDim& l) { return {{"omega", l.omega}, {"sigma", static_cast<int>(l.sigma)}}; }

TableRow ladder_row(long m, double rho, double lambda, double value) {
  TableRow r;
  r.k = m;
  r.rho = rho;
  r.lambda = lambda;
  r.value = value;
  r.bound = std::numeric_limits<double>::quiet_NaN();
  return r;
}

int rank_for(const DstarConfig& cfg, const GridSpec& g) {
  return cfg.rank_budget > 0 ? cfg.rank_budget : g.size() / 8;
}

ConditionResult condition_1(const OperatorField& f, const DstarConfig& cfg) {
  ConditionResult c;
  c.passed = true;
  auto& rows = c.detail["points"] = json::array();
  auto judge = [&](const char* stratum, json where, double value, double ref) {
    const double ratio = ref > 0 ? value / ref : (value > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    const bool ok = value <= cfg.vanish_tol * ref || value == 0.0;
    c.passed = c.passed && ok;
    rows.push_back({{"stratum", stratum}, {"point", where}, {"norm", value}, {"reference", ref},
                    {"ratio", std::isfinite(ratio) ? json(ratio) : json(nullptr)}, {"passed", ok}});
  };
  double ref3 = 0.0;
  for (const auto& p : cfg.gamma3_near) ref3 = std::max(ref3, op_norm(f.gen_at(p.first, p.second)));
  for (const auto& p : cfg.gamma3_far)
    judge("gamma3", point_json(p), op_norm(f.gen_at(p.first, p.second)), ref3);
  double ref2 = 0.0;
  for (const auto& l : cfg.gamma2_near) {
    const Point2 p = plane_point(l);
    ref2 = std::max(ref2, op_norm(f.plane_at(p.first, p.second)));
  }
  for (const auto& l : cfg.gamma2_far) {
    const Point2 p = plane_point(l);
    judge("gamma2", two_dim_json(l), op_norm(f.plane_at(p.first, p.second)), ref2);
  }
  double ref0 = 0.0;
  for (double t : cfg.sigma0.taus()) ref0 = std::max(ref0, std::abs(f.char_at(t)));
  for (double t : cfg.gamma0_far) judge("gamma0", t, std::abs(f.char_at(t)), ref0);
  c.detail["vanish_tol"] = cfg.vanish_tol;
  return c;
}

Table ladder_table(const std::string& name, const DstarConfig& cfg,
                   const std::function<TableRow(long, double)>& row) {
  Table t;
  t.name = name;
  t.rule = "tends to 0 as the step halves (k indexes the step 0.25 / 2^k)";
  for (std::size_t m = 0; m < cfg.ladder.size(); ++m) t.rows.push_back(row(static_cast<long>(m), cfg.ladder[m]));
  t.passed = tends_to_zero(t.values(), cfg.convergence.ratio, cfg.convergence.wiggle);
  return t;
}

ConditionResult condition_2a(const OperatorField& f, const DstarConfig& cfg) {
  ConditionResult c;
  const auto [r0, l0] = cfg.gamma3_base;
  const KernelOperator& base = f.gen_at(r0, l0);
  c.tables.push_back(ladder_table("gamma3_rho_ladder", cfg, [&](long m, double d) {
    return ladder_row(m, r0 + d, l0, op_norm(f.gen_at(r0 + d, l0) - base));
  }));
  c.tables.push_back(ladder_table("gamma3_lambda_ladder", cfg, [&](long m, double d) {
    return ladder_row(m, r0, l0 + d, op_norm(f.gen_at(r0, l0 + d) - base));
  }));
  c.passed = std::all_of(c.tables.begin(), c.tables.end(), [](const Table& t) { return t.passed; });
  return c;
}

ConditionResult condition_3a(const OperatorField& f, const DstarConfig& cfg) {
  ConditionResult c;
  const Point2 b = plane_point(cfg.gamma2_base);
  const KernelOperator& base = f.plane_at(b.first, b.second);
  c.tables.push_back(ladder_table("gamma2_omega_ladder", cfg, [&](long m, double d) {
    return ladder_row(m, b.first + d, b.second, op_norm(f.plane_at(b.first + d, b.second) - base));
  }));
  const double t0 = cfg.gamma0_base;
  const cplx v0 = f.char_at(t0);
  c.tables.push_back(ladder_table("gamma0_tau_ladder", cfg, [&](long m, double d) {
    return ladder_row(m, t0 + d, 0.0, std::abs(f.char_at(t0 + d) - v0));
  }));
  c.passed = std::all_of(c.tables.begin(), c.tables.end(), [](const Table& t) { return t.passed; });
  return c;
}

ConditionResult compact_points(const std::vector<std::pair<json, const KernelOperator*>>& ops,
                               int rank, double tol) {
  ConditionResult c;
  c.passed = true;
  c.detail["rank_budget"] = rank;
  c.detail["tol"] = tol;
  auto& rows = c.detail["points"] = json::array();
  for (const auto& [where, op] : ops) {
    const double d = compact_defect(*op, rank);
    const bool ok = d < tol;
    c.passed = c.passed && ok;
    rows.push_back({{"point", where}, {"defect", d}, {"passed", ok}});
  }
  return c;
}

ConditionResult condition_2b(const OperatorField& f, const DstarConfig& cfg) {
  std::vector<std::pair<json, const KernelOperator*>> ops;
  for (const auto& p : cfg.gamma3_near) ops.emplace_back(point_json(p), &f.gen_at(p.first, p.second));
  return compact_points(ops, rank_for(cfg, f.grids.linear), cfg.compact_tol);
}

ConditionResult condition_3b(const OperatorField& f, const DstarConfig& cfg) {
  std::vector<std::pair<json, const KernelOperator*>> ops;
  for (const auto& l : cfg.gamma2_near) {
    const Point2 p = plane_point(l);
    ops.emplace_back(two_dim_json(l), &f.plane_at(p.first, p.second));
  }
  return compact_points(ops, rank_for(cfg, f.grids.log_half()), cfg.compact_tol);
}

ConditionResult plan_condition(const OperatorField& f, const std::vector<SequencePlan>& plans,
                               Regime regime, const DstarConfig& cfg) {
  ConditionResult c;
  c.passed = true;
  auto& names = c.detail["plans"] = json::array();
  for (const auto& p : plans) {
    if (p.regime != regime) continue;
    names.push_back(p.name);
    if (regime == Regime::Gamma2) {
      c.tables.push_back(check_lemma_4_10(f, p, Sign::Plus, cfg.convergence));
      c.tables.push_back(check_lemma_4_10(f, p, Sign::Minus, cfg.convergence));
    } else {
      c.tables.push_back(deviation_table(f, p, cfg.convergence));
    }
  }
  for (auto& t : c.tables) c.passed = c.passed && t.passed;
  return c;
}

ConditionResult condition_3d(const OperatorField& f, const DstarConfig& cfg) {
  ConditionResult c;
  const CompactReport r = compact_condition_check(f, cfg.sigma0, cfg.rank_budget, cfg.compact_tol);
  c.passed = r.passed;
  c.detail["rank_budget"] = r.rank;
  c.detail["tol"] = r.tol;
  auto& rows = c.detail["points"] = json::array();
  for (const auto& e : r.entries)
    rows.push_back({{"orbit", e.label}, {"point", point_json(e.point)}, {"defect", e.defect}, {"passed", e.passed}});
  return c;
}

void run_suite(DstarReport& rep, const OperatorField& f, const std::vector<SequencePlan>& plans,
               const DstarConfig& cfg, const std::string& prefix) {
  struct Item {
    const char* name;
    const char* description;
    std::function<ConditionResult()> run;
  };
  const std::vector<Item> items = {
      {"1", "vanishing at infinity", [&] { return condition_1(f, cfg); }},
      {"2a", "norm continuity on Gamma3", [&] { return condition_2a(f, cfg); }},
      {"2b", "compactness on Gamma3", [&] { return condition_2b(f, cfg); }},
      {"2c", "sigma_k^omega convergence", [&] { return plan_condition(f, plans, Regime::OmegaNonzero, cfg); }},
      {"2d", "sigma_k^0 convergence", [&] { return plan_condition(f, plans, Regime::OmegaZero, cfg); }},
      {"3a", "norm continuity on Gamma2 and Gamma0", [&] { return condition_3a(f, cfg); }},
      {"3b", "compactness on Gamma2", [&] { return condition_3b(f, cfg); }},
      {"3c", "Gamma2 to Gamma1 u Gamma0 convergence", [&] { return plan_condition(f, plans, Regime::Gamma2, cfg); }},
      {"3d", "compact condition", [&] { return condition_3d(f, cfg); }},
  };
  for (const auto& it : items) {
    ConditionResult c;
    try {
      c = it.run();
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail["error"] = e.what();
    }
    c.name = prefix + it.name;
    c.description = it.description;
    rep.conditions.push_back(std::move(c));
  }
}

}  // namespace

json DstarConfig::to_json() const {
  json j;
  j["rank_budget"] = rank_budget;
  j["compact_tol"] = compact_tol;
  j["vanish_tol"] = vanish_tol;
  j["ratio"] = convergence.ratio;
  j["wiggle"] = convergence.wiggle;
  j["sigma0"] = {{"q_width", sigma0.q_width}, {"T0", sigma0.T0}, {"dtau", sigma0.dtau}, {"t_width", sigma0.t_width}};
  auto pts = [](const std::vector<Point2>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(point_json(p));
    return a;
  };
  auto labels = [](const std::vector<TwoDim>& v) {
    json a = json::array();
    for (const auto& l : v) a.push_back(two_dim_json(l));
    return a;
  };
  j["gamma3_near"] = pts(gamma3_near);
  j["gamma3_far"] = pts(gamma3_far);
  j["gamma3_base"] = point_json(gamma3_base);
  j["gamma2_near"] = labels(gamma2_near);
  j["gamma2_far"] = labels(gamma2_far);
  j["gamma2_base"] = two_dim_json(gamma2_base);
  j["gamma0_base"] = gamma0_base;
  j["gamma0_far"] = gamma0_far;
  j["ladder"] = ladder;
  j["adjoint_suite"] = adjoint_suite;
  return j;
}

std::vector<SequencePlan> default_dstar_plans() {
  const std::vector<long> ks{2, 4, 8, 16, 32};
  std::vector<SequencePlan> plans;
  plans.push_back(default_plan(Regime::OmegaNonzero, PowerLaw{1.0, 2.0}, PowerLaw{1.0, -2.0}, ks, "omega1_k2"));
  plans.push_back(default_plan(Regime::OmegaZero, PowerLaw{1.0, 2.0}, PowerLaw{1.0, -4.0}, ks, "omega0_k2_k4"));
  plans.push_back(gamma2_plan(Sign::Plus, PowerLaw{1.0, -2.0}, ks, "gamma2_k2"));
  return plans;
}

SpectrumSample dstar_sample(const DstarConfig& cfg, const std::vector<SequencePlan>& plans) {
  SpectrumSample s;
  s.gamma3 = cfg.gamma3_near;
  s.gamma3.insert(s.gamma3.end(), cfg.gamma3_far.begin(), cfg.gamma3_far.end());
  s.gamma3.push_back(cfg.gamma3_base);
  s.gamma2 = cfg.gamma2_near;
  s.gamma2.insert(s.gamma2.end(), cfg.gamma2_far.begin(), cfg.gamma2_far.end());
  s.gamma2.push_back(cfg.gamma2_base);
  s.gamma1 = SpectrumSample::all_gamma1();
  s.gamma0 = cfg.sigma0.taus();
  s.gamma0.insert(s.gamma0.end(), cfg.gamma0_far.begin(), cfg.gamma0_far.end());
  s.gamma0.push_back(cfg.gamma0_base);
  const auto [r0, l0] = cfg.gamma3_base;
  for (double d : cfg.ladder) {
    s.gamma3.emplace_back(r0 + d, l0);
    s.gamma3.emplace_back(r0, l0 + d);
    s.gamma2.push_back({cfg.gamma2_base.omega + d, cfg.gamma2_base.sigma});
    s.gamma0.push_back(cfg.gamma0_base + d);
  }
  for (const auto& p : plans) s.merge(plan_sample(p));
  return s;
}

bool DstarReport::passed() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
}

std::vector<std::string> DstarReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : conditions)
    if (!c.passed) out.push_back(c.name);
  return out;
}

json DstarReport::to_json() const {
  json j;
  j["passed"] = passed();
  j["failed"] = failed();
  auto& cs = j["conditions"] = json::array();
  for (const auto& c : conditions) {
    json e;
    e["name"] = c.name;
    e["description"] = c.description;
    e["passed"] = c.passed;
    e["detail"] = c.detail.is_null() ? json::object() : c.detail;
    auto& ts = e["tables"] = json::array();
    for (const auto& t : c.tables) ts.push_back(t.to_json());
    cs.push_back(std::move(e));
  }
  return j;
}

DstarReport dstar_report(const OperatorField& field, const std::vector<SequencePlan>& plans,
                         const DstarConfig& cfg) {
  DstarReport rep;
  run_suite(rep, field, plans, cfg, "");
  if (cfg.adjoint_suite) run_suite(rep, field.adjoint(), plans, cfg, "4:");
  return rep;
}

Tamper tamper_from_string(const std::string& s) {
  if (s.empty() || s == "none") return Tamper::None;
  if (s == "zero_gamma2_limits") return Tamper::ZeroGamma2Limits;
  if (s == "identity_gamma1") return Tamper::IdentityGamma1;
  if (s == "spike_gamma0") return Tamper::SpikeGamma0;
  throw std::invalid_argument("unknown tamper mode '" + s + "'");
}

const char* to_string(Tamper t) {
  switch (t) {
    case Tamper::None:
      return "none";
    case Tamper::ZeroGamma2Limits:
      return "zero_gamma2_limits";
    case Tamper::IdentityGamma1:
      return "identity_gamma1";
    case Tamper::SpikeGamma0:
      return "spike_gamma0";
  }
  return "";
}

OperatorField tamper(const OperatorField& field, Tamper t, const std::vector<SequencePlan>& plans,
                     const DstarConfig& cfg) {
  OperatorField out = field;
  out.provenance = OperatorField::Provenance::Synthetic;
  switch (t) {
    case Tamper::None:
      break;
    case Tamper::ZeroGamma2Limits:
      for (const auto& p : plans) {
        if (p.regime != Regime::OmegaNonzero) continue;
        const double e = sgn(p.eps);
        for (long k : p.ks)
          for (bool limit : {true, false}) {
            const double m = p.mu(k, limit);
            for (Point2 q : {Point2{m, -e}, Point2{-m, e}}) {
              auto& op = out.plane_at(q.first, q.second);
              op.entries.setZero();
            }
          }
      }
      break;
    case Tamper::IdentityGamma1:
      out.plane_at(1.0, 0.0) = KernelOperator::identity(out.grids.log_half());
      break;
    case Tamper::SpikeGamma0: {
      double sup = 1.0;
      for (const auto& [tau, v] : out.chars) sup = std::max(sup, std::abs(v));
      auto it = out.chars.find(cfg.gamma0_base);
      if (it == out.chars.end()) throw MissingLimitPoint("no character at the spike location");
      it->second += sup;
      break;
    }
  }
  return out;
}

}  // namespace boidol
