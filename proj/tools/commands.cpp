#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "boidol/errors.hpp"

namespace boidol::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

fs::path resolve_output_dir(const std::string& flag, const ExperimentConfig& cfg) {
  if (!flag.empty()) return flag;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("BOIDOL_OUT_DIR"); env && *env) return env;
  return "boidol_out";
}

namespace {

double rel_change(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::string file_stem(std::string s) {
  for (auto& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

class Writer {
 public:
  Writer(const RunContext& ctx, std::string command, ojson diagnostic)
      : ctx_(ctx), command_(std::move(command)), diag_(std::move(diagnostic)), hash_(ctx.config.hash()) {
    fs::create_directories(ctx_.out_dir);
  }

  void json(const std::string& name, ojson result) const {
    ojson doc;
    doc["command"] = command_;
    doc["config_hash"] = hash_;
    doc["grid_diagnostic"] = diag_;
    doc["config"] = ctx_.config.to_json();
    doc["result"] = std::move(result);
    write(name + ".json", doc.dump(2) + "\n");
  }

  // body starts with its header row
  void csv(const std::string& name, const std::string& body) const {
    std::ostringstream os;
    os << "# config_hash=" << hash_ << "\n";
    os << "# grid_diagnostic=" << diag_.dump() << "\n";
    os << body;
    write(name + ".csv", os.str());
  }

  fs::path path(const std::string& name) const { return ctx_.out_dir / name; }

 private:
  void write(const std::string& name, const std::string& text) const {
    const fs::path p = path(name);
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << text;
    spdlog::info("wrote {}", p.string());
  }

  const RunContext& ctx_;
  std::string command_;
  ojson diag_;
  std::string hash_;
};

std::vector<SequencePlan> build_plans(const std::vector<PlanSpec>& specs) {
  std::vector<SequencePlan> plans;
  for (const auto& s : specs) {
    plans.push_back(s.build());
    verify_plan(plans.back());
  }
  return plans;
}

double plan_k0_deviation(const ExperimentConfig& cfg, SequencePlan plan, const FieldGrids& g) {
  plan.ks = {plan.ks.front()};
  const OperatorField field = fourier_field(cfg.test_function, plan_sample(plan), g);
  const long k = plan.ks.front();
  if (plan.regime == Regime::Gamma2) return lemma_4_10_deviation(field, plan, k, Sign::Plus);
  return frame_deviation(field, plan, k);
}

OrbitSequence make_sequence(const SequenceSpec& s, long k_max) {
  if (s.kind == OrbitSequence::Kind::Gamma2) return OrbitSequence::gamma2(s.eps, s.sigma, s.rho, k_max);
  const PowerLaw rho = s.rho, lambda = s.lambda;
  return OrbitSequence::gamma3([rho, lambda](long k) { return std::pair{rho(k), lambda(k)}; }, k_max);
}

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

ojson grid_diagnostic(const ExperimentConfig& cfg, const std::vector<DiagnosticQuantity>& extra) {
  if (!cfg.diagnostic) return ojson{{"enabled", false}};
  const FieldGrids coarse = cfg.grids();
  const FieldGrids fine = coarse.scaled(2);
  const TestFunction& f = cfg.test_function;
  std::vector<DiagnosticQuantity> qs{
      {"norm_pi(0,1)", [&](const FieldGrids& g) { return op_norm(kernel_pi_rho_lambda(f, 0.0, 1.0, g.linear, g.kernel)); }},
      {"norm_pi(0.5,1)", [&](const FieldGrids& g) { return op_norm(kernel_pi_rho_lambda(f, 0.5, 1.0, g.linear, g.kernel)); }},
      {"norm_tau(1,-1)", [&](const FieldGrids& g) { return op_norm(kernel_tau(f, 1.0, -1.0, g.log_half(), g.kernel)); }},
      {"norm_tau(1,0)", [&](const FieldGrids& g) { return op_norm(kernel_tau(f, 1.0, 0.0, g.log_half(), g.kernel)); }},
  };
  qs.insert(qs.end(), extra.begin(), extra.end());
  ojson j;
  j["enabled"] = true;
  j["scales"] = {cfg.grid_scale, 2 * cfg.grid_scale};
  j["n_linear"] = {coarse.linear.n, fine.linear.n};
  j["n_log"] = {coarse.log_pair.n, fine.log_pair.n};
  auto& rows = j["quantities"] = ojson::array();
  double worst = 0.0;
  for (const auto& q : qs) {
    const double a = q.eval(coarse), b = q.eval(fine);
    const double r = rel_change(a, b);
    worst = std::max(worst, r);
    rows.push_back({{"name", q.name}, {"coarse", a}, {"fine", b}, {"rel_change", r}});
  }
  j["max_rel_change"] = worst;
  spdlog::info("grid diagnostic: max relative change {:.3e} over {} quantities", worst, qs.size());
  return j;
}

std::vector<OrbitLabel> witness_targets(const LimitSet& s) {
  std::vector<OrbitLabel> out;
  auto add_gamma0 = [&] {
    for (double t : {-1.0, 0.0, 1.0}) out.push_back(Character{t});
  };
  if (const auto* p = std::get_if<SinglePoint>(&s)) {
    out.push_back(p->point);
  } else if (const auto* t = std::get_if<TwoPoints>(&s)) {
    out = {t->first, t->second};
  } else if (std::holds_alternative<Gamma1UnionGamma0>(s)) {
    for (Axis a : {Axis::X, Axis::Y})
      for (Sign g : {Sign::Plus, Sign::Minus}) out.push_back(OneDim{a, g});
    add_gamma0();
  } else if (const auto* q = std::get_if<Gamma1PairUnionGamma0>(&s)) {
    out = {q->first, q->second};
    add_gamma0();
  } else if (const auto* c = std::get_if<OrbitUnionGamma0>(&s)) {
    out.push_back(c->orbit);
    add_gamma0();
  }
  return out;
}

int cmd_orbits(const RunContext& ctx) {
  const auto& cfg = ctx.config;
  Writer w(ctx, "orbits", grid_diagnostic(cfg));
  ojson seqs = ojson::array();
  for (const auto& spec : cfg.sequences) {
    const OrbitSequence seq = make_sequence(spec, cfg.k_max);
    const bool gen = spec.kind == OrbitSequence::Kind::Gamma3;
    const LimitSet limit = gen ? limit_set_gamma3(seq, cfg.orbit_tol) : limit_set_gamma2(seq, cfg.orbit_tol);
    spdlog::info("sequence {}: limit set {}", spec.name, to_string(limit));
    ojson e{{"name", spec.name}, {"kind", gen ? "gamma3" : "gamma2"}, {"limit_set", to_string(limit)}};
    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "k,rho_k,lambda_k,target,distance\n";
    if (gen) {
      WitnessOptions wo;
      wo.tol = cfg.orbit_tol;
      for (long k : cfg.witness_ks) {
        const auto [rho, lambda] = seq.generator(k);
        for (const auto& t : witness_targets(limit)) {
          const double d = witness_distance(seq, limit, section_point(t), k, wo);
          rows.push_back({{"k", k}, {"rho_k", rho}, {"lambda_k", lambda}, {"target", to_string(t)}, {"distance", d}});
          csv << k << ',' << fmt17(rho) << ',' << fmt17(lambda) << ",\"" << to_string(t) << "\"," << fmt17(d)
              << '\n';
        }
      }
    } else {
      e["witness_note"] = "witness distances are defined for Gamma3 sequences only";
    }
    e["witness"] = rows;
    w.csv("orbits_" + file_stem(spec.name), csv.str());
    seqs.push_back(std::move(e));
  }
  w.json("orbits", ojson{{"sequences", seqs}});
  return Ok;
}

int cmd_converge(const RunContext& ctx, Regime family) {
  const auto& cfg = ctx.config;
  const bool omega = family == Regime::OmegaNonzero;
  const std::string tag = omega ? "omega" : "zero";
  const auto plans = build_plans(omega ? cfg.omega_plans : cfg.zero_plans);
  std::vector<DiagnosticQuantity> extra;
  for (const auto& p : plans)
    extra.push_back({"deviation(" + p.name + ",k=" + std::to_string(p.ks.front()) + ")",
                     [&cfg, p](const FieldGrids& g) { return plan_k0_deviation(cfg, p, g); }});
  Writer w(ctx, "converge " + tag, grid_diagnostic(cfg, extra));
  const FieldGrids grids = cfg.grids();
  ojson reports = ojson::array();
  bool all = true;
  for (const auto& plan : plans) {
    spdlog::info("plan {}: building field on {} indices", plan.name, plan.ks.size());
    const OperatorField field = fourier_field(cfg.test_function, plan_sample(plan), grids);
    const ConvergenceReport r = run_convergence(field, plan, cfg.convergence());
    for (const auto& t : r.tables) {
      spdlog::info("  {} {}: {}", plan.name, t.name, t.passed ? "pass" : "FAIL");
      w.csv("converge_" + tag + "_" + file_stem(plan.name) + "_" + file_stem(t.name), t.to_csv());
    }
    all = all && r.passed;
    reports.push_back(r.to_json());
  }
  w.json("converge_" + tag, ojson{{"passed", all}, {"plans", reports}});
  return all ? Ok : CheckFailed;
}

int cmd_dstar(const RunContext& ctx) {
  const auto& cfg = ctx.config;
  const auto plans = build_plans(cfg.dstar_plans);
  const DstarConfig d = cfg.dstar();
  Writer w(ctx, "dstar", grid_diagnostic(cfg));
  spdlog::info("building field on the D* sample");
  OperatorField field = fourier_field(cfg.test_function, dstar_sample(d, plans), d.grids);
  if (cfg.tamper != Tamper::None) {
    spdlog::warn("tampering: {}", to_string(cfg.tamper));
    field = tamper(field, cfg.tamper, plans, d);
  }
  const DstarReport r = dstar_report(field, plans, d);
  for (const auto& c : r.conditions) {
    spdlog::info("condition {}: {}", c.name, c.passed ? "pass" : "FAIL");
    for (const auto& t : c.tables)
      w.csv("dstar_" + file_stem(c.name) + "_" + file_stem(t.name), t.to_csv());
  }
  ojson res = r.to_json();
  res["dstar_config"] = d.to_json();
  res["tamper"] = to_string(cfg.tamper);
  w.json("dstar", res);
  if (r.passed()) return Ok;
  std::string names;
  for (const auto& n : r.failed()) names += (names.empty() ? "" : " ") + n;
  spdlog::error("failed conditions: {}", names);
  return CheckFailed;
}

int cmd_norms(const RunContext& ctx) {
  const auto& cfg = ctx.config;
  Writer w(ctx, "norms", grid_diagnostic(cfg));
  const FieldGrids g = cfg.grids();
  const TestFunction& f = cfg.test_function;
  if (ctx.dump_operators) fs::create_directories(ctx.out_dir / "operators");
  ojson gen = ojson::array(), plane = ojson::array();
  std::ostringstream g_csv, p_csv;
  g_csv << "rho,lambda,norm\n";
  p_csv << "mu,nu,norm\n";
  for (const auto& [rho, lambda] : cfg.norm_gamma3) {
    const KernelOperator a = kernel_pi_rho_lambda(f, rho, lambda, g.linear, g.kernel);
    const double n = op_norm(a);
    gen.push_back({{"rho", rho}, {"lambda", lambda}, {"norm", n}});
    g_csv << fmt17(rho) << ',' << fmt17(lambda) << ',' << fmt17(n) << '\n';
    if (ctx.dump_operators)
      write_operator_dump((ctx.out_dir / "operators" / ("pi_" + fmt17(rho) + "_" + fmt17(lambda) + ".bop")).string(), a);
  }
  for (const auto& [mu, nu] : cfg.norm_plane) {
    const KernelOperator a = kernel_tau(f, mu, nu, g.log_half(), g.kernel);
    const double n = op_norm(a);
    plane.push_back({{"mu", mu}, {"nu", nu}, {"norm", n}});
    p_csv << fmt17(mu) << ',' << fmt17(nu) << ',' << fmt17(n) << '\n';
    if (ctx.dump_operators)
      write_operator_dump((ctx.out_dir / "operators" / ("tau_" + fmt17(mu) + "_" + fmt17(nu) + ".bop")).string(), a);
  }
  w.csv("norms_gamma3", g_csv.str());
  w.csv("norms_plane", p_csv.str());
  w.json("norms", ojson{{"gamma3", gen}, {"plane", plane}});
  return Ok;
}

}  // namespace boidol::cli
