// Acceptance run: one line per criterion. Expected failures are reported as XFAIL and
// do not fail the run; an unexpected pass is reported as XPASS.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boidol/dstar.hpp"
#include "boidol/errors.hpp"
#include "boidol/orbits.hpp"
#include "oracles.hpp"

using namespace boidol;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::pair<std::string, double>> norms;  // compared by criterion 11
};

struct Criterion {
  int id;
  const char* title;
  bool expected_failure;
  std::function<Outcome(int)> run;  // argument: grid scale
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

FieldGrids grids_at(int scale) { return scale == 1 ? FieldGrids{} : FieldGrids{}.scaled(scale); }

const TestFunction& f0() {
  static const TestFunction f = TestFunction::default_function();
  return f;
}

double rel(const KernelOperator& a, const KernelOperator& b) {
  const double s = std::max(op_norm(a), op_norm(b));
  return s == 0.0 ? 0.0 : op_norm(a - b) / s;
}

// strictly non-increasing over the second half of the steps
bool eventually_decreasing(const std::vector<double>& v) {
  for (std::size_t i = v.size() / 2; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i]) return false;
  return true;
}

// ---------------------------------------------------------------- 1
Outcome group_algebra(int) {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  auto draw = [&] { return GroupElement{d(rng), d(rng), d(rng), d(rng)}; };
  auto err = [](const GroupElement& a, const GroupElement& b) {
    const double n = std::max({1.0, std::abs(a.t), std::abs(a.x), std::abs(a.y), std::abs(a.z)});
    return std::max({std::abs(a.t - b.t), std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)}) / n;
  };
  double worst = 0.0;
  bool centre = true;
  for (int i = 0; i < 1000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    worst = std::max({worst, err(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))),
                      err(group_mul(a, group_inv(a)), group_identity()),
                      err(group_mul(group_inv(a), a), group_identity()), err(group_mul(a, group_identity()), a),
                      err(group_mul(group_identity(), a), a)});
    const GroupElement z{0.0, 0.0, 0.0, d(rng)};
    centre = centre && group_mul(a, z) == group_mul(z, a);
  }
  o.passed = worst <= 1e-12 && centre;
  o.detail = "max relative error " + fmt("%.2e", worst) + (centre ? ", centre commutes exactly" : ", centre FAILS");
  return o;
}

// ---------------------------------------------------------------- 2
Outcome orbit_round_trip(int) {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d(-5.0, 5.0), p(-2.0, 2.0);
  std::uniform_int_distribution<int> kind(0, 3), bit(0, 1);
  int bad = 0;
  double inv_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Sign s = bit(rng) ? Sign::Plus : Sign::Minus;
    OrbitLabel l;
    switch (kind(rng)) {
      case 0: {
        const double lam = d(rng);
        l = Gen{d(rng), std::abs(lam) < 1e-3 ? 1.0 : lam};
        break;
      }
      case 1: {
        const double w = d(rng);
        l = TwoDim{std::abs(w) < 1e-3 ? 1.0 : w, s};
        break;
      }
      case 2:
        l = OneDim{bit(rng) ? Axis::X : Axis::Y, s};
        break;
      default:
        l = Character{d(rng)};
    }
    if (!same_label(classify_dual_vector(orbit_point(l, p(rng), p(rng))), l, 1e-9)) ++bad;
    if (const auto* g = std::get_if<Gen>(&l))
      for (int j = 0; j < 4; ++j)
        inv_err = std::max(inv_err, std::abs(gen_invariant(orbit_point(l, p(rng), p(rng))) - g->rho) /
                                        std::max(1.0, std::abs(g->rho)));
  }
  o.passed = bad == 0 && inv_err <= 1e-10;
  o.detail = std::to_string(bad) + " round-trip mismatches, invariant drift " + fmt("%.2e", inv_err);
  return o;
}

// ---------------------------------------------------------------- 3
// distance from the Gamma2 orbit {u T* + e^t w X* + s e^-t Y*} to a Z*-free target
double gamma2_witness(double w, double s, const DualVector& tgt) {
  auto d2 = [&](double t) {
    const double dx = w * std::exp(t) - tgt.cX, dy = s * std::exp(-t) - tgt.cY;
    return dx * dx + dy * dy;
  };
  double best = 0.0;
  for (double t = -30.0; t <= 30.0; t += 1e-3)
    if (d2(t) < d2(best)) best = t;
  double a = best - 1e-3, b = best + 1e-3;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < 100; ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    (d2(c) < d2(d) ? b : a) = d2(c) < d2(d) ? d : c;
  }
  return std::sqrt(d2(0.5 * (a + b)) + tgt.cZ * tgt.cZ);
}

Outcome limit_sets(int) {
  Outcome o;
  std::ostringstream det;
  auto fam = [](std::function<std::pair<double, double>(long)> g) { return OrbitSequence::gamma3(std::move(g)); };
  struct Case {
    const char* name;
    OrbitSequence seq;
    LimitSet expected;
  };
  const std::vector<Case> gen_cases{
      {"(k,1/k)", fam([](long k) { return std::pair{double(k), 1.0 / k}; }),
       TwoPoints{TwoDim{1.0, Sign::Minus}, TwoDim{-1.0, Sign::Plus}}},
      {"(k,1/k^2)", fam([](long k) { return std::pair{double(k), 1.0 / (double(k) * k)}; }), Gamma1UnionGamma0{}},
      {"(1+1/k,2)", fam([](long k) { return std::pair{1.0 + 1.0 / k, 2.0}; }), SinglePoint{Gen{1.0, 2.0}}},
  };
  bool sets_ok = true, witness_ok = true;
  double worst_non0 = 0.0, worst_gamma0 = 0.0;
  for (const auto& c : gen_cases) {
    const LimitSet got = limit_set_gamma3(c.seq);
    if (!same_limit_set(got, c.expected)) {
      sets_ok = false;
      det << c.name << " gave " << to_string(got) << "; ";
    }
    // targets: the orbits of the limit set and characters tau in {-1, 0, 1, 3}
    std::vector<OrbitLabel> targets;
    if (const auto* t = std::get_if<TwoPoints>(&c.expected)) targets = {t->first, t->second};
    if (const auto* s = std::get_if<SinglePoint>(&c.expected)) targets = {s->point};
    if (std::holds_alternative<Gamma1UnionGamma0>(c.expected)) {
      for (Axis a : {Axis::X, Axis::Y})
        for (Sign g : {Sign::Plus, Sign::Minus}) targets.push_back(OneDim{a, g});
      for (double tau : {-1.0, 0.0, 1.0, 3.0}) targets.push_back(Character{tau});
    }
    for (const auto& t : targets) {
      std::vector<double> d;
      for (long k : {10L, 100L, 1000L}) d.push_back(witness_distance(c.seq, got, section_point(t), k));
      const bool dec = d[0] > d[1] && d[1] > d[2];
      const bool small = d[2] <= 1e-3 * (1.0 + 1e-6);
      (stratum(t) == 0 ? worst_gamma0 : worst_non0) = std::max(stratum(t) == 0 ? worst_gamma0 : worst_non0, d[2]);
      if (!dec || !small) {
        witness_ok = false;
        det << c.name << " -> " << to_string(t) << " d(1000)=" << fmt("%.3e", d[2]) << "; ";
      }
    }
  }
  for (Sign eps : {Sign::Plus, Sign::Minus})
    for (Sign sigma : {Sign::Plus, Sign::Minus}) {
      const auto seq = OrbitSequence::gamma2(eps, sigma, [](long k) { return 1.0 / k; });
      const LimitSet got = limit_set_gamma2(seq);
      const LimitSet expected = Gamma1PairUnionGamma0{OneDim{Axis::X, eps}, OneDim{Axis::Y, sigma}};
      const std::string name = std::string("gamma2(") + sign_char(eps) + sign_char(sigma) + ")";
      if (!same_limit_set(got, expected)) {
        sets_ok = false;
        det << name << " gave " << to_string(got) << "; ";
      }
      std::vector<OrbitLabel> targets{OneDim{Axis::X, eps}, OneDim{Axis::Y, sigma}};
      for (double tau : {-1.0, 0.0, 1.0, 3.0}) targets.push_back(Character{tau});
      for (const auto& t : targets) {
        std::vector<double> d;
        for (long k : {10L, 100L, 1000L}) {
          const auto [w, sg] = seq.generator(k);
          d.push_back(gamma2_witness(w, sg, section_point(t)));
        }
        const bool dec = d[0] > d[1] && d[1] > d[2];
        const bool small = d[2] <= 1e-3 * (1.0 + 1e-6);
        (stratum(t) == 0 ? worst_gamma0 : worst_non0) = std::max(stratum(t) == 0 ? worst_gamma0 : worst_non0, d[2]);
        if (!dec || !small) {
          witness_ok = false;
          if (eps == Sign::Plus && sigma == Sign::Plus)
            det << name << " -> " << to_string(t) << " d(1000)=" << fmt("%.3e", d[2]) << "; ";
        }
      }
    }
  o.passed = sets_ok && witness_ok;
  std::ostringstream head;
  head << "limit sets " << (sets_ok ? "exact" : "WRONG") << "; witness d(1000): non-Gamma0 max "
       << fmt("%.4e", worst_non0) << ", Gamma0 max " << fmt("%.4e", worst_gamma0) << " (bound sqrt(2|a l_k - w_k|))";
  std::string rest = det.str();
  if (rest.size() >= 2) rest.resize(rest.size() - 2);
  o.detail = head.str() + (rest.empty() ? "" : "; " + rest);
  return o;
}

// ---------------------------------------------------------------- 4
Outcome kernel_oracle(int scale) {
  Outcome o;
  const GridSpec g = GridSpec::linear(12.0, 512).refined(scale);
  auto gauss = [](double u) { return cplx(std::exp(-0.5 * u * u), 0.0); };
  Eigen::VectorXcd xi(g.size());
  for (int j = 0; j < g.size(); ++j) xi[j] = gauss(g.point(j));
  std::vector<double> pts;
  std::vector<int> idx;
  for (int i = 0; i < g.size(); ++i)
    if (std::abs(g.point(i)) <= 6.0 && (i - g.size() / 2) % 8 == 0) pts.push_back(g.point(i)), idx.push_back(i);
  const oracle::RiemannGrid rg{64, 64, 0.1, 120.0};
  double worst = 0.0;
  for (int which = 0; which < 2; ++which) {
    const KernelOperator k = which == 0 ? kernel_pi_rho_lambda(f0(), 0.0, 1.0, g) : kernel_pi_ell(f0(), 1.0, 1.0, g);
    const Eigen::VectorXcd out = k.apply(xi);
    const auto ref = which == 0 ? oracle::group_integral_pi(f0(), 0.0, 1.0, gauss, pts, rg)
                                : oracle::group_integral_pi_ell(f0(), 1.0, 1.0, gauss, pts, rg);
    double num = 0, den = 0, lib = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      num += std::norm(out[idx[i]] - ref[i]);
      den += std::norm(ref[i]);
      lib += std::norm(out[idx[i]]);
    }
    const double e = std::sqrt(num / den);
    worst = std::max(worst, e);
    const std::string name = which == 0 ? "pi_{0,1}" : "pi_l(1,1)";
    o.detail += name + " rel L2 error " + fmt("%.2e", e) + (which == 0 ? "; " : "");
    o.norms.push_back({name + " |op|", op_norm(k)});
    o.norms.push_back({name + " |out|", std::sqrt(lib)});
  }
  o.passed = worst < 1e-3;
  return o;
}

// ---------------------------------------------------------------- 5
Outcome intertwining(int scale) {
  Outcome o;
  const GridSpec lin = GridSpec::linear(12.0, 512).refined(scale);
  const GridSpec pair = GridSpec::log_pair(10.0, 512).refined(scale);
  const KernelOperator s = flip_S(lin);
  double worst = 0.0;
  for (const auto& [rho, lambda] : {std::pair{0.0, 1.0}, {2.0, -0.5}, {0.5, 1.0}}) {
    const KernelOperator pi = kernel_pi_rho_lambda(f0(), rho, lambda, lin);
    worst = std::max(worst, rel(compose(s, compose(pi, s)), kernel_pi_rho_lambda(f0(), rho, lambda, lin, {}, true)));
    o.norms.push_back({"|pi(" + fmt("%g", rho) + "," + fmt("%g", lambda) + ")|", op_norm(pi)});
  }
  double worst_vk = 0.0;
  for (long k : {4L, 16L}) {
    const KernelOperator vk = vk_operator(double(k), 1.0 / k, pair, lin);
    worst_vk = std::max(worst_vk, op_norm(compose(s, vk) - compose(vk, flip_S(pair))) / op_norm(vk));
  }
  o.passed = worst <= 1e-12 && worst_vk <= 1e-12;
  o.detail = "S pi S vs pi^gamma " + fmt("%.2e", worst) + ", S V_k vs V_k S " + fmt("%.2e", worst_vk);
  return o;
}

// ---------------------------------------------------------------- 6
Outcome dek_muk(int scale) {
  Outcome o;
  const GridSpec lin = GridSpec::linear(12.0, 512).refined(scale);
  const double l1_ref = oracle::l1_norm_tF(f0());
  double worst = 0.0, l1_lib = 0.0;
  for (double rho : {0.05, 0.1, 0.5})
    for (double lambda : {0.5, 1.0, 2.0}) {
      const DekMuk d = check_dek_muk(f0(), rho, lambda, lin);
      l1_lib = d.bound / rho;
      worst = std::max(worst, d.measured / (rho * l1_ref));
      o.norms.push_back({"|pi(" + fmt("%g", rho) + "," + fmt("%g", lambda) + ")-pi(0," + fmt("%g", lambda) + ")|",
                         d.measured});
      o.passed = o.passed && d.passed;
    }
  const double l1_err = std::abs(l1_lib - l1_ref) / l1_ref;
  o.passed = o.passed && worst <= 1.05 && l1_err < 1e-3;
  o.detail = "max measured/(|rho| |F1|_1) " + fmt("%.3f", worst) + ", |F1|_1 vs brute force " + fmt("%.1e", l1_err);
  return o;
}

// ---------------------------------------------------------------- 7
Outcome convergence_omega(int scale) {
  Outcome o;
  const std::vector<long> ks{4, 8, 16, 32, 64};
  const SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 1}, PowerLaw{1, -1}, ks, "k_1/k");
  verify_plan(p);
  const OperatorField field = fourier_field(f0(), plan_sample(p), grids_at(scale));
  const Table t = deviation_table(field, p);
  std::vector<double> dev, env;
  for (const auto& r : t.rows) {
    const double k = double(r.k), R = std::pow(k, 2.0 / 3.0), lam = 1.0 / k;
    dev.push_back(r.value);
    env.push_back(std::abs(k * lam) / (R * R * lam) + 1.0 / R);
    o.norms.push_back({"deviation k=" + std::to_string(r.k), r.value});
  }
  const double ratio = dev.back() / dev.front();
  const double C = std::max(dev[0] / env[0], dev[1] / env[1]);
  bool majorized = true;
  for (std::size_t i = 2; i < dev.size(); ++i) majorized = majorized && dev[i] <= 1.5 * C * env[i];
  const bool decreasing = eventually_decreasing(dev);
  o.passed = decreasing && ratio < 0.1 && majorized;
  o.detail = "dev(64)/dev(4) " + fmt("%.3f", ratio) + (decreasing ? ", decreasing" : ", NOT decreasing") +
             ", envelope " + (majorized ? "majorizes" : "FAILS") + " (C " + fmt("%.3e", C) + ")";
  return o;
}

// ---------------------------------------------------------------- 8
Outcome convergence_zero(int scale) {
  Outcome o;
  const std::vector<long> ks{4, 8, 16, 32, 64};
  const SequencePlan p = default_plan(Regime::OmegaZero, PowerLaw{1, 0.5}, PowerLaw{1, -1}, ks, "sqrt_k");
  std::string plan_note = "plan verified";
  try {
    verify_plan(p);
  } catch (const PlanInfeasible& e) {
    plan_note = e.what();
  }
  const OperatorField field = fourier_field(f0(), plan_sample(p), grids_at(scale));
  const ConvergenceReport r = run_convergence(field, p);
  std::ostringstream det;
  for (const auto& t : r.tables) {
    if (t.name != "deviation" && t.name.rfind("lemma_4_10", 0) != 0) continue;
    const auto v = t.values();
    for (const auto& row : t.rows) o.norms.push_back({t.name + " k=" + std::to_string(row.k), row.value});
    const double ratio = v.back() / v.front();
    const bool ok = ratio < 0.1 && (t.name != "deviation" || eventually_decreasing(v));
    o.passed = o.passed && ok;
    det << t.name << " ratio " << fmt("%.3f", ratio) << "; ";
  }
  o.detail = det.str() + plan_note;
  return o;
}

// ---------------------------------------------------------------- 9
Outcome norm_continuity(int scale) {
  Outcome o;
  const FieldGrids g = grids_at(scale);
  const std::vector<double> ladder{0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  std::ostringstream det;
  auto run = [&](const std::string& name, const std::function<KernelOperator(double)>& at) {
    const KernelOperator base = at(0.0);
    std::vector<double> diff, gap;
    for (double d : ladder) {
      const KernelOperator a = at(d);
      diff.push_back(op_norm(a - base));
      gap.push_back(std::abs(op_norm(a) - op_norm(base)));
    }
    const bool ok = tends_to_zero(diff) && diff.back() < 0.1 * diff.front() && gap.back() <= diff.back() * (1 + 1e-9);
    o.passed = o.passed && ok;
    o.norms.push_back({name + " base", op_norm(base)});
    o.norms.push_back({name + " |diff| at 0.25", diff.front()});
    det << name << " " << fmt("%.2e", diff.front()) << "->" << fmt("%.2e", diff.back()) << (ok ? "" : " FAIL") << "; ";
  };
  run("rho ladder at (0,1)", [&](double d) { return kernel_pi_rho_lambda(f0(), d, 1.0, g.linear, g.kernel); });
  run("rho ladder at (0.5,1)", [&](double d) { return kernel_pi_rho_lambda(f0(), 0.5 + d, 1.0, g.linear, g.kernel); });
  run("lambda ladder at (0.5,1)", [&](double d) { return kernel_pi_rho_lambda(f0(), 0.5, 1.0 + d, g.linear, g.kernel); });
  run("mu ladder at (0.5,1)", [&](double d) { return kernel_tau(f0(), 0.5 + d, 1.0, g.log_half(), g.kernel); });
  const double n0 = op_norm(kernel_pi_rho_lambda(f0(), 0.0, 1.0, g.linear, g.kernel));
  const double n64 = op_norm(kernel_pi_rho_lambda(f0(), 64.0, 1.0, g.linear, g.kernel));
  const double nm64 = op_norm(kernel_pi_rho_lambda(f0(), -64.0, 1.0, g.linear, g.kernel));
  const double frac = std::max(n64, nm64) / n0;
  o.passed = o.passed && frac < 1e-2;
  o.norms.push_back({"|pi(64,1)|/|pi(0,1)|", frac});
  o.detail = det.str() + "|pi(+-64,1)|/|pi(0,1)| " + fmt("%.2e", frac);
  return o;
}

// ---------------------------------------------------------------- 10
Outcome dstar_membership(int) {
  Outcome o;
  const DstarConfig cfg;
  const auto plans = default_dstar_plans();
  for (const auto& p : plans) verify_plan(p);
  const OperatorField field = fourier_field(f0(), dstar_sample(cfg, plans), cfg.grids);
  std::ostringstream det;
  const DstarReport clean = dstar_report(field, plans, cfg);
  det << "Fourier field: " << (clean.passed() ? "all " + std::to_string(clean.conditions.size()) + " pass" : "FAILS");
  for (const auto& n : clean.failed()) det << " " << n;
  o.passed = clean.passed();
  const std::vector<std::pair<Tamper, std::string>> cases{
      {Tamper::ZeroGamma2Limits, "2c"}, {Tamper::IdentityGamma1, "3d"}, {Tamper::SpikeGamma0, "3a"}};
  for (const auto& [t, cond] : cases) {
    const DstarReport r = dstar_report(tamper(field, t, plans, cfg), plans, cfg);
    const auto failed = r.failed();
    const std::set<std::string> got(failed.begin(), failed.end());
    const std::set<std::string> want{cond, "4:" + cond};
    const bool ok = got == want;
    o.passed = o.passed && ok;
    det << "; " << to_string(t) << " fails {";
    for (const auto& n : failed) det << (n == *failed.begin() ? "" : " ") << n;
    det << "}" << (ok ? "" : " expected " + cond);
  }
  o.detail = det.str();
  return o;
}

std::map<std::pair<int, int>, Outcome>& cache() {
  static std::map<std::pair<int, int>, Outcome> c;
  return c;
}

const std::vector<Criterion>& criteria();

Outcome evaluate(int id, int scale) {
  auto key = std::pair{id, scale};
  if (auto it = cache().find(key); it != cache().end()) return it->second;
  for (const auto& c : criteria())
    if (c.id == id) return cache()[key] = c.run(scale);
  throw std::invalid_argument("unknown criterion");
}

// ---------------------------------------------------------------- 11
Outcome grid_refinement(int) {
  Outcome o;
  std::ostringstream det;
  for (int id : {4, 5, 6, 7, 8, 9}) {
    const double tol = id <= 6 ? 1e-3 : 0.1;
    const Outcome a = evaluate(id, 1), b = evaluate(id, 2);
    double worst = 0.0;
    std::string where;
    for (std::size_t i = 0; i < a.norms.size() && i < b.norms.size(); ++i) {
      const double s = std::max(std::abs(a.norms[i].second), std::abs(b.norms[i].second));
      const double r = s == 0.0 ? 0.0 : std::abs(a.norms[i].second - b.norms[i].second) / s;
      if (r > worst) worst = r, where = a.norms[i].first;
    }
    const bool ok = a.norms.size() == b.norms.size() && worst < tol;
    o.passed = o.passed && ok;
    det << id << ": " << fmt("%.1e", worst) << (ok ? "" : " FAIL at " + where) << "; ";
  }
  o.detail = det.str() + "criterion 10 has no assigned tolerance and is not repeated";
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "group algebra", false, group_algebra},
      {2, "orbit round trip", false, orbit_round_trip},
      {3, "limit sets and witnesses", true, limit_sets},
      {4, "kernel oracle", false, kernel_oracle},
      {5, "intertwining identities", false, intertwining},
      {6, "Lipschitz bound in rho", false, dek_muk},
      {7, "convergence, omega != 0", true, convergence_omega},
      {8, "convergence, omega_k -> 0", true, convergence_zero},
      {9, "norm continuity and vanishing", false, norm_continuity},
      {10, "D* membership and tampering", false, dstar_membership},
      {11, "grid refinement", false, grid_refinement},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("-c,--criterion", only, "run only these criteria")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  int unexpected = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = evaluate(c.id, 1);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* status = o.passed ? (c.expected_failure ? "XPASS" : "PASS") : (c.expected_failure ? "XFAIL" : "FAIL");
    if (!o.passed && !c.expected_failure) ++unexpected;
    std::printf("criterion %2d %-5s %s: %s (%.0fs)\n", c.id, status, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
