#include "boidol/plans.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "boidol/errors.hpp"

namespace boidol {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::OmegaNonzero:
      return "omega_nonzero";
    case Regime::OmegaZero:
      return "omega_zero";
    case Regime::Gamma2:
      return "gamma2";
  }
  return "";
}

double PowerLaw::operator()(long k) const {
  return coeff * std::pow(static_cast<double>(k), power) + offset;
}

double SequencePlan::omega_k(long k) const {
  if (regime == Regime::Gamma2) return sgn(eps) * omega_abs(k);
  return rho(k) * lambda(k);
}

double SequencePlan::mu(long k, bool limit) const {
  if (regime == Regime::OmegaNonzero && limit && !use_omega_k) return sgn(eps) * omega;
  if (regime == Regime::Gamma2) return omega_k(k);
  return sgn(eps) * omega_k(k);
}

double SequencePlan::lower_cut(long k) const {
  if (regime == Regime::Gamma2) return 0.0;
  return R(k) * std::abs(lambda(k));
}

Zones zones(const SequencePlan& plan, long k) {
  Zones z;
  const double w = std::abs(plan.omega_k(k));
  z.a = plan.lower_cut(k);
  z.b = w * plan.S(k);
  z.c = w * plan.T(k);
  if (!(z.a <= z.b && z.b <= z.c)) {
    std::ostringstream os;
    os << "zones overlap at k=" << k << ": R|lambda|=" << z.a << ", |omega|S=" << z.b
       << ", |omega|T=" << z.c;
    throw ZoneOverlap(os.str());
  }
  z.J1 = IntervalSpec::abs_half_open(z.a, z.b);
  z.I2 = IntervalSpec::abs_half_open(z.b, z.c);
  z.I3 = {z.c, IntervalSpec::inf(), false, false, true};
  return z;
}

namespace {

std::vector<long> horizon(const SequencePlan& plan) {
  std::vector<long> h;
  for (long k = std::max(1L, plan.ks.empty() ? 1L : plan.ks.front()); k <= 1000000; k *= 2)
    h.push_back(k);
  return h;
}

std::vector<double> eval(const std::vector<long>& ks, const std::function<double(long)>& g) {
  std::vector<double> out;
  for (long k : ks) out.push_back(g(k));
  return out;
}

void require(bool ok, const SequencePlan& plan, const std::string& what) {
  if (!ok) throw PlanInfeasible("plan '" + plan.name + "': invariant violated: " + what);
}

bool bounded(const Seq& rho, long k0) {
  return std::abs(rho(1000000)) <= 10.0 * std::max(1.0, std::abs(rho(k0)));
}

}  // namespace

void attach_zone_scales(SequencePlan& p) {
  const SequencePlan base = p;
  p.S = [base](long k) {
    const double w = std::abs(base.omega_k(k));
    double s = std::pow(w, -0.25);
    if (base.regime != Regime::Gamma2) s = std::max(s, base.R(k) / std::abs(base.rho(k)));
    return s;
  };
  p.T = [base](long k) { return std::pow(std::abs(base.omega_k(k)), -0.5); };
}

bool tends_to_zero(const std::vector<double>& v, double ratio, double wiggle, double floor) {
  if (v.empty()) return true;
  if (std::all_of(v.begin(), v.end(), [&](double x) { return std::abs(x) <= floor; })) return true;
  if (!(v.back() <= ratio * v.front())) return false;
  for (std::size_t i = v.size() / 2; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] * (1.0 + wiggle) + floor) return false;
  return true;
}

bool tends_to_infinity(const std::vector<double>& v, double growth, double wiggle) {
  if (v.size() < 2 || !(v.back() >= growth * v.front())) return false;
  for (std::size_t i = v.size() / 2; i + 1 < v.size(); ++i)
    if (v[i + 1] < v[i] * (1.0 - wiggle)) return false;
  return true;
}

SequencePlan default_plan(Regime regime, Seq rho, Seq lambda, std::vector<long> ks,
                          std::string name) {
  if (regime == Regime::Gamma2) throw PlanInfeasible("use gamma2_plan for Gamma2 sequences");
  if (ks.empty()) throw PlanInfeasible("plan has no indices");
  SequencePlan p;
  p.name = std::move(name);
  p.regime = regime;
  p.rho = std::move(rho);
  p.lambda = std::move(lambda);
  p.ks = std::move(ks);
  const long k0 = p.ks.front();
  p.eps = sign_of(p.lambda(k0));
  const Seq lam = p.lambda;
  const Seq rh = p.rho;
  if (regime == Regime::OmegaNonzero) {
    p.omega = rh(1000000) * lam(1000000);
    p.R = [lam](long k) { return std::pow(std::abs(lam(k)), -2.0 / 3.0); };
    p.S = [](long) { return 0.0; };
    p.T = [](long) { return 0.0; };
  } else {
    if (bounded(rh, k0)) {
      p.R = [lam](long k) { return std::pow(std::abs(lam(k)), -1.0 / 3.0); };
    } else {
      p.R = [rh, lam](long k) {
        const double w = std::abs(rh(k) * lam(k));
        const double m = std::min(std::pow(w, -0.5), static_cast<double>(k));
        return std::sqrt(std::abs(rh(k)) * m);
      };
    }
    attach_zone_scales(p);
  }
  return p;
}

SequencePlan gamma2_plan(Sign eps, Seq omega_abs, std::vector<long> ks, std::string name) {
  if (ks.empty()) throw PlanInfeasible("plan has no indices");
  SequencePlan p;
  p.name = std::move(name);
  p.regime = Regime::Gamma2;
  p.eps = eps;
  p.omega_abs = std::move(omega_abs);
  p.ks = std::move(ks);
  p.R = [](long) { return 0.0; };
  attach_zone_scales(p);
  return p;
}

void verify_plan(const SequencePlan& plan) {
  require(!plan.ks.empty(), plan, "non-empty index list");
  require(std::is_sorted(plan.ks.begin(), plan.ks.end()), plan, "increasing indices");
  const auto h = horizon(plan);
  auto on_h = [&](auto g) { return eval(h, g); };
  const bool gamma3 = plan.regime != Regime::Gamma2;
  if (gamma3) {
    for (long k : h) require(plan.lambda(k) != 0.0, plan, "lambda_k != 0");
    for (long k : h) require(sign_of(plan.lambda(k)) == plan.eps, plan, "constant sign of lambda_k");
    require(tends_to_zero(on_h([&](long k) { return std::abs(plan.lambda(k)); })), plan,
            "lambda_k -> 0");
  }
  switch (plan.regime) {
    case Regime::OmegaNonzero: {
      require(plan.omega != 0.0, plan, "omega != 0");
      require(tends_to_zero(on_h([&](long k) { return std::abs(plan.omega_k(k) - plan.omega); }),
                            0.1, 0.1, 1e-9 * std::abs(plan.omega)),
              plan, "omega_k -> omega");
      require(tends_to_infinity(on_h(plan.R)), plan, "R_k -> infinity");
      require(tends_to_zero(on_h([&](long k) { return plan.R(k) * std::abs(plan.lambda(k)); })),
              plan, "R_k |lambda_k| -> 0");
      require(tends_to_infinity(
                  on_h([&](long k) { return plan.R(k) * plan.R(k) * std::abs(plan.lambda(k)); })),
              plan, "R_k^2 |lambda_k| -> infinity");
      return;
    }
    case Regime::OmegaZero: {
      for (long k : h) require(plan.omega_k(k) != 0.0, plan, "omega_k != 0");
      require(tends_to_zero(on_h([&](long k) { return std::abs(plan.omega_k(k)); })), plan,
              "omega_k -> 0");
      require(tends_to_infinity(on_h(plan.R)), plan, "R_k -> infinity");
      require(tends_to_zero(on_h([&](long k) { return plan.R(k) * plan.R(k) * std::abs(plan.lambda(k)); })),
              plan, "R_k^2 |lambda_k| -> 0");
      require(tends_to_zero(on_h([&](long k) {
                return std::abs(plan.omega_k(k)) / (plan.R(k) * plan.R(k) * std::abs(plan.lambda(k)));
              })),
              plan, "omega_k / (R_k^2 |lambda_k|) -> 0");
      for (long k : plan.ks)
        require(plan.R(k) <= std::abs(plan.rho(k)) * plan.S(k) * (1 + 1e-12), plan,
                "R_k <= |rho_k| S_k");
      break;
    }
    case Regime::Gamma2:
      for (long k : h) require(plan.omega_abs(k) > 0.0, plan, "omega_k > 0");
      require(tends_to_zero(on_h(plan.omega_abs)), plan, "omega_k -> 0");
      break;
  }
  require(tends_to_infinity(on_h(plan.S), 2.0), plan, "S_k -> infinity");
  require(tends_to_infinity(on_h(plan.T), 2.0), plan, "T_k -> infinity");
  require(tends_to_zero(on_h([&](long k) { return plan.S(k) / plan.T(k); })), plan,
          "S_k / T_k -> 0");
  require(tends_to_zero(on_h([&](long k) { return std::abs(plan.omega_k(k)) * plan.T(k); })),
          plan, "omega_k T_k -> 0");
  for (long k : plan.ks) {
    try {
      zones(plan, k);
    } catch (const ZoneOverlap& e) {
      throw PlanInfeasible("plan '" + plan.name + "': " + e.what());
    }
  }
}

SpectrumSample plan_sample(const SequencePlan& plan) {
  SpectrumSample s;
  const double e = sgn(plan.eps);
  for (long k : plan.ks) {
    if (plan.regime != Regime::Gamma2) s.gamma3_frame.emplace_back(plan.rho(k), plan.lambda(k));
    if (plan.regime == Regime::OmegaNonzero) {
      for (bool limit : {true, false}) {
        const double m = plan.mu(k, limit);
        s.plane.insert(s.plane.end(), {{m, -e}, {-m, e}});
      }
      continue;
    }
    const double m = plan.mu(k);
    s.plane.insert(s.plane.end(), {{m, 0.0}, {-m, 0.0}, {0.0, 0.0}, {0.0, -e}, {0.0, e}, {m, -e}, {-m, e}});
  }
  return s;
}

}  // namespace boidol
