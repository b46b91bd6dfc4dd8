#include "boidol/orbits.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "boidol/errors.hpp"

namespace boidol {

OrbitSequence OrbitSequence::gamma3(std::function<std::pair<double, double>(long)> g, long k_max) {
  return {Kind::Gamma3, std::move(g), k_max};
}

OrbitSequence OrbitSequence::gamma2(Sign eps, Sign sigma, std::function<double(long)> rho,
                                    long k_max) {
  auto gen = [eps, sigma, rho = std::move(rho)](long k) {
    return std::pair<double, double>{sgn(eps) * rho(k), sgn(sigma)};
  };
  return {Kind::Gamma2, gen, k_max};
}

std::string to_string(const LimitSet& s) {
  std::ostringstream os;
  if (const auto* p = std::get_if<SinglePoint>(&s)) {
    os << "SinglePoint(" << to_string(p->point) << ")";
  } else if (const auto* t = std::get_if<TwoPoints>(&s)) {
    os << "TwoPoints(" << to_string(t->first) << "," << to_string(t->second) << ")";
  } else if (std::holds_alternative<Gamma1UnionGamma0>(s)) {
    os << "Gamma1UnionGamma0";
  } else if (const auto* q = std::get_if<Gamma1PairUnionGamma0>(&s)) {
    os << "Gamma1PairUnionGamma0(" << to_string(q->first) << "," << to_string(q->second) << ")";
  } else if (const auto* o = std::get_if<OrbitUnionGamma0>(&s)) {
    os << "OrbitUnionGamma0(" << to_string(o->orbit) << ")";
  } else {
    os << "AtInfinity";
  }
  return os.str();
}

bool same_limit_set(const LimitSet& a, const LimitSet& b, double tol) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<SinglePoint>(&a))
    return same_label(p->point, std::get<SinglePoint>(b).point, tol);
  if (const auto* t = std::get_if<TwoPoints>(&a)) {
    const auto& u = std::get<TwoPoints>(b);
    return (same_label(t->first, u.first, tol) && same_label(t->second, u.second, tol)) ||
           (same_label(t->first, u.second, tol) && same_label(t->second, u.first, tol));
  }
  if (const auto* q = std::get_if<Gamma1PairUnionGamma0>(&a)) {
    const auto& u = std::get<Gamma1PairUnionGamma0>(b);
    return (same_label(q->first, u.first, tol) && same_label(q->second, u.second, tol)) ||
           (same_label(q->first, u.second, tol) && same_label(q->second, u.first, tol));
  }
  if (const auto* o = std::get_if<OrbitUnionGamma0>(&a))
    return same_label(o->orbit, std::get<OrbitUnionGamma0>(b).orbit, tol);
  return true;
}

namespace {

// canonical orbit representative: points of the same orbit compare equal
OrbitLabel orbit_of(const OrbitLabel& l) { return classify_dual_vector(section_point(l)); }

}  // namespace

bool limit_set_contains(const LimitSet& s, const OrbitLabel& orbit, double tol) {
  const OrbitLabel o = orbit_of(orbit);
  if (const auto* p = std::get_if<SinglePoint>(&s)) return same_label(p->point, o, tol);
  if (const auto* t = std::get_if<TwoPoints>(&s))
    return same_label(t->first, o, tol) || same_label(t->second, o, tol);
  if (std::holds_alternative<Gamma1UnionGamma0>(s)) return stratum(o) <= 1;
  if (const auto* q = std::get_if<Gamma1PairUnionGamma0>(&s))
    return stratum(o) == 0 || same_label(q->first, o, tol) || same_label(q->second, o, tol);
  if (const auto* c = std::get_if<OrbitUnionGamma0>(&s))
    return stratum(o) == 0 || same_label(c->orbit, o, tol);
  return false;
}

std::optional<double> stabilized_limit(const std::function<double(long)>& a, long k_max,
                                       double tol) {
  const long hi = k_max / 4;
  const long lo = std::max<long>(1, (3 * hi) / 4);
  if (hi < 2) return std::nullopt;
  auto extrapolate = [&](long k) -> double {
    const double a1 = a(k), a2 = a(2 * k), a4 = a(4 * k);
    const double d1 = a1 - a2, d2 = a2 - a4;
    if (d1 == 0.0 && d2 == 0.0) return a4;
    if (d2 == 0.0) return a4;
    const double r = d1 / d2;
    if (!(r > 1.0 + 1e-9)) return std::numeric_limits<double>::quiet_NaN();
    return a4 - d2 / (r - 1.0);
  };
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  const long step = std::max<long>(1, (hi - lo) / 256);
  for (long k = lo; k <= hi; k += step) {
    const double v = extrapolate(k);
    if (!std::isfinite(v)) return std::nullopt;
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  const double last = extrapolate(hi);
  if (!std::isfinite(last) || mx - mn >= tol) return std::nullopt;
  return last;
}

LimitSet limit_set_gamma3(const OrbitSequence& seq, double tol) {
  if (seq.kind != OrbitSequence::Kind::Gamma3)
    throw std::invalid_argument("limit_set_gamma3 expects a Gamma3 sequence");
  const auto rho = [&](long k) { return seq.generator(k).first; };
  const auto lam = [&](long k) { return seq.generator(k).second; };
  const auto om = [&](long k) { return rho(k) * lam(k); };
  const auto inv = [](auto f) { return [f](long k) { return 1.0 / f(k); }; };
  const double zero = 10.0 * tol;

  const auto L = stabilized_limit(lam, seq.k_max, tol);
  if (!L) throw NotProperlyConverging("lambda_k does not stabilize");
  if (std::abs(*L) > zero) {
    if (auto R = stabilized_limit(rho, seq.k_max, tol)) return SinglePoint{Gen{*R, *L}};
    if (auto I = stabilized_limit(inv(rho), seq.k_max, tol); I && std::abs(*I) <= zero)
      return AtInfinity{};
    throw NotProperlyConverging("rho_k neither converges nor diverges to infinity");
  }
  if (auto W = stabilized_limit(om, seq.k_max, tol)) {
    if (std::abs(*W) > zero) return TwoPoints{TwoDim{*W, Sign::Minus}, TwoDim{-*W, Sign::Plus}};
    return Gamma1UnionGamma0{};
  }
  if (auto I = stabilized_limit(inv(om), seq.k_max, tol); I && std::abs(*I) <= zero)
    return AtInfinity{};
  throw NotProperlyConverging("omega_k = rho_k lambda_k does not stabilize");
}

LimitSet limit_set_gamma2(const OrbitSequence& seq, double tol) {
  if (seq.kind != OrbitSequence::Kind::Gamma2)
    throw std::invalid_argument("limit_set_gamma2 expects a Gamma2 sequence");
  const auto first = seq.generator(1);
  const Sign eps = sign_of(first.first);
  const Sign sigma = sign_of(first.second);
  const auto r = stabilized_limit([&](long k) { return std::abs(seq.generator(k).first); },
                                  seq.k_max, tol);
  if (!r || std::abs(*r) > 10.0 * tol)
    throw NotProperlyConverging("rho_k does not tend to 0");
  return Gamma1PairUnionGamma0{OneDim{Axis::X, eps}, OneDim{Axis::Y, sigma}};
}

LimitSet closure_gamma1(Axis axis, Sign sigma) { return OrbitUnionGamma0{OneDim{axis, sigma}}; }

LimitSet closure(const LimitSet& s) {
  if (const auto* o = std::get_if<OrbitUnionGamma0>(&s)) {
    if (const auto* d = std::get_if<OneDim>(&o->orbit)) return closure_gamma1(d->axis, d->sigma);
  }
  return s;
}

namespace {

struct Objective {
  double rho, lambda;
  DualVector target;
};

double objective_fn(const gsl_vector* v, void* p) {
  const auto* o = static_cast<const Objective*>(p);
  const DualVector l = orbit_point(Gen{o->rho, o->lambda}, gsl_vector_get(v, 0),
                                   gsl_vector_get(v, 1));
  return distance(l, o->target);
}

// closed-form witness (x,y) on O_{rho,lambda} approaching `target`
std::pair<double, double> closed_form_witness(double rho, double lambda, const DualVector& tgt,
                                              double zero_tol) {
  const double om = rho * lambda;
  const bool hx = std::abs(tgt.cX) > zero_tol;
  const bool hy = std::abs(tgt.cY) > zero_tol;
  if (hx) return {tgt.cX, (tgt.cT * lambda - om) / tgt.cX};
  if (hy) return {(tgt.cT * lambda - om) / tgt.cY, tgt.cY};
  // Gamma0 target alpha T*: need x y = alpha lambda - omega
  const double d = tgt.cT * lambda - om;
  if (d == 0.0) return {0.0, 0.0};
  const double r = std::sqrt(std::abs(d));
  return {-r, -r * (d > 0 ? 1.0 : -1.0)};
}

}  // namespace

double witness_distance(const OrbitSequence& seq, const LimitSet& limit, const DualVector& target,
                        long k, const WitnessOptions& opt) {
  if (seq.kind != OrbitSequence::Kind::Gamma3)
    throw std::invalid_argument("witness_distance expects a Gamma3 sequence");
  const OrbitLabel tl = classify_dual_vector(target);
  if (!limit_set_contains(limit, tl, 1e-6))
    throw TargetNotInLimitSet(to_string(tl) + " not in " + to_string(limit));
  const auto [rho, lambda] = seq.generator(k);
  Objective obj{rho, lambda, target};
  auto [x0, y0] = closed_form_witness(rho, lambda, target, 1e-12);
  gsl_vector* v = gsl_vector_alloc(2);
  gsl_vector_set(v, 0, x0);
  gsl_vector_set(v, 1, y0);
  const double best0 = objective_fn(v, &obj);
  if (best0 == 0.0 || opt.max_evaluations <= 0) {
    gsl_vector_free(v);
    return best0;
  }
  gsl_vector* step = gsl_vector_alloc(2);
  const double s = std::max(1e-8, 0.25 * std::max(std::abs(x0), std::abs(y0)));
  gsl_vector_set_all(step, s);
  gsl_multimin_function fn{&objective_fn, 2, &obj};
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2),
      &gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(m.get(), &fn, v, step);
  double best = best0;
  // each simplex iteration costs at most 3 evaluations after the initial 3
  for (int evals = 3; evals + 3 <= opt.max_evaluations; evals += 3) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != 0) break;
    best = std::min(best, m->fval);
    if (gsl_multimin_fminimizer_size(m.get()) < 1e-15) break;
  }
  gsl_vector_free(step);
  gsl_vector_free(v);
  return best;
}

double witness_distance(const OrbitSequence& seq, const DualVector& target, long k,
                        const WitnessOptions& opt) {
  return witness_distance(seq, limit_set_gamma3(seq, opt.tol), target, k, opt);
}

}  // namespace boidol
