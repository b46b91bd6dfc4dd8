#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "boidol/group.hpp"

namespace boidol {

/// Gamma3: k -> (rho_k, lambda_k). Gamma2: k -> (eps*rho_k, sigma) encoded as
/// (omega_k, sigma as +-1), i.e. the orbit TwoDim(omega_k, sigma).
struct OrbitSequence {
  enum class Kind { Gamma3, Gamma2 };
  Kind kind = Kind::Gamma3;
  std::function<std::pair<double, double>(long)> generator;
  long k_max = 10000;

  static OrbitSequence gamma3(std::function<std::pair<double, double>(long)> g, long k_max = 10000);
  static OrbitSequence gamma2(Sign eps, Sign sigma, std::function<double(long)> rho,
                              long k_max = 10000);
};

struct SinglePoint {
  OrbitLabel point;
};
struct TwoPoints {
  OrbitLabel first;
  OrbitLabel second;
};
struct Gamma1UnionGamma0 {};
struct Gamma1PairUnionGamma0 {
  OrbitLabel first;
  OrbitLabel second;
};
struct OrbitUnionGamma0 {
  OrbitLabel orbit;
};
struct AtInfinity {};

using LimitSet = std::variant<SinglePoint, TwoPoints, Gamma1UnionGamma0, Gamma1PairUnionGamma0,
                              OrbitUnionGamma0, AtInfinity>;

std::string to_string(const LimitSet& s);
bool same_limit_set(const LimitSet& a, const LimitSet& b, double tol = 1e-6);
/// Orbit-level membership (points of an orbit are identified).
bool limit_set_contains(const LimitSet& s, const OrbitLabel& orbit, double tol = 1e-6);

/// Limit of a scalar sequence from the ladder (k, 2k, 4k) assuming a_k ~ L + c k^-p,
/// tested for stabilization over the last quarter of admissible k. Empty when unstable.
std::optional<double> stabilized_limit(const std::function<double(long)>& a, long k_max,
                                       double tol);

LimitSet limit_set_gamma3(const OrbitSequence& seq, double tol = 1e-6);
LimitSet limit_set_gamma2(const OrbitSequence& seq, double tol = 1e-6);
LimitSet closure_gamma1(Axis axis, Sign sigma);
/// Closure of a closed set is itself; only orbit-with-Gamma0 sets are produced here.
LimitSet closure(const LimitSet& s);

struct WitnessOptions {
  double tol = 1e-6;
  int max_evaluations = 200;
};

/// Distance from O_{rho_k,lambda_k} to `target` via closed-form witnesses plus a
/// bounded simplex refinement.
double witness_distance(const OrbitSequence& seq, const DualVector& target, long k,
                        const WitnessOptions& opt = {});
double witness_distance(const OrbitSequence& seq, const LimitSet& limit, const DualVector& target,
                        long k, const WitnessOptions& opt = {});

}  // namespace boidol
