#pragma once

#include <string>
#include <variant>

namespace boidol {

/// Point (t,x,y,z) of the group in global coordinates.
struct GroupElement {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement group_identity();
GroupElement group_mul(const GroupElement& g, const GroupElement& h);
GroupElement group_inv(const GroupElement& g);
/// (t,x,y,z) -> (t,-x,-y,z)
GroupElement automorphism_gamma(const GroupElement& g);

// subgroup predicates
bool in_centre(const GroupElement& g, double tol = 0.0);      // t = x = y = 0
bool in_heisenberg(const GroupElement& g, double tol = 0.0);  // t = 0
bool in_subgroup_P(const GroupElement& g, double tol = 0.0);  // x = 0
bool in_stabilizer_TZ(const GroupElement& g, double tol = 0.0);  // x = y = 0

enum class Sign : int { Minus = -1, Plus = 1 };

inline double sgn(Sign s) { return static_cast<double>(static_cast<int>(s)); }
inline Sign sign_of(double v) { return v < 0.0 ? Sign::Minus : Sign::Plus; }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
char sign_char(Sign s);

enum class Axis { X, Y };

/// Functional cT T* + cX X* + cY Y* + cZ Z*.
struct DualVector {
  double cT = 0.0;
  double cX = 0.0;
  double cY = 0.0;
  double cZ = 0.0;
};

double distance(const DualVector& a, const DualVector& b);

struct Gen {
  double rho = 0.0;
  double lambda = 1.0;
};
struct TwoDim {
  double omega = 1.0;
  Sign sigma = Sign::Plus;
};
struct OneDim {
  Axis axis = Axis::X;
  Sign sigma = Sign::Plus;
};
struct Character {
  double tau = 0.0;
};

using OrbitLabel = std::variant<Gen, TwoDim, OneDim, Character>;

/// 3 for generic orbits down to 0 for characters.
int stratum(const OrbitLabel& label);
void validate(const OrbitLabel& label);  // throws std::invalid_argument
/// epsilon = sign(omega) of the alternative Gamma_{2,eps,sigma} labelling.
Sign two_dim_epsilon(const TwoDim& l);
bool same_label(const OrbitLabel& a, const OrbitLabel& b, double tol = 1e-9);
std::string to_string(const OrbitLabel& label);

/// Point of the orbit through the section representative of `label`.
/// Gen: (p1,p2) = (x,y). TwoDim/OneDim: (p1,p2) = (t,u). Character ignores params.
DualVector orbit_point(const OrbitLabel& label, double p1 = 0.0, double p2 = 0.0);
inline DualVector section_point(const OrbitLabel& label) { return orbit_point(label); }

OrbitLabel classify_dual_vector(const DualVector& l, double zero_tol = 1e-12);

/// Generic-orbit invariant cT - cX cY / cZ.
double gen_invariant(const DualVector& l);

}  // namespace boidol
