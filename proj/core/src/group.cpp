#include "boidol/group.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace boidol {

GroupElement group_identity() { return {}; }

GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
  const double ep = std::exp(h.t);
  const double em = std::exp(-h.t);
  return {g.t + h.t, ep * g.x + h.x, em * g.y + h.y,
          g.z + h.z + 0.5 * (ep * g.x * h.y - em * h.x * g.y)};
}

GroupElement group_inv(const GroupElement& g) {
  return {-g.t, -std::exp(-g.t) * g.x, -std::exp(g.t) * g.y, -g.z};
}

GroupElement automorphism_gamma(const GroupElement& g) { return {g.t, -g.x, -g.y, g.z}; }

bool in_centre(const GroupElement& g, double tol) {
  return std::abs(g.t) <= tol && std::abs(g.x) <= tol && std::abs(g.y) <= tol;
}
bool in_heisenberg(const GroupElement& g, double tol) { return std::abs(g.t) <= tol; }
bool in_subgroup_P(const GroupElement& g, double tol) { return std::abs(g.x) <= tol; }
bool in_stabilizer_TZ(const GroupElement& g, double tol) {
  return std::abs(g.x) <= tol && std::abs(g.y) <= tol;
}

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

double distance(const DualVector& a, const DualVector& b) {
  const double d0 = a.cT - b.cT, d1 = a.cX - b.cX, d2 = a.cY - b.cY, d3 = a.cZ - b.cZ;
  return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3);
}

int stratum(const OrbitLabel& label) {
  struct V {
    int operator()(const Gen&) const { return 3; }
    int operator()(const TwoDim&) const { return 2; }
    int operator()(const OneDim&) const { return 1; }
    int operator()(const Character&) const { return 0; }
  };
  return std::visit(V{}, label);
}

void validate(const OrbitLabel& label) {
  if (const auto* g = std::get_if<Gen>(&label); g && g->lambda == 0.0)
    throw std::invalid_argument("Gen label requires lambda != 0");
  if (const auto* w = std::get_if<TwoDim>(&label); w && w->omega == 0.0)
    throw std::invalid_argument("TwoDim label requires omega != 0");
}

Sign two_dim_epsilon(const TwoDim& l) { return sign_of(l.omega); }

bool same_label(const OrbitLabel& a, const OrbitLabel& b, double tol) {
  if (a.index() != b.index()) return false;
  if (const auto* g = std::get_if<Gen>(&a)) {
    const auto& h = std::get<Gen>(b);
    return std::abs(g->rho - h.rho) <= tol && std::abs(g->lambda - h.lambda) <= tol;
  }
  if (const auto* w = std::get_if<TwoDim>(&a)) {
    const auto& v = std::get<TwoDim>(b);
    return w->sigma == v.sigma && std::abs(w->omega - v.omega) <= tol;
  }
  if (const auto* o = std::get_if<OneDim>(&a)) {
    const auto& p = std::get<OneDim>(b);
    return o->axis == p.axis && o->sigma == p.sigma;
  }
  return std::abs(std::get<Character>(a).tau - std::get<Character>(b).tau) <= tol;
}

std::string to_string(const OrbitLabel& label) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* g = std::get_if<Gen>(&label)) {
    os << "Gen(rho=" << g->rho << ",lambda=" << g->lambda << ")";
  } else if (const auto* w = std::get_if<TwoDim>(&label)) {
    os << "TwoDim(omega=" << w->omega << ",sigma=" << sign_char(w->sigma) << ")";
  } else if (const auto* o = std::get_if<OneDim>(&label)) {
    os << "OneDim(" << (o->axis == Axis::X ? 'X' : 'Y') << "," << sign_char(o->sigma) << ")";
  } else {
    os << "Character(tau=" << std::get<Character>(label).tau << ")";
  }
  return os.str();
}

DualVector orbit_point(const OrbitLabel& label, double p1, double p2) {
  validate(label);
  if (const auto* g = std::get_if<Gen>(&label)) {
    const double x = p1, y = p2;
    return {(g->rho * g->lambda + x * y) / g->lambda, x, y, g->lambda};
  }
  if (const auto* w = std::get_if<TwoDim>(&label)) {
    return {p2, w->omega * std::exp(p1), sgn(w->sigma) * std::exp(-p1), 0.0};
  }
  if (const auto* o = std::get_if<OneDim>(&label)) {
    if (o->axis == Axis::X) return {p2, sgn(o->sigma) * std::exp(p1), 0.0, 0.0};
    return {p2, 0.0, sgn(o->sigma) * std::exp(-p1), 0.0};
  }
  return {std::get<Character>(label).tau, 0.0, 0.0, 0.0};
}

OrbitLabel classify_dual_vector(const DualVector& l, double zero_tol) {
  const bool z = std::abs(l.cZ) > zero_tol;
  const bool x = std::abs(l.cX) > zero_tol;
  const bool y = std::abs(l.cY) > zero_tol;
  if (z) return Gen{l.cT - l.cX * l.cY / l.cZ, l.cZ};
  if (x && y) return TwoDim{l.cX * std::abs(l.cY), sign_of(l.cY)};
  if (x) return OneDim{Axis::X, sign_of(l.cX)};
  if (y) return OneDim{Axis::Y, sign_of(l.cY)};
  return Character{l.cT};
}

double gen_invariant(const DualVector& l) { return l.cT - l.cX * l.cY / l.cZ; }

}  // namespace boidol
