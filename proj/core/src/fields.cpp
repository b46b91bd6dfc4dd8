#include "boidol/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "boidol/errors.hpp"

namespace boidol {

KernelOptions FieldGrids::frame_options() const {
  KernelOptions o = kernel;
  o.quad.nodes = frame_nodes;
  return o;
}

FieldGrids FieldGrids::scaled(int s) const {
  FieldGrids g = *this;
  g.linear = linear.refined(s);
  g.log_pair = log_pair.refined(s);
  return g;
}

Point2 plane_point(const TwoDim& l) { return {l.omega, sgn(l.sigma)}; }

Point2 plane_point(const OneDim& l) {
  return l.axis == Axis::X ? Point2{sgn(l.sigma), 0.0} : Point2{0.0, sgn(l.sigma)};
}

std::vector<OneDim> SpectrumSample::all_gamma1() {
  return {{Axis::X, Sign::Plus}, {Axis::X, Sign::Minus}, {Axis::Y, Sign::Plus}, {Axis::Y, Sign::Minus}};
}

void SpectrumSample::merge(const SpectrumSample& o) {
  gamma3.insert(gamma3.end(), o.gamma3.begin(), o.gamma3.end());
  gamma3_frame.insert(gamma3_frame.end(), o.gamma3_frame.begin(), o.gamma3_frame.end());
  gamma2.insert(gamma2.end(), o.gamma2.begin(), o.gamma2.end());
  gamma1.insert(gamma1.end(), o.gamma1.begin(), o.gamma1.end());
  plane.insert(plane.end(), o.plane.begin(), o.plane.end());
  gamma0.insert(gamma0.end(), o.gamma0.begin(), o.gamma0.end());
}

std::vector<Point2> SpectrumSample::plane_points() const {
  std::vector<Point2> pts;
  for (const auto& l : gamma2) pts.push_back(plane_point(l));
  for (const auto& l : gamma1) pts.push_back(plane_point(l));
  pts.insert(pts.end(), plane.begin(), plane.end());
  return pts;
}

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

template <class Map>
auto find_point(Map& m, Point2 p) -> decltype(m.begin()) {
  const double tol = 1e-12 * std::max(1.0, std::abs(p.first));
  for (auto it = m.lower_bound({p.first - tol, -std::numeric_limits<double>::infinity()});
       it != m.end() && it->first.first <= p.first + tol; ++it)
    if (near(it->first.second, p.second)) return it;
  return m.end();
}

std::string point_name(const char* what, Point2 p) {
  std::ostringstream os;
  os << what << "(" << p.first << "," << p.second << ")";
  return os.str();
}

template <class Map>
auto& lookup(Map& m, Point2 p, const char* what) {
  auto it = find_point(m, p);
  if (it == m.end()) throw MissingLimitPoint(point_name(what, p) + " is not in the field sample");
  return it->second;
}

template <class Map>
void insert_unique(Map& m, Point2 p, KernelOperator op) {
  if (find_point(m, p) == m.end()) m.emplace(p, std::move(op));
}

}  // namespace

const KernelOperator& OperatorField::gen_at(double rho, double lambda) const {
  return lookup(gen, {rho, lambda}, "pi_rho_lambda");
}
const KernelOperator& OperatorField::frame_at(double rho, double lambda) const {
  return lookup(frame, {rho, lambda}, "V_k^* pi V_k");
}
const KernelOperator& OperatorField::plane_at(double mu, double nu) const {
  return lookup(plane, {mu, nu}, "tau_mu_nu");
}
KernelOperator& OperatorField::plane_at(double mu, double nu) {
  return lookup(plane, {mu, nu}, "tau_mu_nu");
}
bool OperatorField::has_plane(double mu, double nu) const {
  return find_point(plane, {mu, nu}) != plane.end();
}

cplx OperatorField::char_at(double tau) const {
  for (auto it = chars.lower_bound(tau - 1e-12 * std::max(1.0, std::abs(tau)));
       it != chars.end() && near(it->first, tau); ++it)
    return it->second;
  throw MissingLimitPoint(point_name("character", {tau, 0.0}) + " is not in the field sample");
}

double OperatorField::sup_norm() const {
  double s = 0.0;
  for (const auto* m : {&gen, &frame, &plane})
    for (const auto& [p, op] : *m) s = std::max(s, op_norm(op));
  for (const auto& [t, v] : chars) s = std::max(s, std::abs(v));
  return s;
}

OperatorField OperatorField::adjoint() const {
  OperatorField out = *this;
  if (source) out.source = source->adjoint();
  for (auto* m : {&out.gen, &out.frame, &out.plane})
    for (auto& [p, op] : *m) op = op.adjoint();
  for (auto& [t, v] : out.chars) v = std::conj(v);
  return out;
}

OperatorField fourier_field(const TestFunction& f, const SpectrumSample& sample,
                            const FieldGrids& grids) {
  OperatorField field;
  field.provenance = OperatorField::Provenance::FourierOf;
  field.source = f;
  field.grids = grids;
  for (const auto& [rho, lambda] : sample.gamma3)
    if (find_point(field.gen, {rho, lambda}) == field.gen.end())
      insert_unique(field.gen, {rho, lambda},
                    kernel_pi_rho_lambda(f, rho, lambda, grids.linear, grids.kernel));
  const KernelOptions fo = grids.frame_options();
  for (const auto& [rho, lambda] : sample.gamma3_frame)
    if (find_point(field.frame, {rho, lambda}) == field.frame.end())
      insert_unique(field.frame, {rho, lambda}, kernel_conjugated(f, rho, lambda, grids.log_pair, fo));
  const GridSpec half = grids.log_half();
  for (const auto& p : sample.plane_points())
    if (find_point(field.plane, p) == field.plane.end())
      insert_unique(field.plane, p, kernel_tau(f, p.first, p.second, half, grids.kernel));
  for (double tau : sample.gamma0) field.chars.emplace(tau, character_value(f, tau, grids.kernel.quad));
  return field;
}

OperatorField zero_field(const SpectrumSample& sample, const FieldGrids& grids) {
  OperatorField field;
  field.grids = grids;
  for (const auto& p : sample.gamma3)
    insert_unique(field.gen, p, KernelOperator::zero(grids.linear, grids.linear));
  for (const auto& p : sample.gamma3_frame)
    insert_unique(field.frame, p, KernelOperator::zero(grids.log_pair, grids.log_pair));
  const GridSpec half = grids.log_half();
  for (const auto& p : sample.plane_points()) insert_unique(field.plane, p, KernelOperator::zero(half, half));
  for (double tau : sample.gamma0) field.chars.emplace(tau, cplx{});
  return field;
}

}  // namespace boidol
