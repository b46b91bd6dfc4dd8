#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "boidol/group.hpp"
#include "boidol/kernels.hpp"

namespace boidol {

using Point2 = std::pair<double, double>;

/// Discretization shared by every entry of a field.
struct FieldGrids {
  GridSpec linear = GridSpec::linear(12.0, 512);
  GridSpec log_pair = GridSpec::log_pair(10.0, 512);
  KernelOptions kernel{};
  int frame_nodes = 32;  // GL nodes per panel for V_k^* pi V_k

  GridSpec log_half() const { return log_pair.half(Sign::Plus); }
  KernelOptions frame_options() const;
  /// n and windows multiplied by `s` (the grid-refinement diagnostic).
  FieldGrids scaled(int s) const;
};

/// (mu, nu) coordinates of the section point of a Gamma2 / Gamma1 label.
Point2 plane_point(const TwoDim& l);
Point2 plane_point(const OneDim& l);

/// Finite stand-in for the spectrum.
struct SpectrumSample {
  std::vector<Point2> gamma3;        // (rho, lambda), kernels on the Linear grid
  std::vector<Point2> gamma3_frame;  // (rho, lambda), V_k^* pi V_k on the LogPair
  std::vector<TwoDim> gamma2;
  std::vector<OneDim> gamma1;
  std::vector<Point2> plane;  // further (mu, nu) evaluation points, e.g. (0,0)
  std::vector<double> gamma0;

  static std::vector<OneDim> all_gamma1();
  void merge(const SpectrumSample& other);
  /// gamma2, gamma1 and plane as one list of (mu, nu) points.
  std::vector<Point2> plane_points() const;
};

/// Operator field on a sample. Gamma2/Gamma1 (and degenerate (mu,nu)) entries are
/// tau^+_{mu,nu} on the LogHalfLine(+) grid; Gamma0 entries are scalars.
struct OperatorField {
  enum class Provenance { FourierOf, Synthetic };
  Provenance provenance = Provenance::Synthetic;
  std::optional<TestFunction> source;
  FieldGrids grids;
  std::map<Point2, KernelOperator> gen;
  std::map<Point2, KernelOperator> frame;
  std::map<Point2, KernelOperator> plane;
  std::map<double, cplx> chars;

  const KernelOperator& gen_at(double rho, double lambda) const;
  const KernelOperator& frame_at(double rho, double lambda) const;
  const KernelOperator& plane_at(double mu, double nu) const;
  KernelOperator& plane_at(double mu, double nu);
  cplx char_at(double tau) const;
  bool has_plane(double mu, double nu) const;

  /// sup of op_norm over all operator entries and |value| over characters.
  double sup_norm() const;
  /// Pointwise adjoint.
  OperatorField adjoint() const;
};

OperatorField fourier_field(const TestFunction& f, const SpectrumSample& sample,
                            const FieldGrids& grids = {});
/// Synthetic field of zero operators (and zero characters) on `sample`.
OperatorField zero_field(const SpectrumSample& sample, const FieldGrids& grids = {});

}  // namespace boidol
