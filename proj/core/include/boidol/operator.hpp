#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <string>

#include "boidol/grid.hpp"

namespace boidol {

using cplx = std::complex<double>;

/// Integral operator (A xi)(u_i) = sum_j K[i][j] w_j xi_j from `domain` to `codomain`.
struct KernelOperator {
  GridSpec domain;
  GridSpec codomain;
  Eigen::MatrixXcd entries;  // codomain.size() x domain.size()
  std::string label;

  static KernelOperator zero(const GridSpec& codomain, const GridSpec& domain,
                             std::string label = "zero");
  static KernelOperator identity(const GridSpec& grid);

  Eigen::VectorXcd apply(const Eigen::VectorXcd& xi) const;
  /// W_cod^{1/2} K W_dom^{1/2}: the matrix whose spectral norm is the L^2 operator norm.
  Eigen::MatrixXcd weighted() const;
  KernelOperator adjoint() const;
  KernelOperator scaled(cplx c) const;

  friend KernelOperator operator+(const KernelOperator& a, const KernelOperator& b);
  friend KernelOperator operator-(const KernelOperator& a, const KernelOperator& b);
};

/// a o b (kernel a W b).
KernelOperator compose(const KernelOperator& a, const KernelOperator& b);
/// Block-diagonal operator on a LogPair built from two half-line blocks.
KernelOperator direct_sum(const KernelOperator& plus, const KernelOperator& minus);
/// Half-line block (s_out, s_in) of an operator on a LogPair.
KernelOperator block(const KernelOperator& a, Sign out, Sign in);

/// L^2 norm of a grid function.
double l2_norm(const GridSpec& g, const Eigen::VectorXcd& v);

/// Interval in the physical variable u (or |u| when `absolute`), open/closed ends.
struct IntervalSpec {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = true;
  bool hi_closed = true;
  bool absolute = false;

  static IntervalSpec closed(double c, double d) { return {c, d, true, true, false}; }
  static IntervalSpec at_most(double d) { return {-inf(), d, false, true, false}; }
  static IntervalSpec at_least(double d) { return {d, inf(), true, false, false}; }
  static IntervalSpec abs_at_most(double d) { return {-inf(), d, false, true, true}; }
  static IntervalSpec abs_at_least(double d) { return {d, inf(), true, false, true}; }
  /// ]lo, hi] on |u|
  static IntervalSpec abs_half_open(double lo, double hi) { return {lo, hi, false, true, true}; }

  bool contains(double u) const;
  static double inf() { return std::numeric_limits<double>::infinity(); }
};

/// Multiplication by the indicator of `spec` (kernel diag(m_i / w_i)).
KernelOperator cutoff_M(const IntervalSpec& spec, const GridSpec& grid);
/// a o M_spec without forming the diagonal product (column scaling).
KernelOperator apply_cutoff_right(const KernelOperator& a, const IntervalSpec& spec);

enum class NormMethod { Auto, SVD, PowerIteration };

struct NormOptions {
  NormMethod method = NormMethod::Auto;
  double tol = 1e-10;
  int max_iterations = 10000;
  int svd_limit = 1024;  // Auto switches to power iteration above this size
};

double op_norm(const KernelOperator& a, const NormOptions& opt = {});
double op_norm(const Eigen::MatrixXcd& weighted, const NormOptions& opt = {});
/// Singular value sigma_{rank+1} of the weighted matrix.
double compact_defect(const KernelOperator& a, int rank);
Eigen::VectorXd singular_values(const KernelOperator& a);

/// Binary dump: 8-byte magic "BOIDOLOP", u32 version, u32 header length, JSON header,
/// zero padding to 8 bytes, then row-major little-endian complex128 entries.
void write_operator_dump(const std::string& path, const KernelOperator& a);
KernelOperator read_operator_dump(const std::string& path);

}  // namespace boidol
