#pragma once

#include <complex>
#include <memory>
#include <nlohmann/json_fwd.hpp>
#include <utility>
#include <vector>

#include "boidol/quadrature.hpp"

namespace boidol {

using cplx = std::complex<double>;

/// Standard mollifier s -> exp(-1/(1-((s-c)/w)^2)) on |s-c| < w.
struct Bump {
  double centre = 0.0;
  double width = 1.0;

  double operator()(double s) const;
  double lo() const { return centre - width; }
  double hi() const { return centre + width; }
  friend bool operator==(const Bump&, const Bump&) = default;
};

/// coeff * b_t(t) b_x(x) b_a(a) b_b(b) in the (t, x, a, b) variables of hatF^{3,4}.
struct SeparableTerm {
  cplx coeff{1.0, 0.0};
  Bump bt, bx, ba, bb;
  friend bool operator==(const SeparableTerm&, const SeparableTerm&) = default;
};

struct SupportBox {
  double t0, t1, x0, x1, a0, a1, b0, b1;
};

struct FourierCache;

/// Test function F stored through hatF^{3,4}. With `adjoint_form` set the object
/// stands for F* (F*(g) = conj F(g^{-1})) of the stored terms.
class TestFunction {
 public:
  TestFunction();
  explicit TestFunction(std::vector<SeparableTerm> terms, bool adjoint_form = false);

  /// One term, coeff 1, all bumps centred at 0 with width 1 except b_b of width 2.
  static TestFunction default_function();

  const std::vector<SeparableTerm>& terms() const { return terms_; }
  bool adjoint_form() const { return adjoint_; }
  bool is_zero() const;

  TestFunction adjoint() const;
  TestFunction scaled(cplx c) const;
  friend TestFunction operator+(const TestFunction& a, const TestFunction& b);

  /// Box containing the support of hatF^{3,4} in its own arguments (conservative
  /// for the adjoint form).
  SupportBox support_box() const;
  std::pair<double, double> t_support() const;
  /// x-range of the support of hatF^{3,4}(t, ., a, b) at fixed t.
  std::pair<double, double> x_support(double t) const;

  /// int b(x) e^{-i alpha x} dx, cached per (width*alpha, nodes).
  cplx bump_hat(const Bump& b, double alpha, int nodes) const;

 private:
  std::vector<SeparableTerm> terms_;
  bool adjoint_ = false;
  std::shared_ptr<FourierCache> cache_;
};

cplx eval_hatF34(const TestFunction& f, double t, double x, double a, double b);
/// int hatF^{3,4}(t,x,b,c) e^{-iax} dx.
cplx eval_hatF234(const TestFunction& f, double t, double a, double b, double c,
                  const QuadratureSpec& quad = {});

/// Normalized cosine transform int_{-1}^{1} bump(s) cos(beta s) ds of the unit bump.
double unit_bump_cosine_transform(double beta, int nodes = 64);

struct GridSpec4D {
  int t_nodes = 64;
  int x_nodes = 64;
  double y_window = 0.0;  // 0: grow until the decay criterion holds
  double z_window = 0.0;
  double decay_threshold = 1e-10;
  double dy = 0.02;  // sample spacing of the inverse transform
};

struct L1Result {
  double value = 0.0;
  double truncation_bound = 0.0;  // relative
  double y_window = 0.0;
  double z_window = 0.0;
};

/// int |t F(t,x,y,z)| over G, F recovered by inverse FFT in (a,b) -> (y,z).
L1Result l1_norm_F1(const TestFunction& f, const GridSpec4D& grid = {});

/// Samples of (1/2pi) int b(a) e^{iay} da on y_m = m dy, |y| < window (m centred).
struct InverseTransform {
  double dy = 0.0;
  double window = 0.0;
  std::vector<cplx> values;  // index m + N/2
  double y(std::size_t i) const { return (static_cast<double>(i) - values.size() / 2.0) * dy; }
};
InverseTransform inverse_bump_transform(const Bump& b, double window, double dy);

void to_json(nlohmann::json& j, const TestFunction& f);
void from_json(const nlohmann::json& j, TestFunction& f);

}  // namespace boidol
