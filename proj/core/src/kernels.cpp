#include "boidol/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boidol/errors.hpp"

namespace boidol {

namespace {

// extra GL panels so that each panel carries at most 16 rad of phase
int phase_panels(int base, double phase) {
  return std::max(std::max(base, 1), 1 + static_cast<int>(std::floor(std::abs(phase) / 16.0)));
}

void require_kind(const GridSpec& g, GridKind k, const char* what) {
  if (g.kind != k) throw GridMismatch(what);
}

void check_quad(const QuadratureSpec& q) {
  if (q.nodes < 16) throw QuadratureUnderresolved("fewer than 16 nodes per bump width");
}

std::pair<int, int> index_range(double lo, double hi, const GridSpec& g) {
  const double h = g.step();
  int a = static_cast<int>(std::floor((lo + g.half_width) / h - 0.5)) - 1;
  int b = static_cast<int>(std::ceil((hi + g.half_width) / h - 0.5)) + 1;
  return {std::max(a, 0), std::min(b, g.n - 1)};
}

Eigen::MatrixXcd assemble_rho_lambda(const TestFunction& f, double rho, double lambda,
                                     const GridSpec& grid, const QuadratureSpec& quad, bool gamma) {
  const int n = grid.n;
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n, n);
  if (f.is_zero()) return K;
  const SupportBox box = f.support_box();
  if (!(lambda > box.b0 && lambda < box.b1)) return K;
  const auto [t0, t1] = f.t_support();
  const Rule r = composite_gauss_legendre(t0, t1, quad.nodes, phase_panels(quad.panels, rho * (t1 - t0)));
  const std::size_t nt = r.x.size();
  std::vector<double> et(nt);
  std::vector<cplx> pref(nt);
  for (std::size_t q = 0; q < nt; ++q) {
    et[q] = std::exp(r.x[q]);
    pref[q] = r.w[q] * std::exp(0.5 * r.x[q]) * std::polar(1.0, -rho * r.x[q]);
  }
  // symmetric hulls keep the band valid for the gamma variant
  const double mX = std::max(std::abs(box.x0), std::abs(box.x1));
  const double mA = 2.0 * std::max(std::abs(box.a0), std::abs(box.a1)) / std::abs(lambda);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) xs[j] = grid.coord(j);

#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    const double u = xs[i];
    std::vector<cplx> row(static_cast<std::size_t>(n), cplx{});
    for (std::size_t q = 0; q < nt; ++q) {
      const double eu = et[q] * u;
      // e^t u - x in [-mX, mX] and x + e^t u in [-mA, mA]
      const double lo = std::max(eu - mX, -mA - eu);
      const double hi = std::min(eu + mX, mA - eu);
      if (lo > hi) continue;
      const auto [ja, jb] = index_range(lo, hi, grid);
      for (int j = ja; j <= jb; ++j) {
        const double X = eu - xs[j];
        const double A = -(lambda / 2.0) * (xs[j] + eu);
        const cplx v = gamma ? eval_hatF34(f, r.x[q], -X, -A, lambda)
                             : eval_hatF34(f, r.x[q], X, A, lambda);
        if (v != cplx{}) row[j] += pref[q] * v;
      }
    }
    for (int j = 0; j < n; ++j) K(i, j) = row[j];
  }
  return K;
}

}  // namespace

KernelOperator kernel_pi_rho_lambda(const TestFunction& f, double rho, double lambda,
                                    const GridSpec& grid, const KernelOptions& opt, bool gamma) {
  require_kind(grid, GridKind::Linear, "kernel_pi_rho_lambda needs a Linear grid");
  check_quad(opt.quad);
  if (lambda == 0.0) throw std::invalid_argument("lambda must be nonzero");
  KernelOperator out{grid, grid, assemble_rho_lambda(f, rho, lambda, grid, opt.quad, gamma),
                     gamma ? "pi^gamma_rho_lambda" : "pi_rho_lambda"};
  if (f.is_zero()) return out;
  // kernel support in u and x from the support box
  const SupportBox box = f.support_box();
  const double mX = std::max(std::abs(box.x0), std::abs(box.x1));
  const double mA = 2.0 * std::max(std::abs(box.a0), std::abs(box.a1)) / std::abs(lambda);
  const double reach = std::exp(-std::min(box.t0, 0.0)) * 0.5 * (mX + mA);
  if (reach <= grid.half_width) return out;
  const GridSpec wide = GridSpec::linear(2.0 * grid.half_width, 2 * grid.n);
  const Eigen::MatrixXcd Kw = assemble_rho_lambda(f, rho, lambda, wide, opt.quad, gamma);
  const double total = Kw.squaredNorm();
  const double inner = Kw.block(grid.n / 2, grid.n / 2, grid.n, grid.n).squaredNorm();
  if (total > 0.0 && (total - inner) / total > opt.window_tol)
    throw WindowTooSmall("kernel mass outside [-L, L] exceeds tolerance");
  return out;
}

KernelOperator kernel_pi_ell(const TestFunction& f, double mu, double nu, const GridSpec& grid,
                             const KernelOptions& opt) {
  require_kind(grid, GridKind::Linear, "kernel_pi_ell needs a Linear grid in v");
  check_quad(opt.quad);
  const int n = grid.n;
  KernelOperator out = KernelOperator::zero(grid, grid, "pi_ell");
  if (f.is_zero()) return out;
  const auto [t0, t1] = f.t_support();
  std::vector<double> c(static_cast<std::size_t>(n)), a(c.size()), b(c.size());
  for (int j = 0; j < n; ++j) {
    c[j] = grid.coord(j);
    a[j] = mu * std::exp(c[j]);
    b[j] = nu * std::exp(-c[j]);
  }
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    const auto [ja, jb] = index_range(c[i] - t1, c[i] - t0, grid);
    for (int j = ja; j <= jb; ++j)
      out.entries(i, j) = eval_hatF234(f, c[i] - c[j], a[j], b[j], 0.0, opt.quad);
  }
  return out;
}

KernelOperator u_sigma(const GridSpec& linear, Sign sigma) {
  require_kind(linear, GridKind::Linear, "u_sigma needs a Linear grid");
  const GridSpec lg = GridSpec::log_half_line(sigma, linear.half_width, linear.n);
  KernelOperator u = KernelOperator::zero(lg, linear, "U_sigma");
  for (int i = 0; i < linear.n; ++i) u.entries(i, linear.n - 1 - i) = 1.0 / linear.step();
  return u;
}

KernelOperator kernel_tau(const TestFunction& f, double mu, double nu, const GridSpec& log_grid,
                          const KernelOptions& opt) {
  require_kind(log_grid, GridKind::LogHalfLine, "kernel_tau needs a LogHalfLine grid");
  const GridSpec lin = GridSpec::linear(log_grid.half_width, log_grid.n);
  const KernelOperator p = kernel_pi_ell(f, mu, nu, lin, opt);
  return {log_grid, log_grid, p.entries.reverse(), "tau"};
}

KernelOperator kernel_conjugated(const TestFunction& f, double rho, double lambda,
                                 const GridSpec& log_pair, const KernelOptions& opt) {
  require_kind(log_pair, GridKind::LogPair, "kernel_conjugated needs a LogPair grid");
  check_quad(opt.quad);
  if (lambda == 0.0) throw std::invalid_argument("lambda must be nonzero");
  const int N = log_pair.size();
  KernelOperator out = KernelOperator::zero(log_pair, log_pair, "Vk*piVk");
  if (f.is_zero()) return out;
  const SupportBox box = f.support_box();
  if (!(lambda > box.b0 && lambda < box.b1)) return out;
  const auto [t0, t1] = f.t_support();
  const double L = std::abs(lambda);
  const double eps = lambda > 0 ? 1.0 : -1.0;
  const double c0 = eps > 0 ? -box.a1 : box.a0;  // u + L X / 2 in [c0, c1]
  const double c1 = eps > 0 ? -box.a0 : box.a1;
  const double e0 = std::exp(t0), e1 = std::exp(t1);
  const Rule& ref = gauss_legendre(opt.quad.nodes);
  std::vector<double> pts(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) pts[i] = log_pair.point(i);

#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < N; ++i) {
    const double s = pts[i];
    for (int j = 0; j < N; ++j) {
      const double u = pts[j];
      double lo = box.x0, hi = box.x1;
      const double ta = (s * (s > 0 ? e0 : e1) - u) / L;
      const double tb = (s * (s > 0 ? e1 : e0) - u) / L;
      lo = std::max({lo, ta, 2.0 * (c0 - u) / L});
      hi = std::min({hi, tb, 2.0 * (c1 - u) / L});
      if (!(lo < hi)) continue;
      const double phase = rho * std::log((u + L * hi) / (u + L * lo));
      const int panels = phase_panels(opt.quad.panels, phase);
      const double ph = (hi - lo) / panels;
      cplx acc{};
      for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * ph;
        for (std::size_t q = 0; q < ref.x.size(); ++q) {
          const double X = mid + 0.5 * ph * ref.x[q];
          const double w = u + L * X;
          const cplx v = eval_hatF34(f, std::log(w / s), X, -eps * (u + 0.5 * L * X), lambda);
          if (v == cplx{}) continue;
          const double amp = std::sqrt(std::abs(u) / std::abs(w));
          acc += (0.5 * ph * ref.w[q] * amp) * v * std::polar(1.0, -rho * std::log(std::abs(w / u)));
        }
      }
      out.entries(i, j) = acc;
    }
  }
  return out;
}

cplx character_value(const TestFunction& f, double tau, const QuadratureSpec& quad) {
  check_quad(quad);
  if (f.is_zero()) return {};
  const auto [t0, t1] = f.t_support();
  const Rule r = composite_gauss_legendre(t0, t1, quad.nodes, phase_panels(quad.panels, tau * (t1 - t0)));
  cplx s{};
  for (std::size_t q = 0; q < r.x.size(); ++q)
    s += r.w[q] * std::polar(1.0, -tau * r.x[q]) * eval_hatF234(f, r.x[q], 0.0, 0.0, 0.0, quad);
  return s;
}

KernelOperator flip_S(const GridSpec& grid) {
  if (grid.kind == GridKind::LogHalfLine) {
    GridSpec other = grid;
    other.sigma = flip(grid.sigma);
    KernelOperator s = KernelOperator::zero(other, grid, "S");
    for (int i = 0; i < grid.n; ++i) s.entries(i, i) = 1.0 / grid.step();
    return s;
  }
  KernelOperator s = KernelOperator::zero(grid, grid, "S");
  for (int i = 0; i < grid.size(); ++i) s.entries(grid.mirror(i), i) = 1.0 / grid.step();
  return s;
}

int cubic_stencil(double x, double W, int n, double w[4]) {
  const double h = 2.0 * W / n;
  const double p = (x + W) / h - 0.5;
  if (!(p >= 0.0 && p <= n - 1.0) || n < 4) return -1;
  int j0 = static_cast<int>(std::floor(p)) - 1;
  j0 = std::clamp(j0, 0, n - 4);
  for (int m = 0; m < 4; ++m) {
    double v = 1.0;
    for (int l = 0; l < 4; ++l)
      if (l != m) v *= (p - (j0 + l)) / static_cast<double>(m - l);
    w[m] = v;
  }
  return j0;
}

KernelOperator vk_operator(double rho, double lambda, const GridSpec& log_pair,
                           const GridSpec& linear) {
  require_kind(log_pair, GridKind::LogPair, "vk_operator needs a LogPair domain");
  require_kind(linear, GridKind::Linear, "vk_operator needs a Linear codomain");
  if (lambda == 0.0) throw std::invalid_argument("lambda must be nonzero");
  KernelOperator V = KernelOperator::zero(linear, log_pair, "V_k");
  const double L = std::abs(lambda);
  const double hv = log_pair.step();
  for (int i = 0; i < linear.n; ++i) {
    const double s = linear.point(i);
    const double v = std::log(L * std::abs(s));
    double w[4];
    const int j0 = cubic_stencil(v, log_pair.half_width, log_pair.n, w);
    if (j0 < 0) continue;
    const int off = s > 0 ? 0 : log_pair.n;
    const cplx c = std::polar(1.0 / std::sqrt(std::abs(s)), rho * v) / hv;
    for (int m = 0; m < 4; ++m) V.entries(i, off + j0 + m) = c * w[m];
  }
  return V;
}

KernelOperator vk_adjoint_operator(double rho, double lambda, const GridSpec& linear,
                                   const GridSpec& log_pair) {
  require_kind(log_pair, GridKind::LogPair, "vk_adjoint_operator needs a LogPair codomain");
  require_kind(linear, GridKind::Linear, "vk_adjoint_operator needs a Linear domain");
  if (lambda == 0.0) throw std::invalid_argument("lambda must be nonzero");
  KernelOperator Vs = KernelOperator::zero(log_pair, linear, "V_k*");
  const double L = std::abs(lambda);
  const double hs = linear.step();
  for (int i = 0; i < log_pair.size(); ++i) {
    const double u = log_pair.point(i);
    double w[4];
    const int j0 = cubic_stencil(u / L, linear.half_width, linear.n, w);
    if (j0 < 0) continue;
    const cplx c = std::polar(std::sqrt(std::abs(u) / L), -rho * std::log(std::abs(u))) / hs;
    for (int m = 0; m < 4; ++m) Vs.entries(i, j0 + m) = c * w[m];
  }
  return Vs;
}

}  // namespace boidol
