#pragma once

#include "boidol/operator.hpp"
#include "boidol/quadrature.hpp"
#include "boidol/testfunction.hpp"

namespace boidol {

struct KernelOptions {
  QuadratureSpec quad{};
  /// WindowTooSmall when the kernel mass outside the window exceeds this fraction of
  /// the mass on the doubled window.
  double window_tol = 1e-6;
};

/// pi_{rho,lambda}(F) on L^2(R): K(u,x) = int e^{t/2} e^{-i rho t} hatF(t, e^t u - x,
/// -(lambda/2)(x + e^t u), lambda) dt. With `gamma` the kernel of pi^gamma, i.e. the
/// second and third arguments negated.
KernelOperator kernel_pi_rho_lambda(const TestFunction& f, double rho, double lambda,
                                    const GridSpec& grid, const KernelOptions& opt = {},
                                    bool gamma = false);

/// pi_{mu,nu}(F) on L^2(R) in the variable v: K(v,t) = hatF^{2,3,4}(v - t, mu e^t, nu e^{-t}, 0).
KernelOperator kernel_pi_ell(const TestFunction& f, double mu, double nu, const GridSpec& grid,
                             const KernelOptions& opt = {});

/// U_sigma: L^2(R, dv) -> L^2(R_sigma, du/|u|), (U xi)(u) = xi(-ln|u|). On matching grids
/// this is the node reversal i -> n-1-i.
KernelOperator u_sigma(const GridSpec& linear, Sign sigma);

/// tau^sigma_{mu,nu}(F) = U_sigma pi_{mu,nu}(F) U_sigma^* on a LogHalfLine grid; the matrix
/// does not depend on sigma.
KernelOperator kernel_tau(const TestFunction& f, double mu, double nu, const GridSpec& log_grid,
                          const KernelOptions& opt = {});

/// V_k^* pi_{rho,lambda}(F) V_k on a LogPair grid, integrated directly (no interpolation).
KernelOperator kernel_conjugated(const TestFunction& f, double rho, double lambda,
                                 const GridSpec& log_pair, const KernelOptions& opt = {});

/// int e^{-i tau t} hatF^{2,3,4}(t,0,0,0) dt.
cplx character_value(const TestFunction& f, double tau, const QuadratureSpec& quad = {});

/// S xi(u) = xi(-u). On a LogHalfLine(sigma) grid maps to the LogHalfLine(-sigma) grid.
KernelOperator flip_S(const GridSpec& grid);

/// V_k : L^2 over the LogPair (du/|u|) -> L^2(R) on `linear`,
/// V_k eta(s) = |s|^{-1/2} eta(|lambda| s) e^{i rho ln|lambda s|}, cubic interpolation in v.
KernelOperator vk_operator(double rho, double lambda, const GridSpec& log_pair,
                           const GridSpec& linear);
/// V_k^* xi(u) = |u|^{1/2} |lambda|^{-1/2} e^{-i rho ln|u|} xi(u/|lambda|), cubic interpolation in s.
KernelOperator vk_adjoint_operator(double rho, double lambda, const GridSpec& linear,
                                   const GridSpec& log_pair);

/// 4-point Lagrange weights for evaluating at coordinate `x` on symmetric nodes of
/// [-W, W] with n nodes. Returns the first stencil index (or -1 when x is outside
/// the node range) and fills w[0..3].
int cubic_stencil(double x, double W, int n, double w[4]);

}  // namespace boidol
