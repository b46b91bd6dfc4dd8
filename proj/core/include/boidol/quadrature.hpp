#pragma once

#include <vector>

namespace boidol {

/// Composite Gauss-Legendre rule. panels == 0 lets the caller pick.
struct QuadratureSpec {
  int nodes = 64;
  int panels = 0;
};

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Reference nodes/weights on [-1,1] (cached, thread-safe).
const Rule& gauss_legendre(int n);
Rule composite_gauss_legendre(double a, double b, int nodes, int panels);

}  // namespace boidol
