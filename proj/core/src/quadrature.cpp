#include "boidol/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace boidol {

const Rule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto rule = std::make_unique<Rule>();
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    rule->x.resize(n);
    rule->w.resize(n);
    for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &rule->x[i], &rule->w[i], t);
    gsl_integration_glfixed_table_free(t);
    slot = std::move(rule);
  }
  return *slot;
}

Rule composite_gauss_legendre(double a, double b, int nodes, int panels) {
  if (panels < 1) panels = 1;
  const Rule& ref = gauss_legendre(nodes);
  Rule out;
  out.x.reserve(static_cast<size_t>(nodes) * panels);
  out.w.reserve(static_cast<size_t>(nodes) * panels);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double c = lo + 0.5 * h;
    for (int i = 0; i < nodes; ++i) {
      out.x.push_back(c + 0.5 * h * ref.x[i]);
      out.w.push_back(0.5 * h * ref.w[i]);
    }
  }
  return out;
}

}  // namespace boidol
