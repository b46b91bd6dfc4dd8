#include "boidol/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "boidol/errors.hpp"

namespace boidol {

std::vector<double> symmetric_nodes(double W, int n) {
  std::vector<double> s(static_cast<std::size_t>(n));
  const double h = 2.0 * W / n;
  for (int i = 0; i < n / 2; ++i) {
    s[i] = -W + h * (i + 0.5);
    s[n - 1 - i] = -s[i];
  }
  return s;
}

GridSpec GridSpec::linear(double L, int n) {
  GridSpec g{GridKind::Linear, Sign::Plus, L, n};
  g.check();
  return g;
}

GridSpec GridSpec::log_half_line(Sign sigma, double V, int n) {
  GridSpec g{GridKind::LogHalfLine, sigma, V, n};
  g.check();
  return g;
}

GridSpec GridSpec::log_pair(double V, int n) {
  GridSpec g{GridKind::LogPair, Sign::Plus, V, n};
  g.check();
  return g;
}

void GridSpec::check() const {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("grid size must be positive and even");
  if (!(half_width > 0.0)) throw std::invalid_argument("grid half-width must be positive");
}

double GridSpec::coord(int i) const {
  const int m = (kind == GridKind::LogPair && i >= n) ? i - n : i;
  const double h = step();
  // mirror-exact: node n-1-m is the negation of node m
  if (m < n / 2) return -half_width + h * (m + 0.5);
  return -(-half_width + h * ((n - 1 - m) + 0.5));
}

double GridSpec::point(int i) const {
  switch (kind) {
    case GridKind::Linear:
      return coord(i);
    case GridKind::LogHalfLine:
      return sgn(sigma) * std::exp(coord(i));
    case GridKind::LogPair:
      return (i < n ? 1.0 : -1.0) * std::exp(coord(i));
  }
  return 0.0;
}

std::vector<double> GridSpec::weights() const {
  return std::vector<double>(static_cast<std::size_t>(size()), step());
}

int GridSpec::mirror(int i) const {
  switch (kind) {
    case GridKind::Linear:
      return n - 1 - i;
    case GridKind::LogPair:
      return i < n ? i + n : i - n;
    case GridKind::LogHalfLine:
      break;
  }
  throw AsymmetricGrid("a single half-line grid has no mirror image");
}

GridSpec GridSpec::half(Sign s) const {
  if (kind != GridKind::LogPair) throw std::invalid_argument("half() needs a LogPair grid");
  return log_half_line(s, half_width, n);
}

GridSpec GridSpec::refined(int factor, bool scale_window) const {
  GridSpec g = *this;
  g.n *= factor;
  if (scale_window) g.half_width *= factor;
  return g;
}

}  // namespace boidol
