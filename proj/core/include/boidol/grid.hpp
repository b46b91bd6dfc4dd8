#pragma once

#include <vector>

#include "boidol/group.hpp"

namespace boidol {

enum class GridKind { Linear, LogHalfLine, LogPair };

/// Discretized L^2 space. Linear: u in [-L, L] with measure du. LogHalfLine(sigma):
/// u = sigma e^v, v in [-V, V], measure dv = du/|u|. LogPair: both half-lines, the
/// first n nodes on u > 0, the next n on u < 0 (same v nodes).
/// Nodes are half-offset and mirror-symmetric bit for bit; all weights equal h.
struct GridSpec {
  GridKind kind = GridKind::Linear;
  Sign sigma = Sign::Plus;  // LogHalfLine only
  double half_width = 12.0;
  int n = 512;  // per half-line for LogPair

  static GridSpec linear(double L, int n);
  static GridSpec log_half_line(Sign sigma, double V, int n);
  static GridSpec log_pair(double V, int n);

  bool is_log() const { return kind != GridKind::Linear; }
  int size() const { return kind == GridKind::LogPair ? 2 * n : n; }
  double step() const { return 2.0 * half_width / n; }
  /// Grid coordinate: u on Linear grids, v on log grids.
  double coord(int i) const;
  /// Physical point u.
  double point(int i) const;
  double weight(int) const { return step(); }
  std::vector<double> weights() const;
  /// Index of the mirror node (u -> -u); AsymmetricGrid on a single half-line.
  int mirror(int i) const;
  /// Half-line grid of a LogPair.
  GridSpec half(Sign s) const;
  /// n and window scaled by `factor` (resolution kept when scale_window is false).
  GridSpec refined(int factor, bool scale_window = true) const;

  void check() const;  // throws std::invalid_argument
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Symmetric half-offset nodes on [-W, W].
std::vector<double> symmetric_nodes(double W, int n);

}  // namespace boidol
