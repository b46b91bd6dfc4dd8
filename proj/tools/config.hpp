#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boidol/dstar.hpp"
#include "boidol/orbits.hpp"

namespace boidol::cli {

/// Validation failure; `where` is a JSON pointer or "line L, column C".
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), location(where) {}
  std::string location;
};

struct SequenceSpec {
  std::string name;
  OrbitSequence::Kind kind = OrbitSequence::Kind::Gamma3;
  PowerLaw rho{1.0, 1.0};
  PowerLaw lambda{1.0, -1.0};
  Sign eps = Sign::Plus;    // gamma2
  Sign sigma = Sign::Plus;  // gamma2
};

struct PlanSpec {
  std::string name;
  Regime regime = Regime::OmegaNonzero;
  PowerLaw rho{1.0, 2.0};
  PowerLaw lambda{1.0, -2.0};
  PowerLaw omega{1.0, -2.0};  // gamma2: |omega_k|
  Sign eps = Sign::Plus;      // gamma2
  std::vector<long> ks{2, 4, 8, 16, 32};
  bool use_omega_k = false;
  std::optional<PowerLaw> R, S, T;

  SequencePlan build() const;
};

struct ExperimentConfig {
  int seed = 0;
  int threads = 1;
  int grid_scale = 1;
  std::string output_dir;  // empty: --out, $BOIDOL_OUT_DIR or ./boidol_out
  TestFunction test_function = TestFunction::default_function();

  double L = 12.0;
  int n_linear = 512;
  double V = 10.0;
  int n_log = 512;
  int quad_nodes = 64;
  int frame_nodes = 32;
  double window_tol = 1e-6;

  double ratio = 0.1;
  double wiggle = 0.1;
  double envelope_slack = 1.5;
  double compact_tol = 1e-3;
  double vanish_tol = 1e-2;
  int rank_budget = 0;
  double orbit_tol = 1e-6;

  long k_max = 10000;
  std::vector<long> witness_ks{10, 100, 1000};
  std::vector<SequenceSpec> sequences;

  std::vector<PlanSpec> omega_plans;
  std::vector<PlanSpec> zero_plans;

  std::vector<PlanSpec> dstar_plans;
  Tamper tamper = Tamper::None;
  Sigma0Config sigma0{};
  bool adjoint_suite = true;

  std::vector<Point2> norm_gamma3{{0.0, 1.0}, {0.5, 1.0}, {1.0, -1.0}, {8.0, 1.0}, {64.0, 1.0}};
  std::vector<Point2> norm_plane{{1.0, -1.0}, {-1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};

  bool diagnostic = true;

  ExperimentConfig();

  FieldGrids grids() const;  // includes grid_scale
  ConvergenceOptions convergence() const;
  DstarConfig dstar() const;
  /// Every field with its effective value, in a fixed key order.
  nlohmann::ordered_json to_json() const;
  /// SHA-256 (hex) of the effective config without output_dir and threads.
  std::string hash() const;
};

/// Parses and validates; unknown keys and type errors raise ConfigError naming the field.
ExperimentConfig parse_config(const std::string& text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

}  // namespace boidol::cli
