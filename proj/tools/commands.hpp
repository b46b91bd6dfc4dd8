#pragma once

#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "config.hpp"

namespace boidol::cli {

enum ExitCode : int { Ok = 0, CheckFailed = 1, Usage = 2, Infeasible = 3 };

struct RunContext {
  ExperimentConfig config;
  std::filesystem::path out_dir;
  bool dump_operators = false;
};

/// --out, then config output_dir, then $BOIDOL_OUT_DIR, then ./boidol_out.
std::filesystem::path resolve_output_dir(const std::string& flag, const ExperimentConfig& cfg);

struct DiagnosticQuantity {
  std::string name;
  std::function<double(const FieldGrids&)> eval;
};

/// Representative quantities (plus `extra`) on the configured grids and on grids with
/// n and windows doubled.
nlohmann::ordered_json grid_diagnostic(const ExperimentConfig& cfg,
                                       const std::vector<DiagnosticQuantity>& extra = {});

/// Targets in the limit set used for witness tables (orbit section points; Gamma0 by
/// characters at tau in {-1, 0, 1}).
std::vector<OrbitLabel> witness_targets(const LimitSet& s);

int cmd_orbits(const RunContext& ctx);
int cmd_converge(const RunContext& ctx, Regime family);  // OmegaZero covers zero and gamma2 plans
int cmd_dstar(const RunContext& ctx);
int cmd_norms(const RunContext& ctx);

}  // namespace boidol::cli
