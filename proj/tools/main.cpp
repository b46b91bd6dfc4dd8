#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <filesystem>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "boidol/errors.hpp"
#include "commands.hpp"

using namespace boidol;
using namespace boidol::cli;

int main(int argc, char** argv) {
  CLI::App app{"Operator-field experiments on Boidol's group"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string config_path, out;
  int threads = 0, grid_scale = 0;
  bool dump = false, quiet = false;
  app.add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory (default: config, then $BOIDOL_OUT_DIR, then ./boidol_out)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--grid-scale", grid_scale, "multiply grid sizes and windows")->check(CLI::IsMember({1, 2, 4}));
  app.add_flag("--quiet", quiet, "log warnings and errors only");

  auto* orbits = app.add_subcommand("orbits", "limit sets and witness distances");
  auto* converge = app.add_subcommand("converge", "operator-norm convergence along plans");
  converge->require_subcommand(1);
  auto* conv_omega = converge->add_subcommand("omega", "omega != 0 plans");
  auto* conv_zero = converge->add_subcommand("zero", "omega_k -> 0 and Gamma2 plans");
  auto* dstar = app.add_subcommand("dstar", "D* condition report");
  auto* norms = app.add_subcommand("norms", "raw kernel-norm tables");
  norms->add_flag("--dump-operators", dump, "also write binary operator dumps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : Usage;
  }
  if (quiet) spdlog::set_level(spdlog::level::warn);

  try {
    RunContext ctx;
    ctx.config = load_config(config_path);
    if (threads > 0) ctx.config.threads = threads;
    if (grid_scale > 0) ctx.config.grid_scale = grid_scale;
    ctx.out_dir = resolve_output_dir(out, ctx.config);
    ctx.dump_operators = dump;
#ifdef _OPENMP
    omp_set_num_threads(ctx.config.threads);
#endif
    spdlog::info("config {} (hash {}), output {}", config_path, ctx.config.hash().substr(0, 12),
                 ctx.out_dir.string());
    if (*orbits) return cmd_orbits(ctx);
    if (*conv_omega) return cmd_converge(ctx, Regime::OmegaNonzero);
    if (*conv_zero) return cmd_converge(ctx, Regime::OmegaZero);
    if (*dstar) return cmd_dstar(ctx);
    if (*norms) return cmd_norms(ctx);
  } catch (const ConfigError& e) {
    spdlog::error("config error at {}", e.what());
    return Usage;
  } catch (const PlanInfeasible& e) {
    spdlog::error("{}", e.what());
    return Infeasible;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return Infeasible;
  }
  return Usage;
}
