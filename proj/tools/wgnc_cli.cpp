#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "run_config.hpp"
#include "wgnc/problems.hpp"

namespace {

using wgnc::cli::Command;
using wgnc::cli::RunConfig;

struct Flags {
  std::string variant = "wg1";
  int k = 1;
  std::string meshes;
  std::string config;
  std::string out = "out";
  double tol = 1e-9;
  int max_iter = 100;
  double relaxation = 1.0;
  bool aitken = false;
  double ra = 1e3;
  bool ramp = false;
  bool seedless = false;
  bool no_vtk = false;
};

struct Options {
  CLI::Option* variant = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* meshes = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* max_iter = nullptr;
  CLI::Option* relaxation = nullptr;
  CLI::Option* ra = nullptr;
};

Options add_common(CLI::App* sub, Flags& f) {
  Options o;
  o.variant = sub->add_option("--variant", f.variant, "Method variant: wg1, wg2 or wg3");
  o.k = sub->add_option("-k,--degree", f.k, "Polynomial degree k >= 1");
  sub->add_option("--config", f.config, "INI problem/run configuration file");
  sub->add_option("--out", f.out, "Output directory (created if absent)");
  o.tol = sub->add_option("--tol", f.tol, "Relative increment tolerance of the Oseen iteration");
  o.max_iter = sub->add_option("--max-iter", f.max_iter, "Maximum Oseen iterations per solve");
  o.relaxation = sub->add_option("--relaxation", f.relaxation,
                                 "Under-relaxation of the convecting velocity in (0, 1] (initial value with --aitken)");
  sub->add_flag("--aitken,!--no-aitken", f.aitken, "Aitken dynamic relaxation of the Oseen iteration");
  sub->add_flag("--seedless", f.seedless, "Zero wall-clock columns so reruns give identical files");
  return o;
}

// Config values first, then explicit flags on top.
RunConfig resolve(Command command, const Flags& f, const Options& o, wgnc::ProblemSpec default_problem,
                  const std::string& default_meshes) {
  RunConfig rc;
  rc.command = command;
  rc.problem = std::move(default_problem);
  rc.out_dir = f.out;
  rc.seedless = f.seedless;
  rc.write_vtk = !f.no_vtk;
  rc.ramp = f.ramp;
  rc.aitken = f.aitken;
  rc.ra = rc.problem.ra;
  std::string meshes = default_meshes;

  if (!f.config.empty()) {
    const wgnc::ConfigFile cfg = wgnc::load_config(f.config);
    rc.config_path = f.config;
    rc.problem = cfg.problem;
    rc.ra = cfg.problem.ra;
    if (cfg.k) rc.k = *cfg.k;
    if (cfg.variant) rc.variant = *cfg.variant;
    if (cfg.nx && cfg.ny) meshes = std::to_string(*cfg.nx) + "x" + std::to_string(*cfg.ny);
    if (cfg.tol) rc.tol = *cfg.tol;
    if (cfg.max_iter) rc.max_iter = *cfg.max_iter;
    if (!cfg.ramp.empty()) {
      rc.ramp_values = cfg.ramp;
      rc.ramp = true;
    }
  }
  if (o.variant->count() > 0) rc.variant = wgnc::parse_variant(f.variant);
  if (o.k->count() > 0) rc.k = f.k;
  if (o.meshes->count() > 0) meshes = f.meshes;
  if (o.tol->count() > 0) rc.tol = f.tol;
  if (o.max_iter->count() > 0) rc.max_iter = f.max_iter;
  if (o.relaxation->count() > 0) rc.relaxation = f.relaxation;
  if (o.ra && o.ra->count() > 0) {
    rc.ra = f.ra;
    if (!rc.ramp_values.empty() && rc.ramp_values.back() != f.ra) rc.ramp_values.clear();
  }
  rc.meshes = wgnc::cli::parse_mesh_list(meshes);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin solver for stationary natural convection"};
  app.require_subcommand(1);

  Flags converge_flags, cavity_flags, solve_flags;
  // High-Ra cavity runs oscillate under the plain iteration; damp them by default.
  cavity_flags.aitken = true;

  CLI::App* converge = app.add_subcommand("converge", "Mesh-refinement study against an exact solution");
  Options converge_opts = add_common(converge, converge_flags);
  converge_opts.meshes = converge->add_option("--meshes", converge_flags.meshes,
                                              "Comma-separated meshes, each halving h (default 8x4,...,64x32)");

  CLI::App* cavity = app.add_subcommand("cavity", "Differentially heated cavity benchmark");
  Options cavity_opts = add_common(cavity, cavity_flags);
  cavity_opts.meshes = cavity->add_option("--mesh", cavity_flags.meshes, "Mesh NXxNY (default 40x40)");
  cavity_opts.ra = cavity->add_option("--ra", cavity_flags.ra, "Rayleigh number (default 1e3)");
  cavity->add_flag("--ramp", cavity_flags.ramp, "Continue through Ra = 1e3, 1e4, ... up to the target");
  cavity->add_flag("--no-vtk", cavity_flags.no_vtk, "Skip the VTK field export");

  CLI::App* solve = app.add_subcommand("solve", "Single solve of a built-in or configured problem");
  Options solve_opts = add_common(solve, solve_flags);
  solve_opts.meshes = solve->add_option("--mesh", solve_flags.meshes, "Mesh NXxNY (default 16x8)");
  solve->add_flag("--ramp", solve_flags.ramp, "Continue through Ra = 1e3, 1e4, ... up to the problem's Ra");
  solve->add_flag("--no-vtk", solve_flags.no_vtk, "Skip the VTK field export");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (converge->parsed()) {
      const RunConfig rc = resolve(Command::Converge, converge_flags, converge_opts, wgnc::example_6_1(),
                                   "8x4,16x8,32x16,64x32");
      return wgnc::cli::cmd_converge(rc, std::cout);
    }
    if (cavity->parsed()) {
      wgnc::ProblemSpec problem = wgnc::cavity(cavity_flags.ra);
      const RunConfig rc = resolve(Command::Cavity, cavity_flags, cavity_opts, problem, "40x40");
      return wgnc::cli::cmd_cavity(rc, std::cout);
    }
    const RunConfig rc = resolve(Command::Solve, solve_flags, solve_opts, wgnc::example_6_1(), "16x8");
    return wgnc::cli::cmd_solve(rc, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
