#include "run_config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wgnc/discretization.hpp"
#include "wgnc/mesh.hpp"
#include "wgnc/postproc.hpp"
#include "wgnc/solver.hpp"

namespace wgnc::cli {

namespace {

constexpr double kInvariantTolerance = 1e-10;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
}

std::string mesh_label(const MeshSize& m) { return std::to_string(m.nx) + "x" + std::to_string(m.ny); }

std::vector<IterationRecord> scrubbed(std::vector<IterationRecord> trace, bool seedless) {
  if (seedless) {
    for (auto& r : trace) r.seconds = 0.0;
  }
  return trace;
}

void write_trace(const std::filesystem::path& path, const std::vector<IterationRecord>& trace, bool seedless) {
  std::ofstream out = open_output(path);
  write_trace_csv(scrubbed(trace, seedless), out);
}

OseenConfig oseen_config(const RunConfig& config) {
  OseenConfig oc;
  oc.tol = config.tol;
  oc.max_iter = config.max_iter;
  oc.relaxation = config.relaxation;
  oc.aitken = config.aitken;
  return oc;
}

// Divergence and zero-mean pressure checks shared by all commands.
bool invariants_hold(const Discretization& disc, const FlowFields& fields, std::ostream& log,
                     const std::string& label) {
  const DivergenceReport d = divergence_diagnostic(disc, fields.velocity);
  const double mean = pressure_mean(disc, fields.pressure);
  const bool ok = d.div_h <= kInvariantTolerance && d.max_jump <= kInvariantTolerance &&
                  std::abs(mean) <= kInvariantTolerance;
  if (!ok) {
    log << label << ": invariant check failed (div_h " << format_sig(d.div_h) << ", jump "
        << format_sig(d.max_jump) << ", mean p " << format_sig(mean) << ")\n";
  }
  return ok;
}

}  // namespace

std::vector<MeshSize> parse_mesh_list(const std::string& text) {
  std::vector<MeshSize> meshes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find_first_of("xX");
    if (x == std::string::npos) throw std::invalid_argument("mesh '" + item + "' is not of the form NXxNY");
    MeshSize m;
    try {
      size_t used = 0;
      m.nx = std::stoi(item.substr(0, x), &used);
      if (used != x) throw std::invalid_argument("trailing characters");
      const std::string rest = item.substr(x + 1);
      m.ny = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("mesh '" + item + "' is not of the form NXxNY");
    }
    if (m.nx < 1 || m.ny < 1) throw std::invalid_argument("mesh '" + item + "' must have positive sizes");
    meshes.push_back(m);
  }
  if (meshes.empty()) throw std::invalid_argument("empty mesh list");
  return meshes;
}

void check_halving(const std::vector<MeshSize>& meshes) {
  if (meshes.size() < 2) throw std::invalid_argument("a convergence study needs at least two meshes");
  for (size_t i = 1; i < meshes.size(); ++i) {
    if (meshes[i].nx != 2 * meshes[i - 1].nx || meshes[i].ny != 2 * meshes[i - 1].ny) {
      throw std::invalid_argument("mesh " + mesh_label(meshes[i]) + " does not halve h relative to " +
                                  mesh_label(meshes[i - 1]));
    }
  }
}

int cmd_converge(const RunConfig& config, std::ostream& log) {
  const ProblemSpec& problem = config.problem;
  if (!problem.exact) {
    throw std::invalid_argument("problem '" + problem.name +
                                "' has no exact solution; convergence studies need one");
  }
  check_halving(config.meshes);
  prepare_output_dir(config.out_dir);
  const std::filesystem::path dir(config.out_dir);
  const MethodParams params = MethodParams::from_variant(config.k, config.variant);

  bool ok = true;
  std::vector<ConvergenceRow> rows;
  for (const MeshSize& m : config.meshes) {
    const Mesh mesh = build_structured_mesh(m.nx, m.ny, problem.domain, problem.fluid);
    const Discretization disc(mesh, params);
    const OseenResult r = oseen_solve(disc, problem, oseen_config(config));
    write_trace(dir / ("trace_" + mesh_label(m) + ".csv"), r.trace, config.seedless);
    if (!r.converged) {
      log << mesh_label(m) << ": Oseen iteration did not converge in " << config.max_iter << " steps\n";
      ok = false;
    }
    ok = invariants_hold(disc, r.fields, log, mesh_label(m)) && ok;
    rows.push_back({m.nx, m.ny, mesh_size(mesh), error_report(disc, r.fields, *problem.exact), {}, false});
  }
  compute_orders(rows);
  {
    std::ofstream csv = open_output(dir / "convergence.csv");
    write_convergence_csv(rows, csv);
    std::ofstream table = open_output(dir / "convergence.txt");
    write_convergence_table(rows, table);
  }
  log << problem.name << ", " << to_string(params.variant) << ", k = " << params.k << "\n";
  write_convergence_table(rows, log);
  return ok ? 0 : 1;
}

int cmd_cavity(const RunConfig& config, std::ostream& log) {
  if (config.meshes.size() != 1) throw std::invalid_argument("cavity expects a single --mesh");
  prepare_output_dir(config.out_dir);
  const std::filesystem::path dir(config.out_dir);
  const MeshSize m = config.meshes.front();
  ProblemSpec problem = config.problem;
  problem.ra = config.ra;
  const MethodParams params = MethodParams::from_variant(config.k, config.variant);
  const Mesh mesh = build_structured_mesh(m.nx, m.ny, problem.domain, problem.fluid);
  const Discretization disc(mesh, params);

  std::vector<double> stages{config.ra};
  if (config.ramp) stages = config.ramp_values.empty() ? default_ramp(config.ra) : config.ramp_values;
  if (stages.back() != config.ra) {
    throw std::invalid_argument("the Rayleigh ramp must end at the target Ra");
  }
  const RampResult r = ramp_rayleigh(disc, problem, stages, oseen_config(config));

  {
    // One trace for all ramp stages, prefixed by the stage Rayleigh number.
    std::ofstream out = open_output(dir / "trace.csv");
    out.precision(17);
    for (size_t s = 0; s < r.stages.size(); ++s) {
      std::ostringstream rows;
      write_trace_csv(scrubbed(r.stages[s].trace, config.seedless), rows);
      std::istringstream in(rows.str());
      std::string line;
      std::getline(in, line);
      if (s == 0) out << "ra," << line << '\n';
      while (std::getline(in, line)) out << r.rayleigh[s] << ',' << line << '\n';
    }
  }
  bool ok = r.converged;
  if (!ok) {
    log << "Ra = " << r.rayleigh[r.failed_stage] << ": Oseen iteration did not converge in "
        << config.max_iter << " steps\n";
  }
  ok = invariants_hold(disc, r.fields, log, mesh_label(m)) && ok;

  const std::vector<CavityRow> rows{{config.ra, params.k, m.nx, m.ny, cavity_report(disc, r.fields)}};
  {
    std::ofstream csv = open_output(dir / "cavity.csv");
    write_cavity_csv(rows, csv);
    std::ofstream table = open_output(dir / "cavity.txt");
    write_cavity_table(rows, table);
  }
  if (config.write_vtk) {
    export_fields(disc, r.fields, stream_function(disc, r.fields.velocity), (dir / "fields.vtk").string());
  }
  write_cavity_table(rows, log);
  return ok ? 0 : 1;
}

int cmd_solve(const RunConfig& config, std::ostream& log) {
  if (config.meshes.size() != 1) throw std::invalid_argument("solve expects a single --mesh");
  prepare_output_dir(config.out_dir);
  const std::filesystem::path dir(config.out_dir);
  const MeshSize m = config.meshes.front();
  const ProblemSpec& problem = config.problem;
  const MethodParams params = MethodParams::from_variant(config.k, config.variant);
  const Mesh mesh = build_structured_mesh(m.nx, m.ny, problem.domain, problem.fluid);
  const Discretization disc(mesh, params);

  std::vector<double> stages{problem.ra};
  if (config.ramp && problem.ra > 0.0) {
    stages = config.ramp_values.empty() ? default_ramp(problem.ra) : config.ramp_values;
  }
  const RampResult r = ramp_rayleigh(disc, problem, stages, oseen_config(config));
  std::vector<IterationRecord> trace;
  for (const auto& s : r.stages) trace.insert(trace.end(), s.trace.begin(), s.trace.end());
  write_trace(dir / "trace.csv", trace, config.seedless);

  bool ok = r.converged;
  if (!ok) log << "Oseen iteration did not converge in " << config.max_iter << " steps\n";
  ok = invariants_hold(disc, r.fields, log, mesh_label(m)) && ok;

  const DivergenceReport d = divergence_diagnostic(disc, r.fields.velocity);
  std::ofstream diag = open_output(dir / "diagnostics.csv");
  diag.precision(17);
  diag << "quantity,value\n";
  diag << "iterations," << trace.size() << "\n";
  diag << "converged," << (r.converged ? 1 : 0) << "\n";
  diag << "div_h," << d.div_h << "\n";
  diag << "max_normal_jump," << d.max_jump << "\n";
  diag << "max_boundary_flux," << d.max_boundary_flux << "\n";
  diag << "mean_pressure," << pressure_mean(disc, r.fields.pressure) << "\n";
  log << problem.name << " on " << mesh_label(m) << ": " << trace.size() << " iterations, div_h "
      << format_sig(d.div_h) << ", max jump " << format_sig(d.max_jump) << "\n";
  if (problem.exact) {
    std::vector<ConvergenceRow> rows{{m.nx, m.ny, mesh_size(mesh), error_report(disc, r.fields, *problem.exact), {}, false}};
    std::ofstream csv = open_output(dir / "errors.csv");
    write_convergence_csv(rows, csv);
    write_convergence_table(rows, log);
  }
  if (config.write_vtk) {
    export_fields(disc, r.fields, stream_function(disc, r.fields.velocity), (dir / "fields.vtk").string());
  }
  return ok ? 0 : 1;
}

}  // namespace wgnc::cli
