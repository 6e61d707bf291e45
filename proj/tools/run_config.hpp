#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgnc/params.hpp"
#include "wgnc/problems.hpp"

namespace wgnc::cli {

enum class Command { Converge, Cavity, Solve };

struct MeshSize {
  int nx = 0;
  int ny = 0;
};

/// Resolved settings of one CLI invocation. Flags override config values.
struct RunConfig {
  Command command = Command::Solve;
  int k = 1;
  Variant variant = Variant::WG1;
  std::vector<MeshSize> meshes;
  double tol = 1e-9;
  int max_iter = 100;
  /// Initial under-relaxation of the convecting velocity and whether Aitken updates it.
  double relaxation = 1.0;
  bool aitken = false;
  std::string out_dir = "out";
  std::optional<std::string> config_path;
  ProblemSpec problem;
  double ra = 1e3;
  bool ramp = false;
  std::vector<double> ramp_values;
  bool seedless = false;
  bool write_vtk = true;
};

/// Parses "8x4,16x8" (or a single "40x40"). Throws std::invalid_argument.
std::vector<MeshSize> parse_mesh_list(const std::string& text);
/// Throws unless there are at least two meshes and each halves h in both directions.
void check_halving(const std::vector<MeshSize>& meshes);

/// Each command writes its artifacts under `out_dir`, prints a summary on
/// `log` and returns the process exit status (0 iff every solve converged and
/// every invariant check passed).
int cmd_converge(const RunConfig& config, std::ostream& log);
int cmd_cavity(const RunConfig& config, std::ostream& log);
int cmd_solve(const RunConfig& config, std::ostream& log);

}  // namespace wgnc::cli
