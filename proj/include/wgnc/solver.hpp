#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "wgnc/discretization.hpp"
#include "wgnc/fields.hpp"
#include "wgnc/problems.hpp"

namespace wgnc {

struct OseenConfig {
  double tol = 1e-9;
  int max_iter = 100;
  bool condensed = true;
  /// Under-relaxation of the convecting velocity: w <- theta u_new + (1 - theta) w.
  /// 1 is the plain Oseen iteration; smaller values damp oscillating iterates at high Ra.
  double relaxation = 1.0;
  /// Aitken dynamic relaxation: theta is updated every step from successive
  /// residuals of w -> u(w), starting at `relaxation` and clamped to [min_relaxation, 1].
  bool aitken = false;
  double min_relaxation = 0.05;
  /// Initial convecting velocity; zero when absent.
  std::optional<WgField> initial_velocity;
  /// Initial fields for the increments of the first step (velocity overrides initial_velocity).
  std::optional<FlowFields> initial_fields;
};

/// One Oseen step: increments in the energy/pressure norms and the step's solve residual.
struct IterationRecord {
  int iteration = 0;
  double du = 0.0;
  double dt = 0.0;
  double dp = 0.0;
  double u_norm = 0.0;
  double t_norm = 0.0;
  double residual = 0.0;
  /// Relaxation factor applied after this step.
  double relaxation = 1.0;
  double seconds = 0.0;
  /// (du + dt) relative to max(|||u||| + |||T|||, 1e-14).
  double relative_increment() const;
};

struct OseenResult {
  FlowFields fields;
  std::vector<IterationRecord> trace;
  bool converged = false;
  int iterations() const { return static_cast<int>(trace.size()); }
};

/// Picard/Oseen iteration from u = 0 (or the configured initial velocity) until
/// du + dT <= tol * max(|||u||| + |||T|||, 1e-14). Returns converged = false with
/// the full trace if max_iter is reached. Linear-solve failures are rethrown as
/// std::runtime_error naming the iteration.
OseenResult oseen_solve(const Discretization& disc, const ProblemSpec& problem, const OseenConfig& config = {});

struct RampResult {
  FlowFields fields;
  std::vector<double> rayleigh;
  std::vector<OseenResult> stages;
  bool converged = false;
  int failed_stage = -1;  ///< first non-converged stage, -1 if all converged
};

/// Solves at each Rayleigh number in turn, starting each stage from the previous
/// stage's fields. Throws std::invalid_argument on an empty or non-increasing list.
RampResult ramp_rayleigh(const Discretization& disc, const ProblemSpec& problem, const std::vector<double>& targets,
                         const OseenConfig& config = {});

/// {1e3, 1e4, ...} below `target`, followed by `target`.
std::vector<double> default_ramp(double target);

/// CSV with columns iteration, du, dT, dp, u_norm, T_norm, residual, relaxation, seconds.
void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& out);

}  // namespace wgnc
