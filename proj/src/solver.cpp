#include "wgnc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "wgnc/linsys.hpp"
#include "wgnc/postproc.hpp"

namespace wgnc {

double IterationRecord::relative_increment() const {
  return (du + dt) / std::max(u_norm + t_norm, 1e-14);
}

namespace {

double field_dot(const WgField& a, const WgField& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.interior.size(); ++i) s += a.interior[i].dot(b.interior[i]);
  for (size_t i = 0; i < a.trace.size(); ++i) s += a.trace[i].dot(b.trace[i]);
  return s;
}

// a + theta * b, entry by entry.
WgField axpy(const WgField& a, const WgField& b, double theta) {
  WgField out = a;
  for (size_t i = 0; i < out.interior.size(); ++i) out.interior[i] += theta * b.interior[i];
  for (size_t i = 0; i < out.trace.size(); ++i) out.trace[i] += theta * b.trace[i];
  return out;
}

}  // namespace

OseenResult oseen_solve(const Discretization& disc, const ProblemSpec& problem, const OseenConfig& config) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("oseen_solve: tol must be positive");
  if (config.max_iter < 1) throw std::invalid_argument("oseen_solve: max_iter must be >= 1");
  if (!(config.relaxation > 0.0 && config.relaxation <= 1.0)) {
    throw std::invalid_argument("oseen_solve: relaxation must lie in (0, 1]");
  }
  problem.validate();

  DofMap dofs(disc);
  apply_nonhomogeneous_dirichlet(dofs, disc, problem);

  OseenResult result;
  result.fields = config.initial_fields ? *config.initial_fields : make_flow_fields(disc);
  if (config.initial_velocity) result.fields.velocity = *config.initial_velocity;
  WgField convecting = result.fields.velocity;
  std::optional<WgField> last_residual;
  double theta = config.relaxation;

  for (int it = 1; it <= config.max_iter; ++it) {
    const auto start = std::chrono::steady_clock::now();
    IterationRecord rec;
    rec.iteration = it;
    FlowFields next;
    try {
      const GlobalSystem sys = assemble_oseen_step(disc, dofs, problem, convecting);
      const Eigen::VectorXd x = solve_system(sys, dofs, config.condensed, &rec.residual);
      next = dofs.scatter(x);
    } catch (const std::exception& e) {
      throw std::runtime_error("Oseen iteration " + std::to_string(it) + ": " + e.what());
    }
    rec.du = triple_norm(disc, next.velocity.minus(result.fields.velocity));
    rec.dt = triple_norm(disc, next.temperature.minus(result.fields.temperature));
    rec.dp = pressure_norm(disc, next.pressure.minus(result.fields.pressure));
    rec.u_norm = triple_norm(disc, next.velocity);
    rec.t_norm = triple_norm(disc, next.temperature);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (config.aitken || config.relaxation < 1.0) {
      // Residual of the fixed-point map w -> u(w).
      WgField residual = next.velocity.minus(convecting);
      if (config.aitken && last_residual) {
        const WgField change = residual.minus(*last_residual);
        const double denom = field_dot(change, change);
        if (denom > 0.0) {
          theta = std::clamp(-theta * field_dot(*last_residual, change) / denom, config.min_relaxation, 1.0);
        }
      }
      convecting = axpy(convecting, residual, theta);
      last_residual = std::move(residual);
    } else {
      convecting = next.velocity;
    }
    rec.relaxation = theta;
    result.fields = std::move(next);
    result.trace.push_back(rec);
    if (rec.du + rec.dt <= config.tol * std::max(rec.u_norm + rec.t_norm, 1e-14)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<double> default_ramp(double target) {
  std::vector<double> r;
  for (double ra = 1e3; ra < target * (1.0 - 1e-12); ra *= 10.0) r.push_back(ra);
  r.push_back(target);
  return r;
}

RampResult ramp_rayleigh(const Discretization& disc, const ProblemSpec& problem, const std::vector<double>& targets,
                         const OseenConfig& config) {
  if (targets.empty()) throw std::invalid_argument("ramp_rayleigh: empty Rayleigh sequence");
  for (size_t i = 1; i < targets.size(); ++i) {
    if (!(targets[i] > targets[i - 1])) {
      throw std::invalid_argument("ramp_rayleigh: Rayleigh numbers must be strictly increasing");
    }
  }
  RampResult out;
  out.rayleigh = targets;
  OseenConfig stage_config = config;
  for (size_t s = 0; s < targets.size(); ++s) {
    ProblemSpec stage = problem;
    stage.ra = targets[s];
    OseenResult r = oseen_solve(disc, stage, stage_config);
    stage_config.initial_fields = r.fields;
    stage_config.initial_velocity.reset();
    out.fields = r.fields;
    const bool ok = r.converged;
    out.stages.push_back(std::move(r));
    if (!ok) {
      out.failed_stage = static_cast<int>(s);
      return out;
    }
  }
  out.converged = true;
  return out;
}

void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& out) {
  out << "iteration,du,dT,dp,u_norm,T_norm,residual,relaxation,seconds\n";
  out << std::setprecision(17);
  for (const auto& r : trace) {
    out << r.iteration << ',' << r.du << ',' << r.dt << ',' << r.dp << ',' << r.u_norm << ',' << r.t_norm << ','
        << r.residual << ',' << r.relaxation << ',' << r.seconds << '\n';
  }
}

}  // namespace wgnc
