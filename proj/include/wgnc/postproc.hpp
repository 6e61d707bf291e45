#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgnc/discretization.hpp"
#include "wgnc/fields.hpp"
#include "wgnc/problems.hpp"

namespace wgnc {

/// Discrete energy norm (||grad_{w,m} v||^2 + ||tau^{1/2}(Qb_l v0 - vb)||^2_{dT})^{1/2} of a
/// velocity (fluid elements) or temperature (all elements) field.
double triple_norm(const Discretization& disc, const WgField& field);
/// Pressure norm (||q0||^2 + sum_K ||grad_{w,k} q||_K^2)^{1/2} over the fluid elements.
double pressure_norm(const Discretization& disc, const WgField& pressure);

/// Average of the interior pressure over the fluid elements.
double pressure_mean(const Discretization& disc, const WgField& pressure);

/// Relative L2 errors of the interior parts against an exact solution, plus div_h U_h.
struct ErrorReport {
  double grad_u = 0.0;
  double u = 0.0;
  double p = 0.0;
  double grad_t = 0.0;
  double t = 0.0;
  double div = 0.0;
  /// Relative errors of the weak gradients grad_{w,m} u_h and grad_{w,m} T_h (diagnostic).
  double weak_grad_u = 0.0;
  double weak_grad_t = 0.0;
  std::array<double, 5> values() const { return {grad_u, u, p, grad_t, t}; }
};

ErrorReport error_report(const Discretization& disc, const FlowFields& fields, const ExactSolution& exact);

/// log2(e_i / e_{i+1}) for successive entries. Throws on < 2 entries or non-positive values.
std::vector<double> observed_order(const std::vector<double>& errors);

struct DivergenceReport {
  double div_h = 0.0;      ///< max_K h_K^{-1} ||div u0||_K
  double max_jump = 0.0;   ///< max over interior fluid faces of ||[u0 . n]||_e
  double max_boundary_flux = 0.0;  ///< max over fluid-boundary faces of ||u0 . n||_e
};
DivergenceReport divergence_diagnostic(const Discretization& disc, const WgField& velocity);

/// Benchmark quantities of the square cavity.
struct CavityReport {
  double u1_max = 0.0;      ///< max |u1| on x = 0.5
  double u2_max = 0.0;      ///< max |u2| on y = 0.5
  double nu_bar = 0.0;      ///< volume average of u1 T - dT/dx over the cavity
  double nu_max = 0.0;
  double nu_min = 0.0;
  double nu_wall = 0.0;     ///< hot-wall average of Nu(y) = -dT/dx at x = 0
  double u1_max_y = 0.0;    ///< location of u1_max
  double u2_max_x = 0.0;
};
/// Throws if the fluid region does not contain both mid-planes.
CavityReport cavity_report(const Discretization& disc, const FlowFields& fields);

/// Continuous P1 stream function on the fluid elements with psi = 0 on the fluid
/// boundary, from (grad psi, grad phi) = (u1, d_y phi) - (u2, d_x phi). Values at
/// all mesh vertices (0 outside the fluid region).
std::vector<double> stream_function(const Discretization& disc, const WgField& velocity);

/// Legacy VTK (ASCII) unstructured grid with vertex-sampled u1, u2, p, T, psi
/// (averages of the adjacent element polynomials) and the cell subdomain.
void export_fields(const Discretization& disc, const FlowFields& fields, const std::vector<double>& psi,
                   const std::string& path);

struct ConvergenceRow {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  ErrorReport errors;
  std::array<double, 5> orders{};  ///< relative to the previous row
  bool has_orders = false;
};
/// Fills in the orders of successive rows.
void compute_orders(std::vector<ConvergenceRow>& rows);

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out);
void write_convergence_table(const std::vector<ConvergenceRow>& rows, std::ostream& out);

struct CavityRow {
  double ra = 0.0;
  int k = 1;
  int nx = 0;
  int ny = 0;
  CavityReport report;
};
void write_cavity_csv(const std::vector<CavityRow>& rows, std::ostream& out);
void write_cavity_table(const std::vector<CavityRow>& rows, std::ostream& out);

/// Five significant digits in scientific notation, e.g. 5.9412e-01.
std::string format_sig(double v);

}  // namespace wgnc
