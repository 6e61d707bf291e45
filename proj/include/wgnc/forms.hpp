#pragma once

#include <array>

#include <Eigen/Dense>

#include "wgnc/discretization.hpp"

namespace wgnc {

// Local coefficient layouts used by every block below.
//
//   scalar (temperature or one velocity component):
//     [interior (n_k) | face0 (n_l) | face1 (n_l) | face2 (n_l)]
//   velocity:
//     [interior x (n_k), interior y (n_k) | face0 x, face0 y | face1 x, face1 y | face2 x, face2 y]
//   pressure:
//     [interior (n_{k-1}) | face0 (k+1) | face1 | face2]
//
// Matrices are indexed (test row, trial column).

int scalar_local_dim(const Discretization& disc);
int velocity_local_dim(const Discretization& disc);
int pressure_local_dim(const Discretization& disc);

/// Position of scalar-layout index `s` for velocity component `c` in the velocity layout.
int velocity_index(const Discretization& disc, int c, int s);
/// Embeds a scalar-layout block into both velocity components.
Eigen::MatrixXd expand_to_velocity(const Discretization& disc, const Eigen::MatrixXd& scalar);

/// (grad_{w,m} u, grad_{w,m} v)_K + tau <Qb_l u0 - ub, Qb_l v0 - vb>_dK in scalar layout.
Eigen::MatrixXd scalar_diffusion(const ElementOperators& ops);

/// Pr times the vector diffusion block. Throws on solid elements.
Eigen::MatrixXd local_a(const ElementOperators& ops, double pr);
/// b_h(v, q) = (grad_{w,k} q, v0): rows are velocity interiors (2 n_k), columns the pressure layout.
Eigen::MatrixXd local_b(const ElementOperators& ops);
/// d_h(T, v) = Pr Ra (j T0, v0): rows velocity interiors (2 n_k), columns temperature interior (n_k).
Eigen::MatrixXd local_d(const ElementOperators& ops, double pr, double ra, Point gravity = {0.0, 1.0});
/// kappa times the scalar diffusion block; valid on every element.
Eigen::MatrixXd local_abar(const ElementOperators& ops, double kappa);

/// Frozen convecting velocity on one element: interior (2 n_k) and per-face traces (2 n_l each),
/// in the velocity layout blocks.
struct ConvectingVelocity {
  Eigen::VectorXd interior;
  std::array<Eigen::VectorXd, 3> trace;
};

/// Skew scalar block of the convective forms in scalar layout:
/// 1/2 (div_w{u0 w0, ub wb}, v0) - 1/2 (div_w{v0 w0, vb wb}, u0).
Eigen::MatrixXd convection_matrix(const ElementOperators& ops, const ConvectingVelocity& w);
/// c_h(w; u, v) block in velocity layout. Throws on solid elements.
Eigen::MatrixXd local_c(const ElementOperators& ops, const ConvectingVelocity& w);
/// cbar_h(w; T, s) block in scalar layout; identically zero on solid elements.
Eigen::MatrixXd local_cbar(const ElementOperators& ops, const ConvectingVelocity& w);

/// All blocks of one element for one Oseen step.
struct LocalFormBlocks {
  Eigen::MatrixXd a;     ///< velocity x velocity (empty on solid)
  Eigen::MatrixXd c;     ///< velocity x velocity (empty on solid)
  Eigen::MatrixXd b;     ///< velocity interior x pressure (empty on solid)
  Eigen::MatrixXd d;     ///< velocity interior x temperature interior (empty on solid)
  Eigen::MatrixXd abar;  ///< temperature x temperature
  Eigen::MatrixXd cbar;  ///< temperature x temperature
};

struct Physics {
  double pr = 1.0;
  double ra = 0.0;
  double kappa = 1.0;
  Point gravity{0.0, 1.0};
};

LocalFormBlocks local_blocks(const ElementOperators& ops, const Physics& phys,
                             const ConvectingVelocity& w);

}  // namespace wgnc
