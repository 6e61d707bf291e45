#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wgnc/mesh.hpp"
#include "wgnc/params.hpp"
#include "wgnc/polybasis.hpp"
#include "wgnc/weakops.hpp"

namespace wgnc {

/// Per-element data reused by every form and every Oseen step.
struct ElementOperators {
  ElementOperators(const Mesh& mesh, const MethodParams& params, int element);

  ElementFrame frame;
  bool fluid = false;
  double tau = 0.0;
  /// Scalar weak gradient {P_k, P_l} -> [P_m]^2.
  WeakGradientOperator grad;
  /// Pressure weak gradient {P_{k-1}, P_k} -> [P_k]^2 (fluid elements only).
  WeakGradientOperator grad_p;
  /// Qb_l restricted to each face: n_l x n_k, maps interior P_k coefficients to edge coefficients.
  std::array<Eigen::MatrixXd, 3> trace_projection;
  /// Form-exact rules with the P_k basis (and the P_l edge basis on faces).
  VolumeTable volume;
  std::array<FaceTable, 3> faces;
};

/// Mesh + method parameters + cached element operators. Holds a pointer to
/// the mesh, which must outlive it.
class Discretization {
 public:
  Discretization(const Mesh& mesh, const MethodParams& params);

  const Mesh& mesh() const { return *mesh_; }
  const MethodParams& params() const { return params_; }
  const ElementOperators& element(int e) const { return *ops_[e]; }

  int n_k() const { return triangle_dim(params_.k); }
  int n_l() const { return edge_dim(params_.l); }
  int n_p() const { return triangle_dim(params_.k - 1); }
  int n_pb() const { return edge_dim(params_.k); }
  int n_m() const { return triangle_dim(params_.m); }

 private:
  const Mesh* mesh_;
  MethodParams params_;
  std::vector<std::optional<ElementOperators>> ops_;
};

}  // namespace wgnc
