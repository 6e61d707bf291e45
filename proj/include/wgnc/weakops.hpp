#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "wgnc/mesh.hpp"
#include "wgnc/polybasis.hpp"

namespace wgnc {

/// Weak gradient of a scalar weak function {v0 in P_k(K), vb in P_l(e) per face}
/// into [P_r(K)]^2, realized as dense matrices in orthonormal bases. Output
/// rows are ordered x-component block then y-component block.
struct WeakGradientOperator {
  int element = -1;
  int interior_degree = 0;
  int trace_degree = 0;
  int target_degree = 0;
  Eigen::MatrixXd interior;            ///< 2 n_r x n_k
  std::array<Eigen::MatrixXd, 3> face; ///< 2 n_r x n_l per local face

  int target_dim() const { return triangle_dim(target_degree); }
  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v0,
                        const std::array<Eigen::VectorXd, 3>& vb) const;
  /// [interior | face0 | face1 | face2]
  Eigen::MatrixXd stacked() const;
};

/// Weak divergence of a vector weak function {v0 in [P_k]^2, vb in [P_l(e)]^2}
/// into P_r(K). Input columns are x-component block then y-component block.
struct WeakDivergenceOperator {
  int element = -1;
  int interior_degree = 0;
  int trace_degree = 0;
  int target_degree = 0;
  Eigen::MatrixXd interior;            ///< n_r x 2 n_k
  std::array<Eigen::MatrixXd, 3> face; ///< n_r x 2 n_l per local face

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v0,
                        const std::array<Eigen::VectorXd, 3>& vb) const;
};

WeakGradientOperator build_weak_gradient(const ElementFrame& frame, int k, int l, int r);
WeakDivergenceOperator build_weak_divergence(const ElementFrame& frame, int k, int l, int r);

/// Trace function on local face `face` at parameter s (point x on the face).
using TraceFunction = std::function<double(int face, double s, const Point& x)>;

/// Weak gradient of arbitrary {v0, vb}, integrated by quadrature of the given degree.
Eigen::VectorXd weak_gradient_of(const ElementFrame& frame, int r, const ScalarFunction& v0,
                                 const TraceFunction& vb, int quad_degree);
/// Weak divergence of arbitrary {v0, vb}; `vb_normal` is vb . n_K on each face.
Eigen::VectorXd weak_divergence_of(const ElementFrame& frame, int r, const VectorFunction& v0,
                                   const TraceFunction& vb_normal, int quad_degree);

/// Weak divergence moments from samples: -(v0, grad chi_j)_K + <flux, chi_j>_dK
/// for the orthonormal basis chi of P_r. `interior_x/y` hold v0 at the volume
/// table points and `face_flux[f]` holds vb.n_K at the face table points.
/// The tables must tabulate a basis of degree >= r.
Eigen::VectorXd weak_divergence_from_samples(const VolumeTable& volume,
                                             const std::array<FaceTable, 3>& faces, int r,
                                             const Eigen::Ref<const Eigen::VectorXd>& interior_x,
                                             const Eigen::Ref<const Eigen::VectorXd>& interior_y,
                                             const std::array<Eigen::VectorXd, 3>& face_flux);

/// Rows: components; columns: d/dx, d/dy.
using TensorFunction = std::function<Eigen::Matrix2d(const Point&)>;

/// max_K || grad_{w,m}{P^RT_k v, Qb_l v} - Q0_m(grad v) ||_{0,K} over the fluid elements.
double commutativity_check(const VectorFunction& v, const TensorFunction& grad_v, const Mesh& mesh,
                           int k, int l, int m);
/// max_K || grad_{w,m}{Q0_k s, Qb_l s} - Q0_m(grad s) ||_{0,K} over all elements.
double scalar_commutativity_check(const ScalarFunction& s, const VectorFunction& grad_s,
                                  const Mesh& mesh, int k, int l, int m);
/// max_K || grad_{w,k}{Q0_{k-1} q, Qb_k q} - Q0_k(grad q) ||_{0,K} over the fluid elements.
double pressure_commutativity_check(const ScalarFunction& q, const VectorFunction& grad_q,
                                    const Mesh& mesh, int k);

}  // namespace wgnc
