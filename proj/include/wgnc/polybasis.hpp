#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "wgnc/mesh.hpp"

namespace wgnc {

inline constexpr int kMaxBasisDegree = 8;

/// dim P_j on a triangle.
constexpr int triangle_dim(int j) { return j < 0 ? 0 : (j + 1) * (j + 2) / 2; }
/// dim P_j on an edge.
constexpr int edge_dim(int j) { return j < 0 ? 0 : j + 1; }
/// dim RT_j on a triangle.
constexpr int rt_dim(int j) { return (j + 1) * (j + 3); }

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Point(const Point&)>;

/// Hierarchical L2-orthonormal basis of P_kMaxBasisDegree on the reference
/// triangle, obtained by Gram-Schmidt on degree-graded monomials. The first
/// triangle_dim(j) members span P_j.
class ReferenceBasis {
 public:
  static const ReferenceBasis& instance();

  /// Values of the first `dim` members at reference point (xi, eta).
  void evaluate(double xi, double eta, int dim, double* values) const;
  /// Reference-coordinate gradients of the first `dim` members.
  void evaluate_gradients(double xi, double eta, int dim, double* dxi, double* deta) const;

  /// Gram matrix condition number of P_j under the exact rule (should be ~1).
  double gram_condition(int j) const;

 private:
  ReferenceBasis();
  Eigen::MatrixXd coefficients_;  // row i: basis i in monomial coordinates
  std::vector<std::array<int, 2>> exponents_;
};

/// Affine geometry of a triangle plus the orientation of each face's
/// global parameterization.
class ElementFrame {
 public:
  struct Face {
    int global = -1;
    Point a, b;                    ///< endpoints, ordered by the global face parameterization
    std::array<double, 2> ref_a{}; ///< reference coordinates of a
    std::array<double, 2> ref_b{};
    Point normal;                  ///< outward normal of this element
    double length = 0.0;
    Point at(double s) const { return a + s * (b - a); }
  };

  ElementFrame(const Mesh& mesh, int element);
  /// Standalone triangle (counter-clockwise); faces parameterized along the local orientation.
  static ElementFrame from_triangle(const std::array<Point, 3>& vertices);

  Point map(double xi, double eta) const;
  std::array<double, 2> inverse_map(const Point& x) const;

  int element = -1;
  std::array<Point, 3> vertices;
  Eigen::Matrix2d jacobian;
  Eigen::Matrix2d inverse_jacobian_t;
  double area = 0.0;
  double diameter = 0.0;
  double scale = 0.0;  ///< 1/sqrt(2 area): maps the reference basis to an orthonormal one
  std::array<Face, 3> faces;

 private:
  ElementFrame() = default;
  void finish_geometry();
};

/// L2(K)-orthonormal basis of P_j on one element (affine image of the reference basis).
class ElementBasis {
 public:
  ElementBasis(const ElementFrame& frame, int degree);
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  Eigen::VectorXd values(const Point& x) const;
  /// 2 x dim matrix of physical gradients.
  Eigen::Matrix<double, 2, Eigen::Dynamic> gradients(const Point& x) const;
  /// Evaluates sum_i coeffs[i] phi_i(x).
  double evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& x) const;
  Point evaluate_gradient(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& x) const;

 private:
  Point origin_;
  Eigen::Matrix2d inverse_jacobian_t_;
  Eigen::Matrix2d inverse_jacobian_;
  double scale_;
  int degree_;
  int dim_;
};

/// L2(e)-orthonormal Legendre basis of P_j on a segment of length |e|,
/// parameterized by s in [0, 1].
class EdgeBasis {
 public:
  EdgeBasis(int degree, double length);
  int dim() const { return degree_ + 1; }
  Eigen::VectorXd values(double s) const;
  void values(double s, double* out) const;
  double evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, double s) const;

 private:
  int degree_;
  double scale_;
};

/// Physical quadrature on an element with basis values tabulated.
struct VolumeTable {
  Eigen::MatrixX2d points;    ///< nq x 2
  Eigen::VectorXd weights;    ///< physical weights (sum = |K|)
  Eigen::MatrixXd values;     ///< nq x dim
  Eigen::MatrixXd dx, dy;     ///< nq x dim
  int size() const { return static_cast<int>(weights.size()); }
  Point point(int q) const { return {points(q, 0), points(q, 1)}; }
};

struct FaceTable {
  Eigen::MatrixX2d points;
  Eigen::VectorXd weights;    ///< physical weights (sum = |e|)
  Eigen::VectorXd s;          ///< parameter along the global face orientation
  Eigen::MatrixXd values;     ///< nq x dim, interior basis restricted to the face
  Eigen::MatrixXd edge;       ///< nq x edge_dim, edge basis
  Point normal;
  int size() const { return static_cast<int>(weights.size()); }
  Point point(int q) const { return {points(q, 0), points(q, 1)}; }
};

VolumeTable tabulate_volume(const ElementFrame& frame, int basis_degree, int quad_degree);
FaceTable tabulate_face(const ElementFrame& frame, int face, int basis_degree, int edge_degree,
                        int quad_degree);

/// Coefficients of Q0_j f in the orthonormal basis of P_j(K).
Eigen::VectorXd project_interior(const ElementFrame& frame, const ScalarFunction& f, int j,
                                 int quad_degree = -1);
/// Coefficients of Qb_j f on local face `face` in the orthonormal edge basis.
Eigen::VectorXd project_face(const ElementFrame& frame, int face, const ScalarFunction& f, int j,
                             int quad_degree = -1);
/// Qb_j of a function of the segment parameter s in [0, 1] on a segment of given length.
Eigen::VectorXd project_segment(const std::function<double(double)>& f, double length, int j,
                                int quad_degree = -1);

/// Raviart-Thomas space RT_j(K) = [P_j]^2 + x P_j with the basis dual to
/// its defining moments (face-normal moments against P_j(e), interior
/// moments against [P_{j-1}]^2).
class RtSpace {
 public:
  RtSpace(const ElementFrame& frame, int degree);
  int degree() const { return degree_; }
  int dim() const { return dim_; }

  /// RT_j coefficients of the projection P^RT_j v; equal to the moments of v.
  Eigen::VectorXd project(const VectorFunction& v, int quad_degree = -1) const;
  Point evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& x) const;
  double divergence(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& x) const;

  /// Raw (pre-dualization) basis: [P_j]^2 monomials then x * (homogeneous degree-j monomials).
  int raw_dim() const { return dim_; }
  Point raw_value(int i, const Point& x) const;
  double raw_divergence(int i, const Point& x) const;

  /// Values/divergence of dual basis member i.
  Point basis_value(int i, const Point& x) const;
  double basis_divergence(int i, const Point& x) const;

 private:
  Eigen::VectorXd moments(const VectorFunction& v, int quad_degree) const;

  ElementFrame frame_;
  int degree_;
  int dim_;
  Point center_;
  double h_;
  std::vector<std::array<int, 3>> raw_;  // (component or 2 for x*m, a, b)
  Eigen::MatrixXd dual_;                 // raw coefficients of dual basis (columns)
};

/// Convenience: RT_j coefficients of P^RT_j v on an element.
Eigen::VectorXd rt_project(const RtSpace& space, const VectorFunction& v);

/// max over the P_j(K) orthonormal basis q of |(div P^RT_j v - div v, q)_K|.
double divergence_moment_check(const ElementFrame& frame, const VectorFunction& v,
                               const ScalarFunction& div_v, int j, int quad_degree = -1);

}  // namespace wgnc
