#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wgnc/discretization.hpp"
#include "wgnc/forms.hpp"

namespace wgnc {

enum class FieldKind { Velocity, Pressure, Temperature };

/// Coefficients of one weak field: an interior polynomial per participating
/// element and a trace polynomial per participating face. Vector fields store
/// the x block then the y block in both parts. Non-participating entries are
/// empty vectors.
struct WgField {
  FieldKind kind = FieldKind::Temperature;
  int components = 1;
  int interior_dim = 0;
  int trace_dim = 0;
  std::vector<Eigen::VectorXd> interior;
  std::vector<Eigen::VectorXd> trace;

  bool has_interior(int e) const { return interior[e].size() > 0; }
  bool has_trace(int f) const { return trace[f].size() > 0; }
  /// Element-local vector in the layouts of forms.hpp (interior then faces 0..2).
  Eigen::VectorXd local(const Mesh& mesh, int e) const;
  /// Euclidean norm of all coefficients.
  double coefficient_norm() const;
  /// this - other (same layout required).
  WgField minus(const WgField& other) const;
};

/// Zero field laid out for the given kind: velocity and pressure live on fluid
/// elements and fluid-adjacent faces; temperature on everything.
WgField make_field(const Discretization& disc, FieldKind kind);

struct FlowFields {
  WgField velocity;
  WgField pressure;
  WgField temperature;
};

FlowFields make_flow_fields(const Discretization& disc);

/// {Q0 u, Qb u} with the field's own degrees.
WgField interpolate_vector(const Discretization& disc, FieldKind kind, const VectorFunction& u);
WgField interpolate_scalar(const Discretization& disc, FieldKind kind, const ScalarFunction& s);

/// Convecting velocity view of element e (empty on solid elements).
ConvectingVelocity convecting_velocity(const WgField& velocity, const Mesh& mesh, int e);

/// Interior polynomial value and broken gradient of a scalar field (component c) at x in element e.
double interior_value(const Discretization& disc, const WgField& field, int e, const Point& x, int c = 0);
Point interior_gradient(const Discretization& disc, const WgField& field, int e, const Point& x, int c = 0);

}  // namespace wgnc
