#include "wgnc/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace wgnc {

Eigen::VectorXd WgField::local(const Mesh& mesh, int e) const {
  const auto& fs = mesh.element_faces(e);
  const int ni = static_cast<int>(interior[e].size());
  const int nt = components * trace_dim;
  Eigen::VectorXd v(ni + 3 * nt);
  v.head(ni) = interior[e];
  for (int f = 0; f < 3; ++f) {
    if (trace[fs[f]].size() == nt) {
      v.segment(ni + f * nt, nt) = trace[fs[f]];
    } else {
      v.segment(ni + f * nt, nt).setZero();
    }
  }
  return v;
}

double WgField::coefficient_norm() const {
  double s = 0.0;
  for (const auto& v : interior) s += v.squaredNorm();
  for (const auto& v : trace) s += v.squaredNorm();
  return std::sqrt(s);
}

WgField WgField::minus(const WgField& other) const {
  if (other.interior.size() != interior.size() || other.trace.size() != trace.size() ||
      other.interior_dim != interior_dim || other.trace_dim != trace_dim) {
    throw std::invalid_argument("WgField::minus: layout mismatch");
  }
  WgField out = *this;
  for (size_t i = 0; i < interior.size(); ++i) out.interior[i] -= other.interior[i];
  for (size_t i = 0; i < trace.size(); ++i) out.trace[i] -= other.trace[i];
  return out;
}

WgField make_field(const Discretization& disc, FieldKind kind) {
  const Mesh& mesh = disc.mesh();
  WgField w;
  w.kind = kind;
  bool fluid_only = true;
  switch (kind) {
    case FieldKind::Velocity:
      w.components = 2;
      w.interior_dim = disc.n_k();
      w.trace_dim = disc.n_l();
      break;
    case FieldKind::Pressure:
      w.interior_dim = disc.n_p();
      w.trace_dim = disc.n_pb();
      break;
    case FieldKind::Temperature:
      w.interior_dim = disc.n_k();
      w.trace_dim = disc.n_l();
      fluid_only = false;
      break;
  }
  w.interior.resize(mesh.num_elements());
  w.trace.resize(mesh.num_faces());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!fluid_only || mesh.is_fluid(e)) w.interior[e] = Eigen::VectorXd::Zero(w.components * w.interior_dim);
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (!fluid_only || mesh.face_touches_fluid(f)) w.trace[f] = Eigen::VectorXd::Zero(w.components * w.trace_dim);
  }
  return w;
}

FlowFields make_flow_fields(const Discretization& disc) {
  return {make_field(disc, FieldKind::Velocity), make_field(disc, FieldKind::Pressure),
          make_field(disc, FieldKind::Temperature)};
}

namespace {

int interior_degree(const Discretization& disc, FieldKind kind) {
  return kind == FieldKind::Pressure ? disc.params().k - 1 : disc.params().k;
}
int trace_degree(const Discretization& disc, FieldKind kind) {
  return kind == FieldKind::Pressure ? disc.params().k : disc.params().l;
}

template <class Component>
WgField interpolate(const Discretization& disc, FieldKind kind, int components, Component component) {
  const Mesh& mesh = disc.mesh();
  WgField w = make_field(disc, kind);
  if (w.components != components) throw std::invalid_argument("interpolate: component count mismatch");
  const int ki = interior_degree(disc, kind), kt = trace_degree(disc, kind);
  const int qd = disc.params().error_quad_degree();
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementOperators& ops = disc.element(e);
    const auto& fs = mesh.element_faces(e);
    for (int c = 0; c < components; ++c) {
      const ScalarFunction fc = [&component, c](const Point& x) { return component(x, c); };
      if (w.has_interior(e)) {
        w.interior[e].segment(c * w.interior_dim, w.interior_dim) = project_interior(ops.frame, fc, ki, qd);
      }
      for (int f = 0; f < 3; ++f) {
        // Face frames follow the global orientation, so either neighbor gives the same result.
        if (!w.has_trace(fs[f]) || mesh.face_neighbor(fs[f], 0).element != e) continue;
        w.trace[fs[f]].segment(c * w.trace_dim, w.trace_dim) = project_face(ops.frame, f, fc, kt, qd);
      }
    }
  }
  return w;
}

}  // namespace

WgField interpolate_vector(const Discretization& disc, FieldKind kind, const VectorFunction& u) {
  return interpolate(disc, kind, 2, [&u](const Point& x, int c) { return c == 0 ? u(x).x : u(x).y; });
}

WgField interpolate_scalar(const Discretization& disc, FieldKind kind, const ScalarFunction& s) {
  return interpolate(disc, kind, 1, [&s](const Point& x, int) { return s(x); });
}

ConvectingVelocity convecting_velocity(const WgField& velocity, const Mesh& mesh, int e) {
  ConvectingVelocity w;
  if (!velocity.has_interior(e)) return w;
  w.interior = velocity.interior[e];
  const auto& fs = mesh.element_faces(e);
  for (int f = 0; f < 3; ++f) w.trace[f] = velocity.trace[fs[f]];
  return w;
}

double interior_value(const Discretization& disc, const WgField& field, int e, const Point& x, int c) {
  const int deg = interior_degree(disc, field.kind);
  const ElementBasis basis(disc.element(e).frame, deg);
  return basis.evaluate(field.interior[e].segment(c * field.interior_dim, field.interior_dim), x);
}

Point interior_gradient(const Discretization& disc, const WgField& field, int e, const Point& x, int c) {
  const int deg = interior_degree(disc, field.kind);
  const ElementBasis basis(disc.element(e).frame, deg);
  return basis.evaluate_gradient(field.interior[e].segment(c * field.interior_dim, field.interior_dim), x);
}

}  // namespace wgnc
