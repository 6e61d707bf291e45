#include "wgnc/discretization.hpp"

#include "wgnc/parallel.hpp"

namespace wgnc {

ElementOperators::ElementOperators(const Mesh& mesh, const MethodParams& params, int element)
    : frame(mesh, element), fluid(mesh.is_fluid(element)), tau(params.tau(frame.area, frame.diameter)) {
  const int k = params.k, l = params.l;
  const int qd = params.form_quad_degree();
  grad = build_weak_gradient(frame, k, l, params.m);
  if (fluid) grad_p = build_weak_gradient(frame, k - 1, k, k);
  volume = tabulate_volume(frame, k, qd);
  for (int f = 0; f < 3; ++f) {
    faces[f] = tabulate_face(frame, f, k, l, qd);
    trace_projection[f] = faces[f].edge.transpose() * faces[f].weights.asDiagonal() * faces[f].values;
  }
}

Discretization::Discretization(const Mesh& mesh, const MethodParams& params)
    : mesh_(&mesh), params_(params), ops_(mesh.num_elements()) {
  params_.validate();
  parallel_for(mesh.num_elements(), [&](int e) { ops_[e].emplace(mesh, params_, e); });
}

}  // namespace wgnc
