#include "wgnc/weakops.hpp"

#include <algorithm>
#include <cmath>

#include "wgnc/quadrature.hpp"

namespace wgnc {

Eigen::VectorXd WeakGradientOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& v0,
                                            const std::array<Eigen::VectorXd, 3>& vb) const {
  Eigen::VectorXd g = interior * v0;
  for (int f = 0; f < 3; ++f) g += face[f] * vb[f];
  return g;
}

Eigen::MatrixXd WeakGradientOperator::stacked() const {
  const int nl = static_cast<int>(face[0].cols());
  Eigen::MatrixXd s(interior.rows(), interior.cols() + 3 * nl);
  s.leftCols(interior.cols()) = interior;
  for (int f = 0; f < 3; ++f) s.middleCols(interior.cols() + f * nl, nl) = face[f];
  return s;
}

Eigen::VectorXd WeakDivergenceOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& v0,
                                              const std::array<Eigen::VectorXd, 3>& vb) const {
  Eigen::VectorXd d = interior * v0;
  for (int f = 0; f < 3; ++f) d += face[f] * vb[f];
  return d;
}

// (grad_w v, chi e_d)_K = -(v0, d_d chi)_K + <vb, chi n_d>_dK with chi orthonormal,
// so the coefficients are the right-hand side moments themselves.
WeakGradientOperator build_weak_gradient(const ElementFrame& frame, int k, int l, int r) {
  WeakGradientOperator op;
  op.element = frame.element;
  op.interior_degree = k;
  op.trace_degree = l;
  op.target_degree = r;
  const int nr = triangle_dim(r);
  const int nk = triangle_dim(k);
  const int qd = std::max(k, l) + r + 1;
  const int basis_degree = std::max(k, r);

  const VolumeTable vol = tabulate_volume(frame, basis_degree, qd);
  const Eigen::MatrixXd phi = vol.values.leftCols(nk);
  const Eigen::VectorXd& w = vol.weights;
  op.interior.resize(2 * nr, nk);
  op.interior.topRows(nr) = -(vol.dx.leftCols(nr).transpose() * w.asDiagonal() * phi);
  op.interior.bottomRows(nr) = -(vol.dy.leftCols(nr).transpose() * w.asDiagonal() * phi);

  for (int f = 0; f < 3; ++f) {
    const FaceTable ft = tabulate_face(frame, f, basis_degree, l, qd);
    const Eigen::MatrixXd m = ft.values.leftCols(nr).transpose() * ft.weights.asDiagonal() * ft.edge;
    op.face[f].resize(2 * nr, m.cols());
    op.face[f].topRows(nr) = ft.normal.x * m;
    op.face[f].bottomRows(nr) = ft.normal.y * m;
  }
  return op;
}

// (div_w v, chi)_K = -(v0, grad chi)_K + <vb . n, chi>_dK.
WeakDivergenceOperator build_weak_divergence(const ElementFrame& frame, int k, int l, int r) {
  WeakDivergenceOperator op;
  op.element = frame.element;
  op.interior_degree = k;
  op.trace_degree = l;
  op.target_degree = r;
  const int nr = triangle_dim(r);
  const int nk = triangle_dim(k);
  const int qd = std::max(k, l) + r + 1;
  const int basis_degree = std::max(k, r);

  const VolumeTable vol = tabulate_volume(frame, basis_degree, qd);
  const Eigen::MatrixXd phi = vol.values.leftCols(nk);
  const Eigen::VectorXd& w = vol.weights;
  op.interior.resize(nr, 2 * nk);
  op.interior.leftCols(nk) = -(vol.dx.leftCols(nr).transpose() * w.asDiagonal() * phi);
  op.interior.rightCols(nk) = -(vol.dy.leftCols(nr).transpose() * w.asDiagonal() * phi);

  for (int f = 0; f < 3; ++f) {
    const FaceTable ft = tabulate_face(frame, f, basis_degree, l, qd);
    const Eigen::MatrixXd m = ft.values.leftCols(nr).transpose() * ft.weights.asDiagonal() * ft.edge;
    op.face[f].resize(nr, 2 * m.cols());
    op.face[f].leftCols(m.cols()) = ft.normal.x * m;
    op.face[f].rightCols(m.cols()) = ft.normal.y * m;
  }
  return op;
}

Eigen::VectorXd weak_gradient_of(const ElementFrame& frame, int r, const ScalarFunction& v0,
                                 const TraceFunction& vb, int quad_degree) {
  const int nr = triangle_dim(r);
  const VolumeTable vol = tabulate_volume(frame, r, quad_degree);
  Eigen::VectorXd vals(vol.size());
  for (int q = 0; q < vol.size(); ++q) vals(q) = v0(vol.point(q)) * vol.weights(q);
  Eigen::VectorXd g(2 * nr);
  g.head(nr) = -(vol.dx.transpose() * vals);
  g.tail(nr) = -(vol.dy.transpose() * vals);
  for (int f = 0; f < 3; ++f) {
    const FaceTable ft = tabulate_face(frame, f, r, 0, quad_degree);
    Eigen::VectorXd tv(ft.size());
    for (int q = 0; q < ft.size(); ++q) tv(q) = vb(f, ft.s(q), ft.point(q)) * ft.weights(q);
    const Eigen::VectorXd m = ft.values.transpose() * tv;
    g.head(nr) += ft.normal.x * m;
    g.tail(nr) += ft.normal.y * m;
  }
  return g;
}

Eigen::VectorXd weak_divergence_of(const ElementFrame& frame, int r, const VectorFunction& v0,
                                   const TraceFunction& vb_normal, int quad_degree) {
  const VolumeTable vol = tabulate_volume(frame, r, quad_degree);
  std::array<FaceTable, 3> faces{tabulate_face(frame, 0, r, 0, quad_degree),
                                 tabulate_face(frame, 1, r, 0, quad_degree),
                                 tabulate_face(frame, 2, r, 0, quad_degree)};
  Eigen::VectorXd ix(vol.size()), iy(vol.size());
  for (int q = 0; q < vol.size(); ++q) {
    const Point v = v0(vol.point(q));
    ix(q) = v.x;
    iy(q) = v.y;
  }
  std::array<Eigen::VectorXd, 3> flux;
  for (int f = 0; f < 3; ++f) {
    flux[f].resize(faces[f].size());
    for (int q = 0; q < faces[f].size(); ++q) {
      flux[f](q) = vb_normal(f, faces[f].s(q), faces[f].point(q));
    }
  }
  return weak_divergence_from_samples(vol, faces, r, ix, iy, flux);
}

Eigen::VectorXd weak_divergence_from_samples(const VolumeTable& volume,
                                             const std::array<FaceTable, 3>& faces, int r,
                                             const Eigen::Ref<const Eigen::VectorXd>& interior_x,
                                             const Eigen::Ref<const Eigen::VectorXd>& interior_y,
                                             const std::array<Eigen::VectorXd, 3>& face_flux) {
  const int nr = triangle_dim(r);
  Eigen::VectorXd d = -(volume.dx.leftCols(nr).transpose() *
                            (interior_x.array() * volume.weights.array()).matrix() +
                        volume.dy.leftCols(nr).transpose() *
                            (interior_y.array() * volume.weights.array()).matrix());
  for (int f = 0; f < 3; ++f) {
    d += faces[f].values.leftCols(nr).transpose() *
         (face_flux[f].array() * faces[f].weights.array()).matrix();
  }
  return d;
}

namespace {

// Edge-basis trace evaluator for a set of per-face coefficient vectors.
TraceFunction trace_from_coefficients(const ElementFrame& frame,
                                      const std::array<Eigen::VectorXd, 3>& coeffs) {
  return [&frame, &coeffs](int f, double s, const Point&) {
    const EdgeBasis basis(static_cast<int>(coeffs[f].size()) - 1, frame.faces[f].length);
    return basis.evaluate(coeffs[f], s);
  };
}

}  // namespace

double commutativity_check(const VectorFunction& v, const TensorFunction& grad_v, const Mesh& mesh,
                           int k, int l, int m) {
  double worst = 0.0;
  const int nm = triangle_dim(m);
  const int qd = std::min(2 * k + 2 * m + 8, kMaxQuadratureDegree);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!mesh.is_fluid(e)) continue;
    const ElementFrame frame(mesh, e);
    const RtSpace rt(frame, k);
    const Eigen::VectorXd rt_coeffs = rt.project(v, qd);
    double err2 = 0.0;
    for (int comp = 0; comp < 2; ++comp) {
      auto component = [&v, comp](const Point& x) { return comp == 0 ? v(x).x : v(x).y; };
      std::array<Eigen::VectorXd, 3> trace;
      for (int f = 0; f < 3; ++f) trace[f] = project_face(frame, f, component, l, qd);
      const ScalarFunction interior = [&rt, &rt_coeffs, comp](const Point& x) {
        const Point p = rt.evaluate(rt_coeffs, x);
        return comp == 0 ? p.x : p.y;
      };
      const Eigen::VectorXd lhs =
          weak_gradient_of(frame, m, interior, trace_from_coefficients(frame, trace), qd);
      const Eigen::VectorXd gx = project_interior(
          frame, [&grad_v, comp](const Point& x) { return grad_v(x)(comp, 0); }, m, qd);
      const Eigen::VectorXd gy = project_interior(
          frame, [&grad_v, comp](const Point& x) { return grad_v(x)(comp, 1); }, m, qd);
      err2 += (lhs.head(nm) - gx).squaredNorm() + (lhs.tail(nm) - gy).squaredNorm();
    }
    worst = std::max(worst, std::sqrt(err2));
  }
  return worst;
}

namespace {

double scalar_check(const ScalarFunction& s, const VectorFunction& grad_s, const Mesh& mesh,
                    int interior_degree, int trace_degree, int target_degree, bool fluid_only) {
  double worst = 0.0;
  const int nr = triangle_dim(target_degree);
  const int qd = std::min(2 * interior_degree + 2 * target_degree + 8, kMaxQuadratureDegree);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (fluid_only && !mesh.is_fluid(e)) continue;
    const ElementFrame frame(mesh, e);
    const Eigen::VectorXd v0 = project_interior(frame, s, interior_degree, qd);
    std::array<Eigen::VectorXd, 3> vb;
    for (int f = 0; f < 3; ++f) vb[f] = project_face(frame, f, s, trace_degree, qd);
    const WeakGradientOperator op =
        build_weak_gradient(frame, interior_degree, trace_degree, target_degree);
    const Eigen::VectorXd lhs = op.apply(v0, vb);
    const Eigen::VectorXd gx =
        project_interior(frame, [&grad_s](const Point& x) { return grad_s(x).x; }, target_degree, qd);
    const Eigen::VectorXd gy =
        project_interior(frame, [&grad_s](const Point& x) { return grad_s(x).y; }, target_degree, qd);
    const double err2 = (lhs.head(nr) - gx).squaredNorm() + (lhs.tail(nr) - gy).squaredNorm();
    worst = std::max(worst, std::sqrt(err2));
  }
  return worst;
}

}  // namespace

double scalar_commutativity_check(const ScalarFunction& s, const VectorFunction& grad_s,
                                  const Mesh& mesh, int k, int l, int m) {
  return scalar_check(s, grad_s, mesh, k, l, m, false);
}

double pressure_commutativity_check(const ScalarFunction& q, const VectorFunction& grad_q,
                                    const Mesh& mesh, int k) {
  return scalar_check(q, grad_q, mesh, k - 1, k, k, true);
}

}  // namespace wgnc
