#include "wgnc/polybasis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wgnc/quadrature.hpp"

namespace wgnc {

namespace {

// x^n for small non-negative n.
inline double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void legendre_values(int degree, double t, double* out) {
  out[0] = 1.0;
  if (degree >= 1) out[1] = t;
  for (int n = 2; n <= degree; ++n) {
    out[n] = ((2.0 * n - 1.0) * t * out[n - 1] - (n - 1.0) * out[n - 2]) / n;
  }
}

int default_degree(int requested, int fallback) {
  return std::min(requested >= 0 ? requested : fallback, kMaxQuadratureDegree);
}

}  // namespace

// ---------------------------------------------------------------------------
// ReferenceBasis

ReferenceBasis::ReferenceBasis() {
  for (int n = 0; n <= kMaxBasisDegree; ++n) {
    for (int b = 0; b <= n; ++b) exponents_.push_back({n - b, b});
  }
  const int dim = static_cast<int>(exponents_.size());
  const TriangleRule& rule = triangle_rule(2 * kMaxBasisDegree);
  Eigen::MatrixXd monomials(rule.size(), dim);
  for (int q = 0; q < rule.size(); ++q) {
    for (int i = 0; i < dim; ++i) {
      monomials(q, i) = ipow(rule.points[q][0], exponents_[i][0]) *
                        ipow(rule.points[q][1], exponents_[i][1]);
    }
  }
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), rule.size());

  // Modified Gram-Schmidt in the weighted inner product, two passes.
  coefficients_ = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd values = monomials;  // column i = basis i at the quadrature points
  for (int i = 0; i < dim; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        const double proj = (values.col(j).array() * values.col(i).array() * w.array()).sum();
        values.col(i) -= proj * values.col(j);
        coefficients_.row(i) -= proj * coefficients_.row(j);
      }
    }
    const double norm = std::sqrt((values.col(i).array().square() * w.array()).sum());
    values.col(i) /= norm;
    coefficients_.row(i) /= norm;
  }
}

const ReferenceBasis& ReferenceBasis::instance() {
  static const ReferenceBasis basis;
  return basis;
}

void ReferenceBasis::evaluate(double xi, double eta, int dim, double* values) const {
  double mono[triangle_dim(kMaxBasisDegree)];
  for (int i = 0; i < dim; ++i) mono[i] = ipow(xi, exponents_[i][0]) * ipow(eta, exponents_[i][1]);
  // Lower-triangular: basis i uses monomials 0..i.
  for (int i = 0; i < dim; ++i) {
    double v = 0.0;
    for (int j = 0; j <= i; ++j) v += coefficients_(i, j) * mono[j];
    values[i] = v;
  }
}

void ReferenceBasis::evaluate_gradients(double xi, double eta, int dim, double* dxi,
                                        double* deta) const {
  double mx[triangle_dim(kMaxBasisDegree)];
  double my[triangle_dim(kMaxBasisDegree)];
  for (int i = 0; i < dim; ++i) {
    const int a = exponents_[i][0], b = exponents_[i][1];
    mx[i] = a > 0 ? a * ipow(xi, a - 1) * ipow(eta, b) : 0.0;
    my[i] = b > 0 ? b * ipow(xi, a) * ipow(eta, b - 1) : 0.0;
  }
  for (int i = 0; i < dim; ++i) {
    double gx = 0.0, gy = 0.0;
    for (int j = 0; j <= i; ++j) {
      gx += coefficients_(i, j) * mx[j];
      gy += coefficients_(i, j) * my[j];
    }
    dxi[i] = gx;
    deta[i] = gy;
  }
}

double ReferenceBasis::gram_condition(int j) const {
  const int dim = triangle_dim(j);
  const TriangleRule& rule = triangle_rule(2 * j);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<double> v(dim);
  for (int q = 0; q < rule.size(); ++q) {
    evaluate(rule.points[q][0], rule.points[q][1], dim, v.data());
    const Eigen::Map<Eigen::VectorXd> vv(v.data(), dim);
    gram += rule.weights[q] * vv * vv.transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto& s = svd.singularValues();
  return s(0) / s(dim - 1);
}

// ---------------------------------------------------------------------------
// ElementFrame

ElementFrame::ElementFrame(const Mesh& mesh, int e) : element(e) {
  vertices = mesh.element_vertices(e);
  finish_geometry();
  static constexpr std::array<std::array<double, 2>, 3> ref = {{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
  const auto& tri = mesh.triangle(e);
  for (int i = 0; i < 3; ++i) {
    Face& face = faces[i];
    face.global = mesh.element_faces(e)[i];
    const auto& gv = mesh.face(face.global);
    const int la = (i + 1) % 3, lb = (i + 2) % 3;
    const bool same = gv[0] == tri[la];
    const int ia = same ? la : lb;
    const int ib = same ? lb : la;
    face.a = vertices[ia];
    face.b = vertices[ib];
    face.ref_a = ref[ia];
    face.ref_b = ref[ib];
    face.length = mesh.face_length(face.global);
    // Outward normal of this element on local face i (counter-clockwise edge la -> lb).
    const Point d = vertices[lb] - vertices[la];
    face.normal = {d.y / face.length, -d.x / face.length};
  }
}

ElementFrame ElementFrame::from_triangle(const std::array<Point, 3>& verts) {
  ElementFrame frame;
  frame.vertices = verts;
  frame.finish_geometry();
  if (!(frame.area > 0.0)) throw std::invalid_argument("ElementFrame: triangle not counter-clockwise");
  static constexpr std::array<std::array<double, 2>, 3> ref = {{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
  for (int i = 0; i < 3; ++i) {
    Face& face = frame.faces[i];
    const int la = (i + 1) % 3, lb = (i + 2) % 3;
    face.a = verts[la];
    face.b = verts[lb];
    face.ref_a = ref[la];
    face.ref_b = ref[lb];
    const Point d = face.b - face.a;
    face.length = std::hypot(d.x, d.y);
    face.normal = {d.y / face.length, -d.x / face.length};
  }
  return frame;
}

void ElementFrame::finish_geometry() {
  const Point e1 = vertices[1] - vertices[0];
  const Point e2 = vertices[2] - vertices[0];
  jacobian << e1.x, e2.x, e1.y, e2.y;
  const double det = jacobian.determinant();
  area = 0.5 * det;
  inverse_jacobian_t = jacobian.inverse().transpose();
  scale = 1.0 / std::sqrt(std::abs(det));
  auto len = [](Point p) { return std::hypot(p.x, p.y); };
  diameter = std::max({len(e1), len(e2), len(vertices[2] - vertices[1])});
}

Point ElementFrame::map(double xi, double eta) const {
  return {vertices[0].x + jacobian(0, 0) * xi + jacobian(0, 1) * eta,
          vertices[0].y + jacobian(1, 0) * xi + jacobian(1, 1) * eta};
}

std::array<double, 2> ElementFrame::inverse_map(const Point& x) const {
  const Eigen::Vector2d d(x.x - vertices[0].x, x.y - vertices[0].y);
  const Eigen::Vector2d r = inverse_jacobian_t.transpose() * d;
  return {r(0), r(1)};
}

// ---------------------------------------------------------------------------
// ElementBasis / EdgeBasis

ElementBasis::ElementBasis(const ElementFrame& frame, int degree)
    : origin_(frame.vertices[0]),
      inverse_jacobian_t_(frame.inverse_jacobian_t),
      inverse_jacobian_(frame.inverse_jacobian_t.transpose()),
      scale_(frame.scale),
      degree_(degree),
      dim_(triangle_dim(degree)) {
  if (degree < 0 || degree > kMaxBasisDegree) {
    throw std::out_of_range("ElementBasis: degree " + std::to_string(degree) + " unsupported");
  }
}

Eigen::VectorXd ElementBasis::values(const Point& x) const {
  const Eigen::Vector2d r = inverse_jacobian_ * Eigen::Vector2d(x.x - origin_.x, x.y - origin_.y);
  Eigen::VectorXd v(dim_);
  ReferenceBasis::instance().evaluate(r(0), r(1), dim_, v.data());
  return scale_ * v;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> ElementBasis::gradients(const Point& x) const {
  const Eigen::Vector2d r = inverse_jacobian_ * Eigen::Vector2d(x.x - origin_.x, x.y - origin_.y);
  Eigen::Matrix<double, 2, Eigen::Dynamic> ref(2, dim_);
  std::vector<double> gx(dim_), gy(dim_);
  ReferenceBasis::instance().evaluate_gradients(r(0), r(1), dim_, gx.data(), gy.data());
  for (int i = 0; i < dim_; ++i) {
    ref(0, i) = gx[i];
    ref(1, i) = gy[i];
  }
  return scale_ * (inverse_jacobian_t_ * ref);
}

double ElementBasis::evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& x) const {
  return values(x).dot(coeffs);
}

Point ElementBasis::evaluate_gradient(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                                      const Point& x) const {
  const Eigen::Vector2d g = gradients(x) * coeffs;
  return {g(0), g(1)};
}

EdgeBasis::EdgeBasis(int degree, double length) : degree_(degree), scale_(1.0 / std::sqrt(length)) {
  if (degree < 0) throw std::out_of_range("EdgeBasis: negative degree");
}

void EdgeBasis::values(double s, double* out) const {
  legendre_values(degree_, 2.0 * s - 1.0, out);
  for (int n = 0; n <= degree_; ++n) out[n] *= scale_ * std::sqrt(2.0 * n + 1.0);
}

Eigen::VectorXd EdgeBasis::values(double s) const {
  Eigen::VectorXd v(degree_ + 1);
  values(s, v.data());
  return v;
}

double EdgeBasis::evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, double s) const {
  return values(s).dot(coeffs);
}

// ---------------------------------------------------------------------------
// Tabulation

VolumeTable tabulate_volume(const ElementFrame& frame, int basis_degree, int quad_degree) {
  const TriangleRule& rule = triangle_rule(quad_degree);
  const int nq = rule.size();
  const int dim = triangle_dim(basis_degree);
  VolumeTable t;
  t.points.resize(nq, 2);
  t.weights.resize(nq);
  t.values.resize(nq, dim);
  t.dx.resize(nq, dim);
  t.dy.resize(nq, dim);
  const ReferenceBasis& ref = ReferenceBasis::instance();
  std::vector<double> v(dim), gx(dim), gy(dim);
  const double jac = 2.0 * frame.area;
  const Eigen::Matrix2d& jt = frame.inverse_jacobian_t;
  for (int q = 0; q < nq; ++q) {
    const double xi = rule.points[q][0], eta = rule.points[q][1];
    const Point x = frame.map(xi, eta);
    t.points(q, 0) = x.x;
    t.points(q, 1) = x.y;
    t.weights(q) = rule.weights[q] * jac;
    ref.evaluate(xi, eta, dim, v.data());
    ref.evaluate_gradients(xi, eta, dim, gx.data(), gy.data());
    for (int i = 0; i < dim; ++i) {
      t.values(q, i) = frame.scale * v[i];
      t.dx(q, i) = frame.scale * (jt(0, 0) * gx[i] + jt(0, 1) * gy[i]);
      t.dy(q, i) = frame.scale * (jt(1, 0) * gx[i] + jt(1, 1) * gy[i]);
    }
  }
  return t;
}

FaceTable tabulate_face(const ElementFrame& frame, int face, int basis_degree, int edge_degree,
                        int quad_degree) {
  const LineRule& rule = gauss_rule(quad_degree);
  const ElementFrame::Face& f = frame.faces[face];
  const int nq = rule.size();
  const int dim = triangle_dim(basis_degree);
  const int edim = edge_dim(edge_degree);
  FaceTable t;
  t.points.resize(nq, 2);
  t.weights.resize(nq);
  t.s.resize(nq);
  t.values.resize(nq, dim);
  t.edge.resize(nq, std::max(edim, 0));
  t.normal = f.normal;
  const ReferenceBasis& ref = ReferenceBasis::instance();
  const EdgeBasis edge(std::max(edge_degree, 0), f.length);
  std::vector<double> v(dim), ev(std::max(edim, 1));
  for (int q = 0; q < nq; ++q) {
    const double s = rule.points[q];
    const double xi = f.ref_a[0] + s * (f.ref_b[0] - f.ref_a[0]);
    const double eta = f.ref_a[1] + s * (f.ref_b[1] - f.ref_a[1]);
    const Point x = f.at(s);
    t.points(q, 0) = x.x;
    t.points(q, 1) = x.y;
    t.weights(q) = rule.weights[q] * f.length;
    t.s(q) = s;
    ref.evaluate(xi, eta, dim, v.data());
    for (int i = 0; i < dim; ++i) t.values(q, i) = frame.scale * v[i];
    if (edim > 0) {
      edge.values(s, ev.data());
      for (int i = 0; i < edim; ++i) t.edge(q, i) = ev[i];
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Projections

Eigen::VectorXd project_interior(const ElementFrame& frame, const ScalarFunction& f, int j,
                                 int quad_degree) {
  const VolumeTable t = tabulate_volume(frame, j, default_degree(quad_degree, 2 * j + 10));
  Eigen::VectorXd fw(t.size());
  for (int q = 0; q < t.size(); ++q) fw(q) = f(t.point(q)) * t.weights(q);
  return t.values.transpose() * fw;
}

Eigen::VectorXd project_face(const ElementFrame& frame, int face, const ScalarFunction& f, int j,
                             int quad_degree) {
  const FaceTable t = tabulate_face(frame, face, 0, j, default_degree(quad_degree, 2 * j + 10));
  Eigen::VectorXd fw(t.size());
  for (int q = 0; q < t.size(); ++q) fw(q) = f(t.point(q)) * t.weights(q);
  return t.edge.transpose() * fw;
}

Eigen::VectorXd project_segment(const std::function<double(double)>& f, double length, int j,
                                int quad_degree) {
  const LineRule& rule = gauss_rule(default_degree(quad_degree, 2 * j + 10));
  const EdgeBasis basis(j, length);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(j + 1);
  for (int q = 0; q < rule.size(); ++q) {
    c += (rule.weights[q] * length * f(rule.points[q])) * basis.values(rule.points[q]);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Raviart-Thomas

RtSpace::RtSpace(const ElementFrame& frame, int degree)
    : frame_(frame), degree_(degree), dim_(rt_dim(degree)) {
  if (degree < 0 || degree + 1 > kMaxBasisDegree) {
    throw std::out_of_range("RtSpace: degree " + std::to_string(degree) + " unsupported");
  }
  center_ = (1.0 / 3.0) * (frame.vertices[0] + frame.vertices[1] + frame.vertices[2]);
  h_ = frame.diameter;
  for (int comp = 0; comp < 2; ++comp) {
    for (int n = 0; n <= degree; ++n) {
      for (int b = 0; b <= n; ++b) raw_.push_back({comp, n - b, b});
    }
  }
  for (int b = 0; b <= degree; ++b) raw_.push_back({2, degree - b, b});

  // moment_r(raw_i); the dual basis is the inverse.
  Eigen::MatrixXd mom(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    const VectorFunction raw = [this, i](const Point& x) { return raw_value(i, x); };
    mom.col(i) = moments(raw, 2 * degree + 2);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(mom);
  if (!lu.isInvertible()) {
    throw std::runtime_error("RtSpace: singular moment matrix on element " +
                             std::to_string(frame.element));
  }
  dual_ = lu.inverse();
}

Point RtSpace::raw_value(int i, const Point& x) const {
  const double xh = (x.x - center_.x) / h_;
  const double yh = (x.y - center_.y) / h_;
  const auto& r = raw_[i];
  const double m = ipow(xh, r[1]) * ipow(yh, r[2]);
  if (r[0] == 0) return {m, 0.0};
  if (r[0] == 1) return {0.0, m};
  return {xh * m, yh * m};
}

double RtSpace::raw_divergence(int i, const Point& x) const {
  const double xh = (x.x - center_.x) / h_;
  const double yh = (x.y - center_.y) / h_;
  const auto& r = raw_[i];
  const int a = r[1], b = r[2];
  if (r[0] == 0) return a > 0 ? a * ipow(xh, a - 1) * ipow(yh, b) / h_ : 0.0;
  if (r[0] == 1) return b > 0 ? b * ipow(xh, a) * ipow(yh, b - 1) / h_ : 0.0;
  // div(xhat m) = (2 + deg m) m for homogeneous m.
  return (2.0 + degree_) * ipow(xh, a) * ipow(yh, b) / h_;
}

Point RtSpace::basis_value(int k, const Point& x) const {
  Point v{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) v = v + dual_(i, k) * raw_value(i, x);
  return v;
}

double RtSpace::basis_divergence(int k, const Point& x) const {
  double d = 0.0;
  for (int i = 0; i < dim_; ++i) d += dual_(i, k) * raw_divergence(i, x);
  return d;
}

Eigen::VectorXd RtSpace::moments(const VectorFunction& v, int quad_degree) const {
  Eigen::VectorXd m(dim_);
  int row = 0;
  for (int f = 0; f < 3; ++f) {
    const FaceTable t = tabulate_face(frame_, f, 0, degree_, quad_degree);
    Eigen::VectorXd flux(t.size());
    for (int q = 0; q < t.size(); ++q) flux(q) = dot(v(t.point(q)), t.normal) * t.weights(q);
    m.segment(row, degree_ + 1) = t.edge.transpose() * flux;
    row += degree_ + 1;
  }
  if (degree_ > 0) {
    const VolumeTable t = tabulate_volume(frame_, degree_ - 1, quad_degree);
    const int n = triangle_dim(degree_ - 1);
    Eigen::VectorXd vx(t.size()), vy(t.size());
    for (int q = 0; q < t.size(); ++q) {
      const Point val = v(t.point(q));
      vx(q) = val.x * t.weights(q);
      vy(q) = val.y * t.weights(q);
    }
    m.segment(row, n) = t.values.transpose() * vx;
    m.segment(row + n, n) = t.values.transpose() * vy;
  }
  return m;
}

Eigen::VectorXd RtSpace::project(const VectorFunction& v, int quad_degree) const {
  return moments(v, default_degree(quad_degree, 2 * degree_ + 10));
}

Point RtSpace::evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& x) const {
  const Eigen::VectorXd raw = dual_ * coeffs;
  Point v{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) v = v + raw(i) * raw_value(i, x);
  return v;
}

double RtSpace::divergence(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& x) const {
  const Eigen::VectorXd raw = dual_ * coeffs;
  double d = 0.0;
  for (int i = 0; i < dim_; ++i) d += raw(i) * raw_divergence(i, x);
  return d;
}

Eigen::VectorXd rt_project(const RtSpace& space, const VectorFunction& v) { return space.project(v); }

double divergence_moment_check(const ElementFrame& frame, const VectorFunction& v,
                               const ScalarFunction& div_v, int j, int quad_degree) {
  const RtSpace space(frame, j);
  const Eigen::VectorXd coeffs = space.project(v, quad_degree);
  const VolumeTable t = tabulate_volume(frame, j, default_degree(quad_degree, 2 * j + 10));
  Eigen::VectorXd diff(t.size());
  for (int q = 0; q < t.size(); ++q) {
    const Point x = t.point(q);
    diff(q) = (space.divergence(coeffs, x) - div_v(x)) * t.weights(q);
  }
  return (t.values.transpose() * diff).cwiseAbs().maxCoeff();
}

}  // namespace wgnc
