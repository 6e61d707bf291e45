#include "wgnc/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "wgnc/quadrature.hpp"

namespace wgnc {

// ---------------------------------------------------------------------------
// Norms

double triple_norm(const Discretization& disc, const WgField& field) {
  if (field.kind == FieldKind::Pressure) throw std::invalid_argument("triple_norm: use pressure_norm");
  if (field.interior_dim != disc.n_k() || field.trace_dim != disc.n_l()) {
    throw std::invalid_argument("triple_norm: field layout does not match the discretization");
  }
  const Mesh& mesh = disc.mesh();
  const int nk = disc.n_k(), nl = disc.n_l();
  double sum = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!field.has_interior(e)) continue;
    const ElementOperators& ops = disc.element(e);
    const auto& fs = mesh.element_faces(e);
    for (int c = 0; c < field.components; ++c) {
      const Eigen::VectorXd v0 = field.interior[e].segment(c * nk, nk);
      std::array<Eigen::VectorXd, 3> vb;
      for (int f = 0; f < 3; ++f) {
        vb[f] = field.has_trace(fs[f]) ? Eigen::VectorXd(field.trace[fs[f]].segment(c * nl, nl))
                                       : Eigen::VectorXd::Zero(nl);
      }
      sum += ops.grad.apply(v0, vb).squaredNorm();
      for (int f = 0; f < 3; ++f) sum += ops.tau * (ops.trace_projection[f] * v0 - vb[f]).squaredNorm();
    }
  }
  return std::sqrt(sum);
}

double pressure_norm(const Discretization& disc, const WgField& pressure) {
  const Mesh& mesh = disc.mesh();
  const int npb = disc.n_pb();
  double sum = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!pressure.has_interior(e)) continue;
    const ElementOperators& ops = disc.element(e);
    const Eigen::VectorXd& q0 = pressure.interior[e];
    const auto& fs = mesh.element_faces(e);
    std::array<Eigen::VectorXd, 3> qb;
    for (int f = 0; f < 3; ++f) {
      qb[f] = pressure.has_trace(fs[f]) ? Eigen::VectorXd(pressure.trace[fs[f]])
                                        : Eigen::VectorXd::Zero(npb);
    }
    sum += q0.squaredNorm() + ops.grad_p.apply(q0, qb).squaredNorm();
  }
  return std::sqrt(sum);
}

double pressure_mean(const Discretization& disc, const WgField& pressure) {
  const Mesh& mesh = disc.mesh();
  double integral = 0.0, area = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!pressure.has_interior(e)) continue;
    const double a = disc.element(e).frame.area;
    // The first orthonormal member is the constant 1/sqrt(|K|).
    integral += pressure.interior[e](0) * std::sqrt(a);
    area += a;
  }
  return area > 0.0 ? integral / area : 0.0;
}

// ---------------------------------------------------------------------------
// Errors

ErrorReport error_report(const Discretization& disc, const FlowFields& fields, const ExactSolution& exact) {
  const Mesh& mesh = disc.mesh();
  const int k = disc.params().k;
  const int nk = disc.n_k(), np = disc.n_p();
  const int qd = disc.params().error_quad_degree();
  double e_gu = 0, n_gu = 0, e_u = 0, n_u = 0, e_p = 0, n_p = 0, e_gt = 0, n_gt = 0, e_t = 0, n_t = 0;
  double e_wgu = 0, e_wgt = 0;
  const int nm = disc.n_m(), nl = disc.n_l();
  double div = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementOperators& ops = disc.element(e);
    const VolumeTable t = tabulate_volume(ops.frame, k, qd);
    const Eigen::VectorXd& tc = fields.temperature.interior[e];
    const Eigen::VectorXd tv = t.values * tc, tdx = t.dx * tc, tdy = t.dy * tc;
    const VolumeTable tm = tabulate_volume(ops.frame, disc.params().m, qd);
    const auto& fs = mesh.element_faces(e);
    // Weak gradient of component c of a field, sampled at the tm points.
    const auto weak_gradient = [&](const WgField& field, int c) {
      std::array<Eigen::VectorXd, 3> vb;
      for (int f = 0; f < 3; ++f) {
        vb[f] = field.has_trace(fs[f]) ? Eigen::VectorXd(field.trace[fs[f]].segment(c * nl, nl))
                                       : Eigen::VectorXd::Zero(nl);
      }
      const Eigen::VectorXd g = ops.grad.apply(field.interior[e].segment(c * nk, nk), vb);
      return std::pair<Eigen::VectorXd, Eigen::VectorXd>(tm.values * g.head(nm), tm.values * g.tail(nm));
    };
    {
      const auto [wx, wy] = weak_gradient(fields.temperature, 0);
      for (int q = 0; q < tm.size(); ++q) {
        const Point gt = exact.grad_T(tm.point(q));
        e_wgt += tm.weights(q) * (std::pow(gt.x - wx(q), 2) + std::pow(gt.y - wy(q), 2));
      }
    }
    for (int q = 0; q < t.size(); ++q) {
      const Point x = t.point(q);
      const double w = t.weights(q);
      const double te = exact.T(x);
      const Point gt = exact.grad_T(x);
      e_t += w * std::pow(te - tv(q), 2);
      n_t += w * te * te;
      e_gt += w * (std::pow(gt.x - tdx(q), 2) + std::pow(gt.y - tdy(q), 2));
      n_gt += w * dot(gt, gt);
    }
    if (!ops.fluid) continue;
    const Eigen::VectorXd& uc = fields.velocity.interior[e];
    const Eigen::VectorXd& pc = fields.pressure.interior[e];
    const Eigen::VectorXd ux = t.values * uc.head(nk), uy = t.values * uc.tail(nk);
    const Eigen::VectorXd uxx = t.dx * uc.head(nk), uxy = t.dy * uc.head(nk);
    const Eigen::VectorXd uyx = t.dx * uc.tail(nk), uyy = t.dy * uc.tail(nk);
    const Eigen::VectorXd pv = t.values.leftCols(np) * pc;
    for (int c = 0; c < 2; ++c) {
      const auto [wx, wy] = weak_gradient(fields.velocity, c);
      for (int q = 0; q < tm.size(); ++q) {
        const Eigen::Matrix2d gu = exact.grad_u(tm.point(q));
        e_wgu += tm.weights(q) * (std::pow(gu(c, 0) - wx(q), 2) + std::pow(gu(c, 1) - wy(q), 2));
      }
    }
    double div_k = 0.0;
    for (int q = 0; q < t.size(); ++q) {
      const Point x = t.point(q);
      const double w = t.weights(q);
      const Point ue = exact.u(x);
      const Eigen::Matrix2d gu = exact.grad_u(x);
      const double pe = exact.p(x);
      e_u += w * (std::pow(ue.x - ux(q), 2) + std::pow(ue.y - uy(q), 2));
      n_u += w * dot(ue, ue);
      e_gu += w * (std::pow(gu(0, 0) - uxx(q), 2) + std::pow(gu(0, 1) - uxy(q), 2) +
                   std::pow(gu(1, 0) - uyx(q), 2) + std::pow(gu(1, 1) - uyy(q), 2));
      n_gu += w * gu.squaredNorm();
      e_p += w * std::pow(pe - pv(q), 2);
      n_p += w * pe * pe;
      div_k += w * std::pow(uxx(q) + uyy(q), 2);
    }
    div = std::max(div, std::sqrt(div_k) / ops.frame.diameter);
  }
  auto rel = [](double err, double norm) { return norm > 0.0 ? std::sqrt(err / norm) : std::sqrt(err); };
  ErrorReport r;
  r.grad_u = rel(e_gu, n_gu);
  r.u = rel(e_u, n_u);
  r.p = rel(e_p, n_p);
  r.grad_t = rel(e_gt, n_gt);
  r.t = rel(e_t, n_t);
  r.div = div;
  r.weak_grad_u = rel(e_wgu, n_gu);
  r.weak_grad_t = rel(e_wgt, n_gt);
  return r;
}

std::vector<double> observed_order(const std::vector<double>& errors) {
  if (errors.size() < 2) throw std::invalid_argument("observed_order: need at least two errors");
  std::vector<double> rates;
  for (size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0)) {
      throw std::invalid_argument("observed_order: errors must be positive");
    }
    rates.push_back(std::log2(errors[i] / errors[i + 1]));
  }
  return rates;
}

// ---------------------------------------------------------------------------
// Divergence

DivergenceReport divergence_diagnostic(const Discretization& disc, const WgField& velocity) {
  const Mesh& mesh = disc.mesh();
  const int k = disc.params().k;
  const int nk = disc.n_k();
  DivergenceReport r;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!velocity.has_interior(e)) continue;
    const ElementOperators& ops = disc.element(e);
    const Eigen::VectorXd& uc = velocity.interior[e];
    const Eigen::VectorXd div = ops.volume.dx * uc.head(nk) + ops.volume.dy * uc.tail(nk);
    const double norm = std::sqrt((div.array().square() * ops.volume.weights.array()).sum());
    r.div_h = std::max(r.div_h, norm / ops.frame.diameter);
  }
  const LineRule& rule = gauss_rule(2 * k + 2);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (!mesh.face_touches_fluid(f)) continue;
    const Point n = mesh.face_normal(f);
    const Point a = mesh.vertex(mesh.face(f)[0]), b = mesh.vertex(mesh.face(f)[1]);
    const double len = mesh.face_length(f);
    double sum = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Point x = a + rule.points[q] * (b - a);
      double jump = 0.0;
      for (int i = 0; i < mesh.num_face_neighbors(f); ++i) {
        const int e = mesh.face_neighbor(f, i).element;
        if (!velocity.has_interior(e)) continue;
        const Point u{interior_value(disc, velocity, e, x, 0), interior_value(disc, velocity, e, x, 1)};
        jump += (i == 0 ? 1.0 : -1.0) * dot(u, n);
      }
      sum += rule.weights[q] * len * jump * jump;
    }
    const double value = std::sqrt(sum);
    if (mesh.face_tag(f) == FaceTag::InteriorFluid) {
      r.max_jump = std::max(r.max_jump, value);
    } else {
      r.max_boundary_flux = std::max(r.max_boundary_flux, value);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cavity quantities

namespace {

// Chebyshev points of [a, b] plus both endpoints.
std::vector<double> sample_points(double a, double b, int n) {
  std::vector<double> s{a, b};
  for (int i = 0; i < n; ++i) {
    const double t = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
    s.push_back(0.5 * (a + b) + 0.5 * (b - a) * t);
  }
  return s;
}

// Intersection of the triangle with the line {coord = value} as an interval of the other coordinate.
bool clip_line(const std::array<Point, 3>& v, bool vertical, double value, double& lo, double& hi) {
  lo = std::numeric_limits<double>::max();
  hi = -lo;
  auto c = [vertical](const Point& p) { return vertical ? p.x : p.y; };
  auto o = [vertical](const Point& p) { return vertical ? p.y : p.x; };
  for (int i = 0; i < 3; ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % 3];
    const double dp = c(p) - value, dq = c(q) - value;
    if (dp == 0.0) {
      lo = std::min(lo, o(p));
      hi = std::max(hi, o(p));
    }
    if (dp * dq < 0.0) {
      const double t = dp / (dp - dq);
      const double y = o(p) + t * (o(q) - o(p));
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  return hi - lo > 1e-12;
}

}  // namespace

CavityReport cavity_report(const Discretization& disc, const FlowFields& fields) {
  const Mesh& mesh = disc.mesh();
  const Rect& fluid = mesh.domain();
  const int k = disc.params().k;
  const int nk = disc.n_k();
  const double xm = 0.5 * (fluid.x0 + fluid.x1), ym = 0.5 * (fluid.y0 + fluid.y1);
  CavityReport r;
  bool hit_x = false, hit_y = false;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!mesh.is_fluid(e)) continue;
    const auto v = mesh.element_vertices(e);
    double lo, hi;
    if (clip_line(v, true, xm, lo, hi)) {
      hit_x = true;
      for (double y : sample_points(lo, hi, 2 * k + 3)) {
        const double u1 = std::abs(interior_value(disc, fields.velocity, e, {xm, y}, 0));
        if (u1 > r.u1_max) {
          r.u1_max = u1;
          r.u1_max_y = y;
        }
      }
    }
    if (clip_line(v, false, ym, lo, hi)) {
      hit_y = true;
      for (double x : sample_points(lo, hi, 2 * k + 3)) {
        const double u2 = std::abs(interior_value(disc, fields.velocity, e, {x, ym}, 1));
        if (u2 > r.u2_max) {
          r.u2_max = u2;
          r.u2_max_x = x;
        }
      }
    }
  }
  if (!hit_x || !hit_y) throw std::invalid_argument("cavity_report: fluid elements do not cover the mid-planes");

  // Hot wall x = x0.
  const LineRule& rule = gauss_rule(2 * k + 6);
  double integral = 0.0, length = 0.0;
  r.nu_max = -std::numeric_limits<double>::max();
  r.nu_min = std::numeric_limits<double>::max();
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (mesh.face_wall(f) != Wall::Left) continue;
    const int e = mesh.face_neighbor(f, 0).element;
    const Point a = mesh.vertex(mesh.face(f)[0]), b = mesh.vertex(mesh.face(f)[1]);
    const double len = mesh.face_length(f);
    auto nu = [&](const Point& x) { return -interior_gradient(disc, fields.temperature, e, x).x; };
    for (int q = 0; q < rule.size(); ++q) integral += rule.weights[q] * len * nu(a + rule.points[q] * (b - a));
    length += len;
    for (double s : sample_points(0.0, 1.0, 2 * k + 3)) {
      const double v = nu(a + s * (b - a));
      r.nu_max = std::max(r.nu_max, v);
      r.nu_min = std::min(r.nu_min, v);
    }
  }
  if (length == 0.0) throw std::invalid_argument("cavity_report: no hot-wall faces");
  r.nu_wall = integral / length;

  double vol = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementOperators& ops = disc.element(e);
    const VolumeTable& t = ops.volume;
    const Eigen::VectorXd& tc = fields.temperature.interior[e];
    Eigen::VectorXd integrand = -(t.dx * tc);
    if (fields.velocity.has_interior(e)) {
      integrand += (t.values * fields.velocity.interior[e].head(nk)).cwiseProduct(t.values * tc);
    }
    vol += integrand.dot(t.weights);
  }
  r.nu_bar = vol / mesh.domain().area();
  return r;
}

// ---------------------------------------------------------------------------
// Stream function

std::vector<double> stream_function(const Discretization& disc, const WgField& velocity) {
  const Mesh& mesh = disc.mesh();
  const int nv = mesh.num_vertices();
  std::vector<char> in_fluid(nv, 0), on_boundary(nv, 0);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!mesh.is_fluid(e)) continue;
    for (int v : mesh.triangle(e)) in_fluid[v] = 1;
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (!mesh.face_on_fluid_boundary(f)) continue;
    on_boundary[mesh.face(f)[0]] = on_boundary[mesh.face(f)[1]] = 1;
  }
  std::vector<int> index(nv, -1);
  int n = 0;
  for (int v = 0; v < nv; ++v) {
    if (in_fluid[v] && !on_boundary[v]) index[v] = n++;
  }
  std::vector<double> psi(nv, 0.0);
  if (n == 0) return psi;

  const int nk = disc.n_k();
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    if (!mesh.is_fluid(e)) continue;
    const ElementOperators& ops = disc.element(e);
    const auto& tri = mesh.triangle(e);
    const auto v = mesh.element_vertices(e);
    const double area = ops.frame.area;
    // P1 gradients: grad lambda_i = rot(v_{i+2} - v_{i+1}) / (2 area).
    std::array<Point, 3> g;
    for (int i = 0; i < 3; ++i) {
      const Point d = v[(i + 2) % 3] - v[(i + 1) % 3];
      g[i] = {-d.y / (2.0 * area), d.x / (2.0 * area)};
    }
    const Eigen::VectorXd& uc = velocity.interior[e];
    const double u1 = (ops.volume.values * uc.head(nk)).dot(ops.volume.weights);
    const double u2 = (ops.volume.values * uc.tail(nk)).dot(ops.volume.weights);
    for (int i = 0; i < 3; ++i) {
      if (index[tri[i]] < 0) continue;
      rhs(index[tri[i]]) += u1 * g[i].y - u2 * g[i].x;
      for (int j = 0; j < 3; ++j) {
        if (index[tri[j]] < 0) continue;
        trip.emplace_back(index[tri[i]], index[tri[j]], area * dot(g[i], g[j]));
      }
    }
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("stream_function: factorization failed");
  const Eigen::VectorXd x = ldlt.solve(rhs);
  for (int v = 0; v < nv; ++v) {
    if (index[v] >= 0) psi[v] = x(index[v]);
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Export

void export_fields(const Discretization& disc, const FlowFields& fields, const std::vector<double>& psi,
                   const std::string& path) {
  const Mesh& mesh = disc.mesh();
  const int nv = mesh.num_vertices();
  std::vector<double> u1(nv, 0.0), u2(nv, 0.0), p(nv, 0.0), t(nv, 0.0);
  std::vector<int> fluid_count(nv, 0), count(nv, 0);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& tri = mesh.triangle(e);
    for (int i = 0; i < 3; ++i) {
      const int v = tri[i];
      const Point x = mesh.vertex(v);
      t[v] += interior_value(disc, fields.temperature, e, x);
      ++count[v];
      if (mesh.is_fluid(e)) {
        u1[v] += interior_value(disc, fields.velocity, e, x, 0);
        u2[v] += interior_value(disc, fields.velocity, e, x, 1);
        p[v] += interior_value(disc, fields.pressure, e, x);
        ++fluid_count[v];
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (count[v] > 0) t[v] /= count[v];
    if (fluid_count[v] > 0) {
      u1[v] /= fluid_count[v];
      u2[v] /= fluid_count[v];
      p[v] /= fluid_count[v];
    }
  }
  const std::filesystem::path file(path);
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_fields: cannot open '" + path + "' for writing");
  out << std::setprecision(12);
  out << "# vtk DataFile Version 3.0\nweak Galerkin natural convection fields\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const Point& x : mesh.vertices()) out << x.x << ' ' << x.y << " 0\n";
  out << "CELLS " << mesh.num_elements() << ' ' << 4 * mesh.num_elements() << '\n';
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& tri = mesh.triangle(e);
    out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
  out << "CELL_TYPES " << mesh.num_elements() << '\n';
  for (int e = 0; e < mesh.num_elements(); ++e) out << "5\n";
  out << "CELL_DATA " << mesh.num_elements() << "\nSCALARS fluid int 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.num_elements(); ++e) out << (mesh.is_fluid(e) ? 1 : 0) << '\n';
  out << "POINT_DATA " << nv << '\n';
  auto write = [&](const char* name, const std::vector<double>& data) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double d : data) out << d << '\n';
  };
  write("u1", u1);
  write("u2", u2);
  write("p", p);
  write("T", t);
  std::vector<double> psi_out = psi;
  psi_out.resize(nv, 0.0);
  write("psi", psi_out);
  if (!out) throw std::runtime_error("export_fields: write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Tables

std::string format_sig(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

void compute_orders(std::vector<ConvergenceRow>& rows) {
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto prev = rows[i - 1].errors.values();
    const auto cur = rows[i].errors.values();
    const double ratio = rows[i - 1].h / rows[i].h;
    for (int j = 0; j < 5; ++j) {
      rows[i].orders[j] = (prev[j] > 0.0 && cur[j] > 0.0) ? std::log(prev[j] / cur[j]) / std::log(ratio)
                                                          : std::numeric_limits<double>::quiet_NaN();
    }
    rows[i].has_orders = true;
  }
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  out << "mesh,h,err_grad_u,order_grad_u,err_u,order_u,err_p,order_p,err_grad_T,order_grad_T,err_T,order_T,div_h\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.nx << 'x' << r.ny << ',' << r.h;
    const auto v = r.errors.values();
    for (int j = 0; j < 5; ++j) {
      out << ',' << v[j] << ',';
      if (r.has_orders) out << r.orders[j];
    }
    out << ',' << r.errors.div << '\n';
  }
}

void write_convergence_table(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  const char* heads[5] = {"|grad u|", "|u|", "|p|", "|grad T|", "|T|"};
  out << std::left << std::setw(8) << "mesh";
  for (const char* h : heads) out << std::setw(12) << h << std::setw(7) << "order";
  out << "div_h\n";
  for (const auto& r : rows) {
    out << std::setw(8) << (std::to_string(r.nx) + "x" + std::to_string(r.ny));
    const auto v = r.errors.values();
    for (int j = 0; j < 5; ++j) {
      char ord[16] = "";
      if (r.has_orders) std::snprintf(ord, sizeof ord, "%.2f", r.orders[j]);
      out << std::setw(12) << format_sig(v[j]) << std::setw(7) << ord;
    }
    out << format_sig(r.errors.div) << '\n';
  }
}

void write_cavity_csv(const std::vector<CavityRow>& rows, std::ostream& out) {
  out << "Ra,k,mesh,u1_max,u2_max,Nu_bar,Nu_max,Nu_min,Nu_wall\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.ra << ',' << r.k << ',' << r.nx << 'x' << r.ny << ',' << r.report.u1_max << ',' << r.report.u2_max
        << ',' << r.report.nu_bar << ',' << r.report.nu_max << ',' << r.report.nu_min << ',' << r.report.nu_wall
        << '\n';
  }
}

void write_cavity_table(const std::vector<CavityRow>& rows, std::ostream& out) {
  out << std::left << std::setw(10) << "Ra" << std::setw(4) << "k" << std::setw(8) << "mesh";
  for (const char* h : {"u1_max", "u2_max", "Nu_bar", "Nu_max", "Nu_min", "Nu_wall"}) out << std::setw(12) << h;
  out << '\n';
  for (const auto& r : rows) {
    out << std::setw(10) << format_sig(r.ra) << std::setw(4) << r.k << std::setw(8)
        << (std::to_string(r.nx) + "x" + std::to_string(r.ny));
    for (double v : {r.report.u1_max, r.report.u2_max, r.report.nu_bar, r.report.nu_max, r.report.nu_min,
                     r.report.nu_wall}) {
      out << std::setw(12) << format_sig(v);
    }
    out << '\n';
  }
}

}  // namespace wgnc
