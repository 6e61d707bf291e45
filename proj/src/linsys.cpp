#include "wgnc/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/SparseLU>

#include "wgnc/parallel.hpp"

namespace wgnc {

// ---------------------------------------------------------------------------
// DofMap

DofMap::DofMap(const Discretization& disc) : disc_(&disc) {
  const Mesh& mesh = disc.mesh();
  const int nk = disc.n_k(), nl = disc.n_l(), np = disc.n_p(), npb = disc.n_pb();
  elem_.assign(mesh.num_elements(), {-1, -1, -1});
  face_.assign(mesh.num_faces(), {-1, -1, -1});
  elem_begin_.resize(mesh.num_elements());
  elem_size_.resize(mesh.num_elements());
  int next = 0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    elem_begin_[e] = next;
    if (mesh.is_fluid(e)) {
      elem_[e][0] = next;
      next += 2 * nk;
      elem_[e][1] = next;
      next += np;
    }
    elem_[e][2] = next;
    next += nk;
    elem_size_[e] = next - elem_begin_[e];
  }
  num_interior_ = next;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (mesh.face_touches_fluid(f)) {
      face_[f][0] = next;
      next += 2 * nl;
      face_[f][1] = next;
      next += npb;
    }
    face_[f][2] = next;
    next += nl;
  }
  fixed_.assign(next, 0);
  value_.assign(next, 0.0);
  renumber();
}

void DofMap::fix(int i, double value) { fix({{i, value}}); }

void DofMap::fix(const std::vector<std::pair<int, double>>& values) {
  for (const auto& [i, v] : values) {
    if (i < num_interior_ || i >= num_dofs()) {
      throw std::invalid_argument("DofMap::fix: unknown " + std::to_string(i) + " cannot be fixed");
    }
    fixed_[i] = 1;
    value_[i] = v;
  }
  renumber();
}

void DofMap::renumber() {
  free_.assign(fixed_.size(), -1);
  int n = 0;
  for (size_t i = 0; i < fixed_.size(); ++i) {
    if (!fixed_[i]) free_[i] = n++;
  }
  num_free_ = n;
}

std::vector<int> DofMap::element_dofs(int e) const {
  const Discretization& disc = *disc_;
  const Mesh& mesh = disc.mesh();
  const int nk = disc.n_k(), nl = disc.n_l(), np = disc.n_p(), npb = disc.n_pb();
  const auto& fs = mesh.element_faces(e);
  std::vector<int> d;
  if (mesh.is_fluid(e)) {
    for (int i = 0; i < 2 * nk; ++i) d.push_back(u0(e) + i);
    for (int f = 0; f < 3; ++f) {
      for (int i = 0; i < 2 * nl; ++i) d.push_back(ub(fs[f]) + i);
    }
    for (int i = 0; i < np; ++i) d.push_back(p0(e) + i);
    for (int f = 0; f < 3; ++f) {
      for (int i = 0; i < npb; ++i) d.push_back(pb(fs[f]) + i);
    }
  }
  for (int i = 0; i < nk; ++i) d.push_back(t0(e) + i);
  for (int f = 0; f < 3; ++f) {
    for (int i = 0; i < nl; ++i) d.push_back(tb(fs[f]) + i);
  }
  return d;
}

Eigen::VectorXd DofMap::gather(const FlowFields& fields) const {
  const Mesh& mesh = disc_->mesh();
  Eigen::VectorXd full = Eigen::VectorXd::Zero(num_dofs());
  auto put = [&full](int begin, const Eigen::VectorXd& v) {
    if (begin >= 0 && v.size() > 0) full.segment(begin, v.size()) = v;
  };
  for (int e = 0; e < mesh.num_elements(); ++e) {
    put(u0(e), fields.velocity.interior[e]);
    put(p0(e), fields.pressure.interior[e]);
    put(t0(e), fields.temperature.interior[e]);
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    put(ub(f), fields.velocity.trace[f]);
    put(pb(f), fields.pressure.trace[f]);
    put(tb(f), fields.temperature.trace[f]);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(system_size());
  for (int i = 0; i < num_dofs(); ++i) {
    if (free_[i] >= 0) x(free_[i]) = full(i);
  }
  return x;
}

FlowFields DofMap::scatter(const Eigen::VectorXd& x) const {
  if (x.size() != system_size()) {
    throw std::invalid_argument("DofMap::scatter: vector size " + std::to_string(x.size()) + " != system size " +
                                std::to_string(system_size()));
  }
  const Mesh& mesh = disc_->mesh();
  FlowFields fields = make_flow_fields(*disc_);
  auto value = [&](int i) { return free_[i] >= 0 ? x(free_[i]) : value_[i]; };
  auto take = [&](int begin, Eigen::VectorXd& v) {
    if (begin < 0) return;
    for (int i = 0; i < v.size(); ++i) v(i) = value(begin + i);
  };
  for (int e = 0; e < mesh.num_elements(); ++e) {
    take(u0(e), fields.velocity.interior[e]);
    take(p0(e), fields.pressure.interior[e]);
    take(t0(e), fields.temperature.interior[e]);
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    take(ub(f), fields.velocity.trace[f]);
    take(pb(f), fields.pressure.trace[f]);
    take(tb(f), fields.temperature.trace[f]);
  }
  return fields;
}

void apply_nonhomogeneous_dirichlet(DofMap& dofs, const Discretization& disc, const ProblemSpec& problem) {
  const Mesh& mesh = disc.mesh();
  const int nl = disc.n_l();
  for (int i = 0; i < 4; ++i) {
    if (problem.thermal[i].kind == ThermalBC::Kind::Unset) {
      throw std::invalid_argument(std::string("apply_nonhomogeneous_dirichlet: no temperature condition on the ") +
                                  to_string(wall_from_index(i)) + " wall");
    }
  }
  std::vector<std::pair<int, double>> fixed;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (mesh.face_on_fluid_boundary(f)) {
      for (int i = 0; i < 2 * nl; ++i) fixed.emplace_back(dofs.ub(f) + i, 0.0);
    }
    const Wall wall = mesh.face_wall(f);
    if (wall == Wall::None) continue;
    const ThermalBC& bc = problem.thermal_bc(wall);
    if (bc.kind != ThermalBC::Kind::Dirichlet) continue;
    const FaceNeighbor& nb = mesh.face_neighbor(f, 0);
    const Polynomial2& data = bc.value;
    const Eigen::VectorXd c = project_face(disc.element(nb.element).frame, nb.local_face,
                                           [&data](const Point& p) { return data(p); }, disc.params().l);
    for (int i = 0; i < nl; ++i) fixed.emplace_back(dofs.tb(f) + i, c(i));
  }
  dofs.fix(fixed);
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

struct LocalSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<int> dofs;
  Eigen::VectorXd multiplier;  ///< integral of each pressure interior basis function
  int p0_offset = -1;
};

LocalSystem local_system(const Discretization& disc, const DofMap& dofs, const ProblemSpec& problem,
                         const WgField& w_prev, const AssemblyOptions& options, int e) {
  const ElementOperators& ops = disc.element(e);
  const Mesh& mesh = disc.mesh();
  const int nk = disc.n_k();
  const int ns = scalar_local_dim(disc);
  LocalSystem loc;
  loc.dofs = dofs.element_dofs(e);
  const int n = static_cast<int>(loc.dofs.size());
  loc.matrix = Eigen::MatrixXd::Zero(n, n);
  loc.rhs = Eigen::VectorXd::Zero(n);

  const ConvectingVelocity w = options.convection ? convecting_velocity(w_prev, mesh, e) : ConvectingVelocity{};
  const LocalFormBlocks blocks = local_blocks(ops, problem.physics(), w);
  const int ot = ops.fluid ? velocity_local_dim(disc) + pressure_local_dim(disc) : 0;
  loc.matrix.block(ot, ot, ns, ns) = blocks.abar + blocks.cbar;

  const int lq = disc.params().load_quad_degree();
  const VolumeTable load = tabulate_volume(ops.frame, disc.params().k, lq);
  if (options.load) {
    Eigen::VectorXd gw(load.size());
    for (int q = 0; q < load.size(); ++q) gw(q) = problem.g(load.point(q)) * load.weights(q);
    loc.rhs.segment(ot, nk) = load.values.transpose() * gw;
  }
  if (!ops.fluid) return loc;

  const int nu = velocity_local_dim(disc);
  const int np = disc.n_p();
  const int npl = pressure_local_dim(disc);
  loc.matrix.topLeftCorner(nu, nu) = blocks.a + blocks.c;
  loc.matrix.block(0, nu, 2 * nk, npl) = blocks.b;
  loc.matrix.block(nu, 0, npl, 2 * nk) = -blocks.b.transpose();
  loc.matrix.block(0, ot, 2 * nk, nk) = -blocks.d;
  if (options.load) {
    Eigen::VectorXd fx(load.size()), fy(load.size());
    for (int q = 0; q < load.size(); ++q) {
      const Point f = problem.f(load.point(q));
      fx(q) = f.x * load.weights(q);
      fy(q) = f.y * load.weights(q);
    }
    loc.rhs.segment(0, nk) = load.values.transpose() * fx;
    loc.rhs.segment(nk, nk) = load.values.transpose() * fy;
  }
  loc.p0_offset = nu;
  loc.multiplier = load.values.leftCols(np).transpose() * load.weights;
  return loc;
}

}  // namespace

GlobalSystem assemble_oseen_step(const Discretization& disc, const DofMap& dofs, const ProblemSpec& problem,
                                 const WgField& w_prev, const AssemblyOptions& options) {
  const Mesh& mesh = disc.mesh();
  if (w_prev.kind != FieldKind::Velocity || static_cast<int>(w_prev.interior.size()) != mesh.num_elements() ||
      static_cast<int>(w_prev.trace.size()) != mesh.num_faces() || w_prev.interior_dim != disc.n_k() ||
      w_prev.trace_dim != disc.n_l()) {
    throw std::invalid_argument("assemble_oseen_step: convecting velocity layout does not match the DOF map");
  }
  const int n = dofs.system_size();
  const int lambda = dofs.multiplier_index();
  GlobalSystem sys;
  sys.rhs = Eigen::VectorXd::Zero(n);
  sys.num_interior = dofs.num_interior();
  std::vector<Eigen::Triplet<double>> triplets;

  constexpr int kBatch = 256;
  std::vector<LocalSystem> batch;
  for (int start = 0; start < mesh.num_elements(); start += kBatch) {
    const int count = std::min(kBatch, mesh.num_elements() - start);
    batch.assign(count, {});
    parallel_for(count, [&](int i) { batch[i] = local_system(disc, dofs, problem, w_prev, options, start + i); });
    for (const LocalSystem& loc : batch) {
      const int nl = static_cast<int>(loc.dofs.size());
      for (int i = 0; i < nl; ++i) {
        const int row = dofs.free_index(loc.dofs[i]);
        if (row < 0) continue;
        sys.rhs(row) += loc.rhs(i);
        for (int j = 0; j < nl; ++j) {
          const double v = loc.matrix(i, j);
          if (v == 0.0) continue;
          const int col = dofs.free_index(loc.dofs[j]);
          if (col >= 0) {
            triplets.emplace_back(row, col, v);
          } else {
            sys.rhs(row) -= v * dofs.fixed_value(loc.dofs[j]);
          }
        }
      }
      if (loc.p0_offset >= 0) {
        for (int c = 0; c < loc.multiplier.size(); ++c) {
          const int p = dofs.free_index(loc.dofs[loc.p0_offset + c]);
          triplets.emplace_back(p, lambda, loc.multiplier(c));
          triplets.emplace_back(lambda, p, loc.multiplier(c));
        }
      }
    }
  }
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

// ---------------------------------------------------------------------------
// Condensation

std::vector<std::pair<int, int>> interior_ranges(const DofMap& dofs) {
  std::vector<std::pair<int, int>> r;
  for (int e = 0; e < dofs.num_elements(); ++e) r.emplace_back(dofs.interior_begin(e), dofs.interior_size(e));
  return r;
}

CondensedSystem condense(const GlobalSystem& system, const std::vector<std::pair<int, int>>& ranges) {
  const SparseMatrix& a = system.matrix;
  const int n = static_cast<int>(a.rows());
  const int ni = system.num_interior;
  const int nb = n - ni;
  const Eigen::SparseMatrix<double, Eigen::RowMajor> rows(a);

  CondensedSystem out;
  out.num_interior = ni;
  out.elements.resize(ranges.size());
  out.rhs = system.rhs.tail(nb);
  std::vector<std::vector<Eigen::Triplet<double>>> contributions(ranges.size());

  parallel_for(static_cast<int>(ranges.size()), [&](int e) {
    const auto [begin, size] = ranges[e];
    CondensedSystem::Element& el = out.elements[e];
    el.begin = begin;
    Eigen::MatrixXd aii = Eigen::MatrixXd::Zero(size, size);
    std::vector<int> coupled_rows;  // reduced rows of A_BI
    for (int j = 0; j < size; ++j) {
      for (SparseMatrix::InnerIterator it(a, begin + j); it; ++it) {
        const int r = static_cast<int>(it.row());
        if (r >= begin && r < begin + size) {
          aii(r - begin, j) = it.value();
        } else if (r >= ni) {
          coupled_rows.push_back(r - ni);
        } else {
          throw std::logic_error("condense: interior blocks of different elements are coupled");
        }
      }
    }
    std::sort(coupled_rows.begin(), coupled_rows.end());
    coupled_rows.erase(std::unique(coupled_rows.begin(), coupled_rows.end()), coupled_rows.end());
    for (int i = 0; i < size; ++i) {
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, begin + i); it; ++it) {
        if (it.col() >= ni) el.coupled.push_back(static_cast<int>(it.col()) - ni);
      }
    }
    std::sort(el.coupled.begin(), el.coupled.end());
    el.coupled.erase(std::unique(el.coupled.begin(), el.coupled.end()), el.coupled.end());

    Eigen::MatrixXd aib = Eigen::MatrixXd::Zero(size, el.coupled.size());
    for (int i = 0; i < size; ++i) {
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, begin + i); it; ++it) {
        if (it.col() < ni) continue;
        const auto pos = std::lower_bound(el.coupled.begin(), el.coupled.end(), static_cast<int>(it.col()) - ni);
        aib(i, pos - el.coupled.begin()) = it.value();
      }
    }
    Eigen::MatrixXd abi = Eigen::MatrixXd::Zero(coupled_rows.size(), size);
    for (int j = 0; j < size; ++j) {
      for (SparseMatrix::InnerIterator it(a, begin + j); it; ++it) {
        if (it.row() < ni) continue;
        const auto pos = std::lower_bound(coupled_rows.begin(), coupled_rows.end(), static_cast<int>(it.row()) - ni);
        abi(pos - coupled_rows.begin(), j) = it.value();
      }
    }

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(aii);
    if (!lu.isInvertible()) {
      throw std::runtime_error("condense: singular interior block on element " + std::to_string(e) +
                               " (rank " + std::to_string(lu.rank()) + " of " + std::to_string(size) + ")");
    }
    el.x = lu.solve(aib);
    el.y = lu.solve(system.rhs.segment(begin, size));

    const Eigen::MatrixXd s = abi * el.x;
    auto& trip = contributions[e];
    trip.reserve(s.size());
    for (int i = 0; i < s.rows(); ++i) {
      for (int j = 0; j < s.cols(); ++j) {
        if (s(i, j) != 0.0) trip.emplace_back(coupled_rows[i], el.coupled[j], -s(i, j));
      }
    }
    // Right-hand side update is written to a private buffer to avoid races.
    const Eigen::VectorXd dr = abi * el.y;
    for (int i = 0; i < dr.size(); ++i) trip.emplace_back(coupled_rows[i], nb, -dr(i));
  });

  std::vector<Eigen::Triplet<double>> all;
  for (int j = ni; j < n; ++j) {
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      if (it.row() >= ni) all.emplace_back(static_cast<int>(it.row()) - ni, j - ni, it.value());
    }
  }
  for (auto& c : contributions) {
    for (const auto& t : c) {
      if (t.col() == nb) {
        out.rhs(t.row()) += t.value();
      } else {
        all.push_back(t);
      }
    }
  }
  out.matrix.resize(nb, nb);
  out.matrix.setFromTriplets(all.begin(), all.end());
  out.matrix.makeCompressed();
  return out;
}

Eigen::VectorXd recover(const CondensedSystem& condensed, const Eigen::VectorXd& reduced) {
  const int ni = condensed.num_interior;
  Eigen::VectorXd x(ni + reduced.size());
  x.tail(reduced.size()) = reduced;
  for (const auto& el : condensed.elements) {
    Eigen::VectorXd xb(el.coupled.size());
    for (size_t j = 0; j < el.coupled.size(); ++j) xb(j) = reduced(el.coupled[j]);
    x.segment(el.begin, el.y.size()) = el.y - el.x * xb;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Solves

Eigen::VectorXd solve_sparse(const SparseMatrix& a, const Eigen::VectorXd& b, double* relative_residual) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw std::invalid_argument("solve_sparse: dimension mismatch");
  }
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  // Threshold pivoting: strict partial pivoting multiplies the fill about fourfold
  // once buoyancy and convection dominate; the refinement step below restores accuracy.
  lu.setPivotThreshold(0.1);
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) {
    throw std::runtime_error("solve_sparse: factorization of " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " matrix failed: " + lu.lastErrorMessage());
  }
  Eigen::VectorXd x = lu.solve(b);
  Eigen::VectorXd r = b - a * x;
  x += lu.solve(r);
  r = b - a * x;
  const double bn = b.norm();
  const double res = bn > 0.0 ? r.norm() / bn : r.norm();
  if (!std::isfinite(res)) throw std::runtime_error("solve_sparse: non-finite solution (singular matrix?)");
  if (relative_residual) *relative_residual = res;
  return x;
}

Eigen::VectorXd solve_system(const GlobalSystem& system, const DofMap& dofs, bool condensed,
                             double* relative_residual) {
  if (!condensed) return solve_sparse(system.matrix, system.rhs, relative_residual);
  const CondensedSystem cs = condense(system, interior_ranges(dofs));
  const Eigen::VectorXd xb = solve_sparse(cs.matrix, cs.rhs, nullptr);
  Eigen::VectorXd x = recover(cs, xb);
  if (relative_residual) {
    const double bn = system.rhs.norm();
    const double rn = (system.rhs - system.matrix * x).norm();
    *relative_residual = bn > 0.0 ? rn / bn : rn;
  }
  return x;
}

void write_coordinate(const SparseMatrix& a, std::ostream& out) {
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  out.precision(17);
  for (int j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace wgnc
