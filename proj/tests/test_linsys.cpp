#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "wgnc/linsys.hpp"
#include "wgnc/postproc.hpp"

using namespace wgnc;

namespace {

ProblemSpec quiet_problem() {
  ProblemSpec p;
  p.name = "quiet";
  p.pr = 1.0;
  p.ra = 0.0;
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.fluid = p.domain;
  p.f = [](const Point&) { return Point{0.0, 0.0}; };
  p.g = [](const Point&) { return 0.0; };
  for (auto& bc : p.thermal) bc = {ThermalBC::Kind::Dirichlet, Polynomial2::constant(0.0)};
  return p;
}

struct Built {
  Mesh mesh;
  Discretization disc;
  DofMap dofs;
  Built(const ProblemSpec& p, int nx, int ny, int k = 1, Variant v = Variant::WG1)
      : mesh(build_structured_mesh(nx, ny, p.domain, p.fluid)),
        disc(mesh, MethodParams::from_variant(k, v)),
        dofs(disc) {
    apply_nonhomogeneous_dirichlet(dofs, disc, p);
  }
};

std::set<int> pressure_rows(const Built& b) {
  std::set<int> rows;
  const auto add = [&](int first, int n) {
    if (first < 0) return;
    for (int i = 0; i < n; ++i)
      if (b.dofs.free_index(first + i) >= 0) rows.insert(b.dofs.free_index(first + i));
  };
  for (int e = 0; e < b.mesh.num_elements(); ++e) add(b.dofs.p0(e), b.disc.n_p());
  for (int f = 0; f < b.mesh.num_faces(); ++f) add(b.dofs.pb(f), b.disc.n_pb());
  rows.insert(b.dofs.multiplier_index());
  return rows;
}

}  // namespace

TEST_CASE("unknown counts on a single cell") {
  const ProblemSpec p = quiet_problem();
  const Mesh mesh = build_structured_mesh(1, 1, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
  const DofMap dofs(disc);
  // Per element: 2*3 velocity + 1 pressure + 3 temperature. Per face: 2*2 + 2 + 2.
  CHECK(dofs.num_interior() == 2 * 10);
  CHECK(dofs.num_dofs() == 2 * 10 + 5 * 8);
  CHECK(dofs.num_free() == dofs.num_dofs());
  CHECK(dofs.system_size() == dofs.num_free() + 1);
  CHECK(dofs.element_dofs(0).size() == static_cast<size_t>(velocity_local_dim(disc) + pressure_local_dim(disc) +
                                                           scalar_local_dim(disc)));
}

TEST_CASE("solid elements carry temperature unknowns only") {
  const ProblemSpec p = example_6_1();
  const Built b(p, 4, 2);
  for (int e = 0; e < b.mesh.num_elements(); ++e) {
    if (b.mesh.is_fluid(e)) {
      CHECK(b.dofs.u0(e) >= 0);
      CHECK(b.dofs.p0(e) >= 0);
    } else {
      CHECK(b.dofs.u0(e) == -1);
      CHECK(b.dofs.p0(e) == -1);
      CHECK(b.dofs.element_dofs(e).size() == static_cast<size_t>(scalar_local_dim(b.disc)));
    }
    CHECK(b.dofs.t0(e) >= 0);
  }
  for (int f = 0; f < b.mesh.num_faces(); ++f) {
    bool fluid_adjacent = false;
    for (int n = 0; n < b.mesh.num_face_neighbors(f); ++n)
      fluid_adjacent = fluid_adjacent || b.mesh.is_fluid(b.mesh.face_neighbor(f, n).element);
    CHECK((b.dofs.ub(f) >= 0) == fluid_adjacent);
    CHECK((b.dofs.pb(f) >= 0) == fluid_adjacent);
    CHECK(b.dofs.tb(f) >= 0);
  }
}

TEST_CASE("Dirichlet data") {
  SUBCASE("cavity: hot wall at one, insulated walls free, velocity traces zero") {
    const ProblemSpec p = cavity(1e3);
    const Built b(p, 4, 4);
    for (int f = 0; f < b.mesh.num_faces(); ++f) {
      if (b.mesh.face_tag(f) != FaceTag::OuterBoundary) {
        CHECK_FALSE(b.dofs.is_fixed(b.dofs.tb(f)));
        continue;
      }
      for (int i = 0; i < 2 * b.disc.n_l(); ++i) {
        CHECK(b.dofs.is_fixed(b.dofs.ub(f) + i));
        CHECK(b.dofs.fixed_value(b.dofs.ub(f) + i) == 0.0);
      }
      const Wall w = b.mesh.face_wall(f);
      const int tb = b.dofs.tb(f);
      const double len = std::sqrt(dot(b.mesh.vertex(b.mesh.face(f)[1]) - b.mesh.vertex(b.mesh.face(f)[0]),
                                       b.mesh.vertex(b.mesh.face(f)[1]) - b.mesh.vertex(b.mesh.face(f)[0])));
      if (w == Wall::Left) {
        CHECK(b.dofs.is_fixed(tb));
        // The first orthonormal edge function is |e|^{-1/2}.
        CHECK(b.dofs.fixed_value(tb) == doctest::Approx(std::sqrt(len)).epsilon(1e-13));
        CHECK(std::abs(b.dofs.fixed_value(tb + 1)) <= 1e-14);
      } else if (w == Wall::Right) {
        CHECK(b.dofs.is_fixed(tb));
        CHECK(std::abs(b.dofs.fixed_value(tb)) <= 1e-14);
      } else {
        CHECK_FALSE(b.dofs.is_fixed(tb));
      }
      CHECK_FALSE(b.dofs.is_fixed(b.dofs.pb(f)));
    }
  }
  SUBCASE("manufactured problem: velocity traces on the fluid boundary are zero") {
    const ProblemSpec p = example_6_1();
    const Built b(p, 8, 4);
    for (int f = 0; f < b.mesh.num_faces(); ++f) {
      const int ub = b.dofs.ub(f);
      if (ub < 0) continue;
      const bool on_fluid_boundary =
          b.mesh.face_tag(f) == FaceTag::FluidSolidInterface || b.mesh.face_tag(f) == FaceTag::OuterBoundary;
      for (int i = 0; i < 2 * b.disc.n_l(); ++i) {
        CHECK(b.dofs.is_fixed(ub + i) == on_fluid_boundary);
        if (on_fluid_boundary) CHECK(b.dofs.fixed_value(ub + i) == 0.0);
      }
    }
  }
  SUBCASE("missing wall condition is rejected") {
    ProblemSpec p = quiet_problem();
    p.thermal[wall_index(Wall::Top)] = ThermalBC{};
    const Mesh mesh = build_structured_mesh(2, 2, p.domain, p.fluid);
    const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
    DofMap dofs(disc);
    CHECK_THROWS_AS(apply_nonhomogeneous_dirichlet(dofs, disc, p), std::invalid_argument);
  }
}

TEST_CASE("zero data gives the zero solution") {
  const ProblemSpec p = quiet_problem();
  const Built b(p, 4, 4);
  const GlobalSystem sys = assemble_oseen_step(b.disc, b.dofs, p, make_field(b.disc, FieldKind::Velocity));
  CHECK(sys.rhs.norm() == 0.0);
  double res = 1.0;
  const Eigen::VectorXd x = solve_system(sys, b.dofs, true, &res);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("Stokes-Darcy part has the expected block symmetry") {
  ProblemSpec p = example_6_1();
  p.ra = 0.0;
  const Built b(p, 4, 2, 2, Variant::WG2);
  AssemblyOptions opts;
  opts.convection = false;
  const GlobalSystem sys = assemble_oseen_step(b.disc, b.dofs, p, make_field(b.disc, FieldKind::Velocity), opts);
  const std::set<int> prows = pressure_rows(b);
  const Eigen::MatrixXd a = Eigen::MatrixXd(sys.matrix);
  // Flipping the sign of the pressure equations makes the matrix symmetric.
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(a.rows());
  for (int r : prows) sign(r) = -1.0;
  const Eigen::MatrixXd s = sign.asDiagonal() * a;
  const double scale = a.cwiseAbs().maxCoeff();
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i == b.dofs.multiplier_index() || j == b.dofs.multiplier_index()) continue;
      if (std::abs(s(i, j) - s(j, i)) > 1e-12 * scale) {
        FAIL_CHECK("asymmetric entry " << i << "," << j);
        return;
      }
    }
  }
  // Velocity/temperature blocks must be positive semi-definite.
  std::vector<int> other;
  for (int i = 0; i < a.rows(); ++i)
    if (!prows.count(i)) other.push_back(i);
  Eigen::MatrixXd sub(other.size(), other.size());
  for (size_t i = 0; i < other.size(); ++i)
    for (size_t j = 0; j < other.size(); ++j) sub(i, j) = a(other[i], other[j]);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sub).eigenvalues().minCoeff() > 0.0);

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double smin = svd.singularValues().minCoeff();
  MESSAGE("smallest singular value of the Stokes-Darcy matrix: " << smin << " (max " << svd.singularValues()(0)
                                                                 << ")");
  CHECK(smin > 1e-8 * svd.singularValues()(0));
}

TEST_CASE("condensed and direct solves agree") {
  const ProblemSpec p = example_6_1();
  for (int k : {1, 2}) {
    const Built b(p, 8, 4, k);
    const GlobalSystem sys = assemble_oseen_step(b.disc, b.dofs, p, make_field(b.disc, FieldKind::Velocity));
    double r1 = 1.0, r2 = 1.0;
    const Eigen::VectorXd direct = solve_system(sys, b.dofs, false, &r1);
    const Eigen::VectorXd condensed = solve_system(sys, b.dofs, true, &r2);
    CHECK(r1 <= 1e-10);
    CHECK(r2 <= 1e-10);
    CHECK((direct - condensed).norm() <= 1e-9 * direct.norm());

    const FlowFields fields = b.dofs.scatter(condensed);
    CHECK(std::abs(pressure_mean(b.disc, fields.pressure)) <= 1e-12);
    // First Oseen step is a Stokes solve; its interior velocity is divergence free.
    const DivergenceReport div = divergence_diagnostic(b.disc, fields.velocity);
    CHECK(div.div_h <= 1e-10);
    CHECK(div.max_jump <= 1e-10);
    CHECK(div.max_boundary_flux <= 1e-10);
  }
}

TEST_CASE("gather and scatter are inverse") {
  const ProblemSpec p = example_6_1();
  const Built b(p, 4, 2);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(b.dofs.system_size(), 1.0, 2.0);
  x(b.dofs.multiplier_index()) = 0.0;
  CHECK((b.dofs.gather(b.dofs.scatter(x)) - x).norm() <= 1e-15);
}

TEST_CASE("sparse solver on small systems") {
  SparseMatrix id(3, 3);
  id.setIdentity();
  Eigen::VectorXd rhs(3);
  rhs << 1.0, -2.0, 3.0;
  double res = 1.0;
  CHECK((solve_sparse(id, rhs, &res) - rhs).norm() == 0.0);
  CHECK(res == 0.0);

  SparseMatrix a(2, 2);
  a.insert(0, 0) = 2.0;
  a.insert(0, 1) = 1.0;
  a.insert(1, 0) = 1.0;
  a.insert(1, 1) = 3.0;
  Eigen::VectorXd b2(2);
  b2 << 3.0, 5.0;
  const Eigen::VectorXd x = solve_sparse(a, b2, &res);
  CHECK(x(0) == doctest::Approx(0.8));
  CHECK(x(1) == doctest::Approx(1.4));
  CHECK(res <= 1e-15);

  SparseMatrix singular(2, 2);
  singular.insert(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_sparse(singular, b2), std::runtime_error);
  CHECK_THROWS_AS(solve_sparse(a, rhs), std::invalid_argument);
}

TEST_CASE("coordinate export") {
  SparseMatrix a(2, 3);
  a.insert(1, 2) = 4.5;
  std::ostringstream out;
  write_coordinate(a, out);
  CHECK(out.str() == "2 3 1\n1 2 4.5\n");
}
