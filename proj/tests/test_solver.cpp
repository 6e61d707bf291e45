#include <doctest.h>

#include <sstream>
#include <string>

#include "wgnc/postproc.hpp"
#include "wgnc/solver.hpp"

using namespace wgnc;

namespace {

ProblemSpec at_rest() {
  ProblemSpec p;
  p.name = "rest";
  p.pr = 0.71;
  p.ra = 1e3;
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.fluid = p.domain;
  p.f = [](const Point&) { return Point{0.0, 0.0}; };
  p.g = [](const Point&) { return 0.0; };
  for (auto& bc : p.thermal) bc = {ThermalBC::Kind::Dirichlet, Polynomial2::constant(0.0)};
  return p;
}

}  // namespace

TEST_CASE("a problem at rest converges in one step") {
  const ProblemSpec p = at_rest();
  const Mesh mesh = build_structured_mesh(4, 4, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
  const OseenResult r = oseen_solve(disc, p);
  CHECK(r.converged);
  CHECK(r.iterations() == 1);
  CHECK(r.fields.velocity.coefficient_norm() == 0.0);
  CHECK(r.fields.temperature.coefficient_norm() == 0.0);
}

TEST_CASE("manufactured problem on a 16x8 mesh") {
  const ProblemSpec p = example_6_1();
  const Mesh mesh = build_structured_mesh(16, 8, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
  OseenConfig cfg;
  cfg.tol = 1e-9;
  const OseenResult r = oseen_solve(disc, p, cfg);
  REQUIRE(r.converged);
  CHECK(r.iterations() <= 30);
  for (const IterationRecord& rec : r.trace) CHECK(rec.residual <= 1e-10);
  CHECK(r.trace.back().relative_increment() <= 1e-9);
  // Increments contract once the iteration settles.
  const int n = r.iterations();
  REQUIRE(n >= 4);
  for (int i = n - 3; i < n; ++i) CHECK(r.trace[i].relative_increment() < r.trace[i - 1].relative_increment());

  const ErrorReport e = error_report(disc, r.fields, *p.exact);
  CHECK(e.grad_u == doctest::Approx(3.1494e-1).epsilon(0.05));
  CHECK(e.div <= 1e-10);

  SUBCASE("direct and condensed iterations agree") {
    OseenConfig direct = cfg;
    direct.condensed = false;
    const OseenResult r2 = oseen_solve(disc, p, direct);
    CHECK(r2.iterations() == r.iterations());
    CHECK(r2.fields.velocity.minus(r.fields.velocity).coefficient_norm() <=
          1e-8 * r.fields.velocity.coefficient_norm());
  }
}

TEST_CASE("errors are insensitive to extra quadrature exactness") {
  const ProblemSpec p = example_6_1();
  const Mesh mesh = build_structured_mesh(16, 8, p.domain, p.fluid);
  for (int k : {1, 2}) {
    MethodParams base = MethodParams::from_variant(k, Variant::WG1);
    MethodParams boosted = base;
    boosted.quad_boost = 1;
    const Discretization d0(mesh, base), d1(mesh, boosted);
    const OseenResult r0 = oseen_solve(d0, p), r1 = oseen_solve(d1, p);
    REQUIRE(r0.converged);
    REQUIRE(r1.converged);
    const auto e0 = error_report(d0, r0.fields, *p.exact).values();
    const auto e1 = error_report(d1, r1.fields, *p.exact).values();
    // Five printed digits must not move.
    for (size_t i = 0; i < e0.size(); ++i) CHECK(e1[i] == doctest::Approx(e0[i]).epsilon(5e-6));
  }
}

TEST_CASE("iteration limit is reported, not hidden") {
  const ProblemSpec p = example_6_1();
  const Mesh mesh = build_structured_mesh(8, 4, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
  OseenConfig cfg;
  cfg.max_iter = 2;
  cfg.tol = 1e-14;
  const OseenResult r = oseen_solve(disc, p, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations() == 2);
  cfg.tol = 0.0;
  CHECK_THROWS_AS(oseen_solve(disc, p, cfg), std::invalid_argument);
  cfg.tol = 1e-9;
  cfg.max_iter = 0;
  CHECK_THROWS_AS(oseen_solve(disc, p, cfg), std::invalid_argument);
}

TEST_CASE("relaxed iterations reach the same fixed point") {
  const ProblemSpec p = example_6_1();
  const Mesh mesh = build_structured_mesh(8, 4, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
  const OseenResult plain = oseen_solve(disc, p);
  REQUIRE(plain.converged);
  for (const auto& [theta, aitken] : {std::pair{0.5, false}, std::pair{1.0, true}, std::pair{0.3, true}}) {
    OseenConfig cfg;
    cfg.relaxation = theta;
    cfg.aitken = aitken;
    const OseenResult r = oseen_solve(disc, p, cfg);
    REQUIRE(r.converged);
    CHECK(r.fields.velocity.minus(plain.fields.velocity).coefficient_norm() <=
          1e-7 * plain.fields.velocity.coefficient_norm());
    CHECK(r.fields.temperature.minus(plain.fields.temperature).coefficient_norm() <=
          1e-7 * plain.fields.temperature.coefficient_norm());
    for (const IterationRecord& rec : r.trace) {
      CHECK(rec.relaxation >= cfg.min_relaxation);
      CHECK(rec.relaxation <= 1.0);
    }
  }
  for (const IterationRecord& rec : plain.trace) CHECK(rec.relaxation == 1.0);
  OseenConfig bad;
  bad.relaxation = 0.0;
  CHECK_THROWS_AS(oseen_solve(disc, p, bad), std::invalid_argument);
  bad.relaxation = 1.5;
  CHECK_THROWS_AS(oseen_solve(disc, p, bad), std::invalid_argument);
}

TEST_CASE("Aitken relaxation tames the oscillating cavity iteration") {
  const ProblemSpec p = cavity(1e4);
  const Mesh mesh = build_structured_mesh(12, 12, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
  OseenConfig plain;
  plain.max_iter = 40;
  OseenConfig aitken = plain;
  aitken.aitken = true;
  const RampResult a = ramp_rayleigh(disc, p, {1e3, 1e4}, aitken);
  const RampResult b = ramp_rayleigh(disc, p, {1e3, 1e4}, plain);
  CHECK(a.converged);
  MESSAGE("Ra = 1e4 stage: " << a.stages.back().iterations() << " Aitken iterations; plain iteration "
                             << std::string(b.converged ? "converged" : "did not converge") << " in "
                             << b.stages.back().iterations());
  CHECK(a.stages.back().iterations() < b.stages.back().iterations());
}

TEST_CASE("solves are deterministic") {
  const ProblemSpec p = example_6_1();
  const Mesh mesh = build_structured_mesh(8, 4, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(2, Variant::WG3));
  const OseenResult a = oseen_solve(disc, p);
  const OseenResult b = oseen_solve(disc, p);
  REQUIRE(a.iterations() == b.iterations());
  CHECK(a.fields.velocity.minus(b.fields.velocity).coefficient_norm() == 0.0);
  CHECK(a.fields.pressure.minus(b.fields.pressure).coefficient_norm() == 0.0);
  CHECK(a.fields.temperature.minus(b.fields.temperature).coefficient_norm() == 0.0);
  for (int i = 0; i < a.iterations(); ++i) CHECK(a.trace[i].du == b.trace[i].du);
}

TEST_CASE("Rayleigh continuation") {
  CHECK(default_ramp(1e3) == std::vector<double>{1e3});
  CHECK(default_ramp(1e5) == std::vector<double>{1e3, 1e4, 1e5});
  CHECK(default_ramp(5e4) == std::vector<double>{1e3, 1e4, 5e4});
  CHECK(default_ramp(500.0) == std::vector<double>{500.0});

  const ProblemSpec p = cavity(1e3);
  const Mesh mesh = build_structured_mesh(6, 6, p.domain, p.fluid);
  const Discretization disc(mesh, MethodParams::from_variant(1, Variant::WG1));
  CHECK_THROWS_AS(ramp_rayleigh(disc, p, {}), std::invalid_argument);
  CHECK_THROWS_AS(ramp_rayleigh(disc, p, {1e3, 1e3}), std::invalid_argument);
  CHECK_THROWS_AS(ramp_rayleigh(disc, p, {1e4, 1e3}), std::invalid_argument);

  const RampResult single = ramp_rayleigh(disc, p, {1e3});
  const OseenResult direct = oseen_solve(disc, p);
  REQUIRE(single.converged);
  CHECK(single.stages.size() == 1);
  CHECK(single.failed_stage == -1);
  CHECK(single.fields.temperature.minus(direct.fields.temperature).coefficient_norm() == 0.0);

  const RampResult two = ramp_rayleigh(disc, p, {1e3, 3e3});
  CHECK(two.converged);
  CHECK(two.rayleigh == std::vector<double>{1e3, 3e3});
  CHECK(two.stages.size() == 2);
}

TEST_CASE("trace CSV") {
  std::vector<IterationRecord> trace(2);
  trace[0].iteration = 1;
  trace[1].iteration = 2;
  trace[1].du = 0.5;
  std::ostringstream out;
  write_trace_csv(trace, out);
  std::istringstream in(out.str());
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "iteration,du,dT,dp,u_norm,T_norm,residual,relaxation,seconds");
  CHECK(row1.rfind("1,", 0) == 0);
  CHECK(row2.rfind("2,", 0) == 0);
  CHECK_FALSE(std::getline(in, extra));
}
