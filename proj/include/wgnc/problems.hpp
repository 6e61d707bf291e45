#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgnc/forms.hpp"
#include "wgnc/mesh.hpp"
#include "wgnc/params.hpp"
#include "wgnc/polybasis.hpp"
#include "wgnc/weakops.hpp"

namespace wgnc {

/// Bivariate polynomial sum c_ab x^a y^b, used for config-file data.
class Polynomial2 {
 public:
  Polynomial2() = default;
  static Polynomial2 constant(double c);
  /// Parses expressions like "1 - 2*x + 0.5*x^2*y" (terms are products of
  /// numbers, x, y and integer powers). Throws std::invalid_argument.
  static Polynomial2 parse(const std::string& text);

  double operator()(const Point& p) const;
  /// Canonical text that parse() maps back to an identical polynomial.
  std::string to_string() const;
  const std::map<std::pair<int, int>, double>& terms() const { return terms_; }
  friend bool operator==(const Polynomial2&, const Polynomial2&) = default;

 private:
  std::map<std::pair<int, int>, double> terms_;
};

/// Temperature condition on one side of the outer rectangle.
struct ThermalBC {
  enum class Kind { Unset, Dirichlet, Insulated };
  Kind kind = Kind::Unset;
  Polynomial2 value;  ///< Dirichlet data
};

/// Closed-form solution fields with gradients.
struct ExactSolution {
  VectorFunction u;
  TensorFunction grad_u;
  ScalarFunction p;
  VectorFunction grad_p;
  ScalarFunction T;
  VectorFunction grad_T;
  ScalarFunction stream;  ///< optional: psi with u = (d psi/dy, -d psi/dx)
};

/// Physical parameters, geometry, forcing, boundary data and optional exact solution.
/// Velocity is always zero on the boundary of the fluid region.
struct ProblemSpec {
  std::string name = "custom";
  std::string builtin;  ///< "example_6_1", "cavity" or empty
  double pr = 1.0;
  double ra = 0.0;
  double kappa = 1.0;
  Point gravity{0.0, 1.0};
  Rect domain;
  Rect fluid;
  VectorFunction f;
  ScalarFunction g;
  /// Polynomial forcing of custom problems (empty for built-ins).
  std::optional<std::array<Polynomial2, 3>> forcing_polynomials;
  /// Indexed by wall_index().
  std::array<ThermalBC, 4> thermal;
  std::optional<ExactSolution> exact;

  Physics physics() const { return {pr, ra, kappa, gravity}; }
  const ThermalBC& thermal_bc(Wall w) const;
  /// Throws std::invalid_argument on non-physical parameters, bad geometry or missing wall data.
  void validate() const;
};

int wall_index(Wall w);
Wall wall_from_index(int i);

/// Manufactured problem on [-1,1]x[0,1] with fluid region [0,1]^2.
ProblemSpec example_6_1();
/// Differentially heated square cavity (Pr = 0.71), hot wall x = 0, cold wall x = 1.
ProblemSpec cavity(double ra);

/// Max over random sample points of the residuals of div u = 0 and of the
/// forcing against the momentum/energy equations evaluated with centered
/// differences of the exact gradients. Throws if the spec has no exact solution.
struct ConsistencyReport {
  double divergence = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double max() const;
};
ConsistencyReport check_exact_solution(const ProblemSpec& spec, int samples = 100, unsigned seed = 7);

/// Contents of an INI-style problem/run configuration file.
///
/// Sections and keys:
///   [problem]  builtin = example_6_1 | cavity, name
///   [physics]  pr, ra, kappa
///   [domain]   rect = "x0 x1 y0 y1", fluid_rect = "x0 x1 y0 y1"
///   [bc]       left/right/bottom/top = "dirichlet <polynomial>" | "insulated"
///   [forcing]  f1, f2, g = <polynomial>
///   [method]   k, variant
///   [mesh]     nx, ny
///   [solver]   tol, max_iter, ramp = "1e3 1e4 ..."
struct ConfigFile {
  ProblemSpec problem;
  std::optional<int> k;
  std::optional<Variant> variant;
  std::optional<int> nx, ny;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::vector<double> ramp;
};

ConfigFile parse_config(const std::string& text);
ConfigFile load_config(const std::string& path);
std::string serialize_config(const ConfigFile& config);

}  // namespace wgnc
