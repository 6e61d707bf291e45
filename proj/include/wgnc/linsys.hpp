#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "wgnc/discretization.hpp"
#include "wgnc/fields.hpp"
#include "wgnc/problems.hpp"

namespace wgnc {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Global numbering of all weak unknowns.
///
/// Interior unknowns come first, element by element, as [U0, P0, T0] (velocity
/// and pressure on fluid elements only). Face unknowns follow, face by face, as
/// [Ub, Pb, Tb] (velocity and pressure traces on fluid-adjacent faces only).
/// Every unknown is Free or Fixed(value); the free unknowns are renumbered
/// contiguously in the same order and the mean-pressure multiplier is appended.
class DofMap {
 public:
  explicit DofMap(const Discretization& disc);

  int num_dofs() const { return static_cast<int>(fixed_.size()); }
  int num_elements() const { return static_cast<int>(elem_begin_.size()); }
  /// Interior unknowns (always free) occupy [0, num_interior()).
  int num_interior() const { return num_interior_; }
  int num_free() const { return num_free_; }
  int system_size() const { return num_free_ + 1; }
  int multiplier_index() const { return num_free_; }

  /// First unknown of each block, or -1 when absent.
  int u0(int e) const { return elem_[e][0]; }
  int p0(int e) const { return elem_[e][1]; }
  int t0(int e) const { return elem_[e][2]; }
  int ub(int f) const { return face_[f][0]; }
  int pb(int f) const { return face_[f][1]; }
  int tb(int f) const { return face_[f][2]; }
  /// Contiguous interior range of element e: [begin, begin + size).
  int interior_begin(int e) const { return elem_begin_[e]; }
  int interior_size(int e) const { return elem_size_[e]; }

  bool is_fixed(int i) const { return fixed_[i]; }
  double fixed_value(int i) const { return value_[i]; }
  /// System index of a free unknown, -1 for fixed ones.
  int free_index(int i) const { return free_[i]; }
  void fix(int i, double value);
  void fix(const std::vector<std::pair<int, double>>& values);

  /// Unknowns of element e in the local layouts of forms.hpp:
  /// fluid [velocity | pressure | temperature], solid [temperature].
  std::vector<int> element_dofs(int e) const;

  /// System vector (multiplier set to 0) from fields; fixed unknowns are skipped.
  Eigen::VectorXd gather(const FlowFields& fields) const;
  /// Fields from a system vector, inserting fixed values.
  FlowFields scatter(const Eigen::VectorXd& x) const;

 private:
  void renumber();

  const Discretization* disc_;
  std::vector<std::array<int, 3>> elem_;
  std::vector<std::array<int, 3>> face_;
  std::vector<int> elem_begin_, elem_size_;
  std::vector<char> fixed_;
  std::vector<double> value_;
  std::vector<int> free_;
  int num_interior_ = 0;
  int num_free_ = 0;
};

/// Fixes velocity traces on the fluid boundary to zero and temperature traces on
/// Dirichlet walls to Qb_l of the wall data. Throws if a wall has no condition.
void apply_nonhomogeneous_dirichlet(DofMap& dofs, const Discretization& disc, const ProblemSpec& problem);

/// Assembled linear system over free unknowns plus the multiplier.
struct GlobalSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  int num_interior = 0;
};

struct AssemblyOptions {
  bool convection = true;  ///< include c_h and cbar_h
  bool load = true;        ///< include (f, v0) and (g, s0)
};

/// One Oseen step: a + c(w) + b(v,p) - b(u,q) - d(T,v) = (f, v0) and
/// abar + cbar(w) = (g, s0), with fixed unknowns lifted to the right-hand side.
GlobalSystem assemble_oseen_step(const Discretization& disc, const DofMap& dofs, const ProblemSpec& problem,
                                 const WgField& w_prev, const AssemblyOptions& options = {});

/// Schur complement onto the non-interior unknowns with per-element recovery data.
struct CondensedSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  int num_interior = 0;
  struct Element {
    int begin = 0;
    std::vector<int> coupled;  ///< reduced indices the interior couples to
    Eigen::MatrixXd x;         ///< A_II^{-1} A_IB restricted to `coupled`
    Eigen::VectorXd y;         ///< A_II^{-1} b_I
  };
  std::vector<Element> elements;
};

/// `interior_ranges` lists each element's (begin, size). Throws with the
/// element index if an interior block is singular.
CondensedSystem condense(const GlobalSystem& system, const std::vector<std::pair<int, int>>& interior_ranges);
std::vector<std::pair<int, int>> interior_ranges(const DofMap& dofs);
/// Full system solution from the reduced one.
Eigen::VectorXd recover(const CondensedSystem& condensed, const Eigen::VectorXd& reduced_solution);

/// Sparse LU with one step of iterative refinement. Throws std::runtime_error
/// on factorization failure. `relative_residual` receives ||Ax-b||/||b||.
Eigen::VectorXd solve_sparse(const SparseMatrix& a, const Eigen::VectorXd& b, double* relative_residual = nullptr);

/// Solves the system, optionally by static condensation.
Eigen::VectorXd solve_system(const GlobalSystem& system, const DofMap& dofs, bool condensed,
                             double* relative_residual = nullptr);

/// Writes "row col value" lines (0-based), preceded by a "rows cols nnz" header.
void write_coordinate(const SparseMatrix& a, std::ostream& out);

}  // namespace wgnc
