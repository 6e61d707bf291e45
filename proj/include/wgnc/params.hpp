#pragma once

#include <string>

namespace wgnc {

/// Element length used in the stabilization tau = 1/h_K.
/// CellSize takes h_K = sqrt(2|K|), which is the leg length of a
/// structured-grid right triangle; Diameter takes the longest edge.
enum class StabilizationScale { CellSize, Diameter };

/// The three method variants of the scheme; Custom allows any admissible (l, m).
enum class Variant { WG1, WG2, WG3, Custom };

const char* to_string(Variant v);
/// Accepts "wg1", "WG-I", "1" and the analogous spellings (case-insensitive).
Variant parse_variant(const std::string& text);

/// Polynomial degrees and quadrature choices of the discretization.
///
/// Velocity and temperature use P_k interiors with P_l traces, pressure uses
/// P_{k-1} interiors with P_k traces, and the weak gradients in the diffusion
/// forms map into [P_m]^2. The stabilization is tau = 1/h_K with h_K chosen
/// by `stabilization`.
struct MethodParams {
  int k = 1;
  int l = 1;
  int m = 1;
  Variant variant = Variant::WG1;
  StabilizationScale stabilization = StabilizationScale::CellSize;
  /// Extra exactness added to every rule below (quadrature sensitivity studies).
  int quad_boost = 0;

  /// Exactness of the element form rules (trilinear integrands reach degree 3k).
  int form_quad_degree() const { return 3 * k + 1 + quad_boost; }
  /// Exactness for load vectors against smooth forcing.
  int load_quad_degree() const { return 2 * k + 12 + quad_boost; }
  /// Exactness for error integrals against closed-form fields.
  int error_quad_degree() const { return 2 * k + 10 + quad_boost; }

  double stabilization_length(double area, double diameter) const;
  double tau(double area, double diameter) const {
    return 1.0 / stabilization_length(area, diameter);
  }

  /// Throws std::invalid_argument unless k >= 1, l in {k-1, k}, k-1 <= m <= l.
  void validate() const;

  static MethodParams from_variant(int k, Variant v);
  static MethodParams custom(int k, int l, int m);
};

}  // namespace wgnc
