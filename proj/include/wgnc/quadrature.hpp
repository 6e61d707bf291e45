#pragma once

#include <array>
#include <vector>

namespace wgnc {

/// Quadrature on the reference triangle (0,0), (1,0), (0,1); weights sum to 1/2.
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

/// Quadrature on [0, 1]; weights sum to 1.
struct LineRule {
  int degree = 0;
  std::vector<double> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

inline constexpr int kMaxQuadratureDegree = 48;

/// Gauss-Legendre rule on [0, 1] exact for polynomials of degree <= `degree`.
const LineRule& gauss_rule(int degree);

/// Collapsed (Duffy) Gauss rule on the reference triangle exact for total
/// degree <= `degree`. All weights positive.
const TriangleRule& triangle_rule(int degree);

}  // namespace wgnc
