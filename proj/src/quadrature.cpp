#include "wgnc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wgnc {

namespace {

// n-point Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

struct RuleTables {
  std::vector<LineRule> lines;
  std::vector<TriangleRule> triangles;

  RuleTables() {
    lines.resize(kMaxQuadratureDegree + 1);
    triangles.resize(kMaxQuadratureDegree + 1);
    for (int d = 0; d <= kMaxQuadratureDegree; ++d) {
      LineRule& line = lines[d];
      line.degree = d;
      const int n = d / 2 + 1;
      std::vector<double> x, w;
      gauss_legendre(n, x, w);
      for (int i = 0; i < n; ++i) {
        line.points.push_back(0.5 * (x[i] + 1.0));
        line.weights.push_back(0.5 * w[i]);
      }

      // Duffy map (u, v) -> (u (1 - v), v) with Jacobian (1 - v): degree d
      // in (xi, eta) becomes degree <= d + 1 in v.
      TriangleRule& tri = triangles[d];
      tri.degree = d;
      const int nu = d / 2 + 1;
      const int nv = (d + 1) / 2 + 1;
      std::vector<double> xu, wu, xv, wv;
      gauss_legendre(nu, xu, wu);
      gauss_legendre(nv, xv, wv);
      for (int j = 0; j < nv; ++j) {
        const double v = 0.5 * (xv[j] + 1.0);
        for (int i = 0; i < nu; ++i) {
          const double u = 0.5 * (xu[i] + 1.0);
          tri.points.push_back({u * (1.0 - v), v});
          tri.weights.push_back(0.25 * wu[i] * wv[j] * (1.0 - v));
        }
      }
    }
  }
};

const RuleTables& tables() {
  static const RuleTables instance;
  return instance;
}

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree) {
    throw std::out_of_range("quadrature degree " + std::to_string(degree) + " outside [0, " +
                            std::to_string(kMaxQuadratureDegree) + "]");
  }
}

}  // namespace

const LineRule& gauss_rule(int degree) {
  check_degree(degree);
  return tables().lines[degree];
}

const TriangleRule& triangle_rule(int degree) {
  check_degree(degree);
  return tables().triangles[degree];
}

}  // namespace wgnc
