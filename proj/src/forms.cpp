#include "wgnc/forms.hpp"

#include <stdexcept>
#include <string>

namespace wgnc {

namespace {

void require_fluid(const ElementOperators& ops, const char* what) {
  if (!ops.fluid) {
    throw std::invalid_argument(std::string(what) + ": element " + std::to_string(ops.frame.element) +
                                " is not a fluid element");
  }
}

int nk_of(const ElementOperators& ops) { return static_cast<int>(ops.volume.values.cols()); }
int nl_of(const ElementOperators& ops) { return static_cast<int>(ops.faces[0].edge.cols()); }

}  // namespace

int scalar_local_dim(const Discretization& disc) { return disc.n_k() + 3 * disc.n_l(); }
int velocity_local_dim(const Discretization& disc) { return 2 * scalar_local_dim(disc); }
int pressure_local_dim(const Discretization& disc) { return disc.n_p() + 3 * disc.n_pb(); }

namespace {

int velocity_index_raw(int nk, int nl, int c, int s) {
  if (s < nk) return c * nk + s;
  const int t = s - nk;
  return 2 * nk + (t / nl) * 2 * nl + c * nl + t % nl;
}

Eigen::MatrixXd expand(int nk, int nl, const Eigen::MatrixXd& scalar) {
  const int ns = nk + 3 * nl;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * ns, 2 * ns);
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < ns; ++i) {
      const int gi = velocity_index_raw(nk, nl, c, i);
      for (int j = 0; j < ns; ++j) out(gi, velocity_index_raw(nk, nl, c, j)) = scalar(i, j);
    }
  }
  return out;
}

}  // namespace

int velocity_index(const Discretization& disc, int c, int s) {
  return velocity_index_raw(disc.n_k(), disc.n_l(), c, s);
}

Eigen::MatrixXd expand_to_velocity(const Discretization& disc, const Eigen::MatrixXd& scalar) {
  return expand(disc.n_k(), disc.n_l(), scalar);
}

Eigen::MatrixXd scalar_diffusion(const ElementOperators& ops) {
  const Eigen::MatrixXd g = ops.grad.stacked();
  Eigen::MatrixXd m = g.transpose() * g;
  const int nk = nk_of(ops), nl = nl_of(ops);
  for (int f = 0; f < 3; ++f) {
    // Jump operator Qb_l v0 - vb on face f.
    Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(nl, nk + 3 * nl);
    jump.leftCols(nk) = ops.trace_projection[f];
    jump.middleCols(nk + f * nl, nl) = -Eigen::MatrixXd::Identity(nl, nl);
    m += ops.tau * jump.transpose() * jump;
  }
  return m;
}

Eigen::MatrixXd local_a(const ElementOperators& ops, double pr) {
  require_fluid(ops, "local_a");
  return pr * expand(nk_of(ops), nl_of(ops), scalar_diffusion(ops));
}

Eigen::MatrixXd local_b(const ElementOperators& ops) {
  require_fluid(ops, "local_b");
  return ops.grad_p.stacked();
}

Eigen::MatrixXd local_d(const ElementOperators& ops, double pr, double ra, Point gravity) {
  require_fluid(ops, "local_d");
  const int nk = nk_of(ops);
  const VolumeTable& t = ops.volume;
  const Eigen::MatrixXd mass = t.values.transpose() * t.weights.asDiagonal() * t.values;
  Eigen::MatrixXd d(2 * nk, nk);
  d.topRows(nk) = (pr * ra * gravity.x) * mass;
  d.bottomRows(nk) = (pr * ra * gravity.y) * mass;
  return d;
}

Eigen::MatrixXd local_abar(const ElementOperators& ops, double kappa) {
  return kappa * scalar_diffusion(ops);
}

// With F(u, v) = -(u0 w0, grad v0) + <ub wb.n, v0> written as v^T N u, the
// skew form is v^T (N - N^T) u / 2. Only interior test rows of N are nonzero.
Eigen::MatrixXd convection_matrix(const ElementOperators& ops, const ConvectingVelocity& w) {
  const int nk = nk_of(ops), nl = nl_of(ops);
  const int ns = nk + 3 * nl;
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(ns, ns);
  if (w.interior.size() == 0) return n;

  const VolumeTable& t = ops.volume;
  const Eigen::VectorXd wx = (t.values * w.interior.head(nk)).cwiseProduct(t.weights);
  const Eigen::VectorXd wy = (t.values * w.interior.tail(nk)).cwiseProduct(t.weights);
  n.topLeftCorner(nk, nk) =
      -(t.dx.transpose() * wx.asDiagonal() * t.values + t.dy.transpose() * wy.asDiagonal() * t.values);

  for (int f = 0; f < 3; ++f) {
    const FaceTable& ft = ops.faces[f];
    if (w.trace[f].size() == 0) continue;
    const Eigen::VectorXd wbn = (ft.normal.x * (ft.edge * w.trace[f].head(nl)) +
                                 ft.normal.y * (ft.edge * w.trace[f].tail(nl)))
                                    .cwiseProduct(ft.weights);
    n.block(0, nk + f * nl, nk, nl) = ft.values.transpose() * wbn.asDiagonal() * ft.edge;
  }
  return 0.5 * (n - n.transpose());
}

Eigen::MatrixXd local_c(const ElementOperators& ops, const ConvectingVelocity& w) {
  require_fluid(ops, "local_c");
  return expand(nk_of(ops), nl_of(ops), convection_matrix(ops, w));
}

Eigen::MatrixXd local_cbar(const ElementOperators& ops, const ConvectingVelocity& w) {
  if (!ops.fluid) {
    const int ns = nk_of(ops) + 3 * nl_of(ops);
    return Eigen::MatrixXd::Zero(ns, ns);
  }
  return convection_matrix(ops, w);
}

LocalFormBlocks local_blocks(const ElementOperators& ops, const Physics& phys,
                             const ConvectingVelocity& w) {
  LocalFormBlocks blocks;
  const Eigen::MatrixXd diffusion = scalar_diffusion(ops);
  blocks.abar = phys.kappa * diffusion;
  if (!ops.fluid) {
    blocks.cbar = Eigen::MatrixXd::Zero(diffusion.rows(), diffusion.cols());
    return blocks;
  }
  const int nk = nk_of(ops), nl = nl_of(ops);
  const Eigen::MatrixXd conv = convection_matrix(ops, w);
  blocks.cbar = conv;
  blocks.a = phys.pr * expand(nk, nl, diffusion);
  blocks.c = expand(nk, nl, conv);
  blocks.b = local_b(ops);
  blocks.d = local_d(ops, phys.pr, phys.ra, phys.gravity);
  return blocks;
}

}  // namespace wgnc
