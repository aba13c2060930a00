#pragma once

#include "alflab/monge_ampere.hpp"

#include <functional>
#include <vector>

namespace alflab::analysis {

// rho = sqrt(1 + R^2), R the Taub-NUT moment radius for parameter m.
[[nodiscard]] double rho_taubnut(const RealPoint4& x, double m);

struct WeightedNorm {
  int k = 0;           // derivatives up to order k (k <= 2)
  double alpha = 0.0;  // Holder exponent in [0, 1)
  double delta = 0.0;  // weight
  double cap = 1.0;    // largest pair distance in the Holder quotient
  std::function<double(const RealPoint4&)> rho;
};

// sup rho^{delta+j} |D^j u| over j <= k, plus the weighted Holder quotient of
// D^k u over axis-aligned node pairs at distance <= cap (when alpha > 0).
[[nodiscard]] double weighted_norm(const GridField& u, const WeightedNorm& spec);

struct SobolevSample {
  double scale = 0.0;
  double l4 = 0.0;        // (int u^4 rho^{-1})^{1/4}
  double energy = 0.0;    // (int |du|_f^2)^{1/2}
  double hardy_l2 = 0.0;  // (int u^2 rho^{-2})^{1/2}
  double sobolev_ratio = 0.0;
  double hardy_ratio = 0.0;
};
struct SobolevReport {
  std::vector<SobolevSample> samples;
  double max_sobolev = 0.0;
  double max_hardy = 0.0;
};
// Quadrature on the Taub-NUT background (det_e f = 1, so vol_f = vol_e) of the
// fields u, each vanishing on its boundary layer.
[[nodiscard]] SobolevReport sobolev_check(const std::vector<GridField>& samples, double m,
                                          const std::vector<double>& scales = {});

// Radial bump b(|x| / s) on the box [-1.1 s, 1.1 s]^4 with n interior nodes.
[[nodiscard]] GridField radial_bump(double s, int n);

struct AubinYauReport {
  std::size_t nodes = 0;
  double max_lhs = 0.0;
  double max_rhs = 0.0;
  double max_abs_diff = 0.0;
  double rel_discrepancy = 0.0;  // max |lhs - rhs| / max |lhs|
  double max_curvature_term = 0.0;
  double min_trace_ratio = 0.0;  // tr_omega(omega_phi) / (4 e^{f/2})
};
// Compares Delta'(Delta phi) with -2 Delta f + 4 |nabla ddbar phi|^2 + curvature
// terms at nodes of depth >= 3, with Delta = -2 h^{jk} d_j dbar_k (the
// Laplacian of g_Y with nonnegative spectrum) and F = t f.
[[nodiscard]] AubinYauReport aubin_yau_probe(const ma::Problem& P, const GridField& phi, double t = 1.0);

}  // namespace alflab::analysis
