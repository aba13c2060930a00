#include "alflab/taubnut.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace alflab::taubnut {

namespace {

const Mat4& i1() {
  static const Mat4 J = standard_complex_structures().I1.J;
  return J;
}

// Rows are the dual coframe (e_0^*, ..., e_3^*).
Mat4 coframe_matrix(const FrameF& F) {
  Mat4 T;
  for (int k = 0; k < 4; ++k) T.row(k) = F.dual[k].a.transpose();
  return T;
}

// Jacobians d(e_k)_i / dx_l of the frame fields.
std::array<Mat4, 4> frame_jacobians(const TaubNutPoint& p, const FrameF& F) {
  const double m = p.m, R = p.R, V = p.V, sv = std::sqrt(V);
  const Vec4& x = p.x;
  const Vec4 dy1 = F.dy1.a;
  const Vec4 dR = (p.y1 * F.dy1.a + p.y2 * F.dy2.a + p.y3 * F.dy3.a) / R;
  const Vec4 dV = -dR / (2 * R * R);
  const Vec4 dsv = dV / (2 * sv);
  const Vec4 dinv = -dV / (2 * V * sv);
  const Vec4 dep = 4 * m * p.ep * dy1;
  const Vec4 dem = -4 * m * p.em * dy1;

  Mat4 Xi = Mat4::Zero();
  Xi(0, 1) = -1;
  Xi(1, 0) = 1;
  Xi(2, 3) = 1;
  Xi(3, 2) = -1;

  Mat4 W;
  W.row(0) = x[3] * dep.transpose();
  W.row(1) = x[2] * dep.transpose();
  W.row(2) = x[1] * dem.transpose();
  W.row(3) = x[0] * dem.transpose();
  W(0, 3) += p.ep;
  W(1, 2) += p.ep;
  W(2, 1) += p.em;
  W(3, 0) += p.em;
  const Mat4 Jz = W / (2 * R) - F.zeta.v * dR.transpose() / R;

  std::array<Mat4, 4> J;
  J[0] = sv * Xi + F.xi.v * dsv.transpose();
  J[1] = -(sv * i1() * Xi + (i1() * F.xi.v) * dsv.transpose());
  J[2] = Jz / sv + F.zeta.v * dinv.transpose();
  J[3] = i1() * J[2];
  return J;
}

// Coframe action M (J theta_k = sum_l M_kl theta_l on theta = (eta, dy1, dy2, dy3))
// converted to the matrix acting on vectors.
Mat4 structure_from_coframe(const Mat4& M, const Mat4& Theta) { return -Theta.inverse() * M * Theta; }

}  // namespace

FrameF frame_at(const TaubNutPoint& p) {
  if (!(p.R > 0.0)) throw std::domain_error("frame is undefined at the origin");
  FrameF F;
  const auto dy = dy_at(p);
  F.dy1 = dy[0];
  F.dy2 = dy[1];
  F.dy3 = dy[2];
  F.eta = eta_at(p);
  F.xi = xi_at(p);
  F.zeta = zeta_at(p);
  const double sv = std::sqrt(p.V);
  F.e[0].v = sv * F.xi.v;
  F.e[1].v = -sv * (i1() * F.xi.v);
  F.e[2].v = F.zeta.v / sv;
  F.e[3].v = i1() * F.zeta.v / sv;
  F.dual[0].a = F.eta.a / sv;
  F.dual[1].a = sv * F.dy1.a;
  F.dual[2].a = sv * F.dy2.a;
  F.dual[3].a = sv * F.dy3.a;
  return F;
}

ComplexStructures hyperkahler_triple(const TaubNutPoint& p) {
  const FrameF F = frame_at(p);
  Mat4 Theta;
  Theta.row(0) = F.eta.a.transpose();
  Theta.row(1) = F.dy1.a.transpose();
  Theta.row(2) = F.dy2.a.transpose();
  Theta.row(3) = F.dy3.a.transpose();
  const double V = p.V;

  // J2: V dy2 -> eta, dy3 -> dy1, and J2^2 = -1 fixes the rest.
  Mat4 M2 = Mat4::Zero();
  M2(2, 0) = 1.0 / V;
  M2(0, 2) = -V;
  M2(3, 1) = 1.0;
  M2(1, 3) = -1.0;
  // J3: V dy3 -> eta, dy1 -> dy2.
  Mat4 M3 = Mat4::Zero();
  M3(3, 0) = 1.0 / V;
  M3(0, 3) = -V;
  M3(1, 2) = 1.0;
  M3(2, 1) = -1.0;

  ComplexStructures s;
  s.I1.J = i1();
  s.I2.J = structure_from_coframe(M2, Theta);
  s.I3.J = structure_from_coframe(M3, Theta);
  return s;
}

Dictionary dictionary_dx(const TaubNutPoint& p) {
  const FrameF F = frame_at(p);
  // Dual basis of (eta, dy1, dy2, dy3) is (xi, -V I1 xi, zeta, I1 zeta).
  const Vec4 xi = F.xi.v;
  const Vec4 b1 = -p.V * (i1() * xi);
  const Vec4 z = F.zeta.v;
  const Vec4 iz = i1() * z;
  Dictionary d;
  for (int j = 0; j < 4; ++j) {
    d.dx[j] = Vec4(xi[j], b1[j], z[j], iz[j]);
    d.d_dx[j] = Vec4(F.eta.a[j], -p.V * F.dy1.a[j], F.dy2.a[j], F.dy3.a[j]);
  }
  return d;
}

BracketTable bracket_table_closed(const TaubNutPoint& p) {
  BracketTable t{};
  for (auto& row : t)
    for (auto& v : row) v.setZero();
  const double c = 1.0 / (4.0 * p.R * p.R * p.R * std::pow(p.V, 1.5));
  const double y[4] = {0.0, p.y1, p.y2, p.y3};
  for (int i = 1; i <= 3; ++i) {
    t[0][i][0] = c * y[i];
    t[i][0][0] = -c * y[i];
  }
  static constexpr int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& ijk : cyc) {
    const int i = ijk[0], j = ijk[1], k = ijk[2];
    Vec4 v = Vec4::Zero();
    v[j] += c * y[i];
    v[i] -= c * y[j];
    v[0] += 2.0 * c * y[k];
    t[i][j] = v;
    t[j][i] = -v;
  }
  return t;
}

double default_frame_step(double m) { return 1e-3 / std::sqrt(1.0 + 8.0 * m); }

BracketTable bracket_table_fd(double m, const RealPoint4& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const TaubNutPoint p = TaubNutPoint::at(x, m);
  const FrameF F = frame_at(p);
  const Mat4 Theta = coframe_matrix(F);
  auto field = [m](const RealPoint4& q, int k) { return frame_at(TaubNutPoint::at(q, m)).e[k].v; };
  // D[a][b] = derivative of e_b along e_a.
  std::array<std::array<Vec4, 4>, 4> D;
  for (int a = 0; a < 4; ++a) {
    const Vec4 X = F.e[a].v;
    for (int b = 0; b < 4; ++b)
      D[a][b] = (-field(x + 2 * h * X, b) + 8 * field(x + h * X, b) - 8 * field(x - h * X, b) +
                 field(x - 2 * h * X, b)) /
                (12 * h);
  }
  BracketTable t{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = Theta * (D[a][b] - D[b][a]);
  return t;
}

Connection connection_from_brackets(const BracketTable& c) {
  Connection g{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) g[a][b][k] = 0.5 * (c[a][b][k] - c[b][k][a] + c[k][a][b]);
  return g;
}

Mat4 nabla_e0_closed(const TaubNutPoint& p) {
  const double c = 1.0 / (4.0 * p.R * p.R * p.R * std::pow(p.V, 1.5));
  const double y[4] = {0.0, p.y1, p.y2, p.y3};
  Mat4 n = Mat4::Zero();
  static constexpr int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& ijk : cyc) {
    const int i = ijk[0], j = ijk[1], k = ijk[2];
    n(j, i) += c * y[k];
    n(k, i) -= c * y[j];
    n(0, i) -= c * y[i];
  }
  return n;
}

Mat4 nabla_f_dx(int j, const TaubNutPoint& p) {
  if (j < 0 || j > 3) throw std::out_of_range("coordinate index must be in 0..3");
  const FrameF F = frame_at(p);
  const auto Jac = frame_jacobians(p, F);
  const Connection G = connection_from_brackets(bracket_table_closed(p));
  // dx_j = sum_k e_k^j e_k^*, so
  // (nabla_{e_a} dx_j)(e_b) = e_a(e_b^j) - sum_c G_abc e_c^j.
  Mat4 N;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = Jac[b].row(j).dot(F.e[a].v);
      for (int c = 0; c < 4; ++c) s -= G[a][b][c] * F.e[c].v[j];
      N(a, b) = s;
    }
  const Mat4 Theta = coframe_matrix(F);
  return Theta.transpose() * N * Theta;
}

Mat4 nabla_f_dx_fd(int j, double m, const RealPoint4& x, double h) {
  if (j < 0 || j > 3) throw std::out_of_range("coordinate index must be in 0..3");
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  auto g = [m](const RealPoint4& q) { return metric_f(TaubNutPoint::at(q, m)).g; };
  std::array<Mat4, 4> dg;
  for (int a = 0; a < 4; ++a) {
    Vec4 e = Vec4::Zero();
    e[a] = h;
    dg[a] = (-g(x + 2 * e) + 8 * g(x + e) - 8 * g(x - e) + g(x - 2 * e)) / (12 * h);
  }
  const Mat4 gi = g(x).inverse();
  // (nabla_a dx_j)_b = -Gamma^j_ab.
  Mat4 T;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int l = 0; l < 4; ++l) s += gi(j, l) * (dg[b](l, a) + dg[a](l, b) - dg[l](a, b));
      T(a, b) = -0.5 * s;
    }
  return T;
}

ComparisonSample compare_with_euclidean(const TaubNutPoint& p) {
  ComparisonSample s;
  s.r2 = p.r2();
  s.lower = 2.0 * p.R;
  s.upper = 2.0 * p.R * std::exp(4.0 * p.m * p.R);
  const Mat4 f = metric_f(p).g;
  Eigen::SelfAdjointEigenSolver<Mat4> es(f, Eigen::EigenvaluesOnly);
  s.lambda_min = es.eigenvalues()[0];
  s.lambda_max = es.eigenvalues()[3];
  // det_e f = (4 det h)^2; the 2x2 Hermitian determinant avoids the
  // cancellation of the 4x4 expansion at large |z|.
  const Mat2c h = kahler_hermitian(p);
  const double dh = h(0, 0).real() * h(1, 1).real() - std::norm(h(0, 1));
  s.det = 16.0 * dh * dh;
  const double t = 4.0 * p.m * p.y1;
  s.closed_form_r2 = 2.0 * (p.R * std::cosh(t) + p.y1 * std::sinh(t));
  return s;
}

ComparisonReport comparison_bounds(const std::vector<TaubNutPoint>& samples) {
  ComparisonReport rep;
  constexpr double slack = 1e-12;
  for (const auto& p : samples) {
    const ComparisonSample s = compare_with_euclidean(p);
    ++rep.samples;
    if (s.r2 < s.lower * (1 - slack) || s.r2 > s.upper * (1 + slack)) ++rep.ordering_violations;
    rep.max_upper_ratio = std::max(rep.max_upper_ratio, s.lambda_max / s.r2);
    rep.max_lower_ratio = std::max(rep.max_lower_ratio, 1.0 / (s.lambda_min * s.r2));
    rep.max_det_error = std::max(rep.max_det_error, std::abs(s.det - 1.0));
  }
  return rep;
}

}  // namespace alflab::taubnut
