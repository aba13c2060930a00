#pragma once

#include "alflab/tensor.hpp"

#include <array>
#include <functional>
#include <vector>

namespace alflab::taubnut {

// Root s = u^2 - v^2 of |z1|^2 e^{-2ms} - |z2|^2 e^{2ms} - s = 0, where
// A = |z1|^2 and B = |z2|^2. The left side is strictly decreasing in s.
[[nodiscard]] double solve_s(double A, double B, double m);

struct UV {
  double u = 0.0;
  double v = 0.0;
};

// Nonnegative solution of |z1| = e^{m(u^2-v^2)} u, |z2| = e^{m(v^2-u^2)} v.
[[nodiscard]] UV solve_uv(const ComplexPoint& z, double m);

struct TaubNutPoint {
  double m = 0.0;
  ComplexPoint z;
  RealPoint4 x = RealPoint4::Zero();
  double u = 0.0, v = 0.0;
  double u2 = 0.0, v2 = 0.0;
  double y1 = 0.0, y2 = 0.0, y3 = 0.0;
  double R = 0.0;
  double V = 0.0;   // +inf at the origin
  double ep = 1.0;  // e^{4 m y1} = |z2|^2 / v^2
  double em = 1.0;  // e^{-4 m y1} = u^2 / |z1|^2

  [[nodiscard]] static TaubNutPoint at(const ComplexPoint& z, double m);
  [[nodiscard]] static TaubNutPoint at(const RealPoint4& x, double m);

  [[nodiscard]] double r2() const { return x.squaredNorm(); }
  [[nodiscard]] Eigen::Vector3d y() const { return {y1, y2, y3}; }
  // Largest relative residual of the two implicit equations.
  [[nodiscard]] double implicit_residual() const;
};

// Point with prescribed moment coordinates y and fibre angle theta; this is
// the explicit inverse of the moment map (|z1|^2 = (R+y1) e^{4my1}, etc.).
[[nodiscard]] TaubNutPoint from_moment(double m, const Eigen::Vector3d& y, double theta);

[[nodiscard]] double potential_phi(const TaubNutPoint& p);

struct UVPartials {
  cplx du_dz1, du_dz2, dv_dz1, dv_dz2;
};
// Throws std::domain_error when z1 = 0 or z2 = 0.
[[nodiscard]] UVPartials duv_dz(const TaubNutPoint& p);

// Coefficients h_jk of omega_f = sum h_jk i dz_j ^ dzbar_k. The factors
// u^2/|z1|^2 and v^2/|z2|^2 are written as e^{-4my1}, e^{4my1}, so the
// expression is regular on the axes.
[[nodiscard]] Mat2c kahler_hermitian(const TaubNutPoint& p);
[[nodiscard]] TwoForm4 kahler_form_f(const TaubNutPoint& p);
// dd^c of the potential by finite differences, independent of the closed form.
[[nodiscard]] TwoForm4 kahler_form_fd(double m, const RealPoint4& x, double h);

// f = omega_f(., I1 .).
[[nodiscard]] Metric4 metric_f(const TaubNutPoint& p);
// f = V (dy1^2 + dy2^2 + dy3^2) + V^{-1} eta^2; needs R > 0.
[[nodiscard]] Metric4 metric_gibbons_hawking(const TaubNutPoint& p);
// omega_f = dy1 ^ eta + V dy2 ^ dy3; needs R > 0.
[[nodiscard]] TwoForm4 kahler_form_gibbons_hawking(const TaubNutPoint& p);

[[nodiscard]] std::array<OneForm4, 3> dy_at(const TaubNutPoint& p);
[[nodiscard]] OneForm4 eta_at(const TaubNutPoint& p);
[[nodiscard]] VectorField4 xi_at(const TaubNutPoint& p);
[[nodiscard]] VectorField4 zeta_at(const TaubNutPoint& p);

// Gradient of V = 2m + 1/(2R) in the y variables.
[[nodiscard]] Eigen::Vector3d grad_V(const TaubNutPoint& p);

[[nodiscard]] double fiber_length(const TaubNutPoint& p);

// Orthonormal frame (V^{1/2} xi, -V^{1/2} I1 xi, V^{-1/2} zeta, V^{-1/2} I1 zeta)
// and its dual (V^{-1/2} eta, V^{1/2} dy1, V^{1/2} dy2, V^{1/2} dy3).
struct FrameF {
  std::array<VectorField4, 4> e;
  std::array<OneForm4, 4> dual;
  OneForm4 eta, dy1, dy2, dy3;
  VectorField4 xi, zeta;
};
[[nodiscard]] FrameF frame_at(const TaubNutPoint& p);

// J1 = I1 and J2, J3 defined on the coframe by J2 (V dy2) = eta, J2 dy3 = dy1,
// J3 (V dy3) = eta, J3 dy1 = dy2.
[[nodiscard]] ComplexStructures hyperkahler_triple(const TaubNutPoint& p);

// Expansions of dx_j in (eta, dy1, dy2, dy3) and of d/dx_j in (xi, I1 xi, zeta, I1 zeta).
struct Dictionary {
  std::array<Vec4, 4> dx;
  std::array<Vec4, 4> d_dx;
};
[[nodiscard]] Dictionary dictionary_dx(const TaubNutPoint& p);

// table[a][b] = frame coefficients of [e_a, e_b].
using BracketTable = std::array<std::array<Vec4, 4>, 4>;
[[nodiscard]] BracketTable bracket_table_closed(const TaubNutPoint& p);
// Finite-difference Lie brackets of the frame fields, stepping along the
// frame vectors themselves (fourth-order stencil).
[[nodiscard]] BracketTable bracket_table_fd(double m, const RealPoint4& x, double h);
[[nodiscard]] double default_frame_step(double m);

// gamma[a][b][c] = f(nabla_{e_a} e_b, e_c), from the brackets by Koszul.
using Connection = std::array<std::array<Vec4, 4>, 4>;
[[nodiscard]] Connection connection_from_brackets(const BracketTable& c);
// nabla e_0 from the displayed sum over cyclic triples: entry [a][c] is
// f(nabla_{e_a} e_0, e_c).
[[nodiscard]] Mat4 nabla_e0_closed(const TaubNutPoint& p);

// nabla^f dx_j as a covariant 2-tensor in x-components, T(a, b) = (nabla_{d_a} dx_j)(d_b).
[[nodiscard]] Mat4 nabla_f_dx(int j, const TaubNutPoint& p);
// Same quantity from Christoffel symbols of f by finite differences.
[[nodiscard]] Mat4 nabla_f_dx_fd(int j, double m, const RealPoint4& x, double h);

struct ComparisonSample {
  double r2 = 0.0;
  double lower = 0.0;  // 2R
  double upper = 0.0;  // 2R e^{4mR}
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double det = 0.0;  // det_e(f)
  double closed_form_r2 = 0.0;  // 2(R cosh(4my1) + y1 sinh(4my1))
};
[[nodiscard]] ComparisonSample compare_with_euclidean(const TaubNutPoint& p);

struct ComparisonReport {
  std::size_t samples = 0;
  std::size_t ordering_violations = 0;
  double max_upper_ratio = 0.0;  // max lambda_max / r^2
  double max_lower_ratio = 0.0;  // max 1/(lambda_min r^2)
  double max_det_error = 0.0;
};
[[nodiscard]] ComparisonReport comparison_bounds(const std::vector<TaubNutPoint>& samples);

// Moment coordinates (y, theta) of a chart in which f reads
// V |dy|^2 + V^{-1} (dtheta + A)^2, with A_i = eta(dPsi/dy_i).
[[nodiscard]] Mat4 gibbons_hawking_chart_metric(double m, const Vec4& q);
[[nodiscard]] Eigen::Vector3d monopole_connection(double m, const Eigen::Vector3d& y, double theta);

struct CurvatureSample {
  std::array<double, 256> rm{};  // R_abcd, index ((a*4+b)*4+c)*4+d
  double norm = 0.0;
  double ricci_norm = 0.0;
};
// Riemann tensor from second central differences of metric components and
// Christoffel symbols assembled from first differences.
[[nodiscard]] CurvatureSample riemann_fd(const std::function<Mat4(const Vec4&)>& metric, const Vec4& q,
                                         double h);

struct CurvatureProbe {
  double R = 0.0;
  Eigen::Vector3d y = Eigen::Vector3d::Zero();
  double rm_norm = 0.0;
  double ricci_norm = 0.0;
};
struct CurvatureDecay {
  std::vector<CurvatureProbe> probes;
  std::vector<double> radii;
  std::vector<double> mean_norm;
  double slope = 0.0;
  double max_ricci = 0.0;
};
// Probes at each radius on several y-directions; metric in the chart above,
// step h = 1e-3 R.
[[nodiscard]] CurvatureDecay curvature_decay(double m, const std::vector<double>& radii);

// Least-squares slope of log(v) against log(x).
[[nodiscard]] double loglog_slope(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace alflab::taubnut
