#include "alflab/taubnut.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace alflab::taubnut {

namespace {

const cplx I(0.0, 1.0);

double initial_guess(double A, double B, double m) {
  const double d = A - B;
  const double t = 2.0 * m * std::abs(d);
  if (t < 1.0) return d / (1.0 + t);
  // Dominant term alone: A e^{-2ms} = s, i.e. 2ms e^{2ms} = 2mA.
  const double w = std::log(t) - std::log(std::log(t) + 1.0);
  return std::copysign(std::max(w, 0.0) / (2.0 * m), d);
}

}  // namespace

double solve_s(double A, double B, double m) {
  if (m < 0.0) throw std::invalid_argument("mass parameter must be nonnegative");
  if (A == 0.0 && B == 0.0) return 0.0;
  if (m == 0.0) return A - B;

  auto h = [&](double s) { return A * std::exp(-2 * m * s) - B * std::exp(2 * m * s) - s; };
  double lo = -B, hi = A;
  double s = std::clamp(initial_guess(A, B, m), lo, hi);
  for (int it = 0; it < 400; ++it) {
    const double a = A * std::exp(-2 * m * s);
    const double b = B * std::exp(2 * m * s);
    const double hs = a - b - s;
    // Below this the sign of hs is rounding noise.
    if (std::abs(hs) <= 4.0 * std::numeric_limits<double>::epsilon() * (a + b + std::abs(s))) return s;
    if (hs > 0.0)
      lo = s;
    else
      hi = s;
    const double dh = -2 * m * (a + b) - 1.0;
    double next = s - hs / dh;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    const double tol =
        2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(next), 1e-16 * (A + B));
    if (std::abs(next - s) <= tol || hi - lo <= tol) {
      // Keep whichever endpoint-adjacent iterate has the smaller residual.
      return std::abs(h(next)) < std::abs(hs) ? next : s;
    }
    s = next;
  }
  throw std::runtime_error("solve_s: iteration cap reached (monotone equation; solver bug)");
}

UV solve_uv(const ComplexPoint& z, double m) {
  const double A = std::norm(z.z1), B = std::norm(z.z2);
  const double s = solve_s(A, B, m);
  return {std::sqrt(A) * std::exp(-m * s), std::sqrt(B) * std::exp(m * s)};
}

TaubNutPoint TaubNutPoint::at(const ComplexPoint& z, double m) {
  TaubNutPoint p;
  p.m = m;
  p.z = z;
  p.x = z.real();
  const double A = std::norm(z.z1), B = std::norm(z.z2);
  const double s = solve_s(A, B, m);
  p.em = std::exp(-2 * m * s);
  p.ep = std::exp(2 * m * s);
  p.u2 = A * p.em;
  p.v2 = B * p.ep;
  p.u = std::sqrt(p.u2);
  p.v = std::sqrt(p.v2);
  p.y1 = 0.5 * s;
  const cplx w = z.z1 * z.z2;
  p.y2 = w.imag();
  p.y3 = -w.real();
  p.R = 0.5 * (p.u2 + p.v2);
  p.V = p.R > 0.0 ? 2.0 * m + 1.0 / (2.0 * p.R) : std::numeric_limits<double>::infinity();
  return p;
}

TaubNutPoint TaubNutPoint::at(const RealPoint4& x, double m) { return at(ComplexPoint::from_real(x), m); }

double TaubNutPoint::implicit_residual() const {
  const double d = u * u - v * v;
  const double a = std::abs(z.z1), b = std::abs(z.z2);
  const double r1 = std::abs(a - std::exp(m * d) * u) / std::max(a, 1e-300);
  const double r2 = std::abs(b - std::exp(-m * d) * v) / std::max(b, 1e-300);
  return std::max(a > 0.0 ? r1 : u, b > 0.0 ? r2 : v);
}

TaubNutPoint from_moment(double m, const Eigen::Vector3d& y, double theta) {
  const double R = y.norm();
  const double a = std::sqrt((R + y[0]) * std::exp(4 * m * y[0]));
  const double b = std::sqrt((R - y[0]) * std::exp(-4 * m * y[0]));
  const double beta = std::atan2(y[1], -y[2]);
  const ComplexPoint z{std::polar(a, theta), std::polar(b, beta - theta)};
  return TaubNutPoint::at(z, m);
}

double potential_phi(const TaubNutPoint& p) {
  return 0.25 * (p.u2 + p.v2 + p.m * (p.u2 * p.u2 + p.v2 * p.v2));
}

UVPartials duv_dz(const TaubNutPoint& p) {
  if (std::abs(p.z.z1) == 0.0 || std::abs(p.z.z2) == 0.0)
    throw std::domain_error("duv_dz: partial derivatives are singular on the axes");
  const double m = p.m;
  const double D = 1.0 + 2.0 * m * (p.u2 + p.v2);
  UVPartials d;
  d.du_dz1 = (1.0 + 2.0 * m * p.v2) * p.u / (2.0 * p.z.z1 * D);
  d.du_dz2 = m * p.u * p.v2 / (p.z.z2 * D);
  d.dv_dz1 = m * p.u2 * p.v / (p.z.z1 * D);
  d.dv_dz2 = (1.0 + 2.0 * m * p.u2) * p.v / (2.0 * p.z.z2 * D);
  return d;
}

Mat2c kahler_hermitian(const TaubNutPoint& p) {
  const double m = p.m;
  const double q = 1.0 + 4.0 * m * p.R;
  const double A = std::norm(p.z.z1), B = std::norm(p.z.z2);
  Mat2c h;
  h(0, 0) = p.em * (1.0 + 2.0 * m * p.v2) / (2.0 * q) + m * B;
  h(1, 1) = p.ep * (1.0 + 2.0 * m * p.u2) / (2.0 * q) + m * A;
  h(0, 1) = m * std::conj(p.z.z1) * p.z.z2 * (1.0 + 1.0 / q);
  h(1, 0) = m * std::conj(p.z.z2) * p.z.z1 * (1.0 + 1.0 / q);
  return h;
}

TwoForm4 kahler_form_f(const TaubNutPoint& p) { return hermitian_to_two_form(kahler_hermitian(p)); }

TwoForm4 kahler_form_fd(double m, const RealPoint4& x, double h) {
  return ddc_fd([m](const RealPoint4& q) { return potential_phi(TaubNutPoint::at(q, m)); }, x, h);
}

Metric4 metric_f(const TaubNutPoint& p) {
  return metric_from_kahler(kahler_form_f(p), standard_complex_structures().I1);
}

namespace {
void require_off_origin(const TaubNutPoint& p) {
  if (!(p.R > 0.0)) throw std::domain_error("expression is singular at the origin");
}
}  // namespace

std::array<OneForm4, 3> dy_at(const TaubNutPoint& p) {
  const Vec4& x = p.x;
  const double q = 1.0 + 4.0 * p.m * p.R;
  std::array<OneForm4, 3> dy;
  dy[0].a = Vec4(p.em * x[0], p.em * x[1], -p.ep * x[2], -p.ep * x[3]) / q;
  dy[1].a = Vec4(x[3], x[2], x[1], x[0]);
  dy[2].a = Vec4(-x[2], x[3], -x[0], x[1]);
  return dy;
}

OneForm4 eta_at(const TaubNutPoint& p) {
  require_off_origin(p);
  const Vec4& x = p.x;
  return {Vec4(-p.em * x[1], p.em * x[0], p.ep * x[3], -p.ep * x[2]) / (2.0 * p.R)};
}

VectorField4 xi_at(const TaubNutPoint& p) {
  const Vec4& x = p.x;
  return {Vec4(-x[1], x[0], x[3], -x[2])};
}

VectorField4 zeta_at(const TaubNutPoint& p) {
  require_off_origin(p);
  const Vec4& x = p.x;
  return {Vec4(p.ep * x[3], p.ep * x[2], p.em * x[1], p.em * x[0]) / (2.0 * p.R)};
}

Eigen::Vector3d grad_V(const TaubNutPoint& p) {
  require_off_origin(p);
  return -p.y() / (2.0 * p.R * p.R * p.R);
}

double fiber_length(const TaubNutPoint& p) {
  require_off_origin(p);
  return 2.0 * std::numbers::pi / std::sqrt(p.V);
}

Metric4 metric_gibbons_hawking(const TaubNutPoint& p) {
  const auto dy = dy_at(p);
  const OneForm4 eta = eta_at(p);
  Mat4 g = Mat4::Zero();
  for (const auto& d : dy) g += p.V * d.a * d.a.transpose();
  g += eta.a * eta.a.transpose() / p.V;
  return {g};
}

TwoForm4 kahler_form_gibbons_hawking(const TaubNutPoint& p) {
  const auto dy = dy_at(p);
  return wedge(dy[0], eta_at(p)) + p.V * wedge(dy[1], dy[2]);
}

}  // namespace alflab::taubnut
