#include "alflab/taubnut.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace alflab::taubnut {

namespace {

const cplx I(0.0, 1.0);

// Columns: real components of dPsi/dy1, dPsi/dy2, dPsi/dy3, dPsi/dtheta.
Mat4 chart_jacobian(double m, const Eigen::Vector3d& y, double theta) {
  const double R = y.norm();
  const double rho2 = y[1] * y[1] + y[2] * y[2];
  if (!(rho2 > 0.0)) throw std::domain_error("chart is singular on the y1-axis");
  const double ep = std::exp(4 * m * y[0]), em = 1.0 / ep;
  const double a = std::sqrt((R + y[0]) * ep);
  const double b = std::sqrt((R - y[0]) * em);
  const double beta = std::atan2(y[1], -y[2]);
  const cplx z1 = std::polar(a, theta), z2 = std::polar(b, beta - theta);
  const cplx ph1 = std::polar(1.0, theta), ph2 = std::polar(1.0, beta - theta);
  const Eigen::Vector3d dbeta(0.0, -y[2] / rho2, y[1] / rho2);

  Mat4 J;
  for (int i = 0; i < 3; ++i) {
    const double d1 = (i == 0) ? 1.0 : 0.0;
    const double da2 = ep * (y[i] / R + d1 + 4 * m * d1 * (R + y[0]));
    const double db2 = em * (y[i] / R - d1 - 4 * m * d1 * (R - y[0]));
    const cplx dz1 = da2 / (2 * a) * ph1;
    const cplx dz2 = db2 / (2 * b) * ph2 + I * z2 * dbeta[i];
    J.col(i) = Vec4(dz1.real(), dz1.imag(), dz2.real(), dz2.imag());
  }
  const cplx t1 = I * z1, t2 = -I * z2;
  J.col(3) = Vec4(t1.real(), t1.imag(), t2.real(), t2.imag());
  return J;
}

ComplexPoint chart_point(double m, const Eigen::Vector3d& y, double theta) {
  const double R = y.norm();
  const double a = std::sqrt((R + y[0]) * std::exp(4 * m * y[0]));
  const double b = std::sqrt((R - y[0]) * std::exp(-4 * m * y[0]));
  const double beta = std::atan2(y[1], -y[2]);
  return {std::polar(a, theta), std::polar(b, beta - theta)};
}

}  // namespace

Mat4 gibbons_hawking_chart_metric(double m, const Vec4& q) {
  const Eigen::Vector3d y = q.head<3>();
  const double R = y.norm();
  if (!(R > 0.0)) throw std::domain_error("chart metric is singular at the origin");
  const TaubNutPoint p = TaubNutPoint::at(chart_point(m, y, q[3]), m);
  const Mat4 J = chart_jacobian(m, y, q[3]);
  const Vec4 w = J.transpose() * eta_at(p).a;  // (A1, A2, A3, eta(dPsi/dtheta) = 1)
  const double V = 2 * m + 1 / (2 * R);
  Mat4 g = Mat4::Zero();
  g.topLeftCorner<3, 3>() = V * Eigen::Matrix3d::Identity();
  g += w * w.transpose() / V;
  return g;
}

Eigen::Vector3d monopole_connection(double /*m*/, const Eigen::Vector3d& y, double /*theta*/) {
  const double R = y.norm();
  const double rho2 = y[1] * y[1] + y[2] * y[2];
  if (!(rho2 > 0.0)) throw std::domain_error("monopole gauge is singular on the y1-axis");
  const double c = -(R - y[0]) / (2 * R);
  return {0.0, -c * y[2] / rho2, c * y[1] / rho2};
}

CurvatureSample riemann_fd(const std::function<Mat4(const Vec4&)>& metric, const Vec4& q, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const Mat4 g0 = metric(q);
  std::array<Vec4, 4> e;
  for (int a = 0; a < 4; ++a) {
    e[a] = Vec4::Zero();
    e[a][a] = h;
  }
  std::array<Mat4, 4> d1, dp, dm;
  for (int a = 0; a < 4; ++a) {
    dp[a] = metric(q + e[a]);
    dm[a] = metric(q - e[a]);
    d1[a] = (dp[a] - dm[a]) / (2 * h);
  }
  std::array<std::array<Mat4, 4>, 4> d2;
  for (int a = 0; a < 4; ++a) {
    d2[a][a] = (dp[a] - 2 * g0 + dm[a]) / (h * h);
    for (int b = a + 1; b < 4; ++b) {
      d2[a][b] = (metric(q + e[a] + e[b]) - metric(q + e[a] - e[b]) - metric(q - e[a] + e[b]) +
                  metric(q - e[a] - e[b])) /
                 (4 * h * h);
      d2[b][a] = d2[a][b];
    }
  }
  const Mat4 gi = g0.inverse();
  // Christoffel symbols of the first kind, G1[c](a,b) = Gamma_{c,ab}, then raised.
  std::array<Mat4, 4> G1, G2;
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) G1[c](a, b) = 0.5 * (d1[b](c, a) + d1[a](c, b) - d1[c](a, b));
  for (int c = 0; c < 4; ++c) {
    G2[c].setZero();
    for (int l = 0; l < 4; ++l) G2[c] += gi(c, l) * G1[l];
  }

  CurvatureSample out;
  auto idx = [](int a, int b, int c, int d) { return ((a * 4 + b) * 4 + c) * 4 + d; };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double r = 0.5 * (d2[b][c](a, d) + d2[a][d](b, c) - d2[b][d](a, c) - d2[a][c](b, d));
          for (int f = 0; f < 4; ++f) r += G1[f](b, c) * G2[f](a, d) - G1[f](b, d) * G2[f](a, c);
          out.rm[idx(a, b, c, d)] = r;
        }

  // Full contraction with the inverse metric in each slot.
  std::array<double, 256> up{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int p = 0; p < 4; ++p)
            for (int qq = 0; qq < 4; ++qq)
              for (int r = 0; r < 4; ++r)
                for (int t = 0; t < 4; ++t)
                  s += gi(a, p) * gi(b, qq) * gi(c, r) * gi(d, t) * out.rm[idx(p, qq, r, t)];
          up[idx(a, b, c, d)] = s;
        }
  double n2 = 0.0;
  for (int i = 0; i < 256; ++i) n2 += out.rm[i] * up[i];
  out.norm = std::sqrt(std::max(0.0, n2));

  Mat4 ric = Mat4::Zero();
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d)
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) ric(b, d) += gi(a, c) * out.rm[idx(a, b, c, d)];
  out.ricci_norm = tensor_norm(ric, Metric4{g0});
  return out;
}

CurvatureDecay curvature_decay(double m, const std::vector<double>& radii) {
  if (!(m > 0.0)) throw std::invalid_argument("curvature decay needs m > 0");
  CurvatureDecay out;
  out.radii = radii;
  constexpr double theta = 0.3;
  auto metric = [m](const Vec4& q) { return gibbons_hawking_chart_metric(m, q); };
  for (double R : radii) {
    if (!(R > 0.0)) throw std::invalid_argument("radii must be positive");
    std::vector<Eigen::Vector3d> dirs;
    for (double ang : {0.4, 2.0, 3.5, 5.1}) dirs.emplace_back(0.0, std::cos(ang), std::sin(ang));
    // Off-equator probes only while e^{4m|y1|} stays moderate.
    const double t = 0.3;
    if (4 * m * t * R <= 40.0) {
      const double c = std::sqrt(1 - t * t);
      dirs.emplace_back(t, c * std::cos(1.1), c * std::sin(1.1));
      dirs.emplace_back(-t, c * std::cos(4.2), c * std::sin(4.2));
    }
    double sum = 0.0;
    for (const auto& d : dirs) {
      const Eigen::Vector3d y = R * d;
      const Vec4 q(y[0], y[1], y[2], theta);
      const CurvatureSample s = riemann_fd(metric, q, 1e-3 * R);
      if (!std::isfinite(s.norm)) {
        std::ostringstream msg;
        msg << "curvature probe failed at R = " << R;
        throw std::runtime_error(msg.str());
      }
      out.probes.push_back({R, y, s.norm, s.ricci_norm});
      out.max_ricci = std::max(out.max_ricci, s.ricci_norm);
      sum += s.norm;
    }
    out.mean_norm.push_back(sum / static_cast<double>(dirs.size()));
  }
  out.slope = loglog_slope(out.radii, out.mean_norm);
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& v) {
  if (x.size() != v.size() || x.size() < 2) throw std::invalid_argument("slope fit needs >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(v[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace alflab::taubnut
