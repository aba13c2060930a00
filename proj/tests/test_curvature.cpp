#include "alflab/taubnut.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace alflab;
using namespace alflab::taubnut;

TEST(Curvature, FlatMetricHasNoCurvature) {
  const auto s = riemann_fd([](const Vec4&) { return Mat4::Identity(); }, Vec4(1, 2, 3, 4), 1e-2);
  EXPECT_LT(s.norm, 1e-12);
  EXPECT_LT(s.ricci_norm, 1e-12);
}

TEST(Curvature, RoundSphereTimesPlane) {
  // S^2 of radius a times R^2 in (theta, phi, x, y): |Rm| = 2/a^2, |Ric| = sqrt(2)/a^2.
  const double a = 1.7;
  const auto g = [a](const Vec4& q) {
    Mat4 m = Mat4::Identity();
    m(0, 0) = a * a;
    m(1, 1) = a * a * std::sin(q[0]) * std::sin(q[0]);
    return m;
  };
  const auto s = riemann_fd(g, Vec4(1.1, 0.3, 0, 0), 1e-3);
  EXPECT_NEAR(s.norm, 2 / (a * a), 1e-5);
  EXPECT_NEAR(s.ricci_norm, std::sqrt(2.0) / (a * a), 1e-5);
}

TEST(Curvature, ChartMetricAgreesWithGibbonsHawking) {
  // The chart metric has V on the y-block and 1/V on the fibre.
  const double m = 1.0;
  const Vec4 q(3.0, -1.0, 2.0, 0.4);
  const Mat4 g = gibbons_hawking_chart_metric(m, q);
  const double V = 2 * m + 1 / (2 * Eigen::Vector3d(q[0], q[1], q[2]).norm());
  EXPECT_GT(g.determinant(), 0.0);
  EXPECT_NEAR(g.determinant(), V * V, 1e-10 * V * V);
}

TEST(Curvature, TaubNutIsRicciFlatWithCubicDecay) {
  const auto d = curvature_decay(1.0, {10.0, 30.0, 100.0});
  EXPECT_LE(d.max_ricci, 1e-4);
  EXPECT_GE(d.slope, -3.3);
  EXPECT_LE(d.slope, -2.8);
  for (std::size_t i = 1; i < d.mean_norm.size(); ++i) EXPECT_LT(d.mean_norm[i], d.mean_norm[i - 1]);
}

TEST(Curvature, LogLogSlopeOfPowerLaw) {
  EXPECT_NEAR(loglog_slope({1, 10, 100}, {5, 5e-3, 5e-6}), -3.0, 1e-12);
}
