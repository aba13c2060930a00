#include "alflab/grid.hpp"

#include <gtest/gtest.h>

using namespace alflab;

TEST(Grid, SpecShape) {
  GridSpec g;
  EXPECT_EQ(g.nodes_per_axis(), 21);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.2);
  EXPECT_EQ(g.size(), 21u * 21 * 21 * 21);
  GridSpec bad;
  bad.layer = 1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = GridSpec{};
  bad.hi = bad.lo;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Grid, IndexRoundTripAndStrides) {
  GridSpec g;
  g.n = 3;
  GridField u(g);
  for (std::size_t i = 0; i < u.size(); i += 7) EXPECT_EQ(u.index(u.multi_index(i)), i);
  EXPECT_EQ(u.stride(3), 1u);
  EXPECT_EQ(u.stride(0), 7u * 7 * 7);
  const auto x = u.position(u.index({0, 6, 3, 1}));
  EXPECT_DOUBLE_EQ(x[0], g.lo);
  EXPECT_DOUBLE_EQ(x[1], g.hi);
  EXPECT_EQ(u.depth(u.index({3, 3, 3, 3})), 3);
  EXPECT_FALSE(u.interior(u.index({1, 3, 3, 3})));
  EXPECT_TRUE(u.interior(u.index({2, 3, 4, 3})));
}

TEST(Grid, StencilsExactOnQuadratics) {
  GridSpec g;
  g.n = 5;
  const GridField u(g, [](const RealPoint4& x) {
    return 0.5 * x[0] * x[0] + x[0] * x[2] - 2 * x[1] * x[3] + 3 * x[3] + x[2] * x[2];
  });
  const std::size_t c = u.index({4, 3, 5, 4});
  const RealPoint4 x = u.position(c);
  const Vec4 grad = grid_gradient(u, c);
  EXPECT_NEAR(grad[0], x[0] + x[2], 1e-12);
  EXPECT_NEAR(grad[3], -2 * x[1] + 3, 1e-12);
  const Mat4 H = grid_hessian(u, c);
  EXPECT_NEAR(H(0, 0), 1.0, 1e-11);
  EXPECT_NEAR(H(0, 2), 1.0, 1e-11);
  EXPECT_NEAR(H(1, 3), -2.0, 1e-11);
  EXPECT_NEAR(H(2, 2), 2.0, 1e-11);
  // d dbar |z|^2 = identity.
  const GridField r2(g, [](const RealPoint4& y) { return y.squaredNorm(); });
  EXPECT_LT((grid_complex_hessian(r2, c) - Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Grid, FieldNorms) {
  GridSpec g;
  g.n = 2;
  GridField u(g, 0.0);
  u[0] = -5.0;
  u[u.index({3, 3, 3, 3})] = 2.0;
  EXPECT_EQ(u.max_abs(), 5.0);
  EXPECT_EQ(u.max_abs_interior(), 2.0);
  const GridField v(g, 1.0);
  EXPECT_EQ(max_abs_difference(u, v), 6.0);
}
