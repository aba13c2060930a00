#include "alflab/dihedral.hpp"
#include "alflab/suites.hpp"
#include "alflab/taubnut.hpp"

#include <gtest/gtest.h>

using namespace alflab;
using namespace alflab::dihedral;

class DihedralOrders : public ::testing::TestWithParam<int> {};

TEST_P(DihedralOrders, GroupHasOrder4kAndIsClosed) {
  const int k = GetParam();
  const auto g = group_elements(k);
  ASSERT_EQ(g.size(), static_cast<std::size_t>(4 * k));
  auto find = [&](const Mat2c& m) {
    for (const auto& e : g)
      if ((e.matrix - m).cwiseAbs().maxCoeff() < 1e-12) return true;
    return false;
  };
  for (const auto& a : g) {
    EXPECT_NEAR(std::abs(a.matrix.determinant() - 1.0), 0.0, 1e-12);
    for (const auto& b : g) EXPECT_TRUE(find(a.matrix * b.matrix));
  }
}

TEST_P(DihedralOrders, PotentialMetricAndTripleAreInvariant) {
  const int k = GetParam();
  const auto pts = suites::random_points(21, "unit/dihedral", 200, 0.1, 3.0);
  const auto rep = check_potential_invariance(k, 1.0, pts);
  EXPECT_EQ(rep.samples, pts.size());
  EXPECT_LE(rep.max_rotation_u, 1e-12);
  EXPECT_LE(rep.max_swap, 1e-12);
  EXPECT_LE(rep.max_phi, 1e-9);
  EXPECT_LE(rep.max_metric, 1e-9);
  EXPECT_LE(rep.max_triple, 1e-10);
  EXPECT_LE(rep.max_syzygy, 1e-10);
  EXPECT_GT(rep.min_fixed_gap, 0.0);
}

INSTANTIATE_TEST_SUITE_P(Orders, DihedralOrders, ::testing::Values(2, 3, 5));

TEST(Dihedral, TauSwapsUAndV) {
  const ComplexPoint z{cplx(0.9, 0.1), cplx(0.2, -0.3)};
  const auto a = taubnut::solve_uv(z, 1.0);
  const auto b = taubnut::solve_uv(act(tau_matrix(), z), 1.0);
  EXPECT_NEAR(a.u, b.v, 1e-14);
  EXPECT_NEAR(a.v, b.u, 1e-14);
}

TEST(Dihedral, ZetaHasOrder2k) {
  for (int k : {2, 3, 5}) {
    Mat2c p = Mat2c::Identity();
    for (int i = 0; i < 2 * k; ++i) p = p * zeta_matrix(k);
    EXPECT_LT((p - Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((tau_matrix() * tau_matrix() + Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Dihedral, SyzygyHoldsForLargeOrders) {
  const auto pts = suites::random_points(22, "unit/syzygy", 50, 0.2, 1.5);
  for (int k : {2, 7, 12})
    for (const auto& z : pts) EXPECT_LE(syzygy_residual(invariant_triple(z, k), k), 1e-10);
}

TEST(Dihedral, NonDiagonalPolyhedralGeneratorsBreakInvariance) {
  const auto pts = suites::random_points(23, "unit/witness", 100, 0.1, 3.0);
  bool saw_tetrahedral = false;
  for (const auto& w : polyhedral_generators()) {
    EXPECT_LT((w.matrix.adjoint() * w.matrix - Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-12) << w.name;
    const double d = potential_defect(w.matrix, 1.0, pts);
    if (std::abs(w.matrix(0, 1)) > 0.0) EXPECT_GE(d, 1e-3) << w.name;
    else EXPECT_LE(d, 1e-12) << w.name;
    saw_tetrahedral |= w.name == "tetrahedral";
  }
  EXPECT_TRUE(saw_tetrahedral);
}
