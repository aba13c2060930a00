#include "alflab/monge_ampere.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace alflab;
using namespace alflab::ma;

namespace {

GridSpec small_grid(int n = 7) {
  GridSpec g;
  g.n = n;
  return g;
}

BackgroundKahler flat() { return {BackgroundKahler::Kind::euclidean, 0.0}; }

SolverConfig bump_config(int n) {
  SolverConfig c;
  c.grid = small_grid(n);
  c.bump.amplitude = 0.1;
  c.bump.width = 1.5;
  return c;
}

}  // namespace

TEST(MongeAmpere, ZeroPotentialZeroSourceHasZeroResidual) {
  for (const auto& bg : {flat(), BackgroundKahler{}}) {
    const GridSpec g = small_grid();
    Problem P(g, bg, GridField(g));
    const auto r = ma_residual(P, GridField(g), 1.0);
    EXPECT_LT(r.max_abs, 1e-14);
    EXPECT_EQ(r.cone_violations, 0u);
    EXPECT_GT(r.min_eigenvalue, 0.0);
  }
}

TEST(MongeAmpere, QuadraticPotentialScalesDeterminant) {
  // q = c |z|^2 / 2 has i ddbar q = c omega_e, so the ratio is (1 + c)^2.
  const double c = 0.3, fval = 0.05;
  const GridSpec g = small_grid();
  Problem P(g, flat(), GridField(g, fval));
  const GridField q(g, [c](const RealPoint4& x) { return 0.5 * c * x.squaredNorm(); });
  const auto r = ma_residual(P, q, 1.0);
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q.interior(i)) EXPECT_NEAR(r.value[i], (1 + c) * (1 + c) - std::exp(fval), 1e-12);
}

TEST(MongeAmpere, ConeViolationIsCounted) {
  const GridSpec g = small_grid();
  Problem P(g, flat(), GridField(g));
  const GridField q(g, [](const RealPoint4& x) { return -0.75 * x.squaredNorm(); });
  const auto r = ma_residual(P, q, 1.0);
  EXPECT_GT(r.cone_violations, 0u);
  EXPECT_LT(r.min_eigenvalue, 0.0);
}

TEST(LinearizedSolve, ZeroRightHandSideGivesZero) {
  const GridSpec g = small_grid();
  Problem P(g, BackgroundKahler{}, GridField(g));
  const auto psi = linearized_solve(P, GridField(g), GridField(g));
  EXPECT_EQ(psi.max_abs(), 0.0);
}

TEST(LinearizedSolve, RecoversQuadraticWithBoundaryData) {
  const GridSpec g = small_grid(9);
  Problem P(g, flat(), GridField(g));
  const GridField q(g, [](const RealPoint4& x) { return x[0] * x[0] - 0.5 * x[1] * x[3] + x[2] * x[2]; });
  const GridField rhs = linearized_apply(P, GridField(g), q);
  LinearStats st;
  const auto psi = linearized_solve(P, GridField(g), rhs, &st, &q);
  EXPECT_TRUE(st.converged);
  EXPECT_LE(st.relative_residual, 1e-10);
  EXPECT_LT(max_abs_difference(psi, q), 1e-8);
}

namespace {

// Extremes of the solution of L psi = e^{-|x|^2} with zero boundary data.
std::pair<double, double> max_principle_extremes(int n, const BackgroundKahler& bg) {
  const GridSpec g = small_grid(n);
  Problem P(g, bg, GridField(g));
  const GridField phi(g, [](const RealPoint4& x) { return 0.02 * std::exp(-x.squaredNorm()); });
  GridField rhs(g, [](const RealPoint4& x) { return std::exp(-x.squaredNorm()); });
  for (std::size_t i = 0; i < rhs.size(); ++i)
    if (!rhs.interior(i)) rhs[i] = 0.0;
  const auto psi = linearized_solve(P, phi, rhs);
  double hi = -1e300, lo = 1e300;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    hi = std::max(hi, psi[i]);
    lo = std::min(lo, psi[i]);
  }
  return {hi, lo};
}

}  // namespace

TEST(LinearizedSolve, MaximumPrinciple) {
  const auto [hi, lo] = max_principle_extremes(9, flat());
  EXPECT_LE(hi, 1e-14);
  EXPECT_LT(lo, 0.0);
}

TEST(LinearizedSolve, MaximumPrincipleOvershootVanishesUnderRefinement) {
  // Mixed second differences make the curved stencil non-monotone; the positive part is a discretization error.
  const auto [hi9, lo9] = max_principle_extremes(9, BackgroundKahler{});
  const auto [hi17, lo17] = max_principle_extremes(17, BackgroundKahler{});
  EXPECT_LT(lo17, 0.0);
  EXPECT_LE(hi17, 0.25 * hi9);
  EXPECT_LE(hi17, 1e-4 * std::abs(lo17));
}

TEST(Continuity, ZeroSourceStaysZero) {
  const GridSpec g = small_grid();
  Problem P(g, BackgroundKahler{}, GridField(g));
  const auto st = continuity_method(P);
  EXPECT_TRUE(st.reached_one);
  EXPECT_LE(st.phi.max_abs(), 1e-10);
  double prev = 0.0;
  for (const auto& s : st.steps) {
    EXPECT_GT(s.t, prev);
    prev = s.t;
  }
}

TEST(Continuity, BumpReachesOneAndMatchesDirectSolve) {
  SolverConfig c = bump_config(9);
  const auto path = run_solver(c);
  ASSERT_TRUE(path.state.reached_one);
  EXPECT_LE(path.state.residual, 1e-8);
  EXPECT_GE(path.min_trace_ratio, 1.0 - 1e-9);
  c.initial_perturbation = 0.01;
  for (std::uint64_t seed : {1u, 2u}) {
    c.seed = seed;
    const auto direct = run_solver(c);
    ASSERT_TRUE(direct.state.reached_one);
    EXPECT_LE(max_abs_difference(direct.state.phi, path.state.phi), 1e-7);
  }
}

TEST(Continuity, NewtonConvergesQuadratically) {
  const SolverConfig c = bump_config(9);
  Problem P(c.grid, c.background, GridField(c.grid, [&](const RealPoint4& x) { return c.bump(x); }));
  const auto nr = newton_solve(P, 1.0, GridField(c.grid));
  ASSERT_TRUE(nr.converged);
  EXPECT_FALSE(nr.cone_exit);
  // Ratios e_{n+1} / e_n^2 stay bounded until the round-off floor.
  for (std::size_t i = 0; i < nr.quadratic_ratios.size(); ++i)
    if (nr.residuals[i + 1] > 1e-12) EXPECT_LT(nr.quadratic_ratios[i], 10.0);
  EXPECT_LE(nr.iterations, 8);
}

TEST(Continuity, LargeSourceExitsCone) {
  SolverConfig c = bump_config(5);
  c.bump.amplitude = 40.0;
  c.bump.width = 1.0;
  c.continuity.min_dt = 0.01;
  const auto rec = run_solver(c);
  EXPECT_FALSE(rec.state.reached_one);
  EXPECT_LT(rec.state.t, 1.0);
  EXPECT_GT(ma_residual(Problem(c.grid, c.background, GridField(c.grid, [&](const RealPoint4& x) {
                                  return c.bump(x);
                                })),
                        rec.state.phi, rec.state.t)
                .min_eigenvalue,
            0.0);
}

TEST(Solver, ConfigJsonRoundTrip) {
  SolverConfig c;
  c.grid.n = 11;
  c.background.kind = BackgroundKahler::Kind::euclidean;
  c.bump.center = RealPoint4(0.1, 0.2, 0.3, 0.4);
  c.continuity.dt = 0.25;
  c.seed = 99;
  const auto d = solver_config_from_json(solver_config_to_json(c));
  EXPECT_EQ(d.grid.n, 11);
  EXPECT_EQ(d.background.kind, BackgroundKahler::Kind::euclidean);
  EXPECT_EQ(d.bump.center, c.bump.center);
  EXPECT_EQ(d.continuity.dt, 0.25);
  EXPECT_EQ(d.seed, 99u);
  EXPECT_THROW((void)solver_config_from_json(R"({"continuity": {"dt": 0}})"), std::invalid_argument);
}

TEST(Solver, ManufacturedSolutionConvergesAtSecondOrder) {
  const auto rep = manufactured_convergence(BackgroundKahler{}, {5, 13});
  ASSERT_EQ(rep.orders.size(), 1u);
  EXPECT_NEAR(rep.orders[0], 2.0, 0.3);
  EXPECT_LT(rep.levels[1].error, rep.levels[0].error);
}

TEST(Solver, PerturbationVanishesOnLayer) {
  const GridSpec g = small_grid();
  const auto p = random_perturbation(g, 0.1, 4);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p.interior(i)) EXPECT_EQ(p[i], 0.0);
  EXPECT_GT(p.max_abs(), 0.0);
  EXPECT_EQ(max_abs_difference(p, random_perturbation(g, 0.1, 4)), 0.0);
}
