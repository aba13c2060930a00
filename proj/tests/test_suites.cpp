#include "alflab/parallel.hpp"
#include "alflab/suites.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace alflab;
using namespace alflab::suites;

TEST(Parallel, EachIndexVisitedOnce) {
  std::vector<std::atomic<int>> hits(10000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 16);
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  setenv("ALFLAB_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1u);
  unsetenv("ALFLAB_THREADS");
  EXPECT_GE(thread_count(), 1u);
}

TEST(Parallel, DeterministicSumIsExactOnIntegers) {
  EXPECT_EQ(deterministic_sum(100000, [](std::size_t i) { return static_cast<double>(i); }), 4999950000.0);
}

TEST(Suites, SamplingIsReproducible) {
  const auto a = random_points(5, "s", 50, 0.1, 2.0);
  const auto b = random_points(5, "s", 50, 0.1, 2.0);
  const auto c = random_points(6, "s", 50, 0.1, 2.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].real(), b[i].real());
    EXPECT_NE(a[i].real(), c[i].real());
    const double r = a[i].real().norm();
    EXPECT_GE(r, 0.1 - 1e-12);
    EXPECT_LE(r, 2.0 + 1e-12);
  }
}

TEST(Suites, MomentPointsRespectClip) {
  for (const auto& p : random_moment_points(1.0, 3, "m", 100, 1.0, 10.0, 0.5)) {
    EXPECT_LE(std::abs(p.y1), 0.5 + 1e-9);
    EXPECT_GE(p.R, 1.0 - 1e-9);
    EXPECT_LE(p.R, 10.0 + 1e-9);
  }
}

TEST(Suites, IdentitySuitePassesAndIsReproducible) {
  SuiteOptions o;
  o.n = 120;
  const auto a = taubnut_identities(o);
  EXPECT_TRUE(a.pass()) << (a.first_failure() ? a.first_failure()->check : "");
  EXPECT_EQ(to_csv(a), to_csv(taubnut_identities(o)));
  o.seed = 2;
  EXPECT_NE(to_csv(a), to_csv(taubnut_identities(o)));
}

TEST(Suites, SummaryKeepsWorstRowPerCheck) {
  SuiteResult r{"x", {}};
  r.rows.push_back({"a", 0, 1e-3, 1e-2, false, true, "id"});
  r.rows.push_back({"a", 1, 5e-2, 1e-2, false, false, "id"});
  r.rows.push_back({"b", 0, 0.5, 0.1, true, true, "id"});
  r.rows.push_back({"b", 1, 0.2, 0.1, true, true, "id"});
  const auto s = r.summary();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].index, 1u);
  EXPECT_EQ(s[1].value, 0.2);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.first_failure()->index, 1u);
}

TEST(Suites, CsvNamesTheIdentity) {
  SuiteResult r{"demo", {{"eta-xi", 3, 0.0, 1e-10, false, true, "eta(xi) = 1"}}};
  EXPECT_EQ(to_csv(r), "suite,check,index,value,tolerance,bound,pass,identity\ndemo,eta-xi,3,0,1e-10,max,1,\"eta(xi) = 1\"\n");
}

TEST(Suites, DihedralSuiteHasSwapRows) {
  SuiteOptions o;
  o.k = 3;
  o.n = 50;
  const auto r = dihedral(o);
  EXPECT_TRUE(r.pass());
  bool swap = false;
  for (const auto& row : r.rows) swap |= row.check == "tau-swap";
  EXPECT_TRUE(swap);
}

TEST(Suites, FramesAndCurvatureSuitesPass) {
  SuiteOptions o;
  o.n = 40;
  EXPECT_TRUE(frames(o).pass());
  o.m = 0.1;
  EXPECT_TRUE(frames(o).pass());
  EXPECT_TRUE(curvature(o).pass());
}

TEST(Suites, UnknownNamesThrow) {
  EXPECT_THROW((void)run_suite("nope", {}), std::invalid_argument);
  EXPECT_THROW((void)run_sweep("nope", {}), std::invalid_argument);
}

TEST(Sweeps, ComparisonOrderingRowwise) {
  SweepOptions o;
  o.n = 10;
  o.r_max = 20.0;
  const auto t = run_sweep("comparison-bounds", o);
  ASSERT_EQ(t.rows.size(), 30u);
  for (const auto& r : t.rows) {
    EXPECT_LE(r[3], r[2] * (1 + 1e-12));
    EXPECT_LE(r[2], r[4] * (1 + 1e-12));
  }
}

TEST(Sweeps, FibreLengthApproachesLimit) {
  SweepOptions o;
  o.m = 2.0;
  o.r_min = 1.0;
  o.r_max = 1e4;
  o.n = 5;
  const auto t = run_sweep("fiber-length", o);
  EXPECT_NEAR(t.rows.back()[1], std::numbers::pi, 1e-3);
  for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_GT(t.rows[i][1], t.rows[i - 1][1]);
}

TEST(Sweeps, DecayWithFlatModelHasZeroDeviation) {
  SweepOptions o;
  o.ale = gluing::AleKind::euclidean;
  o.n = 4;
  const auto t = run_sweep("decay", o);
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& r : t.rows) {
    EXPECT_LE(r[3], 1e-12);
    EXPECT_EQ(r[5], 0.0);
    EXPECT_EQ(r[6], 0.0);
  }
}
