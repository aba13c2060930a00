#include "alflab/dihedral.hpp"
#include "alflab/gluing.hpp"
#include "alflab/suites.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace alflab;
using namespace alflab::gluing;

TEST(Cutoff, StepValuesAndSymmetry) {
  EXPECT_EQ(chi(-1.0), 0.0);
  EXPECT_EQ(chi(0.0), 0.0);
  EXPECT_EQ(chi(1.0), 1.0);
  EXPECT_EQ(chi(2.0), 1.0);
  EXPECT_NEAR(chi(0.5), 0.5, 1e-15);
  for (double t : {0.1, 0.3, 0.77}) EXPECT_NEAR(chi(t) + chi(1 - t), 1.0, 1e-14);
}

TEST(Cutoff, DerivativesMatchFiniteDifferences) {
  for (double t : {0.05, 0.2, 0.5, 0.8, 0.95}) {
    const double h = 1e-5;
    EXPECT_NEAR(chi_d1(t), (chi(t + h) - chi(t - h)) / (2 * h), 1e-7);
    EXPECT_NEAR(chi_d2(t), (chi_d1(t + h) - chi_d1(t - h)) / (2 * h), 1e-5);
    EXPECT_GE(chi_d1(t), 0.0);
  }
}

TEST(Cutoff, KappaIsPrimitiveOfChi) {
  EXPECT_EQ(kappa(-0.5), 0.0);
  EXPECT_NEAR(kappa(1.0), 0.5, 1e-12);
  EXPECT_NEAR(kappa(3.0), 2.5, 1e-12);
  for (double t : {0.1, 0.4, 0.6, 0.9}) {
    const double h = 1e-4;
    EXPECT_NEAR((kappa(t + h) - kappa(t - h)) / (2 * h), chi(t), 1e-8);
  }
}

TEST(Jet, ProductAndCompositionRules) {
  const Jet2 a = Jet2::var_a(2.0), b = Jet2::var_b(3.0);
  const Jet2 p = a * b;
  EXPECT_EQ(p.f, 6.0);
  EXPECT_EQ(p.fa, 3.0);
  EXPECT_EQ(p.fb, 2.0);
  EXPECT_EQ(p.fab, 1.0);
  // exp(a): every derivative is exp(a).
  const Jet2 e = a.compose(std::exp(2.0), std::exp(2.0), std::exp(2.0));
  EXPECT_DOUBLE_EQ(e.fa, std::exp(2.0));
  EXPECT_DOUBLE_EQ(e.faa, std::exp(2.0));
  EXPECT_EQ(e.fb, 0.0);
}

TEST(Jet, DdcHermitianMatchesFiniteDifferences) {
  // F = A B + A^2 as a function of |z1|^2, |z2|^2.
  const ComplexPoint z{cplx(0.7, -0.2), cplx(0.3, 0.5)};
  const double A = std::norm(z.z1), B = std::norm(z.z2);
  const Jet2 F = Jet2::var_a(A) * Jet2::var_b(B) + Jet2::var_a(A) * Jet2::var_a(A);
  const Mat2c H = ddc_hermitian(F, z);
  const ScalarField f = [](const RealPoint4& x) {
    const double a = x[0] * x[0] + x[1] * x[1], b = x[2] * x[2] + x[3] * x[3];
    return a * b + a * a;
  };
  const Mat2c Hfd = two_form_to_hermitian(ddc_fd(f, z.real(), 1e-3));
  EXPECT_LT((H - Hfd).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Jet, RadiusAndPotentialJets) {
  const ComplexPoint z{cplx(1.2, 0.1), cplx(-0.4, 0.6)};
  EXPECT_NEAR(radius_jet(z).f, z.real().norm(), 1e-15);
  const auto p = taubnut::TaubNutPoint::at(z, 1.0);
  const Jet2 phi = taubnut_potential_jet(p);
  EXPECT_NEAR(phi.f, taubnut::potential_phi(p), 1e-14);
  EXPECT_LT((ddc_hermitian(phi, z) - taubnut::kahler_hermitian(p)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AleModel, FlatModelIsEuclidean) {
  AleModel ale;
  const ComplexPoint z{cplx(0.5, 0.5), cplx(1.0, 0.0)};
  EXPECT_LT((ale.omega_g(z) - 0.5 * Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(ale.alpha0(z).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AleModel, CorrectionDecaysLikeRToTheMinusEight) {
  AleModel ale;
  ale.kind = AleKind::eguchi_hanson_correction;
  auto mag = [&](double r) {
    return ale.alpha0(ComplexPoint{cplx(r * 0.8, 0), cplx(0, r * 0.6)}).cwiseAbs().maxCoeff();
  };
  const double s = std::log(mag(200.0) / mag(100.0)) / std::log(2.0);
  EXPECT_NEAR(s, -8.0, 0.05);
}

TEST(Gluing, MinimalRadiusSeparatesSublevelSet) {
  const double r0 = minimal_r0(1.0, 1.0);
  EXPECT_GT(r0, 0.0);
  const auto pts = suites::random_points(31, "unit/r0", 300, 1.0, 1.0);
  for (const auto& z : pts) {
    const ComplexPoint w{z.z1 * (r0 + 0.5), z.z2 * (r0 + 0.5)};
    EXPECT_GE(taubnut::potential_phi(taubnut::TaubNutPoint::at(w, 1.0)), 2.0 - 1e-9);
  }
}

TEST(Gluing, GluedFormIsTaubNutFarOutForFlatModel) {
  GluingConfig cfg;
  cfg.r0 = minimal_r0(cfg.m, cfg.K);
  const ComplexPoint z{cplx(cfg.r0 + 3, 0.5), cplx(1.0, 2.0)};
  const auto p = taubnut::TaubNutPoint::at(z, cfg.m);
  EXPECT_LT((omega_m_hermitian(cfg, z) - taubnut::kahler_hermitian(p)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(omega_m_minus_f_hermitian(cfg, z).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gluing, GluedFormIsAleNearOrigin) {
  GluingConfig cfg;
  cfg.ale.kind = AleKind::eguchi_hanson_correction;
  cfg.r0 = minimal_r0(cfg.m, cfg.K);
  const ComplexPoint z{cplx(0.2, 0.1), cplx(-0.1, 0.3)};
  EXPECT_LT((omega_m_hermitian(cfg, z) - cfg.ale.omega_g(z)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gluing, GluedPotentialIsDihedralInvariant) {
  GluingConfig cfg;
  cfg.r0 = minimal_r0(cfg.m, cfg.K);
  cfg.beta = 0.25;
  const auto pts = suites::random_points(32, "unit/glue-dk", 100, 0.1, cfg.r0 + 2);
  for (const auto& z : pts) {
    const double a = glued_potential(cfg, z);
    for (const auto& g : dihedral::group_elements(3))
      EXPECT_NEAR(glued_potential(cfg, dihedral::act(g, z)), a, 1e-9 * std::max(1.0, std::abs(a)));
  }
}

TEST(Gluing, OmegaMIsClosed) {
  GluingConfig cfg;
  cfg.ale.kind = AleKind::eguchi_hanson_correction;
  cfg.r0 = minimal_r0(cfg.m, cfg.K);
  cfg.beta = 0.5;
  const auto field = [&](const RealPoint4& x) { return omega_m(cfg, ComplexPoint::from_real(x)); };
  for (const auto& z : suites::random_points(33, "unit/closed", 20, 0.2, cfg.r0 + 2)) {
    const RealPoint4 x = z.real();
    const double s = std::max(1.0, field(x).w.cwiseAbs().maxCoeff());
    EXPECT_LE(exterior_derivative(field, x, 1e-5 * std::max(1.0, x.norm())).cwiseAbs().maxCoeff() / s, 1e-5);
  }
}

TEST(Gluing, DecayOfSyntheticCorrection) {
  GluingConfig cfg;
  cfg.ale.kind = AleKind::eguchi_hanson_correction;
  cfg.r0 = minimal_r0(cfg.m, cfg.K);
  const double R0 = 0.5 * (cfg.r0 + 2) * (cfg.r0 + 2);
  const auto d = decay_report(cfg, {R0, 2 * R0, 4 * R0, 8 * R0});
  EXPECT_NEAR(d.slope_dev, -3.0, 0.3);
  // |alpha_0|_e = O(r^-8) = O(R^-4) and |alpha_0|_f = O(r^-6) = O(R^-3).
  EXPECT_NEAR(d.slope_alpha_e, -4.0, 0.3);
  EXPECT_NEAR(d.slope_alpha_f, -3.0, 0.3);
  for (const auto& r : d.rows) EXPECT_GT(r.min_eig, 0.0);
  EXPECT_THROW((void)decay_report(cfg, {1.0}), std::invalid_argument);
}

TEST(Gluing, ZoneSweepIsReproducible) {
  GluingConfig cfg;
  cfg.r0 = minimal_r0(cfg.m, cfg.K);
  const auto a = zone_sweep(cfg, 10, 10, 3 * (cfg.r0 + 1), 5);
  const auto b = zone_sweep(cfg, 10, 10, 3 * (cfg.r0 + 1), 5);
  EXPECT_EQ(a.samples, 100u);
  EXPECT_EQ(a.min_eig_gm, b.min_eig_gm);
  EXPECT_EQ(a.count[0] + a.count[1] + a.count[2], a.samples);
}

TEST(Gluing, NablaDxGrowsLinearly) {
  const auto g = nabla_dx_growth(1.0, 0, {10.0, 100.0, 1000.0});
  EXPECT_NEAR(g.slope, 1.0, 0.1);
}
