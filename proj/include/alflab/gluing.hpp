#pragma once

#include "alflab/taubnut.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alflab::gluing {

// Smooth step: 0 for t <= 0, 1 for t >= 1, chi(t) = 1/(1 + e^{1/t - 1/(1-t)}) between.
[[nodiscard]] double chi(double t);
[[nodiscard]] double chi_d1(double t);
[[nodiscard]] double chi_d2(double t);
// kappa = integral of chi from 0: 0 for t <= 0, t - 1/2 for t >= 1, convex.
[[nodiscard]] double kappa(double t);

// Value and derivatives up to order 2 of a function of A = |z1|^2, B = |z2|^2.
struct Jet2 {
  double f = 0.0;
  double fa = 0.0, fb = 0.0;
  double faa = 0.0, fab = 0.0, fbb = 0.0;

  [[nodiscard]] static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
  [[nodiscard]] static Jet2 var_a(double a) { return {a, 1, 0, 0, 0, 0}; }
  [[nodiscard]] static Jet2 var_b(double b) { return {b, 0, 1, 0, 0, 0}; }
  // g(this) for a scalar g with g(f) = g0, g'(f) = g1, g''(f) = g2.
  [[nodiscard]] Jet2 compose(double g0, double g1, double g2) const;
};
[[nodiscard]] Jet2 operator+(const Jet2& x, const Jet2& y);
[[nodiscard]] Jet2 operator-(const Jet2& x, const Jet2& y);
[[nodiscard]] Jet2 operator*(const Jet2& x, const Jet2& y);
[[nodiscard]] Jet2 operator*(double s, const Jet2& x);

// Coefficients of dd^c F = sum H_jk i dz_j ^ dzbar_k for F = F(|z1|^2, |z2|^2).
[[nodiscard]] Mat2c ddc_hermitian(const Jet2& F, const ComplexPoint& z);

// Jets of r = |z| and of the Taub-NUT potential.
[[nodiscard]] Jet2 radius_jet(const ComplexPoint& z);
[[nodiscard]] Jet2 taubnut_potential_jet(const taubnut::TaubNutPoint& p);

enum class AleKind { euclidean, eguchi_hanson_correction };
[[nodiscard]] std::string to_string(AleKind k);
[[nodiscard]] AleKind ale_kind_from_string(const std::string& s);

// omega_g = omega_e + dd^c psi with psi = eps (A - B)^2 / (A + B + a^2)^5 for the
// corrected model (psi = 0 for the flat one); phi_0 = r^2/4, so alpha_0 = dd^c psi.
struct AleModel {
  AleKind kind = AleKind::euclidean;
  double eps = 0.05;
  double a2 = 1.0;

  [[nodiscard]] Jet2 phi0(const ComplexPoint& z) const;
  [[nodiscard]] Jet2 psi(const ComplexPoint& z) const;
  [[nodiscard]] Mat2c omega_g(const ComplexPoint& z) const;
  [[nodiscard]] Mat2c alpha0(const ComplexPoint& z) const;
};

struct GluingConfig {
  double m = 1.0;
  double K = 1.0;
  double r0 = 0.0;
  double beta = 1.0;
  AleModel ale;
};

// Phi_m = kappa(phi - K) - chi((r - r0)^beta) chi(r - r0) phi_0, with its (A, B) jet.
[[nodiscard]] Jet2 glued_potential_jet(const GluingConfig& cfg, const ComplexPoint& z);
[[nodiscard]] double glued_potential(const GluingConfig& cfg, const ComplexPoint& z);

// Hermitian coefficients of omega_m = omega_g + dd^c Phi_m, and the real forms.
[[nodiscard]] Mat2c omega_m_hermitian(const GluingConfig& cfg, const ComplexPoint& z);
[[nodiscard]] TwoForm4 omega_m(const GluingConfig& cfg, const ComplexPoint& z);
[[nodiscard]] Metric4 metric_m(const GluingConfig& cfg, const ComplexPoint& z);
// omega_m - omega_f as dd^c of the single potential phi_0 + psi + Phi_m - phi, so
// the O(1) parts cancel inside the jet rather than after rounding.
[[nodiscard]] Mat2c omega_m_minus_f_hermitian(const GluingConfig& cfg, const ComplexPoint& z);

// Smallest r0 with {r >= r0} contained in {phi >= K + 1}.
[[nodiscard]] double minimal_r0(double m, double K);

enum class Zone { inside, annulus, outside };

struct ZoneSample {
  double r = 0.0;
  Zone zone = Zone::inside;
  double min_eig_gm = 0.0;   // smallest eigenvalue of g_m against e
  double zone_ratio = 0.0;   // smallest eigenvalue of omega_m against the zone reference
  double zone_floor = 0.0;   // 1 inside (against omega_g), 1/4 on the annulus, 1/2 outside (against omega_f)
};
[[nodiscard]] ZoneSample zone_sample(const GluingConfig& cfg, const ComplexPoint& z);

struct ZoneReport {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double min_eig_gm = 0.0;
  double min_margin[3] = {0.0, 0.0, 0.0};  // min of zone_ratio - zone_floor per zone
  std::size_t count[3] = {0, 0, 0};
  ComplexPoint worst;
};
// Sweep of n_r x n_t points: radii in (0, r_max], |z1|^2 / r^2 in [0, 1], with
// pseudo-random phases from the seed.
[[nodiscard]] ZoneReport zone_sweep(const GluingConfig& cfg, int n_r, int n_t, double r_max,
                                    std::uint64_t seed);

struct TuneResult {
  GluingConfig cfg;
  ZoneReport report;
  int rounds = 0;
  bool ok = false;
};
// K = 1, r0 from minimal_r0; then enlarge r0 while the outside bound fails and
// halve beta while the annulus bound fails.
[[nodiscard]] TuneResult auto_tune(double m, const AleModel& ale, int n_r = 100, int n_t = 100,
                                   std::uint64_t seed = 1);

struct DecayRow {
  double r = 0.0;
  double R = 0.0;
  double min_eig = 0.0;
  double dev_f = 0.0;      // |g_m - f|_f
  double dev_vol = 0.0;    // |Omega_m - Omega_g| / Omega_e
  double alpha_e = 0.0;    // |alpha_0|_e
  double alpha_f = 0.0;    // |alpha_0|_f
  double nabla_dev = 0.0;  // |nabla^f (g_m - f)|_f
};
struct DecayReport {
  std::vector<DecayRow> rows;
  double slope_dev = 0.0;
  double slope_vol = 0.0;
  double slope_alpha_e = 0.0;
  double slope_alpha_f = 0.0;
  double slope_nabla = 0.0;
};
// Samples on |z1| = |z2| (so r^2 = 2R) at the given R values.
[[nodiscard]] DecayReport decay_report(const GluingConfig& cfg, const std::vector<double>& R_values);

// |nabla^f dx_j|_f at points (r/sqrt 2, r/sqrt 2 rotated) and its log-log slope in r.
struct NablaDxReport {
  std::vector<double> r;
  std::vector<double> norm;
  double slope = 0.0;
};
[[nodiscard]] NablaDxReport nabla_dx_growth(double m, int j, const std::vector<double>& radii,
                                            double y1_fraction = 0.0);

}  // namespace alflab::gluing
