// One PASS/FAIL line per acceptance criterion, at the pinned tolerances.
#include "alflab/analysis.hpp"
#include "alflab/gluing.hpp"
#include "alflab/monge_ampere.hpp"
#include "alflab/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

using namespace alflab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("AC%d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Largest value of a named check over a suite, and whether every such row passed.
struct Worst {
  double value = 0.0;
  bool pass = true;
  std::size_t rows = 0;
};
Worst worst(const suites::SuiteResult& r, const std::string& check) {
  Worst w;
  for (const auto& row : r.rows)
    if (row.check == check) {
      ++w.rows;
      w.value = std::max(w.value, row.value);
      w.pass = w.pass && row.pass;
    }
  return w;
}

void ac1() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (double m : {0.1, 1.0, 10.0}) {
    suites::SuiteOptions o;
    o.m = m;
    o.n = 500;
    const auto r = suites::taubnut_identities(o);
    const auto vol = worst(r, "volume-form"), ex = worst(r, "eta-xi"), gh = worst(r, "gibbons-hawking-metric");
    ok = ok && vol.pass && ex.pass && gh.pass && vol.rows >= 500;
    detail += fmt("m=%g:", m) + fmt(" |w^2/Oe-2|=%.1e", vol.value) + fmt(" |eta(xi)-1|=%.1e", ex.value) +
              fmt(" GH=%.1e; ", gh.value);
  }
  const double s = seconds_since(t0);
  report(1, ok && s <= 10.0, detail + fmt("%.2fs", s));
}

void ac2() {
  suites::SuiteOptions o;
  o.m = 1.0;
  o.n = 500;
  const auto r = suites::taubnut_identities(o);
  const auto d = worst(r, "d-eta");
  report(2, d.pass && d.rows >= 100, std::to_string(d.rows) + " off-axis points, " + fmt("max rel %.2e (tol 1e-5)", d.value));
}

void ac3() {
  const double m = 1.0;
  const auto pts = suites::random_moment_points(m, 1, "acceptance/brackets", 50, 5.0, 50.0, 2.0 / m);
  double worst_rel = 0.0;
  for (const auto& p : pts) {
    const auto c = taubnut::bracket_table_closed(p);
    const auto f = taubnut::bracket_table_fd(m, p.x, taubnut::default_frame_step(m));
    double d = 0.0, s = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        d = std::max(d, (c[a][b] - f[a][b]).cwiseAbs().maxCoeff());
        s = std::max(s, c[a][b].cwiseAbs().maxCoeff());
      }
    worst_rel = std::max(worst_rel, d / s);
  }
  report(3, worst_rel <= 1e-4, fmt("50 points, R in [5,50], m=1: max rel %.2e (tol 1e-4)", worst_rel));
}

void ac4() {
  const double m = 1.0;
  std::vector<taubnut::TaubNutPoint> pts;
  for (const auto& z : suites::random_points(1, "acceptance/comparison", 10000, 0.01, 6.0))
    pts.push_back(taubnut::TaubNutPoint::at(z, m));
  const auto rep = taubnut::comparison_bounds(pts);
  double eq = 0.0;
  for (const auto& z : suites::random_points(2, "acceptance/loci", 1000, 0.01, 6.0)) {
    const double r = z.real().norm();
    const auto d = taubnut::compare_with_euclidean(taubnut::TaubNutPoint::at(
        ComplexPoint{std::polar(r / std::sqrt(2.0), std::arg(z.z1)), std::polar(r / std::sqrt(2.0), std::arg(z.z2))}, m));
    const auto a = taubnut::compare_with_euclidean(
        taubnut::TaubNutPoint::at(ComplexPoint{std::polar(r, std::arg(z.z1)), cplx(0, 0)}, m));
    eq = std::max({eq, std::abs(d.r2 - d.lower) / d.r2, std::abs(a.r2 - a.upper) / a.r2});
  }
  const bool ok = rep.ordering_violations == 0 && eq <= 1e-10 && rep.max_det_error <= 1e-10;
  report(4, ok, std::to_string(rep.ordering_violations) + " violations in 10^4 points; " +
                    fmt("equality loci rel %.1e; ", eq) + fmt("|det_e f - 1| %.1e", rep.max_det_error));
}

void ac5() {
  const auto d = taubnut::curvature_decay(1.0, {10.0, 30.0, 100.0});
  const bool ok = d.slope >= -3.3 && d.slope <= -2.8 && d.max_ricci <= 1e-4;
  report(5, ok, fmt("m=1: slope %.3f", d.slope) + fmt(", max |Ric| %.1e", d.max_ricci));
}

void ac6() {
  bool ok = true;
  std::string detail;
  for (int k : {2, 3, 5}) {
    suites::SuiteOptions o;
    o.k = k;
    o.n = 200;
    const auto r = suites::dihedral(o);
    const auto phi = worst(r, "potential-invariance"), met = worst(r, "metric-invariance"),
               syz = worst(r, "syzygy");
    double tet = 0.0;
    for (const auto& row : r.rows)
      if (row.check == "witness-tetrahedral") tet = row.value;
    ok = ok && phi.pass && met.pass && syz.pass && tet >= 1e-3;
    detail += "k=" + std::to_string(k) + ":" + fmt(" phi %.1e", phi.value) + fmt(" f %.1e", met.value) +
              fmt(" syzygy %.1e", syz.value) + fmt(" tetrahedral %.2f; ", tet);
  }
  report(6, ok, detail);
}

void ac7() {
  const auto t0 = Clock::now();
  gluing::AleModel ale;
  ale.kind = gluing::AleKind::eguchi_hanson_correction;
  const auto tune = gluing::auto_tune(1.0, ale, 100, 100, 1);
  const auto& z = tune.report;
  const double R0 = 0.5 * (tune.cfg.r0 + 2) * (tune.cfg.r0 + 2);
  const auto d = gluing::decay_report(tune.cfg, {R0, 2 * R0, 4 * R0, 8 * R0});
  const double s = seconds_since(t0);
  const bool pos = z.min_eig_gm > 0.0;
  const bool zones = z.min_margin[0] >= -1e-12 && z.min_margin[1] >= -1e-12 && z.min_margin[2] >= -1e-12;
  const bool slope = d.slope_dev >= -3.3 && d.slope_dev <= -2.7;
  std::string detail = fmt("K=%g", tune.cfg.K) + fmt(" r0=%.3f", tune.cfg.r0) + fmt(" beta=%g;", tune.cfg.beta) +
                       " " + std::to_string(z.samples) + " points;" +
                       fmt(" min eig g_m %.3g", z.min_eig_gm) + (pos ? ";" : " [positivity fails];") +
                       fmt(" zone margins inside %.2g", z.min_margin[0]) + fmt(" annulus %.3g", z.min_margin[1]) +
                       fmt(" outside %.3g;", z.min_margin[2]) + fmt(" decay slope %.3f;", d.slope_dev) +
                       fmt(" %.1fs", s);
  report(7, pos && zones && slope && s <= 60.0, detail);
}

void ac8() {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;

  ma::SolverConfig zero;
  zero.bump.amplitude = 0.0;
  const auto z = ma::run_solver(zero);
  ok = ok && z.state.reached_one && z.phi_max <= 1e-10;
  detail += fmt("f=0: |phi| %.1e; ", z.phi_max);

  const auto mms = ma::manufactured_convergence(ma::BackgroundKahler{}, {5, 13, 29});
  for (double o : mms.orders) {
    ok = ok && std::abs(o - 2.0) <= 0.3;
    detail += fmt("order %.2f; ", o);
  }

  ma::SolverConfig bump;
  bump.bump.amplitude = 0.1;
  bump.bump.width = 1.5;
  const auto path = ma::run_solver(bump);
  ok = ok && path.state.reached_one && path.state.residual <= 1e-8;
  detail += fmt("path reached t=%g", path.state.t) + fmt(" (residual %.1e), Newton ratios", path.state.residual);
  std::printf("  continuity path at 17^4, e_{n+1}/e_n^2 per step:\n");
  for (const auto& st : path.state.steps) {
    std::printf("    t=%.3f newton=%d", st.t, st.newton_iterations);
    for (std::size_t i = 0; i < st.quadratic_ratios.size(); ++i)
      if (st.residuals[i + 1] > 1e-12) std::printf(" %.3g", st.quadratic_ratios[i]);
    std::printf("\n");
  }
  double max_ratio = 0.0;
  for (const auto& st : path.state.steps)
    for (std::size_t i = 0; i < st.quadratic_ratios.size(); ++i)
      if (st.residuals[i + 1] > 1e-12) max_ratio = std::max(max_ratio, st.quadratic_ratios[i]);
  detail += fmt(" <= %.3g; ", max_ratio);

  double uniq = 0.0;
  for (std::uint64_t seed : {1u, 2u}) {
    ma::SolverConfig c = bump;
    c.initial_perturbation = 0.01;
    c.seed = seed;
    const auto d = ma::run_solver(c);
    ok = ok && d.state.reached_one;
    uniq = std::max(uniq, max_abs_difference(d.state.phi, path.state.phi));
  }
  ok = ok && uniq <= 1e-7;
  detail += fmt("uniqueness %.1e; ", uniq);

  // At nodes where h_phi is a multiple of h the bound is an equality.
  ok = ok && path.min_trace_ratio >= 1.0 - 1e-12;
  detail += fmt("min tr/(4e^{f/2}) %.12f; ", path.min_trace_ratio);
  const double s = seconds_since(t0);
  report(8, ok && s <= 300.0, detail + fmt("%.1fs", s));
}

void ac9() {
  const std::vector<double> scales{2.0, 8.0, 32.0};
  bool ok = true;
  std::string detail;
  double coarse_max = 0.0, fine_max = 0.0, coarse_h = 0.0, fine_h = 0.0;
  for (int n : {21, 45}) {
    std::vector<GridField> s;
    for (double x : scales) s.push_back(analysis::radial_bump(x, n));
    const auto r = analysis::sobolev_check(s, 1.0, scales);
    for (std::size_t i = 1; i < r.samples.size(); ++i) {
      ok = ok && r.samples[i].sobolev_ratio <= 1.1 * r.samples[i - 1].sobolev_ratio;
      ok = ok && r.samples[i].hardy_ratio <= 1.1 * r.samples[i - 1].hardy_ratio;
    }
    detail += "n=" + std::to_string(n) + ":";
    for (const auto& q : r.samples) detail += fmt(" S=%.4f", q.sobolev_ratio) + fmt(" H=%.4f", q.hardy_ratio);
    detail += "; ";
    (n == 21 ? coarse_max : fine_max) = r.max_sobolev;
    (n == 21 ? coarse_h : fine_h) = r.max_hardy;
  }
  ok = ok && fine_max <= 1.1 * coarse_max && fine_h <= 1.1 * coarse_h;
  report(9, ok, detail + "scales 2, 8, 32");
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
