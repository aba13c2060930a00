#include "alflab/gluing.hpp"

#include "alflab/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace alflab::gluing {

Jet2 Jet2::compose(double g0, double g1, double g2) const {
  return {g0, g1 * fa, g1 * fb, g2 * fa * fa + g1 * faa, g2 * fa * fb + g1 * fab, g2 * fb * fb + g1 * fbb};
}

Jet2 operator+(const Jet2& x, const Jet2& y) {
  return {x.f + y.f, x.fa + y.fa, x.fb + y.fb, x.faa + y.faa, x.fab + y.fab, x.fbb + y.fbb};
}

Jet2 operator-(const Jet2& x, const Jet2& y) { return x + (-1.0) * y; }

Jet2 operator*(double s, const Jet2& x) { return {s * x.f, s * x.fa, s * x.fb, s * x.faa, s * x.fab, s * x.fbb}; }

Jet2 operator*(const Jet2& x, const Jet2& y) {
  return {x.f * y.f,
          x.fa * y.f + x.f * y.fa,
          x.fb * y.f + x.f * y.fb,
          x.faa * y.f + 2 * x.fa * y.fa + x.f * y.faa,
          x.fab * y.f + x.fa * y.fb + x.fb * y.fa + x.f * y.fab,
          x.fbb * y.f + 2 * x.fb * y.fb + x.f * y.fbb};
}

Mat2c ddc_hermitian(const Jet2& F, const ComplexPoint& z) {
  // d_j dbar_k F = delta_jk F_j + conj(z_j) z_k F_jk; dd^c = 2i d dbar.
  const cplx zz[2] = {z.z1, z.z2};
  const double d1[2] = {F.fa, F.fb};
  const double d2[2][2] = {{F.faa, F.fab}, {F.fab, F.fbb}};
  Mat2c H;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      H(j, k) = 2.0 * ((j == k ? d1[j] : 0.0) + std::conj(zz[j]) * zz[k] * d2[j][k]);
  return H;
}

Jet2 radius_jet(const ComplexPoint& z) {
  const double s = std::norm(z.z1) + std::norm(z.z2);
  if (!(s > 0.0)) throw std::domain_error("radius jet is singular at the origin");
  const double r = std::sqrt(s);
  return Jet2{s, 1, 1, 0, 0, 0}.compose(r, 0.5 / r, -0.25 / (r * s));
}

Jet2 taubnut_potential_jet(const taubnut::TaubNutPoint& p) {
  const double m = p.m, q = 1.0 + 4.0 * m * p.R;
  Jet2 J;
  J.f = taubnut::potential_phi(p);
  J.fa = 0.25 * (1.0 + 2.0 * m * p.v2) * p.em;
  J.fb = 0.25 * (1.0 + 2.0 * m * p.u2) * p.ep;
  J.faa = -0.5 * m * p.em * p.em / q;
  J.fbb = -0.5 * m * p.ep * p.ep / q;
  J.fab = 0.5 * m * (1.0 + 1.0 / q);
  return J;
}

std::string to_string(AleKind k) {
  return k == AleKind::euclidean ? "euclidean" : "eguchi-hanson-correction";
}

AleKind ale_kind_from_string(const std::string& s) {
  if (s == "euclidean") return AleKind::euclidean;
  if (s == "eguchi-hanson-correction" || s == "eh") return AleKind::eguchi_hanson_correction;
  throw std::invalid_argument("unknown ALE model: " + s);
}

Jet2 AleModel::phi0(const ComplexPoint& z) const {
  const double A = std::norm(z.z1), B = std::norm(z.z2);
  return {0.25 * (A + B), 0.25, 0.25, 0, 0, 0};
}

Jet2 AleModel::psi(const ComplexPoint& z) const {
  if (kind == AleKind::euclidean) return Jet2::constant(0.0);
  const double A = std::norm(z.z1), B = std::norm(z.z2);
  const Jet2 D{A - B, 1, -1, 0, 0, 0};
  const Jet2 P{A + B + a2, 1, 1, 0, 0, 0};
  const double p = P.f;
  const Jet2 inv5 = P.compose(std::pow(p, -5), -5 * std::pow(p, -6), 30 * std::pow(p, -7));
  return eps * (D * D * inv5);
}

Mat2c AleModel::omega_g(const ComplexPoint& z) const {
  return 0.5 * Mat2c::Identity() + ddc_hermitian(psi(z), z);
}

Mat2c AleModel::alpha0(const ComplexPoint& z) const { return ddc_hermitian(psi(z), z); }

Jet2 glued_potential_jet(const GluingConfig& cfg, const ComplexPoint& z) {
  const taubnut::TaubNutPoint p = taubnut::TaubNutPoint::at(z, cfg.m);
  const Jet2 phi = taubnut_potential_jet(p);
  const double t0 = phi.f - cfg.K;
  Jet2 out = (phi - Jet2::constant(cfg.K)).compose(kappa(t0), chi(t0), chi_d1(t0));
  const double r = std::sqrt(p.r2());
  if (r <= cfg.r0) return out;
  const Jet2 t = radius_jet(z) - Jet2::constant(cfg.r0);
  const double tv = t.f, b = cfg.beta;
  const Jet2 s = t.compose(std::pow(tv, b), b * std::pow(tv, b - 1), b * (b - 1) * std::pow(tv, b - 2));
  const Jet2 c1 = s.compose(chi(s.f), chi_d1(s.f), chi_d2(s.f));
  const Jet2 c2 = t.compose(chi(tv), chi_d1(tv), chi_d2(tv));
  return out - c1 * c2 * cfg.ale.phi0(z);
}

double glued_potential(const GluingConfig& cfg, const ComplexPoint& z) { return glued_potential_jet(cfg, z).f; }

Mat2c omega_m_hermitian(const GluingConfig& cfg, const ComplexPoint& z) {
  return cfg.ale.omega_g(z) + ddc_hermitian(glued_potential_jet(cfg, z), z);
}

TwoForm4 omega_m(const GluingConfig& cfg, const ComplexPoint& z) {
  return hermitian_to_two_form(omega_m_hermitian(cfg, z));
}

Metric4 metric_m(const GluingConfig& cfg, const ComplexPoint& z) {
  return metric_from_kahler(omega_m(cfg, z), standard_complex_structures().I1);
}

Mat2c omega_m_minus_f_hermitian(const GluingConfig& cfg, const ComplexPoint& z) {
  const Jet2 phi = taubnut_potential_jet(taubnut::TaubNutPoint::at(z, cfg.m));
  const Jet2 d = cfg.ale.phi0(z) + cfg.ale.psi(z) + (glued_potential_jet(cfg, z) - phi);
  return ddc_hermitian(d, z);
}

namespace {

double min_phi_on_sphere(double r, double m) {
  double lo = std::numeric_limits<double>::infinity();
  constexpr int n = 64;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const ComplexPoint z{cplx(r * std::sqrt(t), 0.0), cplx(r * std::sqrt(1 - t), 0.0)};
    lo = std::min(lo, taubnut::potential_phi(taubnut::TaubNutPoint::at(z, m)));
  }
  return lo;
}

// Smallest eigenvalue of h against a positive reference ref (both Hermitian 2x2).
double min_relative_eigenvalue(const Mat2c& h, const Mat2c& ref) {
  const Vec4 ev = generalized_eigenvalues(Metric4{realify(h)}, Metric4{realify(ref)});
  return ev[0];
}

}  // namespace

double minimal_r0(double m, double K) {
  double hi = 1.0;
  while (min_phi_on_sphere(hi, m) < K + 1.0) {
    hi *= 2.0;
    if (hi > 1e6) throw std::runtime_error("minimal_r0: potential level not reached");
  }
  double lo = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (min_phi_on_sphere(mid, m) >= K + 1.0 ? hi : lo) = mid;
  }
  return std::max(hi - 1.0, 0.0);
}

ZoneSample zone_sample(const GluingConfig& cfg, const ComplexPoint& z) {
  ZoneSample s;
  s.r = z.real().norm();
  const Mat2c h = omega_m_hermitian(cfg, z);
  Eigen::SelfAdjointEigenSolver<Mat4> es(metric_m(cfg, z).g, Eigen::EigenvaluesOnly);
  s.min_eig_gm = es.eigenvalues()[0];
  if (s.r <= cfg.r0) {
    s.zone = Zone::inside;
    s.zone_floor = 1.0;
    s.zone_ratio = min_relative_eigenvalue(h, cfg.ale.omega_g(z));
  } else {
    const Mat2c hf = taubnut::kahler_hermitian(taubnut::TaubNutPoint::at(z, cfg.m));
    s.zone = s.r < cfg.r0 + 1.0 ? Zone::annulus : Zone::outside;
    s.zone_floor = s.zone == Zone::annulus ? 0.25 : 0.5;
    s.zone_ratio = min_relative_eigenvalue(h, hf);
  }
  return s;
}

ZoneReport zone_sweep(const GluingConfig& cfg, int n_r, int n_t, double r_max, std::uint64_t seed) {
  if (n_r < 1 || n_t < 2 || !(r_max > 0.0)) throw std::invalid_argument("zone_sweep: bad sweep shape");
  ZoneReport rep;
  for (double& v : rep.min_margin) v = std::numeric_limits<double>::infinity();
  rep.min_eig_gm = std::numeric_limits<double>::infinity();
  Rng rng(seed, hash_name("zone-sweep"));
  double worst = std::numeric_limits<double>::infinity();
  constexpr double tol = 1e-12;
  for (int i = 0; i < n_r; ++i) {
    const double r = r_max * (i + 1.0) / n_r;
    for (int j = 0; j < n_t; ++j) {
      const double t = static_cast<double>(j) / (n_t - 1);
      const double a1 = rng.uniform(0.0, 2 * std::numbers::pi);
      const double a2 = rng.uniform(0.0, 2 * std::numbers::pi);
      const ComplexPoint z{std::polar(r * std::sqrt(t), a1), std::polar(r * std::sqrt(1 - t), a2)};
      const ZoneSample s = zone_sample(cfg, z);
      const int zi = static_cast<int>(s.zone);
      const double margin = s.zone_ratio - s.zone_floor;
      ++rep.samples;
      ++rep.count[zi];
      rep.min_margin[zi] = std::min(rep.min_margin[zi], margin);
      rep.min_eig_gm = std::min(rep.min_eig_gm, s.min_eig_gm);
      const bool bad = margin < -tol || !(s.min_eig_gm > 0.0);
      if (bad) ++rep.failures;
      const double score = std::min(margin, s.min_eig_gm);
      if (score < worst) {
        worst = score;
        rep.worst = z;
      }
    }
  }
  return rep;
}

TuneResult auto_tune(double m, const AleModel& ale, int n_r, int n_t, std::uint64_t seed) {
  TuneResult res;
  res.cfg.m = m;
  res.cfg.K = 1.0;
  res.cfg.ale = ale;
  res.cfg.r0 = minimal_r0(m, res.cfg.K);
  res.cfg.beta = 1.0;
  constexpr int max_rounds = 16;
  constexpr double min_beta = 1.0 / 64.0;
  for (res.rounds = 1; res.rounds <= max_rounds; ++res.rounds) {
    res.report = zone_sweep(res.cfg, n_r, n_t, 3.0 * (res.cfg.r0 + 1.0), seed);
    if (res.report.failures == 0) {
      res.ok = true;
      return res;
    }
    const bool outside_bad = res.report.min_margin[static_cast<int>(Zone::outside)] < 0.0;
    const bool annulus_bad = res.report.min_margin[static_cast<int>(Zone::annulus)] < 0.0 ||
                             !(res.report.min_eig_gm > 0.0);
    if (outside_bad)
      res.cfg.r0 *= 1.25;
    else if (annulus_bad && res.cfg.beta > min_beta)
      res.cfg.beta *= 0.5;
    else
      break;
  }
  res.rounds = std::min(res.rounds, max_rounds);
  return res;
}

namespace {

Mat4 deviation_metric(const GluingConfig& cfg, const RealPoint4& x) {
  const TwoForm4 a = hermitian_to_two_form(omega_m_minus_f_hermitian(cfg, ComplexPoint::from_real(x)));
  return metric_from_kahler(a, standard_complex_structures().I1).g;
}

// |nabla^f S|_f for a symmetric 2-tensor field S, by central differences.
double covariant_norm(double m, const std::function<Mat4(const RealPoint4&)>& S, const RealPoint4& x, double h) {
  auto f = [m](const RealPoint4& q) { return taubnut::metric_f(taubnut::TaubNutPoint::at(q, m)).g; };
  std::array<Mat4, 4> df, dS;
  for (int a = 0; a < 4; ++a) {
    Vec4 e = Vec4::Zero();
    e[a] = h;
    df[a] = (-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * h);
    dS[a] = (-S(x + 2 * e) + 8 * S(x + e) - 8 * S(x - e) + S(x - 2 * e)) / (12 * h);
  }
  const Mat4 g = f(x), gi = g.inverse(), S0 = S(x);
  // Gamma[e](a, b) = Gamma^e_ab.
  std::array<Mat4, 4> G;
  for (int e = 0; e < 4; ++e)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l) s += gi(e, l) * (df[b](l, a) + df[a](l, b) - df[l](a, b));
        G[e](a, b) = 0.5 * s;
      }
  double T[4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double v = dS[a](b, c);
        for (int e = 0; e < 4; ++e) v -= G[e](a, b) * S0(e, c) + G[e](a, c) * S0(b, e);
        T[a][b][c] = v;
      }
  double n2 = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double up = 0.0;
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q)
            for (int r = 0; r < 4; ++r) up += gi(a, p) * gi(b, q) * gi(c, r) * T[p][q][r];
        n2 += up * T[a][b][c];
      }
  return std::sqrt(std::max(0.0, n2));
}

}  // namespace

DecayReport decay_report(const GluingConfig& cfg, const std::vector<double>& R_values) {
  DecayReport rep;
  std::vector<double> Rs, dev, vol, ae, af, nab;
  for (double R : R_values) {
    // |z1| = |z2| = sqrt(R), so y1 = 0 and r^2 = 2R.
    const ComplexPoint z{std::polar(std::sqrt(R), 0.3), std::polar(std::sqrt(R), 1.1)};
    const double r = z.real().norm();
    if (r < cfg.r0 + 1.0) throw std::invalid_argument("decay_report: sample inside the gluing region");
    const taubnut::TaubNutPoint p = taubnut::TaubNutPoint::at(z, cfg.m);
    const Mat4 f = taubnut::metric_f(p).g;
    DecayRow row;
    row.r = r;
    row.R = p.R;
    Eigen::SelfAdjointEigenSolver<Mat4> es(metric_m(cfg, z).g, Eigen::EigenvaluesOnly);
    row.min_eig = es.eigenvalues()[0];
    const Mat2c delta = omega_m_minus_f_hermitian(cfg, z);
    const Mat2c hf = taubnut::kahler_hermitian(p);
    row.dev_f = tensor_norm(deviation_metric(cfg, z.real()), Metric4{f});
    // 4 det h_f = 1, so 4 det(h_f + delta) - 1 = 4 (tr(adj(h_f) delta) + det delta).
    const Mat2c adj = (Mat2c() << hf(1, 1), -hf(0, 1), -hf(1, 0), hf(0, 0)).finished();
    row.dev_vol = std::abs(4.0 * ((adj * delta).trace() + delta.determinant()).real());
    const Mat4 a0 = metric_from_kahler(hermitian_to_two_form(cfg.ale.alpha0(z)), standard_complex_structures().I1).g;
    row.alpha_e = tensor_norm(a0, Metric4{});
    row.alpha_f = tensor_norm(a0, Metric4{f});
    const auto S = [&](const RealPoint4& q) { return deviation_metric(cfg, q); };
    row.nabla_dev = cfg.ale.kind == AleKind::euclidean ? 0.0 : covariant_norm(cfg.m, S, z.real(), 1e-3 * r);
    rep.rows.push_back(row);
    Rs.push_back(row.R);
    dev.push_back(row.dev_f);
    vol.push_back(row.dev_vol);
    ae.push_back(row.alpha_e);
    af.push_back(row.alpha_f);
    nab.push_back(row.nabla_dev);
  }
  if (cfg.ale.kind != AleKind::euclidean && Rs.size() >= 2) {
    rep.slope_dev = taubnut::loglog_slope(Rs, dev);
    rep.slope_vol = taubnut::loglog_slope(Rs, vol);
    rep.slope_alpha_e = taubnut::loglog_slope(Rs, ae);
    rep.slope_alpha_f = taubnut::loglog_slope(Rs, af);
    rep.slope_nabla = taubnut::loglog_slope(Rs, nab);
  }
  return rep;
}

NablaDxReport nabla_dx_growth(double m, int j, const std::vector<double>& radii, double y1_fraction) {
  NablaDxReport rep;
  for (double R : radii) {
    const double y1 = y1_fraction * R;
    const double rest = std::sqrt(std::max(0.0, R * R - y1 * y1));
    const Eigen::Vector3d y(y1, rest * std::cos(0.7), rest * std::sin(0.7));
    const taubnut::TaubNutPoint p = taubnut::from_moment(m, y, 0.4);
    const Mat4 T = taubnut::nabla_f_dx(j, p);
    rep.r.push_back(std::sqrt(p.r2()));
    rep.norm.push_back(tensor_norm(T, taubnut::metric_f(p)));
  }
  rep.slope = taubnut::loglog_slope(rep.r, rep.norm);
  return rep;
}

}  // namespace alflab::gluing
