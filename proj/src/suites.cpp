#include "alflab/suites.hpp"

#include "alflab/dihedral.hpp"
#include "alflab/parallel.hpp"
#include "alflab/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace alflab::suites {

using taubnut::TaubNutPoint;

namespace {

double max_abs(const Mat4& a) { return a.cwiseAbs().maxCoeff(); }

double rel_diff(const Mat4& a, const Mat4& b) {
  const double s = std::max({max_abs(a), max_abs(b), std::numeric_limits<double>::min()});
  return max_abs(a - b) / s;
}

CheckRow row(std::string check, std::size_t index, double value, double tol, std::string identity,
             bool lower = false) {
  CheckRow r;
  r.check = std::move(check);
  r.index = index;
  r.value = value;
  r.tolerance = tol;
  r.lower_bound = lower;
  r.pass = lower ? value >= tol : value <= tol;
  if (std::isnan(value)) r.pass = false;
  r.identity = std::move(identity);
  return r;
}

// Per-point checks run in parallel; rows are collected in point order.
void per_point(SuiteResult& out, std::size_t n, const std::function<std::vector<CheckRow>(std::size_t)>& fn) {
  std::vector<std::vector<CheckRow>> slots(n);
  parallel_for(n, [&](std::size_t i) { slots[i] = fn(i); });
  for (auto& s : slots)
    for (auto& r : s) out.rows.push_back(std::move(r));
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 1) return {lo};
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return v;
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

const CheckRow* SuiteResult::first_failure() const {
  for (const auto& r : rows)
    if (!r.pass) return &r;
  return nullptr;
}

std::vector<CheckRow> SuiteResult::summary() const {
  std::vector<CheckRow> out;
  std::map<std::string, std::size_t> where;
  for (const auto& r : rows) {
    auto it = where.find(r.check);
    if (it == where.end()) {
      where[r.check] = out.size();
      out.push_back(r);
      continue;
    }
    CheckRow& s = out[it->second];
    const bool worse = r.lower_bound ? r.value < s.value : r.value > s.value;
    if (worse || (!r.pass && s.pass)) s = r;
  }
  return out;
}

std::vector<ComplexPoint> random_points(std::uint64_t seed, const std::string& stream, std::size_t n,
                                        double r_min, double r_max) {
  std::vector<ComplexPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = substream(seed, stream, i);
    const double r = r_min * std::pow(r_max / r_min, rng.uniform());
    Vec4 d;
    do {
      d = Vec4(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    } while (d.norm() < 1e-3);
    pts[i] = ComplexPoint::from_real(r * d / d.norm());
  }
  return pts;
}

std::vector<TaubNutPoint> random_moment_points(double m, std::uint64_t seed, const std::string& stream,
                                               std::size_t n, double R_min, double R_max, double max_abs_y1) {
  std::vector<TaubNutPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = substream(seed, stream, i);
    const double R = rng.uniform(R_min, R_max);
    Eigen::Vector3d d;
    do {
      d = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
    } while (d.norm() < 1e-3);
    const double theta = rng.uniform(0.0, 2 * std::numbers::pi);
    Eigen::Vector3d y = R * d / d.norm();
    if (std::abs(y[0]) > max_abs_y1) {
      const double y1 = std::copysign(max_abs_y1, y[0]);
      const double t = std::hypot(y[1], y[2]);
      const double s = t > 0.0 ? std::sqrt(R * R - y1 * y1) / t : 0.0;
      y = Eigen::Vector3d(y1, s * y[1], s * y[2]);
    }
    pts[i] = taubnut::from_moment(m, y, theta);
  }
  return pts;
}

SuiteResult taubnut_identities(const SuiteOptions& opt) {
  SuiteResult out{"taubnut-identities", {}};
  const double m = opt.m;
  const auto n = static_cast<std::size_t>(std::max(opt.n, 1));
  const auto pts = random_points(opt.seed, "taubnut-identities", n, 0.05, 5.0);
  const double omega_sq = 2.0;
  per_point(out, n, [&](std::size_t i) {
    std::vector<CheckRow> rows;
    const auto p = TaubNutPoint::at(pts[i], m);
    rows.push_back(row("implicit-system", i, p.implicit_residual(), 1e-12,
                       "|z1| = e^{m(u^2-v^2)} u, |z2| = e^{m(v^2-u^2)} v"));
    const double phi = taubnut::potential_phi(p);
    const double phi_r = 0.5 * (p.R + m * (p.R * p.R + p.y1 * p.y1));
    rows.push_back(row("potential-rewrite", i, std::abs(phi - phi_r) / std::max(phi, 1e-300), 1e-12,
                       "(u^2+v^2+m(u^4+v^4))/4 = (R + m(R^2+y1^2))/2"));
    const TwoForm4 w = taubnut::kahler_form_f(p);
    rows.push_back(row("volume-form", i, std::abs(two_form_wedge_ratio(w, w) - omega_sq), 1e-9,
                       "omega_f^2 = 2 Omega_e"));
    const Metric4 f = taubnut::metric_f(p);
    const auto xi = taubnut::xi_at(p);
    const auto eta = taubnut::eta_at(p);
    rows.push_back(row("eta-xi", i, std::abs(eta(xi) - 1.0), 1e-10, "eta(xi) = 1"));
    const double xi2 = f(xi, xi);
    const double xi2_c = 1.0 / p.V;
    rows.push_back(row("fibre-norm", i, std::abs(xi2 - xi2_c) / xi2_c, 1e-10, "|xi|_f^2 = V^{-1}"));
    rows.push_back(row("gibbons-hawking-metric", i, rel_diff(taubnut::metric_gibbons_hawking(p).g, f.g), 1e-9,
                       "f = V dy^2 + V^{-1} eta^2"));
    rows.push_back(row("gibbons-hawking-form", i, rel_diff(taubnut::kahler_form_gibbons_hawking(p).w, w.w),
                       1e-9, "omega_f = dy1 ^ eta + V dy2 ^ dy3"));
    const auto c = taubnut::compare_with_euclidean(p);
    const double viol = std::max({0.0, c.lower - c.r2, c.r2 - c.upper}) / c.r2;
    rows.push_back(row("comparison-ordering", i, viol, 1e-12, "2R <= r^2 <= 2R e^{4mR}"));
    rows.push_back(row("unit-determinant", i, std::abs(c.det - 1.0), 1e-10, "det_e f = 1"));
    rows.push_back(row("moment-radius", i, std::abs(c.closed_form_r2 - c.r2) / c.r2, 1e-10,
                       "r^2 = 2(R cosh(4my1) + y1 sinh(4my1))"));
    return rows;
  });

  // Equality loci of the comparison: |z1| = |z2| gives y1 = 0, z2 = 0 gives R = y1.
  const auto loci = random_points(opt.seed, "taubnut-identities/loci", n, 0.05, 5.0);
  per_point(out, n, [&](std::size_t i) {
    const double r = loci[i].real().norm();
    const double a = std::arg(loci[i].z1), b = std::arg(loci[i].z2);
    const ComplexPoint diag{std::polar(r / std::sqrt(2.0), a), std::polar(r / std::sqrt(2.0), b)};
    const ComplexPoint axis{std::polar(r, a), cplx(0.0, 0.0)};
    const auto cd = taubnut::compare_with_euclidean(TaubNutPoint::at(diag, m));
    const auto ca = taubnut::compare_with_euclidean(TaubNutPoint::at(axis, m));
    return std::vector<CheckRow>{
        row("comparison-lower-equality", i, std::abs(cd.r2 - cd.lower) / cd.r2, 1e-10, "r^2 = 2R on |z1| = |z2|"),
        row("comparison-upper-equality", i, std::abs(ca.r2 - ca.upper) / ca.r2, 1e-10,
            "r^2 = 2R e^{4mR} on z2 = 0")};
  });

  // d eta = *dV at off-axis points (both |z_j| at least r/5).
  const auto fd_pts = random_points(opt.seed, "taubnut-identities/d-eta", 4 * std::min<std::size_t>(n, 100), 0.3, 4.0);
  std::vector<ComplexPoint> off;
  for (const auto& z : fd_pts) {
    const double r = z.real().norm();
    if (std::abs(z.z1) > 0.2 * r && std::abs(z.z2) > 0.2 * r) off.push_back(z);
    if (off.size() == std::min<std::size_t>(n, 100)) break;
  }
  per_point(out, off.size(), [&](std::size_t i) {
    const auto p = TaubNutPoint::at(off[i], m);
    const double h = 2e-4 * std::max(1.0, p.x.norm()) / std::max(1.0, std::sqrt(m) * p.x.norm());
    const auto field = [m](const RealPoint4& x) { return taubnut::eta_at(TaubNutPoint::at(x, m)); };
    const TwoForm4 d_eta = exterior_derivative(field, p.x, h);
    const auto dy = taubnut::dy_at(p);
    const TwoForm4 star = hodge_star_r3(taubnut::grad_V(p)).pull_back(dy[0], dy[1], dy[2]);
    return std::vector<CheckRow>{row("d-eta", i, rel_diff(d_eta.w, star.w), 1e-5, "d eta = *_{R^3} dV")};
  });
  return out;
}

SuiteResult frames(const SuiteOptions& opt) {
  SuiteResult out{"frames", {}};
  const double m = opt.m;
  const auto n = static_cast<std::size_t>(std::max(opt.n, 1));
  // 4m|y1| <= 8 keeps both |z_j| within e^4 of sqrt(2R); beyond that the x
  // chart loses the digits these tolerances need.
  const double y1_cap = 2.0 / m;
  const auto pts = random_moment_points(m, opt.seed, "frames", n, 0.2, 20.0, y1_cap);
  per_point(out, n, [&](std::size_t i) {
    std::vector<CheckRow> rows;
    const auto& p = pts[i];
    const auto fr = taubnut::frame_at(p);
    const Metric4 f = taubnut::metric_f(p);
    double dual = 0.0, ortho = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double d = a == b ? 1.0 : 0.0;
        dual = std::max(dual, std::abs(fr.dual[a](fr.e[b]) - d));
        ortho = std::max(ortho, std::abs(f(fr.e[a], fr.e[b]) - d));
      }
    rows.push_back(row("coframe-duality", i, dual, 1e-10, "e^a(e_b) = delta_ab"));
    rows.push_back(row("frame-orthonormal", i, ortho, 1e-10, "f(e_a, e_b) = delta_ab"));

    const AlmostComplexStructure I1 = standard_complex_structures().I1;
    const VectorField4 Iz = I1.apply(fr.zeta);
    double zeta = std::abs(fr.eta(fr.zeta));
    zeta = std::max({zeta, std::abs(fr.dy1(fr.zeta)), std::abs(fr.dy2(fr.zeta) - 1.0), std::abs(fr.dy3(fr.zeta))});
    zeta = std::max({zeta, std::abs(fr.eta(Iz)), std::abs(fr.dy1(Iz)), std::abs(fr.dy2(Iz)),
                     std::abs(fr.dy3(Iz) - 1.0)});
    rows.push_back(row("zeta-duality", i, zeta, 1e-10, "dy2(zeta) = dy3(I1 zeta) = 1, eta(zeta) = dy1(zeta) = 0"));

    const auto hk = taubnut::hyperkahler_triple(p);
    const Mat4 id = Mat4::Identity();
    // Residuals relative to the size of the products, since the x-components of
    // J2, J3 grow like e^{4m|y1|}.
    const double n1 = max_abs(hk.I1.J), n2 = max_abs(hk.I2.J), n3 = max_abs(hk.I3.J);
    double quat = max_abs(hk.I1.J * hk.I2.J - hk.I3.J) / (n1 * n2);
    quat = std::max({quat, max_abs(hk.I2.J * hk.I2.J + id) / (n2 * n2), max_abs(hk.I3.J * hk.I3.J + id) / (n3 * n3)});
    rows.push_back(row("quaternion-relations", i, quat, 1e-12, "J1 J2 = J3, J2^2 = J3^2 = -1"));
    // Re dz1^dz2 = dx1^dx3 - dx2^dx4, Im dz1^dz2 = dx1^dx4 + dx2^dx3.
    const TwoForm4 re = wedge(dx(0), dx(2)) - wedge(dx(1), dx(3));
    const TwoForm4 im = wedge(dx(0), dx(3)) + wedge(dx(1), dx(2));
    rows.push_back(row("holomorphic-symplectic", i,
                       std::max(max_abs(kahler_from_metric(f, hk.I2).w - re.w) / (max_abs(f.g) * n2),
                                max_abs(kahler_from_metric(f, hk.I3).w - im.w) / (max_abs(f.g) * n3)),
                       1e-12, "f(J2 ., .) + i f(J3 ., .) = dz1 ^ dz2"));

    const auto dict = taubnut::dictionary_dx(p);
    const VectorField4 Ixi = I1.apply(fr.xi);
    double d = 0.0;
    for (int j = 0; j < 4; ++j) {
      const Vec4 a = dict.dx[j][0] * fr.eta.a + dict.dx[j][1] * fr.dy1.a + dict.dx[j][2] * fr.dy2.a +
                     dict.dx[j][3] * fr.dy3.a;
      const Vec4 v = dict.d_dx[j][0] * fr.xi.v + dict.d_dx[j][1] * Ixi.v + dict.d_dx[j][2] * fr.zeta.v +
                     dict.d_dx[j][3] * Iz.v;
      const double sa = std::max(1.0, a.cwiseAbs().maxCoeff());
      d = std::max({d, (a - dx(j).a).cwiseAbs().maxCoeff() / sa, (v - partial(j).v).cwiseAbs().maxCoeff()});
    }
    rows.push_back(row("dictionary", i, d, 1e-9, "dx_j and d/dx_j in the (eta, dy) and (xi, zeta) bases"));

    const auto con = taubnut::connection_from_brackets(taubnut::bracket_table_closed(p));
    const Mat4 ne0 = taubnut::nabla_e0_closed(p);
    Mat4 from_koszul;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) from_koszul(a, c) = con[a][0][c];
    rows.push_back(row("nabla-e0", i, max_abs(from_koszul - ne0) / std::max(max_abs(ne0), 1e-300), 1e-10,
                       "nabla e0 from the cyclic sum = Koszul formula"));
    return rows;
  });

  // Brackets and nabla dx against finite differences on R in [5, 50].
  const std::size_t nb = std::min<std::size_t>(n, 50);
  const auto far = random_moment_points(m, opt.seed, "frames/brackets", nb, 5.0, 50.0, y1_cap);
  per_point(out, nb, [&](std::size_t i) {
    const auto& p = far[i];
    const auto closed = taubnut::bracket_table_closed(p);
    const auto fd = taubnut::bracket_table_fd(m, p.x, taubnut::default_frame_step(m));
    double diff = 0.0, scale = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        diff = std::max(diff, (closed[a][b] - fd[a][b]).cwiseAbs().maxCoeff());
        scale = std::max(scale, closed[a][b].cwiseAbs().maxCoeff());
      }
    std::vector<CheckRow> rows{row("brackets", i, diff / scale, 1e-4,
                                   "[e0,ei] = yi/(4R^3V^{3/2}) e0, [ei,ej] = (yi ej - yj ei + 2yk e0)/(4R^3V^{3/2})")};
    double nd = 0.0;
    const double h = 1e-3 * std::min(std::abs(p.z.z1), std::abs(p.z.z2));
    for (int j = 0; j < 4; ++j)
      nd = std::max(nd, rel_diff(taubnut::nabla_f_dx(j, p), taubnut::nabla_f_dx_fd(j, m, p.x, h)));
    rows.push_back(row("nabla-dx", i, nd, 1e-4, "nabla^f dx_j from the frame connection = Christoffel form"));
    return rows;
  });
  return out;
}

SuiteResult curvature(const SuiteOptions& opt) {
  SuiteResult out{"curvature", {}};
  // Radii are scaled so that mR >= 10 at the smallest probe: the R^-3 regime
  // only starts once 2m dominates 1/(2R).
  const double scale = std::max(1.0, 1.0 / opt.m);
  const std::vector<double> radii{10.0 * scale, 30.0 * scale, 100.0 * scale};
  const auto d = taubnut::curvature_decay(opt.m, radii);
  for (std::size_t i = 0; i < d.probes.size(); ++i)
    out.rows.push_back(row("ricci-flat", i, d.probes[i].ricci_norm, 1e-4, "Ric(f) = 0"));
  for (std::size_t i = 0; i < d.radii.size(); ++i)
    out.rows.push_back(row("rm-positive", i, d.mean_norm[i], 0.0, "|Rm^f| > 0", true));
  out.rows.push_back(row("rm-decay-slope", 0, std::abs(d.slope + 3.05), 0.25, "|Rm^f| = O(R^-3), slope in [-3.3, -2.8]"));
  return out;
}

SuiteResult dihedral(const SuiteOptions& opt) {
  SuiteResult out{"dihedral", {}};
  const auto n = static_cast<std::size_t>(std::max(opt.n, 1));
  const auto pts = random_points(opt.seed, "dihedral", n, 0.1, 3.0);
  const auto rep = dihedral::check_potential_invariance(opt.k, opt.m, pts);
  out.rows.push_back(row("rotation-u-v", 0, rep.max_rotation_u, 1e-12, "u(zeta_k z) = u(z), v(zeta_k z) = v(z)"));
  out.rows.push_back(row("tau-swap", 0, rep.max_swap, 1e-12, "u(tau z) = v(z), v(tau z) = u(z)"));
  out.rows.push_back(row("potential-invariance", 0, rep.max_phi, 1e-9, "phi(g z) = phi(z) for g in D_k"));
  out.rows.push_back(row("metric-invariance", 0, rep.max_metric, 1e-9, "g^* f = f for g in D_k"));
  out.rows.push_back(row("invariant-triple", 0, rep.max_triple, 1e-10, "(U, V, W)(g z) = (U, V, W)(z)"));
  out.rows.push_back(row("syzygy", 0, rep.max_syzygy, 1e-10, "U^2 + V^2 W + W^{k+1} = 0"));
  out.rows.push_back(row("free-action", 0, rep.min_fixed_gap, 1e-6, "g z != z for g != 1, z != 0", true));
  // Diagonal generators lie in the torus that preserves phi; only the others witness.
  const auto ws = dihedral::polyhedral_generators();
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (std::abs(ws[i].matrix(0, 1)) > 0.0)
      out.rows.push_back(row("witness-" + ws[i].name, i, dihedral::potential_defect(ws[i].matrix, opt.m, pts), 1e-3,
                           "phi(g z) != phi(z) outside D_k", true));
  return out;
}

SuiteResult gluing(const SuiteOptions& opt) {
  SuiteResult out{"gluing", {}};
  const double m = opt.m;

  double kd = 0.0, chi_min = 1.0, chi1_min = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = -0.25 + 1.5 * i / 400.0;
    const double h = 1e-3;
    const double d = (-gluing::kappa(t + 2 * h) + 8 * gluing::kappa(t + h) - 8 * gluing::kappa(t - h) +
                      gluing::kappa(t - 2 * h)) / (12 * h);
    kd = std::max(kd, std::abs(d - gluing::chi(t)));
    chi_min = std::min(chi_min, gluing::chi(t));
    chi1_min = std::min(chi1_min, gluing::chi_d1(t));
  }
  out.rows.push_back(row("kappa-derivative", 0, kd, 1e-8, "kappa' = chi"));
  out.rows.push_back(row("kappa-convex", 0, chi1_min, 0.0, "kappa'' = chi' >= 0", true));
  out.rows.push_back(row("cutoff-range", 0, chi_min, 0.0, "0 <= chi <= 1", true));

  gluing::AleModel eh;
  eh.kind = gluing::AleKind::eguchi_hanson_correction;
  const int side = std::max(2, opt.n);
  const auto tune = gluing::auto_tune(m, eh, side, side, opt.seed);
  const auto& rep = tune.report;
  out.rows.push_back(row("metric-positive", 0, rep.min_eig_gm, 0.0, "g_m > 0", true));
  const char* zone_names[3] = {"zone-inside", "zone-annulus", "zone-outside"};
  const char* zone_ids[3] = {"omega_m >= omega_g for phi <= K", "omega_m >= omega_f / 4 on the annulus",
                             "omega_m >= omega_f / 2 for r >= r0 + 1"};
  for (int z = 0; z < 3; ++z)
    out.rows.push_back(row(zone_names[z], static_cast<std::size_t>(z), rep.count[z] ? rep.min_margin[z] : 0.0,
                           -1e-12, zone_ids[z], true));

  const double R0 = 0.5 * (tune.cfg.r0 + 2) * (tune.cfg.r0 + 2);
  const auto decay = gluing::decay_report(tune.cfg, {R0, 2 * R0, 4 * R0, 8 * R0});
  out.rows.push_back(row("deviation-decay", 0, std::abs(decay.slope_dev + 3.0), 0.3,
                         "|g_m - f|_f = O(R^-3), slope in [-3.3, -2.7]"));

  gluing::GluingConfig flat = tune.cfg;
  flat.ale.kind = gluing::AleKind::euclidean;
  const auto dflat = gluing::decay_report(flat, {R0, 2 * R0, 4 * R0, 8 * R0});
  double flat_dev = 0.0;
  for (const auto& r : dflat.rows) flat_dev = std::max(flat_dev, r.dev_f);
  out.rows.push_back(row("flat-model-exact", 0, flat_dev, 1e-12, "g_m = f beyond the annulus for alpha_0 = 0"));

  // D_k invariance of the glued potential and closedness of omega_m.
  const std::size_t np = static_cast<std::size_t>(std::min(opt.n, 50));
  const auto pts = random_points(opt.seed, "gluing", np, 0.1, tune.cfg.r0 + 2.0);
  const auto group = dihedral::group_elements(opt.k);
  per_point(out, np, [&](std::size_t i) {
    const double a = gluing::glued_potential(tune.cfg, pts[i]);
    double worst = 0.0;
    for (const auto& g : group) {
      const double b = gluing::glued_potential(tune.cfg, dihedral::act(g, pts[i]));
      worst = std::max(worst, std::abs(b - a) / std::max(1.0, std::abs(a)));
    }
    const auto field = [&](const RealPoint4& x) { return gluing::omega_m(tune.cfg, ComplexPoint::from_real(x)); };
    const RealPoint4 x = pts[i].real();
    // Small step: with beta << 1 the cutoff is steep just outside r0.
    const double h = 1e-5 * std::max(1.0, x.norm());
    const double scale = std::max(1.0, max_abs(field(x).w));
    const double closed = exterior_derivative(field, x, h).cwiseAbs().maxCoeff() / scale;
    return std::vector<CheckRow>{
        row("potential-dihedral-invariance", i, worst, 1e-9, "Phi_m(g z) = Phi_m(z) for g in D_k"),
        row("omega-m-closed", i, closed, 1e-5, "d omega_m = 0")};
  });
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"taubnut-identities", "dihedral", "gluing", "frames", "curvature"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "taubnut-identities") return taubnut_identities(opt);
  if (name == "frames") return frames(opt);
  if (name == "curvature") return curvature(opt);
  if (name == "dihedral") return dihedral(opt);
  if (name == "gluing") return gluing(opt);
  throw std::invalid_argument("unknown suite: " + name);
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt_double(r[i]);
    os << '\n';
  }
  return os.str();
}

std::string to_csv(const SuiteResult& r) {
  std::ostringstream os;
  os << "suite,check,index,value,tolerance,bound,pass,identity\n";
  for (const auto& c : r.rows)
    os << r.suite << ',' << c.check << ',' << c.index << ',' << fmt_double(c.value) << ','
       << fmt_double(c.tolerance) << ',' << (c.lower_bound ? "min" : "max") << ',' << (c.pass ? 1 : 0) << ",\""
       << c.identity << "\"\n";
  return os.str();
}

const std::vector<std::string>& sweep_names() {
  static const std::vector<std::string> names{"comparison-bounds", "decay", "fiber-length"};
  return names;
}

Table run_sweep(const std::string& kind, const SweepOptions& opt) {
  if (!(opt.r_min > 0.0) || !(opt.r_max > opt.r_min)) throw std::invalid_argument("sweep range needs 0 < r_min < r_max");
  Table t;
  if (kind == "comparison-bounds") {
    // locus 0: |z1| = |z2|, 1: z2 = 0, 2: |z2| = |z1| tan(0.3).
    t.header = {"locus", "r", "r2", "lower", "upper", "det"};
    for (int locus = 0; locus < 3; ++locus)
      for (double r : log_space(opt.r_min, opt.r_max, opt.n)) {
        const double a = locus == 0 ? std::numbers::pi / 4 : locus == 1 ? 0.0 : 0.3;
        const ComplexPoint z{cplx(r * std::cos(a), 0.0), cplx(0.0, r * std::sin(a))};
        const auto c = taubnut::compare_with_euclidean(TaubNutPoint::at(z, opt.m));
        t.rows.push_back({static_cast<double>(locus), r, c.r2, c.lower, c.upper, c.det});
      }
    return t;
  }
  if (kind == "fiber-length") {
    t.header = {"R", "fiber_length", "limit"};
    const double limit = std::numbers::pi * std::sqrt(2.0 / opt.m);
    // y1 = 0 keeps |z1| = |z2| moderate; the fibre length depends on R only.
    const Eigen::Vector3d dir(0.0, 1.0, 0.0);
    for (double R : log_space(opt.r_min, opt.r_max, opt.n))
      t.rows.push_back({R, taubnut::fiber_length(taubnut::from_moment(opt.m, R * dir, 0.0)), limit});
    return t;
  }
  if (kind == "decay") {
    t.header = {"R", "r", "min_eig", "dev_f", "dev_vol", "alpha_e", "alpha_f", "nabla_dev"};
    gluing::AleModel ale;
    ale.kind = opt.ale;
    const auto tune = gluing::auto_tune(opt.m, ale);
    const double r_lo = std::max(opt.r_min, tune.cfg.r0 + 2.0);
    const double r_hi = std::max(opt.r_max, 2.0 * r_lo);
    std::vector<double> Rs;
    for (double r : log_space(r_lo, r_hi, opt.n)) Rs.push_back(0.5 * r * r);
    const auto d = gluing::decay_report(tune.cfg, Rs);
    for (const auto& r : d.rows) t.rows.push_back({r.R, r.r, r.min_eig, r.dev_f, r.dev_vol, r.alpha_e, r.alpha_f, r.nabla_dev});
    return t;
  }
  throw std::invalid_argument("unknown sweep: " + kind);
}

}  // namespace alflab::suites
