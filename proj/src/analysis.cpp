#include "alflab/analysis.hpp"

#include "alflab/parallel.hpp"
#include "alflab/taubnut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alflab::analysis {

double rho_taubnut(const RealPoint4& x, double m) {
  const double R = taubnut::TaubNutPoint::at(x, m).R;
  return std::sqrt(1.0 + R * R);
}

namespace {

Eigen::VectorXd derivative_at(const GridField& u, std::size_t i, int k) {
  if (k == 0) return Eigen::VectorXd::Constant(1, u[i]);
  if (k == 1) return grid_gradient(u, i);
  const Mat4 H = grid_hessian(u, i);
  return Eigen::Map<const Eigen::VectorXd>(H.data(), 16);
}

}  // namespace

double weighted_norm(const GridField& u, const WeightedNorm& spec) {
  if (spec.k < 0 || spec.k > 2) throw std::invalid_argument("weighted norm supports orders 0..2");
  if (!(spec.alpha >= 0.0 && spec.alpha < 1.0)) throw std::invalid_argument("Holder exponent must lie in [0, 1)");
  if (!spec.rho) throw std::invalid_argument("weighted norm needs a radius function");
  const int min_depth = spec.k > 0 ? 1 : 0;
  const std::size_t n = u.size();
  std::vector<double> rho(n, 0.0);
  parallel_for(n, [&](std::size_t i) { rho[i] = spec.rho(u.position(i)); }, 256);

  // Sum over orders of the weighted sups, plus the weighted seminorm of the top derivative.
  const int terms = spec.k + 2;
  std::vector<double> best(n * terms, 0.0);
  const double h = u.spec().spacing();
  const int reach = spec.alpha > 0.0 ? std::max(1, static_cast<int>(std::floor(spec.cap / h + 1e-12))) : 0;
  const int last = u.spec().nodes_per_axis() - 1;
  parallel_for(
      n,
      [&](std::size_t i) {
        double* b = &best[i * terms];
        b[0] = std::pow(rho[i], spec.delta) * std::abs(u[i]);
        if (u.depth(i) < min_depth) return;
        for (int j = 1; j <= spec.k; ++j) b[j] = std::pow(rho[i], spec.delta + j) * derivative_at(u, i, j).norm();
        if (reach > 0) {
          const Eigen::VectorXd d0 = derivative_at(u, i, spec.k);
          const auto mi = u.multi_index(i);
          for (int a = 0; a < 4; ++a)
            for (int s = 1; s <= reach; ++s) {
              if (mi[a] + s > last - min_depth) break;
              const std::size_t j = i + s * u.stride(a);
              const double dist = s * h;
              const double w = std::pow(std::min(rho[i], rho[j]), spec.delta + spec.k + spec.alpha);
              b[terms - 1] =
                  std::max(b[terms - 1], w * (derivative_at(u, j, spec.k) - d0).norm() / std::pow(dist, spec.alpha));
            }
        }
      },
      64);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, best[i * terms + t]);
    total += m;
  }
  return total;
}

GridField radial_bump(double s, int n) {
  GridSpec g;
  g.n = n;
  g.lo = -1.1 * s;
  g.hi = 1.1 * s;
  return GridField(g, [s](const RealPoint4& x) {
    const double t = x.norm() / s;
    return t >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - t * t));
  });
}

SobolevReport sobolev_check(const std::vector<GridField>& samples, double m, const std::vector<double>& scales) {
  SobolevReport rep;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const GridField& u = samples[k];
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!u.interior(i) && u[i] != 0.0) throw std::invalid_argument("Sobolev sample must vanish on its boundary layer");
    const double h4 = std::pow(u.spec().spacing(), 4);
    std::vector<double> a(u.size(), 0.0), b(u.size(), 0.0), c(u.size(), 0.0);
    parallel_for(
        u.size(),
        [&](std::size_t i) {
          if (u.depth(i) < 1) return;
          const Vec4 du = grid_gradient(u, i);
          if (u[i] == 0.0 && du.squaredNorm() == 0.0) return;
          const RealPoint4 x = u.position(i);
          const taubnut::TaubNutPoint p = taubnut::TaubNutPoint::at(x, m);
          const double rho = std::sqrt(1.0 + p.R * p.R);
          const Mat4 g = taubnut::metric_f(p).g;
          const double u2 = u[i] * u[i];
          a[i] = u2 * u2 / rho;
          b[i] = du.dot(g.ldlt().solve(du));
          c[i] = u2 / (rho * rho);
        },
        256);
    SobolevSample s;
    s.scale = k < scales.size() ? scales[k] : 0.0;
    s.l4 = std::pow(h4 * deterministic_sum(u.size(), [&](std::size_t i) { return a[i]; }), 0.25);
    s.energy = std::sqrt(h4 * deterministic_sum(u.size(), [&](std::size_t i) { return b[i]; }));
    s.hardy_l2 = std::sqrt(h4 * deterministic_sum(u.size(), [&](std::size_t i) { return c[i]; }));
    s.sobolev_ratio = s.energy > 0.0 ? s.l4 / s.energy : 0.0;
    s.hardy_ratio = s.energy > 0.0 ? s.hardy_l2 / s.energy : 0.0;
    rep.max_sobolev = std::max(rep.max_sobolev, s.sobolev_ratio);
    rep.max_hardy = std::max(rep.max_hardy, s.hardy_ratio);
    rep.samples.push_back(s);
  }
  return rep;
}

namespace {

// Complex derivatives of the background coefficients at a point:
// dH[p] = d_{z_p} H, ddH[a][b] = d_{z_a} dbar_{z_b} H.
struct BackgroundJet {
  std::array<Mat2c, 2> dH;
  std::array<std::array<Mat2c, 2>, 2> ddH;
};

BackgroundJet background_jet(const ma::BackgroundKahler& bg, const RealPoint4& x) {
  BackgroundJet J;
  if (bg.kind == ma::BackgroundKahler::Kind::euclidean) {
    for (int a = 0; a < 2; ++a) {
      J.dH[a].setZero();
      for (int b = 0; b < 2; ++b) J.ddH[a][b].setZero();
    }
    return J;
  }
  const double d = 2e-3 * std::max(1.0, x.norm());
  auto H = [&](const RealPoint4& y) { return bg.hermitian(y); };
  std::array<Mat2c, 4> d1;
  std::array<std::array<Mat2c, 4>, 4> d2;
  const Mat2c h0 = H(x);
  for (int a = 0; a < 4; ++a) {
    Vec4 ea = Vec4::Zero();
    ea[a] = d;
    const Mat2c hp = H(x + ea), hm = H(x - ea);
    d1[a] = (hp - hm) / (2 * d);
    d2[a][a] = (hp - 2.0 * h0 + hm) / (d * d);
    for (int b = 0; b < a; ++b) {
      Vec4 eb = Vec4::Zero();
      eb[b] = d;
      d2[a][b] = (H(x + ea + eb) - H(x + ea - eb) - H(x - ea + eb) + H(x - ea - eb)) / (4 * d * d);
      d2[b][a] = d2[a][b];
    }
  }
  const cplx I(0.0, 1.0);
  for (int p = 0; p < 2; ++p) J.dH[p] = 0.5 * (d1[2 * p] - I * d1[2 * p + 1]);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int xa = 2 * a, ya = 2 * a + 1, xb = 2 * b, yb = 2 * b + 1;
      // (dx_a - i dy_a)(dx_b + i dy_b) / 4
      J.ddH[a][b] = 0.25 * (d2[xa][xb] + d2[ya][yb] + I * (d2[xa][yb] - d2[ya][xb]));
    }
  return J;
}

}  // namespace

AubinYauReport aubin_yau_probe(const ma::Problem& P, const GridField& phi, double t) {
  const std::size_t n = phi.size();
  const cplx I(0.0, 1.0);
  std::vector<Mat2c> Phi(n, Mat2c::Zero());
  GridField box(P.grid());
  GridField F(P.grid());
  for (std::size_t i = 0; i < n; ++i) F[i] = t * P.f()[i];
  parallel_for(
      n,
      [&](std::size_t i) {
        if (phi.depth(i) < 1) return;
        Phi[i] = grid_complex_hessian(phi, i);
        box[i] = (P.h_inv(i) * Phi[i]).trace().real();
      },
      256);

  std::vector<std::size_t> probe;
  for (std::size_t i = 0; i < n; ++i)
    if (phi.depth(i) >= 3) probe.push_back(i);

  struct Out {
    double lhs, rhs, curv, trace;
  };
  std::vector<Out> out(probe.size());
  parallel_for(
      probe.size(),
      [&](std::size_t k) {
        const std::size_t i = probe[k];
        const Mat2c& Hi = P.h_inv(i);
        const Mat2c Hp = P.h(i) + Phi[i];
        const Mat2c Hpi = Hp.inverse();
        const double lhs = (Hpi * grid_complex_hessian(box, i)).trace().real();
        const double boxF = (Hi * grid_complex_hessian(F, i)).trace().real();

        const BackgroundJet J = background_jet(P.background(), phi.position(i));
        const double h = P.grid().spacing();
        // d_{z_p} Phi by central differences.
        std::array<Mat2c, 2> dPhi;
        for (int p = 0; p < 2; ++p) {
          const std::size_t sx = phi.stride(2 * p), sy = phi.stride(2 * p + 1);
          const Mat2c dx = (Phi[i + sx] - Phi[i - sx]) / (2 * h);
          const Mat2c dy = (Phi[i + sy] - Phi[i - sy]) / (2 * h);
          dPhi[p] = 0.5 * (dx - I * dy);
        }
        // Gamma^s_{pk} = h^{s qbar} d_p h_{k qbar}; T_{pkl} = nabla_p Phi_{k lbar}.
        cplx T[2][2][2];
        for (int p = 0; p < 2; ++p)
          for (int kk = 0; kk < 2; ++kk)
            for (int l = 0; l < 2; ++l) {
              cplx v = dPhi[p](kk, l);
              for (int s = 0; s < 2; ++s) {
                cplx G = 0.0;
                for (int q = 0; q < 2; ++q) G += Hi(q, s) * J.dH[p](kk, q);
                v -= G * Phi[i](s, l);
              }
              T[p][kk][l] = v;
            }
        cplx Q = 0.0;
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            for (int a = 0; a < 2; ++a)
              for (int l = 0; l < 2; ++l)
                for (int kk = 0; kk < 2; ++kk)
                  for (int j = 0; j < 2; ++j)
                    Q += Hi(q, p) * Hpi(l, a) * Hpi(j, kk) * T[p][kk][l] * std::conj(T[q][j][a]);

        // R_{a bbar k lbar} = -d_a dbar_b h_{k lbar} + h^{p qbar} d_a h_{k qbar} dbar_b h_{p lbar}.
        cplx R[2][2][2][2];
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int kk = 0; kk < 2; ++kk)
              for (int l = 0; l < 2; ++l) {
                cplx v = -J.ddH[a][b](kk, l);
                for (int p = 0; p < 2; ++p)
                  for (int q = 0; q < 2; ++q) v += Hi(q, p) * J.dH[a](kk, q) * std::conj(J.dH[b](l, p));
                R[a][b][kk][l] = v;
              }
        cplx S = 0.0, C = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int kk = 0; kk < 2; ++kk)
              for (int l = 0; l < 2; ++l) {
                S += Hi(b, a) * Hi(l, kk) * R[a][b][kk][l];
                for (int c = 0; c < 2; ++c)
                  for (int j = 0; j < 2; ++j) C += Hpi(b, a) * Hi(l, c) * Hi(j, kk) * R[a][b][kk][l] * Hp(c, j);
              }
        const double curv = (C - S).real();
        const double trace = 2.0 * (Hi * Hp).trace().real() / (4.0 * std::exp(0.5 * F[i]));
        out[k] = {4.0 * lhs, 4.0 * (boxF + Q.real() + curv), 4.0 * curv, trace};
      },
      64);

  AubinYauReport rep;
  rep.nodes = probe.size();
  rep.min_trace_ratio = std::numeric_limits<double>::infinity();
  for (const auto& o : out) {
    rep.max_lhs = std::max(rep.max_lhs, std::abs(o.lhs));
    rep.max_rhs = std::max(rep.max_rhs, std::abs(o.rhs));
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(o.lhs - o.rhs));
    rep.max_curvature_term = std::max(rep.max_curvature_term, std::abs(o.curv));
    rep.min_trace_ratio = std::min(rep.min_trace_ratio, o.trace);
  }
  rep.rel_discrepancy = rep.max_lhs > 0.0 ? rep.max_abs_diff / rep.max_lhs : rep.max_abs_diff;
  return rep;
}

}  // namespace alflab::analysis
