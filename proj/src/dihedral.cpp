#include "alflab/dihedral.hpp"

#include "alflab/taubnut.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alflab::dihedral {

namespace {

const cplx I(0.0, 1.0);

void require_order(int k) {
  if (k < 2) throw std::invalid_argument("dihedral order parameter k must be >= 2");
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

Mat2c zeta_matrix(int k) {
  require_order(k);
  Mat2c z = Mat2c::Zero();
  z(0, 0) = std::polar(1.0, std::numbers::pi / k);
  z(1, 1) = std::polar(1.0, -std::numbers::pi / k);
  return z;
}

Mat2c tau_matrix() {
  Mat2c t = Mat2c::Zero();
  t(0, 1) = 1.0;
  t(1, 0) = -1.0;
  return t;
}

DihedralElement DihedralElement::make(int k, int a, int b) {
  require_order(k);
  DihedralElement g;
  g.k = k;
  g.a = ((a % (2 * k)) + 2 * k) % (2 * k);
  g.b = ((b % 2) + 2) % 2;
  Mat2c z = Mat2c::Zero();
  z(0, 0) = std::polar(1.0, std::numbers::pi * g.a / k);
  z(1, 1) = std::polar(1.0, -std::numbers::pi * g.a / k);
  g.matrix = g.b ? Mat2c(z * tau_matrix()) : z;
  return g;
}

std::vector<DihedralElement> group_elements(int k) {
  require_order(k);
  std::vector<DihedralElement> out;
  out.reserve(4 * k);
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2 * k; ++a) out.push_back(DihedralElement::make(k, a, b));
  return out;
}

ComplexPoint act(const Mat2c& g, const ComplexPoint& z) {
  const Eigen::Vector2cd w = g * Eigen::Vector2cd(z.z1, z.z2);
  return {w[0], w[1]};
}

ComplexPoint act(const DihedralElement& g, const ComplexPoint& z) { return act(g.matrix, z); }

InvariantTriple invariant_triple(const ComplexPoint& z, int k) {
  require_order(k);
  const cplx a = z.z1, b = z.z2;
  const cplx a2k = std::pow(a, 2 * k), b2k = std::pow(b, 2 * k);
  InvariantTriple t;
  t.U = 0.5 * (a2k * a * b - b2k * b * a);
  t.V = 0.5 * I * (a2k + b2k);
  t.W = a * a * b * b;
  return t;
}

double syzygy_residual(const InvariantTriple& t, int k) {
  const cplx p = t.U * t.U, q = t.V * t.V * t.W, r = std::pow(t.W, k + 1);
  const double scale = std::max({std::abs(p), std::abs(q), std::abs(r)});
  if (scale == 0.0) return 0.0;
  return std::abs(p + q + r) / scale;
}

InvarianceReport check_potential_invariance(int k, double m, const std::vector<ComplexPoint>& samples) {
  using taubnut::TaubNutPoint;
  const auto G = group_elements(k);
  const DihedralElement zk = DihedralElement::make(k, 1, 0);
  const DihedralElement tau = DihedralElement::make(k, 0, 1);
  InvarianceReport rep;
  rep.k = k;
  rep.min_fixed_gap = std::numeric_limits<double>::infinity();
  for (const auto& z : samples) {
    const TaubNutPoint p = TaubNutPoint::at(z, m);
    const TaubNutPoint pz = TaubNutPoint::at(act(zk, z), m);
    const TaubNutPoint pt = TaubNutPoint::at(act(tau, z), m);
    rep.max_rotation_u = std::max({rep.max_rotation_u, rel(pz.u, p.u), rel(pz.v, p.v)});
    rep.max_swap = std::max({rep.max_swap, rel(pt.u, p.v), rel(pt.v, p.u)});

    const double phi = taubnut::potential_phi(p);
    const Mat4 f = taubnut::metric_f(p).g;
    const InvariantTriple t0 = invariant_triple(z, k);
    rep.max_syzygy = std::max(rep.max_syzygy, syzygy_residual(t0, k));
    const double tscale = std::max({std::abs(t0.U), std::abs(t0.V), std::abs(t0.W), 1e-300});
    const double zn = z.real().norm();
    for (const auto& g : G) {
      const ComplexPoint gz = act(g, z);
      const TaubNutPoint pg = TaubNutPoint::at(gz, m);
      rep.max_phi = std::max(rep.max_phi, rel(taubnut::potential_phi(pg), phi));
      const Mat4 M = realify(g.matrix);
      const Mat4 pulled = M.transpose() * taubnut::metric_f(pg).g * M;
      rep.max_metric = std::max(rep.max_metric, (pulled - f).cwiseAbs().maxCoeff() / f.cwiseAbs().maxCoeff());
      const InvariantTriple tg = invariant_triple(gz, k);
      const double dt = std::max({std::abs(tg.U - t0.U), std::abs(tg.V - t0.V), std::abs(tg.W - t0.W)});
      rep.max_triple = std::max(rep.max_triple, dt / tscale);
      if ((g.a != 0 || g.b != 0) && zn > 0.0)
        rep.min_fixed_gap = std::min(rep.min_fixed_gap, (gz.real() - z.real()).norm() / zn);
    }
    ++rep.samples;
  }
  return rep;
}

std::vector<Witness> polyhedral_generators() {
  const cplx eps = std::polar(1.0, std::numbers::pi / 4);
  const cplx eta = std::polar(1.0, 2 * std::numbers::pi / 5);
  std::vector<Witness> w;
  Mat2c t;
  t << std::pow(eps, 7), std::pow(eps, 7), std::pow(eps, 5), eps;
  w.push_back({"tetrahedral", t / std::sqrt(2.0)});
  Mat2c o = Mat2c::Zero();
  o(0, 0) = eps;
  o(1, 1) = std::pow(eps, 7);
  w.push_back({"octahedral", o});
  Mat2c s = Mat2c::Zero();
  s(0, 0) = -std::pow(eta, 3);
  s(1, 1) = -std::pow(eta, 2);
  w.push_back({"icosahedral-diagonal", s});
  const cplx c = eta + std::pow(eta, 4);
  Mat2c q;
  q << c, 1.0, 1.0, -c;
  w.push_back({"icosahedral", q / (eta * eta - std::pow(eta, 3))});
  return w;
}

double potential_defect(const Mat2c& g, double m, const std::vector<ComplexPoint>& samples) {
  double worst = 0.0;
  for (const auto& z : samples) {
    const double a = taubnut::potential_phi(taubnut::TaubNutPoint::at(z, m));
    const double b = taubnut::potential_phi(taubnut::TaubNutPoint::at(act(g, z), m));
    worst = std::max(worst, rel(b, a));
  }
  return worst;
}

}  // namespace alflab::dihedral
