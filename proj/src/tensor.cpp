#include "alflab/tensor.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace alflab {

namespace {

using CVec4 = Eigen::Matrix<cplx, 4, 1>;
using CMat4 = Eigen::Matrix<cplx, 4, 4>;

const cplx I(0.0, 1.0);

CVec4 dz(int j) {
  CVec4 a = CVec4::Zero();
  a[2 * j] = 1.0;
  a[2 * j + 1] = I;
  return a;
}

CVec4 d_dz(int j) {
  CVec4 a = CVec4::Zero();
  a[2 * j] = 0.5;
  a[2 * j + 1] = -0.5 * I;
  return a;
}

CMat4 cwedge(const CVec4& a, const CVec4& b) { return a * b.transpose() - b * a.transpose(); }

void require_step(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

}  // namespace

ComplexStructures standard_complex_structures() {
  ComplexStructures s;
  // I1 pairs (x1, x2) and (x3, x4).
  s.I1.J(1, 0) = 1.0;
  s.I1.J(0, 1) = -1.0;
  s.I1.J(3, 2) = 1.0;
  s.I1.J(2, 3) = -1.0;
  // I2 pairs (x1, x3) and (x4, x2).
  s.I2.J(2, 0) = 1.0;
  s.I2.J(0, 2) = -1.0;
  s.I2.J(1, 3) = 1.0;
  s.I2.J(3, 1) = -1.0;
  // I3 pairs (x1, x4) and (x2, x3).
  s.I3.J(3, 0) = 1.0;
  s.I3.J(0, 3) = -1.0;
  s.I3.J(2, 1) = 1.0;
  s.I3.J(1, 2) = -1.0;
  return s;
}

OneForm4 dx(int j) {
  OneForm4 a;
  a.a[j] = 1.0;
  return a;
}

VectorField4 partial(int j) {
  VectorField4 X;
  X.v[j] = 1.0;
  return X;
}

TwoForm4 wedge(const OneForm4& a, const OneForm4& b) {
  return {a.a * b.a.transpose() - b.a * a.a.transpose()};
}

TwoForm4 operator+(const TwoForm4& a, const TwoForm4& b) { return {a.w + b.w}; }
TwoForm4 operator-(const TwoForm4& a, const TwoForm4& b) { return {a.w - b.w}; }
TwoForm4 operator*(double s, const TwoForm4& a) { return {s * a.w}; }

double two_form_wedge_ratio(const TwoForm4& a, const TwoForm4& b) {
  const Mat4& p = a.w;
  const Mat4& q = b.w;
  return p(0, 1) * q(2, 3) - p(0, 2) * q(1, 3) + p(0, 3) * q(1, 2) + p(1, 2) * q(0, 3) -
         p(1, 3) * q(0, 2) + p(2, 3) * q(0, 1);
}

TwoForm4 omega_euclidean() { return wedge(dx(0), dx(1)) + wedge(dx(2), dx(3)); }

TwoForm4 hermitian_to_two_form(const Mat2c& h) {
  CMat4 w = CMat4::Zero();
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) w += h(j, k) * I * cwedge(dz(j), dz(k).conjugate());
  return {w.real()};
}

Mat2c two_form_to_hermitian(const TwoForm4& w) {
  const CMat4 wc = w.w.cast<cplx>();
  Mat2c h;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      const cplx val = d_dz(j).transpose() * wc * d_dz(k).conjugate();
      h(j, k) = -I * val;
    }
  return h;
}

Metric4 metric_from_kahler(const TwoForm4& w, const AlmostComplexStructure& J) {
  const Mat4 g = w.w * J.J;
  return {0.5 * (g + g.transpose())};
}

TwoForm4 kahler_from_metric(const Metric4& g, const AlmostComplexStructure& J) {
  const Mat4 w = J.J.transpose() * g.g;
  return {0.5 * (w - w.transpose())};
}

double tensor_norm(const Mat4& T, const Metric4& g) {
  const Mat4 gi = g.g.inverse();
  return std::sqrt(std::max(0.0, (gi * T * gi * T.transpose()).trace()));
}

Vec4 generalized_eigenvalues(const Metric4& g, const Metric4& ref) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat4> es(g.g, ref.g, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Vec4 gradient_fd(const ScalarField& f, const RealPoint4& p, double h) {
  require_step(h);
  Vec4 g;
  for (int a = 0; a < 4; ++a) {
    Vec4 e = Vec4::Zero();
    e[a] = h;
    g[a] = (-f(p + 2 * e) + 8 * f(p + e) - 8 * f(p - e) + f(p - 2 * e)) / (12 * h);
  }
  return g;
}

Mat4 hessian_fd(const ScalarField& f, const RealPoint4& p, double h) {
  require_step(h);
  static constexpr std::array<double, 5> c1{1.0, -8.0, 0.0, 8.0, -1.0};
  Mat4 H;
  const double f0 = f(p);
  for (int a = 0; a < 4; ++a) {
    Vec4 e = Vec4::Zero();
    e[a] = h;
    H(a, a) = (-f(p + 2 * e) + 16 * f(p + e) - 30 * f0 + 16 * f(p - e) - f(p - 2 * e)) / (12 * h * h);
    for (int b = a + 1; b < 4; ++b) {
      Vec4 d = Vec4::Zero();
      d[b] = h;
      double s = 0.0;
      for (int i = 0; i < 5; ++i) {
        if (c1[i] == 0.0) continue;
        for (int j = 0; j < 5; ++j) {
          if (c1[j] == 0.0) continue;
          s += c1[i] * c1[j] * f(p + (i - 2) * e + (j - 2) * d);
        }
      }
      H(a, b) = H(b, a) = s / (144 * h * h);
    }
  }
  return H;
}

TwoForm4 ddc_from_hessian(const Mat4& hess, const AlmostComplexStructure& J) {
  // (d^c f)_b = -sum_i J_ib f_i, so (dd^c f)_ab = -(H J)_ab + (H J)_ba.
  const Mat4 M = hess * J.J;
  return {M.transpose() - M};
}

TwoForm4 ddc_fd(const ScalarField& f, const RealPoint4& p, double h) {
  return ddc_from_hessian(hessian_fd(f, p, h), standard_complex_structures().I1);
}

TwoForm4 exterior_derivative(const OneFormField& field, const RealPoint4& p, double h) {
  require_step(h);
  Mat4 D;  // D(a, b) = d_a alpha_b
  for (int a = 0; a < 4; ++a) {
    Vec4 e = Vec4::Zero();
    e[a] = h;
    D.row(a) = ((field(p + e).a - field(p - e).a) / (2 * h)).transpose();
  }
  return {D - D.transpose()};
}

Eigen::Vector4d exterior_derivative(const TwoFormField& field, const RealPoint4& p, double h) {
  require_step(h);
  std::array<Mat4, 4> D;  // D[a] = d_a w
  for (int a = 0; a < 4; ++a) {
    Vec4 e = Vec4::Zero();
    e[a] = h;
    D[a] = (field(p + e).w - field(p - e).w) / (2 * h);
  }
  static constexpr int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  Eigen::Vector4d out;
  for (int t = 0; t < 4; ++t) {
    const int a = triples[t][0], b = triples[t][1], c = triples[t][2];
    out[t] = D[a](b, c) - D[b](a, c) + D[c](a, b);
  }
  return out;
}

TwoForm4 DyTwoForm::pull_back(const OneForm4& dy1, const OneForm4& dy2, const OneForm4& dy3) const {
  return c23 * wedge(dy2, dy3) + c31 * wedge(dy3, dy1) + c12 * wedge(dy1, dy2);
}

DyTwoForm hodge_star_r3(const Eigen::Vector3d& grad) { return {grad[0], grad[1], grad[2]}; }

Mat4 realify(const Mat2c& a) {
  Mat4 M;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      const cplx c = a(j, k);
      M.block<2, 2>(2 * j, 2 * k) << c.real(), -c.imag(), c.imag(), c.real();
    }
  return M;
}

}  // namespace alflab
