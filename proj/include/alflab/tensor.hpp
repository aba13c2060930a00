#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>

namespace alflab {

using cplx = std::complex<double>;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat2c = Eigen::Matrix2cd;

// Points of R^4 are plain coordinate vectors (x1, x2, x3, x4).
using RealPoint4 = Vec4;

// z1 = x1 + i x2, z2 = x3 + i x4.
struct ComplexPoint {
  cplx z1{0.0, 0.0};
  cplx z2{0.0, 0.0};

  [[nodiscard]] RealPoint4 real() const {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
  }
  [[nodiscard]] static ComplexPoint from_real(const RealPoint4& x) {
    return {cplx(x[0], x[1]), cplx(x[2], x[3])};
  }
};

struct VectorField4 {
  Vec4 v = Vec4::Zero();
};

struct OneForm4 {
  Vec4 a = Vec4::Zero();

  [[nodiscard]] double operator()(const VectorField4& X) const { return a.dot(X.v); }
};

struct TwoForm4 {
  Mat4 w = Mat4::Zero();

  [[nodiscard]] double operator()(const VectorField4& X, const VectorField4& Y) const {
    return X.v.dot(w * Y.v);
  }
};

struct Metric4 {
  Mat4 g = Mat4::Identity();

  [[nodiscard]] double operator()(const VectorField4& X, const VectorField4& Y) const {
    return X.v.dot(g * Y.v);
  }
};

// J acts on tangent vectors by matrix multiplication and on 1-forms by
// (J a)(X) = -a(J X), so that d^c = J d.
struct AlmostComplexStructure {
  Mat4 J = Mat4::Zero();

  [[nodiscard]] VectorField4 apply(const VectorField4& X) const { return {J * X.v}; }
  [[nodiscard]] OneForm4 act(const OneForm4& a) const { return {-J.transpose() * a.a}; }
};

struct ComplexStructures {
  AlmostComplexStructure I1, I2, I3;
};

[[nodiscard]] ComplexStructures standard_complex_structures();

[[nodiscard]] OneForm4 dx(int j);  // j in 0..3
[[nodiscard]] VectorField4 partial(int j);

[[nodiscard]] TwoForm4 wedge(const OneForm4& a, const OneForm4& b);
[[nodiscard]] TwoForm4 operator+(const TwoForm4& a, const TwoForm4& b);
[[nodiscard]] TwoForm4 operator-(const TwoForm4& a, const TwoForm4& b);
[[nodiscard]] TwoForm4 operator*(double s, const TwoForm4& a);

// Coefficient of w1 ^ w2 against dx1^dx2^dx3^dx4.
[[nodiscard]] double two_form_wedge_ratio(const TwoForm4& w1, const TwoForm4& w2);

// Euclidean Kahler form dx1^dx2 + dx3^dx4.
[[nodiscard]] TwoForm4 omega_euclidean();

// omega = sum_jk h_jk i dz_j ^ dzbar_k for a Hermitian 2x2 matrix h.
[[nodiscard]] TwoForm4 hermitian_to_two_form(const Mat2c& h);
// Inverse of the above on the (1,1) part; the (2,0)+(0,2) part is discarded.
[[nodiscard]] Mat2c two_form_to_hermitian(const TwoForm4& w);

// g(X, Y) = w(X, J Y), symmetrized.
[[nodiscard]] Metric4 metric_from_kahler(const TwoForm4& w, const AlmostComplexStructure& J);
// w(X, Y) = g(J X, Y).
[[nodiscard]] TwoForm4 kahler_from_metric(const Metric4& g, const AlmostComplexStructure& J);

// Norm of a symmetric or antisymmetric covariant 2-tensor against a metric:
// sqrt(g^{ac} g^{bd} T_ab T_cd).
[[nodiscard]] double tensor_norm(const Mat4& T, const Metric4& g);

// Eigenvalues of g against the reference metric e (ascending).
[[nodiscard]] Vec4 generalized_eigenvalues(const Metric4& g, const Metric4& ref);

using ScalarField = std::function<double(const RealPoint4&)>;
using OneFormField = std::function<OneForm4(const RealPoint4&)>;
using TwoFormField = std::function<TwoForm4(const RealPoint4&)>;

// Central-difference gradient and Hessian (fourth order).
[[nodiscard]] Vec4 gradient_fd(const ScalarField& f, const RealPoint4& p, double h);
[[nodiscard]] Mat4 hessian_fd(const ScalarField& f, const RealPoint4& p, double h);

// (dd^c f)_ab assembled from a Hessian: d^c f = -J^T grad f.
[[nodiscard]] TwoForm4 ddc_from_hessian(const Mat4& hess, const AlmostComplexStructure& J);
[[nodiscard]] TwoForm4 ddc_fd(const ScalarField& f, const RealPoint4& p, double h);

// Antisymmetrized central differences of a sampled 1-form; O(h^2).
[[nodiscard]] TwoForm4 exterior_derivative(const OneFormField& field, const RealPoint4& p, double h);

// d of a sampled 2-form; returns (dw)_{abc} for a<b<c in the order 123,124,134,234.
[[nodiscard]] Eigen::Vector4d exterior_derivative(const TwoFormField& field, const RealPoint4& p,
                                                  double h);

// A 2-form on R^3 written c23 dy2^dy3 + c31 dy3^dy1 + c12 dy1^dy2.
struct DyTwoForm {
  double c23 = 0.0;
  double c31 = 0.0;
  double c12 = 0.0;

  // Pull back along given dy1, dy2, dy3.
  [[nodiscard]] TwoForm4 pull_back(const OneForm4& dy1, const OneForm4& dy2,
                                   const OneForm4& dy3) const;
};

[[nodiscard]] DyTwoForm hodge_star_r3(const Eigen::Vector3d& grad);

// Real 4x4 matrix of a complex-linear map of C^2.
[[nodiscard]] Mat4 realify(const Mat2c& a);

}  // namespace alflab
