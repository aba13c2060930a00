#include "alflab/gluing.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace alflab::gluing {

namespace {

// Logistic S = 1/(1 + e^q) with q = 1/t - 1/(1-t), for 0 < t < 1.
struct Logistic {
  double S = 0.0;
  double w = 0.0;   // -dq/dt
  double dw = 0.0;  // dw/dt
  bool flat = false;
};

Logistic logistic(double t) {
  Logistic L;
  const double q = 1.0 / t - 1.0 / (1.0 - t);
  if (std::abs(q) > 700.0) {
    L.S = q > 0 ? 0.0 : 1.0;
    L.flat = true;
    return L;
  }
  L.S = 1.0 / (1.0 + std::exp(q));
  L.w = 1.0 / (t * t) + 1.0 / ((1 - t) * (1 - t));
  L.dw = -2.0 / (t * t * t) + 2.0 / ((1 - t) * (1 - t) * (1 - t));
  return L;
}

}  // namespace

double chi(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return logistic(t).S;
}

double chi_d1(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const Logistic L = logistic(t);
  if (L.flat) return 0.0;
  return L.S * (1 - L.S) * L.w;
}

double chi_d2(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const Logistic L = logistic(t);
  if (L.flat) return 0.0;
  const double d1 = L.S * (1 - L.S) * L.w;
  return d1 * (1 - 2 * L.S) * L.w + L.S * (1 - L.S) * L.dw;
}

double kappa(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return t - 0.5;
  if (t > 0.5) return t - 0.5 + kappa(1.0 - t);
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(chi, 0.0, t, 15, 1e-15);
}

}  // namespace alflab::gluing
