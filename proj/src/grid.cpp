#include "alflab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alflab {

std::size_t GridSpec::size() const {
  const auto N = static_cast<std::size_t>(nodes_per_axis());
  return N * N * N * N;
}

void GridSpec::validate() const {
  if (n < 1) throw std::invalid_argument("grid needs at least one interior node per axis");
  if (layer < 2) throw std::invalid_argument("grid boundary layer must be at least 2 nodes");
  if (!(hi > lo)) throw std::invalid_argument("grid bounds must satisfy lo < hi");
}

GridField::GridField(const GridSpec& spec, double fill) : spec_(spec) {
  spec_.validate();
  values_.assign(spec_.size(), fill);
}

GridField::GridField(const GridSpec& spec, const std::function<double(const RealPoint4&)>& fn)
    : GridField(spec) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = fn(position(i));
}

std::size_t GridField::stride(int axis) const {
  const auto N = static_cast<std::size_t>(spec_.nodes_per_axis());
  std::size_t s = 1;
  for (int a = 3; a > axis; --a) s *= N;
  return s;
}

std::size_t GridField::index(const std::array<int, 4>& i) const {
  const auto N = static_cast<std::size_t>(spec_.nodes_per_axis());
  return ((static_cast<std::size_t>(i[0]) * N + i[1]) * N + i[2]) * N + i[3];
}

std::array<int, 4> GridField::multi_index(std::size_t flat) const {
  const auto N = static_cast<std::size_t>(spec_.nodes_per_axis());
  std::array<int, 4> i{};
  for (int a = 3; a >= 0; --a) {
    i[a] = static_cast<int>(flat % N);
    flat /= N;
  }
  return i;
}

RealPoint4 GridField::position(std::size_t flat) const {
  const auto i = multi_index(flat);
  const double h = spec_.spacing();
  return {spec_.lo + h * i[0], spec_.lo + h * i[1], spec_.lo + h * i[2], spec_.lo + h * i[3]};
}

int GridField::depth(std::size_t flat) const {
  const auto i = multi_index(flat);
  const int last = spec_.nodes_per_axis() - 1;
  int d = last;
  for (int a = 0; a < 4; ++a) d = std::min({d, i[a], last - i[a]});
  return d;
}

double GridField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridField::max_abs_interior() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (interior(i)) m = std::max(m, std::abs(values_[i]));
  return m;
}

double max_abs_difference(const GridField& a, const GridField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("grid fields of different shape");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vec4 grid_gradient(const GridField& u, std::size_t flat) {
  const double h = u.spec().spacing();
  Vec4 g;
  for (int a = 0; a < 4; ++a) {
    const std::size_t s = u.stride(a);
    g[a] = (u[flat + s] - u[flat - s]) / (2 * h);
  }
  return g;
}

Mat4 grid_hessian(const GridField& u, std::size_t flat) {
  const double h = u.spec().spacing(), h2 = h * h;
  Mat4 H;
  const double c = u[flat];
  for (int a = 0; a < 4; ++a) {
    const std::size_t sa = u.stride(a);
    H(a, a) = (u[flat + sa] - 2 * c + u[flat - sa]) / h2;
    for (int b = a + 1; b < 4; ++b) {
      const std::size_t sb = u.stride(b);
      H(a, b) = (u[flat + sa + sb] - u[flat + sa - sb] - u[flat - sa + sb] + u[flat - sa - sb]) / (4 * h2);
      H(b, a) = H(a, b);
    }
  }
  return H;
}

Mat2c grid_complex_hessian(const GridField& u, std::size_t flat) {
  const Mat4 H = grid_hessian(u, flat);
  Mat2c C;
  C(0, 0) = 0.25 * (H(0, 0) + H(1, 1));
  C(1, 1) = 0.25 * (H(2, 2) + H(3, 3));
  C(0, 1) = 0.25 * cplx(H(0, 2) + H(1, 3), H(0, 3) - H(1, 2));
  C(1, 0) = std::conj(C(0, 1));
  return C;
}

}  // namespace alflab
