#pragma once

#include "alflab/tensor.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace alflab {

// Cubical lattice [lo, hi]^4 with n interior nodes per axis and a Dirichlet
// layer of `layer` nodes on each side.
struct GridSpec {
  int n = 17;
  double lo = -2.0;
  double hi = 2.0;
  int layer = 2;

  [[nodiscard]] int nodes_per_axis() const { return n + 2 * layer; }
  [[nodiscard]] double spacing() const { return (hi - lo) / (nodes_per_axis() - 1); }
  [[nodiscard]] std::size_t size() const;
  void validate() const;
};

class GridField {
 public:
  GridField() = default;
  explicit GridField(const GridSpec& spec, double fill = 0.0);
  GridField(const GridSpec& spec, const std::function<double(const RealPoint4&)>& fn);

  [[nodiscard]] const GridSpec& spec() const { return spec_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double& operator[](std::size_t i) { return values_[i]; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::vector<double>& values() { return values_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

  [[nodiscard]] std::size_t index(const std::array<int, 4>& i) const;
  [[nodiscard]] std::array<int, 4> multi_index(std::size_t flat) const;
  [[nodiscard]] std::size_t stride(int axis) const;
  [[nodiscard]] RealPoint4 position(std::size_t flat) const;
  // Distance, in nodes, from the nearest face of the lattice.
  [[nodiscard]] int depth(std::size_t flat) const;
  [[nodiscard]] bool interior(std::size_t flat) const { return depth(flat) >= spec_.layer; }

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double max_abs_interior() const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

[[nodiscard]] double max_abs_difference(const GridField& a, const GridField& b);

// Second-order central differences at a node with depth >= 1.
[[nodiscard]] Vec4 grid_gradient(const GridField& u, std::size_t flat);
[[nodiscard]] Mat4 grid_hessian(const GridField& u, std::size_t flat);
// (d_j dbar_k u) from the real second differences; i ddbar u = sum H_jk i dz_j ^ dzbar_k.
[[nodiscard]] Mat2c grid_complex_hessian(const GridField& u, std::size_t flat);

}  // namespace alflab
