#pragma once

#include "alflab/tensor.hpp"

#include <string>
#include <vector>

namespace alflab::dihedral {

// zeta_k^a tau^b with a in [0, 2k), b in {0, 1}.
struct DihedralElement {
  int k = 2;
  int a = 0;
  int b = 0;
  Mat2c matrix = Mat2c::Identity();

  [[nodiscard]] static DihedralElement make(int k, int a, int b);
};

// zeta_k = diag(e^{i pi/k}, e^{-i pi/k}); tau(z1, z2) = (z2, -z1).
[[nodiscard]] Mat2c zeta_matrix(int k);
[[nodiscard]] Mat2c tau_matrix();

// All 4k elements in normal form.
[[nodiscard]] std::vector<DihedralElement> group_elements(int k);

[[nodiscard]] ComplexPoint act(const Mat2c& g, const ComplexPoint& z);
[[nodiscard]] ComplexPoint act(const DihedralElement& g, const ComplexPoint& z);

struct InvariantTriple {
  cplx U, V, W;
};
// U = (z1^{2k+1} z2 - z2^{2k+1} z1)/2, V = i(z1^{2k} + z2^{2k})/2, W = z1^2 z2^2.
[[nodiscard]] InvariantTriple invariant_triple(const ComplexPoint& z, int k);
// |U^2 + V^2 W + W^{k+1}| divided by the largest of the three term moduli.
[[nodiscard]] double syzygy_residual(const InvariantTriple& t, int k);

struct InvarianceReport {
  int k = 0;
  std::size_t samples = 0;
  double max_rotation_u = 0.0;  // |u(zeta z) - u(z)|, |v(zeta z) - v(z)|
  double max_swap = 0.0;        // |u(tau z) - v(z)|, |v(tau z) - u(z)|
  double max_phi = 0.0;         // relative |phi(g z) - phi(z)| over all g
  double max_metric = 0.0;      // relative |M^T f(g z) M - f(z)| over all g
  double max_triple = 0.0;      // relative change of the invariant triple over all g
  double max_syzygy = 0.0;
  double min_fixed_gap = 0.0;   // min over g != 1 of |g z - z| / |z|
};
[[nodiscard]] InvarianceReport check_potential_invariance(int k, double m,
                                                          const std::vector<ComplexPoint>& samples);

// Extra generators of the binary tetrahedral, octahedral and icosahedral groups.
struct Witness {
  std::string name;
  Mat2c matrix;
};
[[nodiscard]] std::vector<Witness> polyhedral_generators();

// Largest relative change |phi(g z) - phi(z)| / phi(z) over the samples.
[[nodiscard]] double potential_defect(const Mat2c& g, double m, const std::vector<ComplexPoint>& samples);

}  // namespace alflab::dihedral
