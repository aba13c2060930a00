#pragma once

#include "alflab/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alflab::ma {

// omega_Y at a point: Taub-NUT omega_f with parameter m, or the flat omega_e.
struct BackgroundKahler {
  enum class Kind { taubnut, euclidean };
  Kind kind = Kind::taubnut;
  double m = 1.0;

  [[nodiscard]] Mat2c hermitian(const RealPoint4& x) const;
  [[nodiscard]] Metric4 metric(const RealPoint4& x) const;
};

[[nodiscard]] std::string to_string(BackgroundKahler::Kind k);
[[nodiscard]] BackgroundKahler::Kind background_kind_from_string(const std::string& s);

// Background sampled once on the lattice.
class Problem {
 public:
  Problem(const GridSpec& grid, const BackgroundKahler& bg, GridField f);

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] const BackgroundKahler& background() const { return bg_; }
  [[nodiscard]] const GridField& f() const { return f_; }
  [[nodiscard]] const Mat2c& h(std::size_t i) const { return h_[i]; }
  [[nodiscard]] const Mat2c& h_inv(std::size_t i) const { return h_inv_[i]; }
  [[nodiscard]] double det_h(std::size_t i) const { return det_h_[i]; }

 private:
  GridSpec grid_;
  BackgroundKahler bg_;
  GridField f_;
  std::vector<Mat2c> h_, h_inv_;
  std::vector<double> det_h_;
};

struct Residual {
  GridField value;               // det(h + ddbar phi)/det h - e^{t f}, zero on the boundary layer
  double max_abs = 0.0;
  double min_eigenvalue = 0.0;   // smallest eigenvalue of h + ddbar phi over interior nodes
  std::size_t cone_violations = 0;
};
[[nodiscard]] Residual ma_residual(const Problem& P, const GridField& phi, double t);

struct LinearStats {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Solves L psi = rhs on interior nodes, psi = boundary values on the layer (zero
// when no boundary field is given). L is the derivative of the Monge-Ampere
// ratio at phi: L psi = (det h_phi / det h) tr(h_phi^{-1} ddbar psi), which is
// -(e^{tf}/2) times the Laplacian of omega_phi at a solution.
[[nodiscard]] GridField linearized_solve(const Problem& P, const GridField& phi, const GridField& rhs,
                                         LinearStats* stats = nullptr, const GridField* boundary = nullptr,
                                         double rel_tol = 1e-10, int max_iter = 5000);
// L psi evaluated at interior nodes.
[[nodiscard]] GridField linearized_apply(const Problem& P, const GridField& phi, const GridField& psi);

struct NewtonOptions {
  double tol = 1e-10;        // max-norm residual
  double linear_tol = 1e-10;
  int max_iter = 30;
  int max_halvings = 8;
};

struct NewtonResult {
  GridField phi;
  bool converged = false;
  bool cone_exit = false;
  int iterations = 0;
  std::vector<double> residuals;  // max-norm residual before each step and at the end
  std::vector<double> quadratic_ratios;  // e_{n+1} / e_n^2
  int linear_iterations = 0;
};
[[nodiscard]] NewtonResult newton_solve(const Problem& P, double t, const GridField& initial,
                                        const NewtonOptions& opt = {});

struct StepRecord {
  double t = 0.0;
  bool accepted = false;
  int newton_iterations = 0;
  int linear_iterations = 0;
  std::vector<double> residuals;
  std::vector<double> quadratic_ratios;
};

struct ContinuityOptions {
  double dt = 0.1;
  double min_dt = 1.0 / 1024.0;
  NewtonOptions newton;
};

struct ContinuityState {
  double t = 0.0;          // last accepted t
  GridField phi;
  double residual = 0.0;   // max-norm residual at the accepted state
  bool reached_one = false;
  std::vector<StepRecord> steps;
};
[[nodiscard]] ContinuityState continuity_method(const Problem& P, const ContinuityOptions& opt = {});

// f = amplitude * exp(1 - 1/(1 - s^2)) for s = |x - center| / width < 1, else 0.
struct Bump {
  double amplitude = 0.1;
  RealPoint4 center = RealPoint4::Zero();
  double width = 1.0;

  [[nodiscard]] double operator()(const RealPoint4& x) const;
};

struct SolverConfig {
  GridSpec grid;
  BackgroundKahler background;
  Bump bump;
  ContinuityOptions continuity;
  std::uint64_t seed = 1;
  // Amplitude of a random smooth perturbation of the zero initial guess
  // (exercised by the uniqueness checks); 0 keeps phi_0 = 0.
  double initial_perturbation = 0.0;
};

[[nodiscard]] SolverConfig solver_config_from_json(const std::string& text);
[[nodiscard]] std::string solver_config_to_json(const SolverConfig& cfg);

struct SolveRecord {
  SolverConfig config;
  ContinuityState state;
  double phi_max = 0.0;
  double min_trace_ratio = 0.0;  // min over nodes of tr_omega(omega_phi) / (4 e^{f/2})
};
[[nodiscard]] SolveRecord run_solver(const SolverConfig& cfg);
[[nodiscard]] std::string solve_record_to_json(const SolveRecord& rec);

// tr_omega(omega_phi) = 2 tr(h^{-1} h_phi) at an interior node.
[[nodiscard]] double trace_at(const Problem& P, const GridField& phi, std::size_t node);
[[nodiscard]] double min_trace_ratio(const Problem& P, const GridField& phi, double t = 1.0);

// Smooth perturbation vanishing on the boundary layer.
[[nodiscard]] GridField random_perturbation(const GridSpec& grid, double amplitude, std::uint64_t seed);

struct ManufacturedLevel {
  int n = 0;
  double h = 0.0;
  double error = 0.0;  // max |phi_h - phi_exact| over nodes
  double residual = 0.0;
};
struct ManufacturedReport {
  std::vector<ManufacturedLevel> levels;
  std::vector<double> orders;  // log2 of successive error ratios
};
// Solves with f = log det(h + ddbar q)/det h for a known smooth q and Dirichlet
// data q, at the given interior resolutions on a fixed box.
[[nodiscard]] ManufacturedReport manufactured_convergence(const BackgroundKahler& bg,
                                                          const std::vector<int>& resolutions,
                                                          double lo = -2.0, double hi = 2.0,
                                                          double amplitude = 0.05);

}  // namespace alflab::ma
