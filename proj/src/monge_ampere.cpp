#include "alflab/monge_ampere.hpp"

#include "alflab/parallel.hpp"
#include "alflab/random.hpp"
#include "alflab/taubnut.hpp"

#include <Eigen/Sparse>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alflab::ma {

using json = nlohmann::json;

Mat2c BackgroundKahler::hermitian(const RealPoint4& x) const {
  if (kind == Kind::euclidean) return 0.5 * Mat2c::Identity();
  return taubnut::kahler_hermitian(taubnut::TaubNutPoint::at(x, m));
}

Metric4 BackgroundKahler::metric(const RealPoint4& x) const {
  return metric_from_kahler(hermitian_to_two_form(hermitian(x)), standard_complex_structures().I1);
}

std::string to_string(BackgroundKahler::Kind k) { return k == BackgroundKahler::Kind::euclidean ? "euclidean" : "taubnut"; }

BackgroundKahler::Kind background_kind_from_string(const std::string& s) {
  if (s == "euclidean") return BackgroundKahler::Kind::euclidean;
  if (s == "taubnut") return BackgroundKahler::Kind::taubnut;
  throw std::invalid_argument("unknown background: " + s);
}

Problem::Problem(const GridSpec& grid, const BackgroundKahler& bg, GridField f)
    : grid_(grid), bg_(bg), f_(std::move(f)) {
  grid_.validate();
  if (f_.size() != grid_.size()) throw std::invalid_argument("f does not live on the solver grid");
  const std::size_t n = grid_.size();
  h_.resize(n);
  h_inv_.resize(n);
  det_h_.resize(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        h_[i] = bg_.hermitian(f_.position(i));
        h_inv_[i] = h_[i].inverse();
        det_h_[i] = h_[i].determinant().real();
      },
      256);
}

namespace {

double min_eig(const Mat2c& h) {
  const double a = h(0, 0).real(), d = h(1, 1).real();
  const double tr = 0.5 * (a + d);
  return tr - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
}

Mat2c adjugate(const Mat2c& h) {
  Mat2c a;
  a(0, 0) = h(1, 1);
  a(1, 1) = h(0, 0);
  a(0, 1) = -h(0, 1);
  a(1, 0) = -h(1, 0);
  return a;
}

// Coefficients of tr(A ddbar psi) on the real second differences: the
// diagonal terms (aa) and the mixed terms (ab), a < b, in the order
// 01 02 03 12 13 23.
struct Stencil {
  double diag[4];
  double mixed[6];
};

Stencil stencil_from(const Mat2c& A) {
  Stencil s{};
  s.diag[0] = s.diag[1] = 0.25 * A(0, 0).real();
  s.diag[2] = s.diag[3] = 0.25 * A(1, 1).real();
  const cplx a10 = A(1, 0);
  s.mixed[0] = 0.0;              // 01
  s.mixed[1] = 0.5 * a10.real();  // 02
  s.mixed[2] = -0.5 * a10.imag(); // 03
  s.mixed[3] = 0.5 * a10.imag();  // 12
  s.mixed[4] = 0.5 * a10.real();  // 13
  s.mixed[5] = 0.0;              // 23
  return s;
}

constexpr int mixed_pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

Stencil jacobian_stencil(const Problem& P, const GridField& phi, std::size_t i) {
  const Mat2c hp = P.h(i) + grid_complex_hessian(phi, i);
  return stencil_from(adjugate(hp) / P.det_h(i));
}

std::vector<std::size_t> interior_nodes(const GridField& g) {
  std::vector<std::size_t> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.interior(i)) out.push_back(i);
  return out;
}

}  // namespace

Residual ma_residual(const Problem& P, const GridField& phi, double t) {
  Residual r{GridField(P.grid()), 0.0, std::numeric_limits<double>::infinity(), 0};
  const std::size_t n = phi.size();
  std::vector<double> eig(n, std::numeric_limits<double>::infinity());
  parallel_for(
      n,
      [&](std::size_t i) {
        if (!phi.interior(i)) return;
        const Mat2c hp = P.h(i) + grid_complex_hessian(phi, i);
        eig[i] = min_eig(hp);
        r.value[i] = hp.determinant().real() / P.det_h(i) - std::exp(t * P.f()[i]);
      },
      256);
  for (std::size_t i = 0; i < n; ++i) {
    if (!phi.interior(i)) continue;
    r.max_abs = std::max(r.max_abs, std::abs(r.value[i]));
    r.min_eigenvalue = std::min(r.min_eigenvalue, eig[i]);
    if (!(eig[i] > 0.0)) ++r.cone_violations;
  }
  return r;
}

GridField linearized_apply(const Problem& P, const GridField& phi, const GridField& psi) {
  GridField out(P.grid());
  parallel_for(
      psi.size(),
      [&](std::size_t i) {
        if (!psi.interior(i)) return;
        const Stencil s = jacobian_stencil(P, phi, i);
        const Mat4 H = grid_hessian(psi, i);
        double v = 0.0;
        for (int a = 0; a < 4; ++a) v += s.diag[a] * H(a, a);
        for (int k = 0; k < 6; ++k) v += s.mixed[k] * H(mixed_pairs[k][0], mixed_pairs[k][1]);
        out[i] = v;
      },
      256);
  return out;
}

GridField linearized_solve(const Problem& P, const GridField& phi, const GridField& rhs, LinearStats* stats,
                           const GridField* boundary, double rel_tol, int max_iter) {
  const GridSpec& g = P.grid();
  const std::vector<std::size_t> nodes = interior_nodes(rhs);
  std::vector<long> unknown(rhs.size(), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) unknown[nodes[k]] = static_cast<long>(k);

  GridField out(g);
  if (boundary)
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!out.interior(i)) out[i] = (*boundary)[i];

  const double h2 = g.spacing() * g.spacing();
  const auto N = static_cast<Eigen::Index>(nodes.size());
  Eigen::VectorXd b(N);
  std::vector<std::vector<Eigen::Triplet<double>>> rows(nodes.size());
  parallel_for(
      nodes.size(),
      [&](std::size_t k) {
        const std::size_t i = nodes[k];
        const Stencil s = jacobian_stencil(P, phi, i);
        double bk = rhs[i];
        auto& row = rows[k];
        auto add = [&](std::size_t j, double c) {
          if (unknown[j] >= 0)
            row.emplace_back(static_cast<int>(k), static_cast<int>(unknown[j]), c);
          else
            bk -= c * out[j];
        };
        double centre = 0.0;
        for (int a = 0; a < 4; ++a) {
          const std::size_t sa = rhs.stride(a);
          const double c = s.diag[a] / h2;
          add(i + sa, c);
          add(i - sa, c);
          centre -= 2 * c;
        }
        add(i, centre);
        for (int m = 0; m < 6; ++m) {
          const double c = s.mixed[m] / (4 * h2);
          if (c == 0.0) continue;
          const std::size_t sa = rhs.stride(mixed_pairs[m][0]), sb = rhs.stride(mixed_pairs[m][1]);
          add(i + sa + sb, c);
          add(i + sa - sb, -c);
          add(i - sa + sb, -c);
          add(i - sa - sb, c);
        }
        b[static_cast<Eigen::Index>(k)] = bk;
      },
      256);

  LinearStats st;
  if (b.norm() == 0.0) {
    st.converged = true;
    if (stats) *stats = st;
    return out;
  }
  std::vector<Eigen::Triplet<double>> trip;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  trip.reserve(total);
  for (auto& r : rows) trip.insert(trip.end(), r.begin(), r.end());
  Eigen::SparseMatrix<double, Eigen::RowMajor> A(N, N);
  A.setFromTriplets(trip.begin(), trip.end());

  Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>, Eigen::DiagonalPreconditioner<double>> solver;
  solver.setTolerance(rel_tol);
  solver.setMaxIterations(max_iter);
  solver.compute(A);
  const Eigen::VectorXd x = solver.solve(b);
  st.iterations = static_cast<int>(solver.iterations());
  st.relative_residual = (A * x - b).norm() / b.norm();
  st.converged = solver.info() == Eigen::Success && st.relative_residual <= 10 * rel_tol;
  for (std::size_t k = 0; k < nodes.size(); ++k) out[nodes[k]] = x[static_cast<Eigen::Index>(k)];
  if (stats) *stats = st;
  if (!st.converged && st.relative_residual > 1e-6)
    throw std::runtime_error("linearized operator solve failed (indefinite or non-Kahler state)");
  return out;
}

NewtonResult newton_solve(const Problem& P, double t, const GridField& initial, const NewtonOptions& opt) {
  NewtonResult res;
  res.phi = initial;
  Residual r = ma_residual(P, res.phi, t);
  if (r.cone_violations > 0) {
    res.cone_exit = true;
    return res;
  }
  res.residuals.push_back(r.max_abs);
  while (r.max_abs > opt.tol && res.iterations < opt.max_iter) {
    GridField rhs = r.value;
    for (double& v : rhs.values()) v = -v;
    LinearStats ls;
    GridField delta;
    try {
      delta = linearized_solve(P, res.phi, rhs, &ls, nullptr, opt.linear_tol);
    } catch (const std::runtime_error&) {
      return res;
    }
    res.linear_iterations += ls.iterations;
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opt.max_halvings; ++k, lambda *= 0.5) {
      GridField trial = res.phi;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += lambda * delta[i];
      Residual rt = ma_residual(P, trial, t);
      if (rt.cone_violations == 0 && rt.max_abs < r.max_abs) {
        res.phi = std::move(trial);
        r = std::move(rt);
        accepted = true;
        break;
      }
    }
    ++res.iterations;
    if (!accepted) {
      res.cone_exit = true;
      return res;
    }
    const double prev = res.residuals.back();
    res.residuals.push_back(r.max_abs);
    if (prev > 0.0) res.quadratic_ratios.push_back(r.max_abs / (prev * prev));
  }
  res.converged = r.max_abs <= opt.tol;
  return res;
}

ContinuityState continuity_method(const Problem& P, const ContinuityOptions& opt) {
  ContinuityState st;
  st.phi = GridField(P.grid());
  st.residual = ma_residual(P, st.phi, 0.0).max_abs;
  double dt = opt.dt;
  while (st.t < 1.0) {
    const double target = st.t + dt >= 1.0 - 1e-12 ? 1.0 : st.t + dt;
    NewtonResult nr = newton_solve(P, target, st.phi, opt.newton);
    StepRecord rec{target, nr.converged, nr.iterations, nr.linear_iterations, nr.residuals, nr.quadratic_ratios};
    st.steps.push_back(rec);
    if (nr.converged) {
      st.t = target;
      st.phi = std::move(nr.phi);
      st.residual = nr.residuals.back();
      dt = opt.dt;
    } else {
      dt *= 0.5;
      if (dt < opt.min_dt) break;
    }
  }
  st.reached_one = st.t >= 1.0;
  return st;
}

double Bump::operator()(const RealPoint4& x) const {
  const double s = (x - center).norm() / width;
  if (s >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double trace_at(const Problem& P, const GridField& phi, std::size_t node) {
  const Mat2c hp = P.h(node) + grid_complex_hessian(phi, node);
  return 2.0 * (P.h_inv(node) * hp).trace().real();
}

double min_trace_ratio(const Problem& P, const GridField& phi, double t) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi.interior(i)) lo = std::min(lo, trace_at(P, phi, i) / (4.0 * std::exp(0.5 * t * P.f()[i])));
  return lo;
}

GridField random_perturbation(const GridSpec& grid, double amplitude, std::uint64_t seed) {
  Rng rng(seed, hash_name("initial-perturbation"));
  const double span = grid.hi - grid.lo;
  std::array<Vec4, 3> k;
  std::array<double, 3> ph;
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < 4; ++a) k[j][a] = rng.uniform(0.5, 2.0);
    ph[j] = rng.uniform(0.0, 6.283185307179586);
  }
  const double h = grid.spacing();
  const double lo = grid.lo + (grid.layer - 1) * h, hi = grid.hi - (grid.layer - 1) * h;
  return GridField(grid, [&](const RealPoint4& x) {
    double env = 1.0;
    for (int a = 0; a < 4; ++a) {
      const double s = (x[a] - lo) / (hi - lo);
      env *= (s <= 0.0 || s >= 1.0) ? 0.0 : std::sin(3.141592653589793 * s);
    }
    double w = 0.0;
    for (int j = 0; j < 3; ++j) w += std::cos(k[j].dot(x) * 6.283185307179586 / span + ph[j]);
    return amplitude * env * env * w / 3.0;
  });
}

namespace {

json grid_json(const GridSpec& g) { return {{"n", g.n}, {"lo", g.lo}, {"hi", g.hi}, {"layer", g.layer}}; }

}  // namespace

SolverConfig solver_config_from_json(const std::string& text) {
  const json j = json::parse(text);
  SolverConfig c;
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    c.grid.n = g.value("n", c.grid.n);
    c.grid.lo = g.value("lo", c.grid.lo);
    c.grid.hi = g.value("hi", c.grid.hi);
    c.grid.layer = g.value("layer", c.grid.layer);
  }
  if (j.contains("background")) {
    const auto& b = j["background"];
    c.background.kind = background_kind_from_string(b.value("kind", std::string("taubnut")));
    c.background.m = b.value("m", c.background.m);
  }
  if (j.contains("bump")) {
    const auto& b = j["bump"];
    c.bump.amplitude = b.value("amplitude", c.bump.amplitude);
    c.bump.width = b.value("width", c.bump.width);
    if (b.contains("center")) {
      const auto v = b["center"].get<std::vector<double>>();
      if (v.size() != 4) throw std::invalid_argument("bump center needs 4 coordinates");
      c.bump.center = RealPoint4(v[0], v[1], v[2], v[3]);
    }
  }
  if (j.contains("continuity")) {
    const auto& s = j["continuity"];
    c.continuity.dt = s.value("dt", c.continuity.dt);
    c.continuity.min_dt = s.value("min_dt", c.continuity.min_dt);
    c.continuity.newton.tol = s.value("newton_tol", c.continuity.newton.tol);
    c.continuity.newton.linear_tol = s.value("linear_tol", c.continuity.newton.linear_tol);
    c.continuity.newton.max_iter = s.value("max_newton", c.continuity.newton.max_iter);
  }
  c.seed = j.value("seed", c.seed);
  c.initial_perturbation = j.value("initial_perturbation", c.initial_perturbation);
  c.grid.validate();
  if (!(c.background.m > 0.0) && c.background.kind == BackgroundKahler::Kind::taubnut)
    throw std::invalid_argument("taubnut background needs m > 0");
  if (!(c.continuity.dt > 0.0 && c.continuity.dt <= 1.0)) throw std::invalid_argument("dt must lie in (0, 1]");
  return c;
}

std::string solver_config_to_json(const SolverConfig& c) {
  json j;
  j["grid"] = grid_json(c.grid);
  j["background"] = {{"kind", to_string(c.background.kind)}, {"m", c.background.m}};
  j["bump"] = {{"amplitude", c.bump.amplitude},
               {"width", c.bump.width},
               {"center", {c.bump.center[0], c.bump.center[1], c.bump.center[2], c.bump.center[3]}}};
  j["continuity"] = {{"dt", c.continuity.dt},
                     {"min_dt", c.continuity.min_dt},
                     {"newton_tol", c.continuity.newton.tol},
                     {"linear_tol", c.continuity.newton.linear_tol},
                     {"max_newton", c.continuity.newton.max_iter}};
  j["seed"] = c.seed;
  j["initial_perturbation"] = c.initial_perturbation;
  return j.dump(2);
}

SolveRecord run_solver(const SolverConfig& cfg) {
  SolveRecord rec;
  rec.config = cfg;
  Problem P(cfg.grid, cfg.background, GridField(cfg.grid, [&](const RealPoint4& x) { return cfg.bump(x); }));
  if (cfg.initial_perturbation != 0.0) {
    // Direct solve at t = 1 from a perturbed start; the path is a single step.
    ContinuityState st;
    NewtonResult nr = newton_solve(P, 1.0, random_perturbation(cfg.grid, cfg.initial_perturbation, cfg.seed),
                                   cfg.continuity.newton);
    st.steps.push_back({1.0, nr.converged, nr.iterations, nr.linear_iterations, nr.residuals, nr.quadratic_ratios});
    if (nr.converged) {
      st.t = 1.0;
      st.phi = std::move(nr.phi);
      st.residual = nr.residuals.back();
      st.reached_one = true;
    } else {
      st.phi = GridField(cfg.grid);
    }
    rec.state = std::move(st);
  } else {
    rec.state = continuity_method(P, cfg.continuity);
  }
  rec.phi_max = rec.state.phi.max_abs();
  rec.min_trace_ratio = min_trace_ratio(P, rec.state.phi, rec.state.t);
  return rec;
}

std::string solve_record_to_json(const SolveRecord& rec) {
  json j;
  j["config"] = json::parse(solver_config_to_json(rec.config));
  j["reached_t_one"] = rec.state.reached_one;
  j["last_good_t"] = rec.state.t;
  j["residual_max"] = rec.state.residual;
  j["phi_max"] = rec.phi_max;
  j["min_trace_ratio"] = rec.min_trace_ratio;
  json steps = json::array();
  for (const auto& s : rec.state.steps)
    steps.push_back({{"t", s.t},
                     {"accepted", s.accepted},
                     {"newton_iterations", s.newton_iterations},
                     {"linear_iterations", s.linear_iterations},
                     {"residuals", s.residuals},
                     {"quadratic_ratios", s.quadratic_ratios}});
  j["steps"] = steps;
  return j.dump(2);
}

ManufacturedReport manufactured_convergence(const BackgroundKahler& bg, const std::vector<int>& resolutions,
                                            double lo, double hi, double amplitude) {
  // q = a exp(-|x|^2 / 2): ddbar q = g' I + g'' zbar z^T with g(s) = a e^{-s/2}.
  auto q = [amplitude](const RealPoint4& x) { return amplitude * std::exp(-0.5 * x.squaredNorm()); };
  auto ddbar_q = [amplitude](const RealPoint4& x) {
    const double s = x.squaredNorm();
    const double g1 = -0.5 * amplitude * std::exp(-0.5 * s), g2 = 0.25 * amplitude * std::exp(-0.5 * s);
    const ComplexPoint z = ComplexPoint::from_real(x);
    const cplx zz[2] = {z.z1, z.z2};
    Mat2c H;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) H(j, k) = (j == k ? g1 : 0.0) + g2 * std::conj(zz[j]) * zz[k];
    return H;
  };
  ManufacturedReport rep;
  for (int n : resolutions) {
    GridSpec g;
    g.n = n;
    g.lo = lo;
    g.hi = hi;
    GridField f(g, [&](const RealPoint4& x) {
      const Mat2c h = bg.hermitian(x);
      return std::log((h + ddbar_q(x)).determinant().real() / h.determinant().real());
    });
    Problem P(g, bg, std::move(f));
    const GridField exact(g, q);
    GridField init(g);
    for (std::size_t i = 0; i < init.size(); ++i)
      if (!init.interior(i)) init[i] = exact[i];
    NewtonOptions opt;
    opt.tol = 1e-12;
    opt.linear_tol = 1e-12;
    const NewtonResult nr = newton_solve(P, 1.0, init, opt);
    if (!nr.converged) throw std::runtime_error("manufactured solve did not converge");
    rep.levels.push_back({n, g.spacing(), max_abs_difference(nr.phi, exact), nr.residuals.back()});
  }
  for (std::size_t i = 1; i < rep.levels.size(); ++i)
    rep.orders.push_back(std::log(rep.levels[i - 1].error / rep.levels[i].error) /
                         std::log(rep.levels[i - 1].h / rep.levels[i].h));
  return rep;
}

}  // namespace alflab::ma
