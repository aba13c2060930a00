#include "alflab/monge_ampere.hpp"
#include "alflab/parallel.hpp"
#include "alflab/random.hpp"
#include "alflab/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace alflab;

struct Common {
  double m = 1.0;
  int k = 2;
  std::uint64_t seed = 1;
  int n = 100;
  std::string out;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// The payload goes to --out (or stdout); with --out, a manifest is written next to it.
void emit(const Common& c, const std::string& command, const std::string& canonical_config,
          const std::string& payload) {
  if (c.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream(c.out) << payload;
  nlohmann::json man{{"command", command},
                     {"config_hash", hex64(hash_name(canonical_config))},
                     {"config", canonical_config},
                     {"seed", c.seed},
                     {"version", ALFLAB_VERSION},
                     {"timestamp", utc_now()}};
  std::ofstream(c.out + ".manifest.json") << man.dump(2) << '\n';
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

int cmd_verify(const Common& c, const std::string& suite) {
  suites::SuiteOptions opt;
  opt.m = c.m;
  opt.k = c.k;
  opt.seed = c.seed;
  opt.n = c.n;
  const auto res = suites::run_suite(suite, opt);
  const std::string cfg = "verify suite=" + suite + " m=" + num(c.m) + " k=" + std::to_string(c.k) +
                          " n=" + std::to_string(c.n) + " seed=" + std::to_string(c.seed);
  emit(c, "verify", cfg, suites::to_csv(res));
  if (const auto* f = res.first_failure()) {
    std::cerr << "FAIL " << res.suite << '/' << f->check << " [" << f->index << "]: value " << num(f->value)
              << (f->lower_bound ? " < " : " > ") << num(f->tolerance) << "; identity: " << f->identity << '\n';
    return 1;
  }
  std::cerr << "PASS " << res.suite << " (" << res.rows.size() << " checks)\n";
  return 0;
}

int cmd_solve(const Common& c, const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot read config: " + config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto cfg = ma::solver_config_from_json(ss.str());
  const auto rec = ma::run_solver(cfg);
  Common cc = c;
  cc.seed = cfg.seed;
  const std::string canonical = ma::solver_config_to_json(cfg);
  emit(cc, "solve", canonical, ma::solve_record_to_json(rec) + "\n");
  if (!c.out.empty()) {
    std::ofstream dump(c.out + ".phi.csv");
    dump << "x1,x2,x3,x4,phi,f\n";
    const auto& phi = rec.state.phi;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const RealPoint4 x = phi.position(i);
      dump << num(x[0]) << ',' << num(x[1]) << ',' << num(x[2]) << ',' << num(x[3]) << ',' << num(phi[i]) << ','
           << num(cfg.bump(x)) << '\n';
    }
  }
  if (!rec.state.reached_one) {
    std::cerr << "cone exit: last accepted t = " << num(rec.state.t) << '\n';
    return 2;
  }
  std::cerr << "reached t = 1, residual " << num(rec.state.residual) << '\n';
  return 0;
}

int cmd_sweep(const Common& c, const std::string& kind, const suites::SweepOptions& sw) {
  const auto t = suites::run_sweep(kind, sw);
  const std::string cfg = "sweep kind=" + kind + " m=" + num(sw.m) + " r_min=" + num(sw.r_min) +
                          " r_max=" + num(sw.r_max) + " n=" + std::to_string(sw.n) +
                          " ale=" + gluing::to_string(sw.ale);
  emit(c, "sweep", cfg, suites::to_csv(t));
  return 0;
}

// Per-point Taub-NUT geometry at seeded random points.
int cmd_export(const Common& c, double r_min, double r_max) {
  const auto pts = suites::random_points(c.seed, "export", static_cast<std::size_t>(c.n), r_min, r_max);
  suites::Table t;
  t.header = {"x1", "x2", "x3", "x4", "u", "v", "y1", "y2", "y3", "R", "V", "phi", "det_f", "lambda_min",
              "lambda_max", "fiber_length"};
  t.rows.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto p = taubnut::TaubNutPoint::at(pts[i], c.m);
    const auto s = taubnut::compare_with_euclidean(p);
    t.rows[i] = {p.x[0], p.x[1], p.x[2], p.x[3], p.u, p.v, p.y1, p.y2, p.y3, p.R, p.V,
                 taubnut::potential_phi(p), s.det, s.lambda_min, s.lambda_max, taubnut::fiber_length(p)};
  });
  const std::string cfg = "export m=" + num(c.m) + " n=" + std::to_string(c.n) + " r_min=" + num(r_min) +
                          " r_max=" + num(r_max) + " seed=" + std::to_string(c.seed);
  emit(c, "export", cfg, suites::to_csv(t));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taub-NUT, dihedral ALF gluing and complex Monge-Ampere toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ALFLAB_VERSION));

  Common c;
  auto add_common = [&c](CLI::App* s) {
    s->add_option("--m", c.m, "Taub-NUT mass parameter")->check(CLI::PositiveNumber);
    s->add_option("--seed", c.seed, "64-bit seed");
    s->add_option("--out", c.out, "output file (default: stdout); a manifest is written alongside");
  };

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a randomized verification suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suites::suite_names()));
  add_common(verify);
  verify->add_option("--k", c.k, "dihedral order")->check(CLI::Range(2, 1000));
  verify->add_option("--n", c.n, "number of random points")->check(CLI::PositiveNumber);

  std::string config;
  auto* solve = app.add_subcommand("solve", "run the Monge-Ampere continuity solve");
  solve->add_option("--config", config, "solver config (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", c.out, "run record path; fields go to <out>.phi.csv");

  std::string kind;
  suites::SweepOptions sw;
  std::string ale = gluing::to_string(sw.ale);
  auto* sweep = app.add_subcommand("sweep", "radial sweep as CSV");
  sweep->add_option("kind", kind, "sweep kind")->required()->check(CLI::IsMember(suites::sweep_names()));
  add_common(sweep);
  sweep->add_option("--n", sw.n, "number of radii")->check(CLI::PositiveNumber);
  sweep->add_option("--r-min", sw.r_min, "smallest radius")->check(CLI::PositiveNumber);
  sweep->add_option("--r-max", sw.r_max, "largest radius")->check(CLI::PositiveNumber);
  sweep->add_option("--ale", ale, "ALE model for the decay sweep: euclidean or eguchi-hanson-correction");

  double r_min = 0.05, r_max = 5.0;
  auto* exp = app.add_subcommand("export", "per-point Taub-NUT geometry as CSV");
  add_common(exp);
  exp->add_option("--n", c.n, "number of points")->check(CLI::PositiveNumber);
  exp->add_option("--r-min", r_min, "smallest |z|")->check(CLI::PositiveNumber);
  exp->add_option("--r-max", r_max, "largest |z|")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(c, suite);
    if (*solve) return cmd_solve(c, config);
    if (*sweep) {
      sw.m = c.m;
      sw.ale = gluing::ale_kind_from_string(ale);
      return cmd_sweep(c, kind, sw);
    }
    if (*exp) return cmd_export(c, r_min, r_max);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
