#pragma once

#include "alflab/gluing.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace alflab::suites {

struct CheckRow {
  std::string check;
  std::size_t index = 0;
  double value = 0.0;      // residual or measured quantity
  double tolerance = 0.0;  // pass iff value <= tolerance, or value >= tolerance when lower_bound
  bool lower_bound = false;
  bool pass = true;
  std::string identity;    // the formula being tested
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRow> rows;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] const CheckRow* first_failure() const;
  // Largest value per check name, with pass/fail of the worst row.
  [[nodiscard]] std::vector<CheckRow> summary() const;
};

struct SuiteOptions {
  double m = 1.0;
  int k = 2;
  std::uint64_t seed = 1;
  int n = 100;
};

[[nodiscard]] const std::vector<std::string>& suite_names();
[[nodiscard]] SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

[[nodiscard]] SuiteResult taubnut_identities(const SuiteOptions& opt);
[[nodiscard]] SuiteResult frames(const SuiteOptions& opt);
[[nodiscard]] SuiteResult curvature(const SuiteOptions& opt);
[[nodiscard]] SuiteResult dihedral(const SuiteOptions& opt);
[[nodiscard]] SuiteResult gluing(const SuiteOptions& opt);

// Random points of C^2: log-uniform radius in [r_min, r_max], uniform direction.
[[nodiscard]] std::vector<ComplexPoint> random_points(std::uint64_t seed, const std::string& stream, std::size_t n,
                                                      double r_min, double r_max);
// Points with moment radius R uniform in [R_min, R_max] and random direction and fibre angle.
// |y1| is clipped to max_abs_y1 (keeping R), since |z1|, |z2| scale like e^{+-2m y1}.
[[nodiscard]] std::vector<taubnut::TaubNutPoint> random_moment_points(
    double m, std::uint64_t seed, const std::string& stream, std::size_t n, double R_min, double R_max,
    double max_abs_y1 = std::numeric_limits<double>::infinity());

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
[[nodiscard]] std::string to_csv(const Table& t);
[[nodiscard]] std::string to_csv(const SuiteResult& r);

struct SweepOptions {
  double m = 1.0;
  double r_min = 0.1;
  double r_max = 100.0;
  int n = 25;
  gluing::AleKind ale = gluing::AleKind::eguchi_hanson_correction;
};
[[nodiscard]] const std::vector<std::string>& sweep_names();
// comparison-bounds: r^2 against 2R and 2R e^{4mR} on |z1| = |z2|, z2 = 0 and a generic ray;
// decay: gluing deviations on |z1| = |z2| beyond the annulus;
// fiber-length: 2 pi V^{-1/2} against its limit pi sqrt(2/m).
[[nodiscard]] Table run_sweep(const std::string& kind, const SweepOptions& opt);

}  // namespace alflab::suites
