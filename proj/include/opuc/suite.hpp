#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "opuc/identities.hpp"

namespace opuc {

inline constexpr std::uint64_t kDefaultSeed = 20061016;

struct SuiteConfig {
  int n_max = 8;
  std::size_t trials = 100;
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, double> tol_overrides;
  bool include_terminal = true;
  std::size_t antisymmetry_draws = 1000;
  std::size_t leibniz_draws = 1000;
  std::size_t jacobi_draws = 100;
  std::size_t conjugation_draws = 100;
  std::size_t involutivity_draws = 100;
};

struct ResidualReport {
  std::string id;
  int n = 0;
  std::size_t trial = 0;
  cplx z, w;
  cplx lhs, rhs;
  double scale = 1.0;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string error;  // evaluation failure, if any
};

struct AdjudicationVariant {
  std::string label;
  double max_residual = 0.0;
  std::size_t passed = 0;
  std::size_t trials = 0;
  bool passes_all() const { return trials > 0 && passed == trials; }
};

struct Adjudication {
  std::string topic;
  std::vector<AdjudicationVariant> variants;
  /// Label of the unique variant passing on every trial; empty if none or several.
  std::string selected;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<ResidualReport> records;
  std::vector<Adjudication> adjudications;

  std::size_t failures() const;
  bool undecided_adjudications() const;
  bool all_pass() const { return failures() == 0 && !undecided_adjudications(); }
};

/// Deterministic per-(stream, trial) random source.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);
  double uniform();  // [0, 1)
  cplx in_disc(double radius);
  cplx on_circle();
  /// Half of the draws on the unit circle, half in the annulus 0.5 <= |z| <= 2.
  cplx point();
  /// Two points with |z - w| > 1e-3.
  std::pair<cplx, cplx> distinct_points();
  VerblunskyData interior_data(std::size_t count, double radius = 0.9);

 private:
  std::mt19937_64 gen_;
};

/// Identity residuals for every catalogue id across all trials, plus the
/// terminal-unimodular sub-suite and the adjudication candidates.
/// run_suite spreads trials over OpenMP threads; run_suite_serial is the
/// single-threaded reference. Both produce identical reports.
SuiteReport run_suite(const SuiteConfig& cfg);
SuiteReport run_suite_serial(const SuiteConfig& cfg);

/// Poisson axiom checks (antisymmetry, Leibniz, Jacobi, conjugation).
std::vector<ResidualReport> run_axiom_checks(const SuiteConfig& cfg);

/// Involutivity of the discriminant and the rotation-rate adjudication.
std::vector<ResidualReport> run_flow_checks(const SuiteConfig& cfg, std::vector<Adjudication>& adjudications);

/// Pinter-Nevai, Wall determinant and lambda-mixing residuals.
std::vector<ResidualReport> run_structural_checks(const SuiteConfig& cfg);

/// Everything above, in a fixed order.
SuiteReport run_verification(const SuiteConfig& cfg);

double tolerance_for(const SuiteConfig& cfg, const std::string& id, double fallback);

}  // namespace opuc
