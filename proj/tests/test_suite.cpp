#include "doctest.h"
#include "helpers.hpp"

#include <omp.h>

#include <sstream>

#include "opuc/report.hpp"

using namespace opuc;

namespace {

std::string json_of(const SuiteReport& r) {
  std::ostringstream s;
  write_report(s, r, ReportFormat::Json);
  return s.str();
}

SuiteConfig small() {
  SuiteConfig cfg;
  cfg.n_max = 5;
  cfg.trials = 12;
  return cfg;
}

}  // namespace

TEST_CASE("rng streams") {
  TrialRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  for (int i = 0; i < 200; ++i) {
    const cplx p = a.point();
    CHECK(std::abs(p) >= 0.5 - 1e-15);
    CHECK(std::abs(p) <= 2.0 + 1e-15);
    const auto [z, w] = a.distinct_points();
    CHECK(std::abs(z - w) > 1e-3);
    CHECK(std::abs(a.in_disc(0.9)) < 0.9);
  }
}

TEST_CASE("parallel and serial reports agree") {
  omp_set_num_threads(4);
  const SuiteConfig cfg = small();
  const SuiteReport par = run_suite(cfg), ser = run_suite_serial(cfg);
  CHECK(json_of(par) == json_of(ser));
  CHECK(par.all_pass());
  omp_set_num_threads(1);
  CHECK(json_of(run_suite(cfg)) == json_of(ser));
}

TEST_CASE("report shape") {
  const SuiteReport r = run_suite(small());
  const std::size_t ids = identity_catalogue().size();
  std::size_t general = 0;
  for (const auto& rec : r.records)
    if (rec.id.rfind("terminal.", 0) != 0) ++general;
  CHECK(general == ids * 12);
  // merged by id, then trial
  for (std::size_t i = 1; i < general; ++i) {
    if (r.records[i].id == r.records[i - 1].id) CHECK(r.records[i].trial == r.records[i - 1].trial + 1);
  }
  for (const auto& a : r.adjudications) CHECK_MESSAGE(a.selected == "corrected", a.topic);

  SuiteConfig none = small();
  none.trials = 0;
  CHECK(run_suite(none).records.empty());

  std::ostringstream csv;
  write_csv(csv, r);
  CHECK(csv.str().rfind("id,n,trial,z_re,z_im,w_re,w_im,residual,tol,verdict\n", 0) == 0);
}

TEST_CASE("seed determinism") {
  SuiteConfig cfg = small();
  cfg.trials = 4;
  cfg.antisymmetry_draws = cfg.leibniz_draws = 50;
  cfg.jacobi_draws = cfg.conjugation_draws = cfg.involutivity_draws = 10;
  const std::string a = json_of(run_verification(cfg)), b = json_of(run_verification(cfg));
  CHECK(a == b);
  cfg.seed += 1;
  CHECK(json_of(run_verification(cfg)) != a);
}

TEST_CASE("tolerance overrides") {
  SuiteConfig cfg = small();
  cfg.tol_overrides["thm.PhiPsiStar"] = 1e-30;
  const SuiteReport r = run_suite(cfg);
  CHECK_FALSE(r.all_pass());
  for (const auto& rec : r.records) {
    if (rec.id == "thm.PhiPsiStar" || rec.id == "terminal.thm.PhiPsiStar") {
      CHECK(rec.tol == 1e-30);
    } else {
      CHECK(rec.pass);
    }
  }
  std::ostringstream txt;
  write_text(txt, r);
  CHECK(txt.str().find("failures:") != std::string::npos);
  CHECK(txt.str().find("  thm.PhiPsiStar n=") != std::string::npos);
}

TEST_CASE("full default verification") {
  const SuiteReport r = run_verification(SuiteConfig{});
  CHECK(r.failures() == 0);
  CHECK_FALSE(r.undecided_adjudications());
  CHECK(r.adjudications.size() == 5);
}
