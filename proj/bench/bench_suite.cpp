#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <omp.h>

#include "opuc/report.hpp"

using namespace opuc;

namespace {

template <class F>
double best_of(int reps, F f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

std::string json_of(const SuiteReport& r) {
  std::ostringstream s;
  write_report(s, r, ReportFormat::Json);
  return s.str();
}

}  // namespace

// usage: bench_suite [trials] [n_max] [reps]
int main(int argc, char** argv) {
  SuiteConfig cfg;
  if (argc > 1) cfg.trials = std::strtoul(argv[1], nullptr, 10);
  if (argc > 2) cfg.n_max = std::atoi(argv[2]);
  const int reps = argc > 3 ? std::atoi(argv[3]) : 3;

  SuiteReport par, ser;
  const double ts = best_of(reps, [&] { ser = run_suite_serial(cfg); });
  const double tp = best_of(reps, [&] { par = run_suite(cfg); });
  std::printf("trials=%zu n_max=%d threads=%d records=%zu\n", cfg.trials, cfg.n_max, omp_get_max_threads(),
              par.records.size());
  std::printf("serial   %.4f s\n", ts);
  std::printf("parallel %.4f s  speedup %.2fx\n", tp, ts / tp);
  const bool same = json_of(par) == json_of(ser);
  std::printf("reports %s\n", same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
