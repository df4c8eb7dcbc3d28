// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "opuc/cli.hpp"
#include "opuc/flows.hpp"
#include "opuc/report.hpp"

using namespace opuc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  std::size_t count = 0, failed = 0;
  double worst = 0.0;
  void add(double residual, double tol) {
    ++count;
    if (!(residual < tol)) ++failed;
    worst = std::max(worst, residual);
  }
  bool ok(std::size_t expected) const { return failed == 0 && count >= expected; }
  std::string str() const {
    std::ostringstream s;
    s << count << " records, " << failed << " over, max " << fmt_double(worst);
    return s.str();
  }
};

bool starts(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Worst residual per id prefix, re-judged against the pinned tolerance.
Tally tally(const SuiteReport& rep, const std::vector<std::string>& prefixes, double tol) {
  Tally t;
  for (const auto& r : rep.records)
    for (const auto& p : prefixes)
      if (starts(r.id, p)) {
        t.add(r.error.empty() ? r.residual : INFINITY, tol);
        break;
      }
  return t;
}

std::size_t ids_matching(const SuiteReport& rep, const std::string& prefix) {
  std::set<std::string> ids;
  for (const auto& r : rep.records)
    if (starts(r.id, prefix)) ids.insert(r.id);
  return ids.size();
}

const Adjudication* find_adj(const SuiteReport& rep, const std::string& topic) {
  for (const auto& a : rep.adjudications)
    if (a.topic == topic) return &a;
  return nullptr;
}

int failures = 0;

void line(int n, bool ok, const std::string& what) {
  std::printf("criterion %2d %s  %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

// 1. Jet partials against central differences.
void differentiation() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int unstable = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    TrialRng rng(kDefaultSeed, 101, t);
    const VerblunskyData v = rng.interior_data(8);
    const cplx z = rng.point();
    const int n = static_cast<int>(rng.uniform() * 7) % 7;
    const auto k = static_cast<std::size_t>(rng.uniform() * 8) % 8;
    const JetFamily fam = jet_families(v, n);
    const std::array<std::pair<Jet, ScalarObservable>, 4> obs{{
        {fam.phi[n].eval(z), [=](const VerblunskyData& d) { return monic_families(d, n).phi[n].eval(z); }},
        {fam.psi_star[n].eval(z), [=](const VerblunskyData& d) { return monic_families(d, n).psi_star[n].eval(z); }},
        {fam.wall[n].a.eval(z), [=](const VerblunskyData& d) { return wall_family(d, n)[n].a.eval(z); }},
        {fam.wall[n].b.eval(z), [=](const VerblunskyData& d) { return wall_family(d, n)[n].b.eval(z); }},
    }};
    for (const auto& [jet, f] : obs) {
      const FdResult fd = fd_oracle(f, v, k);
      if (fd.unstable) ++unstable;
      worst = std::max({worst, std::abs(fd.d_alpha - jet.d_alpha(k)), std::abs(fd.d_alpha_bar - jet.d_alpha_bar(k))});
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream s;
  s << "jet vs finite differences, 50 draws x {Phi, Psi*, A, B}: max |diff| " << fmt_double(worst) << " (< 1e-6), "
    << unstable << " unstable, " << secs << " s (< 5 s)";
  line(1, worst < 1e-6 && unstable == 0 && secs < 5.0, s.str());
}

}  // namespace

int main() {
  differentiation();

  const SuiteConfig cfg;  // n_max = 8, trials = 100, default seed
  const auto t0 = Clock::now();
  SuiteReport rep = run_suite(cfg);
  const auto axioms = run_axiom_checks(cfg);
  std::vector<Adjudication> flow_adj;
  const auto flows = run_flow_checks(cfg, flow_adj);
  const auto structural = run_structural_checks(cfg);

  {
    SuiteReport ax;
    ax.records = axioms;
    const Tally a = tally(ax, {"axiom.antisymmetry"}, 1e-13);
    const Tally l = tally(ax, {"axiom.leibniz"}, 1e-12);
    const Tally j = tally(ax, {"axiom.jacobi"}, 1e-9);
    line(2, a.ok(1000) && l.ok(1000) && j.ok(100),
         "antisymmetry [" + a.str() + "] leibniz [" + l.str() + "] jacobi [" + j.str() + "]");
  }
  {
    const Tally t = tally(rep, {"thm.", "rem.", "diag."}, 1e-10);
    const Tally term = tally(rep, {"terminal."}, 1e-10);
    const bool shape = ids_matching(rep, "thm.") == 6 && ids_matching(rep, "rem.") >= 3 && ids_matching(rep, "diag.") >= 1;
    line(3, shape && t.ok(100 * 16) && term.ok(100 * 16),
         "thm/rem/diag [" + t.str() + "] terminal-unimodular [" + term.str() + "]");
  }
  {
    const Tally t = tally(rep, {"lemma."}, 1e-10);
    const Adjudication* monic = find_adj(rep, "lemma.monic_form");
    const RateAdjudication rate = adjudicate_rotation_rate();
    const Adjudication* rate_rec = nullptr;
    for (const auto& a : flow_adj)
      if (a.topic == "flow.rotation_rate") rate_rec = &a;
    const bool recorded = monic && !monic->selected.empty() && rate_rec && !rate_rec->selected.empty();
    line(4, t.ok(500) && recorded && rate.derived_selected,
         "lemma ids incl. {R_n, alpha_j} [" + t.str() + "] monic form: " + (monic ? monic->selected : "?") +
             ", rotation rate: " + (rate_rec ? rate_rec->selected : "?"));
  }
  {
    const Tally t = tally(rep, {"prop24."}, 1e-10);
    const Adjudication* a = find_adj(rep, "prop24.phipsiStar");
    int passing = 0;
    if (a)
      for (const auto& v : a->variants) passing += v.passes_all();
    line(5, t.ok(500) && passing == 1 && !a->selected.empty(),
         "prop24 [" + t.str() + "] phipsi* adjudication: " + std::to_string(passing) + " variant(s) pass, selected " +
             (a ? a->selected : "?"));
  }
  {
    const Tally t = tally(rep, {"prop26."}, 1e-10);
    const VerblunskyData zero(std::vector<cplx>(2, cplx{0.0}));
    const BracketContext ctx(zero);
    const auto seeds = seed_point<Jet>(zero);
    const JetFamily fam = jet_families_from(seeds, 1);
    const IdentityInput in = make_input(fam, seeds, ctx, 0, cplx{0.3, 0.2}, cplx{-1.0, 0.5});
    const Evaluation e = find_identity("prop26.AAstar")->evaluate(in);
    const double anchor = std::max(std::abs(e.lhs - cplx{0.0, -1.0}), std::abs(e.rhs - cplx{0.0, -1.0}));
    line(6, t.ok(600) && anchor <= 1e-12,
         "prop26 [" + t.str() + "] free-case {A, A*} = -i off by " + fmt_double(anchor));
  }
  {
    const Tally t = tally(rep, {"prop27."}, 1e-9);
    int max_level = 0;
    for (const auto& r : rep.records)
      if (starts(r.id, "prop27.")) max_level = std::max(max_level, r.n);
    double q_err = 0.0;
    TrialRng rng(kDefaultSeed, 107, 0);
    for (int i = 0; i < 100; ++i) {
      const auto [z, w] = rng.distinct_points();
      q_err = std::max({q_err, std::abs(q_factor(0, z, w) + 1.0), std::abs(q_factor(1, z, w))});
    }
    const bool shape = ids_matching(rep, "prop27.gamma.q") == 6 && ids_matching(rep, "prop27.r.q") == 6 &&
                       ids_matching(rep, "prop27.s.q") == 6 && ids_matching(rep, "prop27.x.q") == 6;
    line(7, t.ok(2700) && shape && max_level <= 5 && q_err < 1e-12,
         "prop27 q in -2..3, n <= " + std::to_string(max_level) + " [" + t.str() + "] Q0/Q1 max error " +
             fmt_double(q_err));
  }
  {
    SuiteReport st;
    st.records = structural;
    const Tally pn = tally(st, {"struct.pinter_nevai"}, 1e-12);
    const Tally det = tally(st, {"struct.wall_determinant"}, 1e-12);
    const Tally mix = tally(st, {"struct.lambda_mixing"}, 1e-13);
    line(8, pn.ok(100) && det.ok(100) && mix.ok(100),
         "pinter-nevai [" + pn.str() + "] wall determinant [" + det.str() + "] lambda mixing [" + mix.str() + "]");
  }
  {
    SuiteReport fl;
    fl.records = flows;
    const Tally order = tally(fl, {"flow.rk4_order"}, 0.3);
    const Tally inv = tally(fl, {"flow.involutivity"}, 1e-10);
    bool casimir = false;
    for (const auto& r : flows)
      if (r.id == "flow.casimir") casimir = r.pass && r.residual == 0.0;
    line(9, order.ok(2) && inv.ok(100) && casimir,
         "rk4 |order - 4| [" + order.str() + "] casimir bitwise " + (casimir ? "constant" : "MOVED") +
             " involutivity [" + inv.str() + "]");
  }
  const double suite_secs = seconds_since(t0);
  {
    const auto t1 = Clock::now();
    std::ostringstream o1, o2, e1, e2;
    const int c1 = cli::run({"verify", "--format", "json"}, o1, e1);
    const double secs = seconds_since(t1);
    const int c2 = cli::run({"verify", "--format", "json"}, o2, e2);
    std::ostringstream s;
    s << "verify json twice: " << (o1.str() == o2.str() ? "identical" : "DIFFERENT") << " (" << o1.str().size()
      << " bytes), exit " << c1 << "/" << c2 << ", " << secs << " s (< 60 s)";
    line(10, c1 == 0 && c2 == 0 && o1.str() == o2.str() && !o1.str().empty() && secs < 60.0, s.str());
  }
  std::printf("suite pass took %.2f s; %d criterion failure(s)\n", suite_secs, failures);
  return failures == 0 ? 0 : 1;
}
