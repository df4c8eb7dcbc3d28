#include "opuc/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <omp.h>

#include "opuc/flows.hpp"

namespace opuc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

enum Stream : std::uint64_t {
  kIdentityStream = 1,
  kTerminalStream,
  kAntisymmetryStream,
  kLeibnizStream,
  kJacobiStream,
  kConjugationStream,
  kInvolutivityStream,
  kStructuralStream,
};

void finish(ResidualReport& r) {
  r.residual = std::abs(r.lhs - r.rhs) / std::max(r.scale, 1.0);
  r.pass = r.error.empty() && std::isfinite(r.residual) && r.residual < r.tol;
}

ResidualReport evaluate_def(const IdentityDef& def, const IdentityInput& in, const std::string& id, double tol,
                            std::size_t trial) {
  ResidualReport r;
  r.id = id;
  r.n = in.n;
  r.trial = trial;
  r.z = in.z;
  r.w = in.w;
  r.tol = tol;
  try {
    const Evaluation e = def.evaluate(in);
    r.lhs = e.lhs;
    r.rhs = e.rhs;
    r.scale = e.scale;
    finish(r);
  } catch (const std::exception& ex) {
    r.error = ex.what();
    r.residual = INFINITY;
    r.pass = false;
  }
  return r;
}

bool admissible(const IdentityDef& def, const IdentityInput& in) {
  if (def.needs_normalized && !in.normalized) return false;
  if (def.needs_wall && !in.has_wall) return false;
  if (def.needs_nonzero_points && (in.z == cplx{0.0} || in.w == cplx{0.0})) return false;
  return true;
}

// One slot per catalogue entry (empty when the identity did not apply).
struct TrialOutput {
  std::vector<std::vector<ResidualReport>> by_def;
  // adjudication -> variant -> (residual, pass)
  std::vector<std::vector<std::pair<double, bool>>> adjudication;
};

int prop27_level(const SuiteConfig& cfg, std::size_t trial, int cap) {
  return static_cast<int>(trial % static_cast<std::size_t>(std::min(cfg.n_max, cap) + 1));
}

TrialOutput identity_trial(const SuiteConfig& cfg, std::size_t trial) {
  const auto& cat = identity_catalogue();
  TrialOutput out;
  out.by_def.resize(cat.size());

  TrialRng rng(cfg.seed, kIdentityStream, trial);
  const VerblunskyData v = rng.interior_data(static_cast<std::size_t>(cfg.n_max) + 2);
  const auto [z, w] = rng.distinct_points();
  const int n = static_cast<int>(trial % static_cast<std::size_t>(cfg.n_max + 1));

  const BracketContext ctx(v);
  const JetSeeds<Jet> seeds = seed_point<Jet>(v);
  const JetFamily fam = jet_families_from(seeds, cfg.n_max);
  const IdentityInput off = make_input(fam, seeds, ctx, n, z, w);
  const IdentityInput diag = make_input(fam, seeds, ctx, n, z, z);

  for (std::size_t d = 0; d < cat.size(); ++d) {
    const IdentityDef& def = cat[d];
    const double tol = tolerance_for(cfg, def.id, def.tolerance);
    if (def.max_level >= 0) {
      const IdentityInput capped = make_input(fam, seeds, ctx, prop27_level(cfg, trial, def.max_level), z, w);
      if (admissible(def, capped)) out.by_def[d].push_back(evaluate_def(def, capped, def.id, tol, trial));
      continue;
    }
    const IdentityInput& in = def.diagonal ? diag : off;
    if (admissible(def, in)) out.by_def[d].push_back(evaluate_def(def, in, def.id, tol, trial));
  }

  for (const auto& adj : adjudication_catalogue()) {
    std::vector<std::pair<double, bool>> row;
    for (const auto& var : adj.variants) {
      if (!admissible(var, off)) {
        row.emplace_back(-1.0, false);
        continue;
      }
      const ResidualReport r = evaluate_def(var, off, var.id, var.tolerance, trial);
      row.emplace_back(r.residual, r.pass);
    }
    out.adjudication.push_back(std::move(row));
  }
  return out;
}

TrialOutput terminal_trial(const SuiteConfig& cfg, std::size_t trial) {
  const auto& cat = identity_catalogue();
  TrialOutput out;
  out.by_def.resize(cat.size());

  TrialRng rng(cfg.seed, kTerminalStream, trial);
  const int n = 1 + static_cast<int>(trial % static_cast<std::size_t>(std::max(cfg.n_max, 1)));
  std::vector<cplx> c;
  for (int k = 0; k + 1 < n; ++k) c.push_back(rng.in_disc(0.9));
  c.push_back(rng.on_circle());
  const VerblunskyData v(std::move(c), true);
  const auto [z, w] = rng.distinct_points();

  const BracketContext ctx(v);
  const JetSeeds<Jet> seeds = seed_point<Jet>(v);
  const JetFamily fam = jet_families_from(seeds, n);
  const IdentityInput off = make_input(fam, seeds, ctx, n, z, w);
  const IdentityInput diag = make_input(fam, seeds, ctx, n, z, z);
  for (std::size_t d = 0; d < cat.size(); ++d) {
    const IdentityDef& def = cat[d];
    if (!applies_to_terminal(def)) continue;
    const std::string id = "terminal." + def.id;
    const double tol = tolerance_for(cfg, id, tolerance_for(cfg, def.id, def.tolerance));
    out.by_def[d].push_back(evaluate_def(def, def.diagonal ? diag : off, id, tol, trial));
  }
  return out;
}

template <class Kernel>
std::vector<TrialOutput> run_trials(std::size_t trials, bool parallel, Kernel kernel) {
  std::vector<TrialOutput> outs(trials);
  const auto count = static_cast<std::int64_t>(trials);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < count; ++t) outs[t] = kernel(static_cast<std::size_t>(t));
  } else {
    for (std::int64_t t = 0; t < count; ++t) outs[t] = kernel(static_cast<std::size_t>(t));
  }
  return outs;
}

void append_def_major(const std::vector<TrialOutput>& outs, std::vector<ResidualReport>& records) {
  const std::size_t defs = identity_catalogue().size();
  for (std::size_t d = 0; d < defs; ++d)
    for (const auto& o : outs)
      for (const auto& r : o.by_def[d]) records.push_back(r);
}

SuiteReport suite_impl(const SuiteConfig& cfg, bool parallel) {
  if (cfg.n_max < 0) throw OpucError("n_max must be non-negative");
  SuiteReport rep;
  rep.config = cfg;
  const auto outs = run_trials(cfg.trials, parallel, [&](std::size_t t) { return identity_trial(cfg, t); });
  append_def_major(outs, rep.records);
  if (cfg.include_terminal && cfg.n_max >= 1) {
    const auto term = run_trials(cfg.trials, parallel, [&](std::size_t t) { return terminal_trial(cfg, t); });
    append_def_major(term, rep.records);
  }

  const auto& adjs = adjudication_catalogue();
  for (std::size_t a = 0; a < adjs.size(); ++a) {
    Adjudication adj;
    adj.topic = adjs[a].topic;
    for (std::size_t v = 0; v < adjs[a].variants.size(); ++v) {
      AdjudicationVariant var;
      var.label = adjs[a].variants[v].id;
      for (const auto& o : outs) {
        const auto [res, pass] = o.adjudication[a][v];
        if (res < 0) continue;
        ++var.trials;
        if (pass) ++var.passed;
        var.max_residual = std::max(var.max_residual, res);
      }
      adj.variants.push_back(var);
    }
    int passing = 0;
    for (const auto& var : adj.variants) {
      if (var.passes_all()) {
        ++passing;
        adj.selected = var.label;
      }
    }
    if (passing != 1) adj.selected.clear();
    rep.adjudications.push_back(std::move(adj));
  }
  return rep;
}

ResidualReport make_record(std::string id, std::size_t trial, cplx lhs, cplx rhs, double scale, double tol) {
  ResidualReport r;
  r.id = std::move(id);
  r.trial = trial;
  r.lhs = lhs;
  r.rhs = rhs;
  r.scale = scale;
  r.tol = tol;
  finish(r);
  return r;
}

ResidualReport residual_record(std::string id, int n, std::size_t trial, double residual, double tol) {
  ResidualReport r;
  r.id = std::move(id);
  r.n = n;
  r.trial = trial;
  r.residual = residual;
  r.tol = tol;
  r.pass = std::isfinite(residual) && residual < tol;
  return r;
}

template <class F>
std::vector<ResidualReport> parallel_records(std::size_t count, F f) {
  std::vector<ResidualReport> out(count);
  const auto c = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < c; ++t) out[t] = f(static_cast<std::size_t>(t));
  return out;
}

constexpr int kAxiomLevel = 6;
constexpr int kJacobiLevel = 3;

PolyObservable random_observable(TrialRng& rng, int max_level) {
  const auto member = static_cast<Member>(static_cast<int>(rng.uniform() * 8) % 8);
  const int n = static_cast<int>(rng.uniform() * (max_level + 1)) % (max_level + 1);
  return {member, n, rng.point()};
}

template <class T>
T evaluate_generic(const PolyFamilyT<T>& fam, const PolyObservable& obs) {
  const auto n = static_cast<std::size_t>(obs.n);
  switch (obs.member) {
    case Member::Phi: return fam.phi.at(n).eval(obs.z);
    case Member::PhiStar: return fam.phi_star.at(n).eval(obs.z);
    case Member::Psi: return fam.psi.at(n).eval(obs.z);
    case Member::PsiStar: return fam.psi_star.at(n).eval(obs.z);
    case Member::A: return fam.wall.at(n).a.eval(obs.z);
    case Member::AStar: return fam.wall.at(n).a_star.eval(obs.z);
    case Member::B: return fam.wall.at(n).b.eval(obs.z);
    case Member::BStar: return fam.wall.at(n).b_star.eval(obs.z);
  }
  throw OpucError("unknown member");
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial)
    : gen_(splitmix64(seed ^ splitmix64((stream << 40) ^ trial))) {}

double TrialRng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

cplx TrialRng::in_disc(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, 2.0 * std::numbers::pi * uniform());
}

cplx TrialRng::on_circle() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

cplx TrialRng::point() {
  const bool circle = uniform() < 0.5;
  const double r = circle ? 1.0 : 0.5 + 1.5 * uniform();
  return std::polar(r, 2.0 * std::numbers::pi * uniform());
}

std::pair<cplx, cplx> TrialRng::distinct_points() {
  const cplx z = point();
  cplx w = point();
  while (std::abs(z - w) <= 1e-3) w = point();
  return {z, w};
}

VerblunskyData TrialRng::interior_data(std::size_t count, double radius) {
  std::vector<cplx> c;
  c.reserve(count);
  for (std::size_t k = 0; k < count; ++k) c.push_back(in_disc(radius));
  return VerblunskyData(std::move(c));
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
}

bool SuiteReport::undecided_adjudications() const {
  return std::any_of(adjudications.begin(), adjudications.end(), [](const auto& a) { return a.selected.empty(); });
}

double tolerance_for(const SuiteConfig& cfg, const std::string& id, double fallback) {
  const auto it = cfg.tol_overrides.find(id);
  return it == cfg.tol_overrides.end() ? fallback : it->second;
}

SuiteReport run_suite(const SuiteConfig& cfg) { return suite_impl(cfg, true); }
SuiteReport run_suite_serial(const SuiteConfig& cfg) { return suite_impl(cfg, false); }

std::vector<ResidualReport> run_axiom_checks(const SuiteConfig& cfg) {
  std::vector<ResidualReport> out;
  auto draw = [&](Stream stream, std::size_t t) {
    TrialRng rng(cfg.seed, stream, t);
    VerblunskyData v = rng.interior_data(kAxiomLevel + 2);
    return std::pair{std::move(rng), std::move(v)};
  };

  const std::string anti_id = "axiom.antisymmetry";
  auto anti = parallel_records(cfg.antisymmetry_draws, [&](std::size_t t) {
    auto [rng, v] = draw(kAntisymmetryStream, t);
    const BracketContext ctx(v);
    const JetFamily fam = jet_families(v, kAxiomLevel);
    const Jet f = evaluate_observable(fam, random_observable(rng, kAxiomLevel));
    const Jet g = evaluate_observable(fam, random_observable(rng, kAxiomLevel));
    return residual_record(anti_id, kAxiomLevel, t, antisymmetry_residual(f, g, ctx), tolerance_for(cfg, anti_id, 1e-13));
  });
  out.insert(out.end(), anti.begin(), anti.end());

  const std::string leib_id = "axiom.leibniz";
  auto leib = parallel_records(cfg.leibniz_draws, [&](std::size_t t) {
    auto [rng, v] = draw(kLeibnizStream, t);
    const BracketContext ctx(v);
    const JetFamily fam = jet_families(v, kAxiomLevel);
    const Jet f = evaluate_observable(fam, random_observable(rng, kAxiomLevel));
    const Jet g = evaluate_observable(fam, random_observable(rng, kAxiomLevel));
    const Jet h = evaluate_observable(fam, random_observable(rng, kAxiomLevel));
    return residual_record(leib_id, kAxiomLevel, t, leibniz_residual(f, g, h, ctx), tolerance_for(cfg, leib_id, 1e-12));
  });
  out.insert(out.end(), leib.begin(), leib.end());

  const std::string jac_id = "axiom.jacobi";
  auto jac = parallel_records(cfg.jacobi_draws, [&](std::size_t t) {
    TrialRng rng(cfg.seed, kJacobiStream, t);
    const VerblunskyData v = rng.interior_data(kJacobiLevel + 2);
    const BracketContext ctx(v);
    const auto seeds2 = seed_point<Jet2>(v);
    const auto seeds1 = seed_point<Jet>(v);
    const auto fam = jet_families_from(seeds2, kJacobiLevel);
    const Jet2 f = evaluate_generic(fam, random_observable(rng, kJacobiLevel));
    const Jet2 g = evaluate_generic(fam, random_observable(rng, kJacobiLevel));
    const Jet2 h = evaluate_generic(fam, random_observable(rng, kJacobiLevel));
    return residual_record(jac_id, kJacobiLevel, t, jacobi_residual(f, g, h, seeds1, ctx), tolerance_for(cfg, jac_id, 1e-9));
  });
  out.insert(out.end(), jac.begin(), jac.end());

  const std::string conj_id = "axiom.conjugation";
  auto conj = parallel_records(cfg.conjugation_draws, [&](std::size_t t) {
    auto [rng, v] = draw(kConjugationStream, t);
    const BracketContext ctx(v);
    const JetFamily fam = jet_families(v, kAxiomLevel);
    const PolyObservable f = random_observable(rng, kAxiomLevel);
    const PolyObservable g = random_observable(rng, kAxiomLevel);
    return residual_record(conj_id, kAxiomLevel, t, conjugation_residual(fam, f, g, ctx),
                           tolerance_for(cfg, conj_id, 1e-10));
  });
  out.insert(out.end(), conj.begin(), conj.end());
  return out;
}

std::vector<ResidualReport> run_flow_checks(const SuiteConfig& cfg, std::vector<Adjudication>& adjudications) {
  std::vector<ResidualReport> out;
  const std::string inv_id = "flow.involutivity";
  auto inv = parallel_records(cfg.involutivity_draws, [&](std::size_t t) {
    TrialRng rng(cfg.seed, kInvolutivityStream, t);
    const int n = static_cast<int>(t % (kAxiomLevel + 1));
    const VerblunskyData v = rng.interior_data(kAxiomLevel + 2);
    const auto [z, w] = rng.distinct_points();
    const auto r = involutivity_check(n, z, w, v);
    ResidualReport rec = make_record(inv_id, t, r.bracket, cplx{0.0}, r.scale, tolerance_for(cfg, inv_id, 1e-10));
    rec.n = n;
    rec.z = z;
    rec.w = w;
    return rec;
  });
  out.insert(out.end(), inv.begin(), inv.end());

  const RateAdjudication rate = adjudicate_rotation_rate();
  Adjudication adj;
  adj.topic = "flow.rotation_rate";
  adj.variants.push_back({"printed", rate.printed_error, rate.printed_error < 1e-6 ? 1u : 0u, 1});
  adj.variants.push_back({"corrected", rate.derived_error, rate.derived_error < 1e-6 ? 1u : 0u, 1});
  adj.selected = rate.derived_selected ? "corrected" : (rate.printed_error < 1e-6 && rate.derived_error >= 1e-6 ? "printed" : "");
  adjudications.push_back(adj);

  // Observed RK4 order on the rotation benchmark.
  const VerblunskyData bench({cplx{0.3, 0.2}, cplx{-0.4, 0.1}, cplx{0.2, -0.5}, cplx{0.1, 0.1}});
  const double e1 = rotation_benchmark_error(bench, 3, 2.0, 1e-2);
  const double e2 = rotation_benchmark_error(bench, 3, 2.0, 5e-3);
  const double e3 = rotation_benchmark_error(bench, 3, 2.0, 2.5e-3);
  const double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e3);
  const std::string order_id = "flow.rk4_order";
  const double order_tol = tolerance_for(cfg, order_id, 0.3);
  out.push_back(residual_record(order_id, 3, 0, std::abs(o1 - 4.0), order_tol));
  out.push_back(residual_record(order_id, 3, 1, std::abs(o2 - 4.0), order_tol));

  // Casimir: the terminal coefficient must not move under any flow.
  const VerblunskyData term({cplx{0.3, 0.2}, cplx{-0.4, 0.1}, cplx{0.2, -0.5}, std::polar(1.0, 0.7)}, true);
  const FlowState end = rk4_flow({term, 0.0}, Hamiltonian{HamiltonianKind::DiscriminantRe, 2, cplx{0.8, 0.6}}, 1e-2, 100);
  ResidualReport cas = residual_record("flow.casimir", 3, 0, std::abs(end.v[3] - term[3]), 1.0);
  cas.pass = end.v[3] == term[3];
  out.push_back(cas);
  return out;
}

std::vector<ResidualReport> run_structural_checks(const SuiteConfig& cfg) {
  std::vector<ResidualReport> out;
  if (cfg.n_max < 1) return out;
  const std::string pn_id = "struct.pinter_nevai", det_id = "struct.wall_determinant", mix_id = "struct.lambda_mixing";
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, kStructuralStream, t);
    const VerblunskyData v = rng.interior_data(static_cast<std::size_t>(cfg.n_max) + 2);
    const int n = 1 + static_cast<int>(t % static_cast<std::size_t>(cfg.n_max));
    out.push_back(residual_record(pn_id, n, t, pinter_nevai(v, n).max(), tolerance_for(cfg, pn_id, 1e-12)));
    out.push_back(residual_record(det_id, n, t, wall_determinant_residual(v, n), tolerance_for(cfg, det_id, 1e-12)));
    out.push_back(
        residual_record(mix_id, n, t, lambda_mixing_residual(v, rng.on_circle(), n), tolerance_for(cfg, mix_id, 1e-13)));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

SuiteReport run_verification(const SuiteConfig& cfg) {
  SuiteReport rep = run_suite(cfg);
  const auto axioms = run_axiom_checks(cfg);
  rep.records.insert(rep.records.end(), axioms.begin(), axioms.end());
  const auto flows = run_flow_checks(cfg, rep.adjudications);
  rep.records.insert(rep.records.end(), flows.begin(), flows.end());
  const auto structural = run_structural_checks(cfg);
  rep.records.insert(rep.records.end(), structural.begin(), structural.end());
  return rep;
}

}  // namespace opuc
