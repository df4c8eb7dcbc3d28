#include "opuc/poisson.hpp"

#include <algorithm>
#include <cmath>

namespace opuc {

BracketContext::BracketContext(VerblunskyData v) : v_(std::move(v)) {
  rho_sq_.reserve(v_.size());
  for (std::size_t k = 0; k < v_.size(); ++k) rho_sq_.push_back(v_.rho_sq(k));
}

namespace {

void check_dims(const Jet& f, const BracketContext& ctx) {
  if (!f.is_constant() && f.dim() != ctx.dim()) throw OpucError("jet dimension does not match bracket context");
}

}  // namespace

BracketValue bracket_with_scale(const Jet& f, const Jet& g, const BracketContext& ctx) {
  check_dims(f, ctx);
  check_dims(g, ctx);
  if (f.is_constant() || g.is_constant()) return {cplx{0.0}, 0.0};
  cplx sum{0.0};
  double scale = 0.0;
  for (std::size_t k = 0; k < ctx.sum_count(); ++k) {
    const cplx t1 = ctx.rho_sq(k) * (f.d_alpha_bar(k) * g.d_alpha(k));
    const cplx t2 = ctx.rho_sq(k) * (f.d_alpha(k) * g.d_alpha_bar(k));
    sum += t1 - t2;
    scale = std::max({scale, std::abs(t1), std::abs(t2)});
  }
  return {kI * sum, scale};
}

Jet bracket_jet(const Jet2& f, const Jet2& g, const JetSeeds<Jet>& seeds) {
  const std::size_t n = seeds.alpha.size();
  Jet sum(cplx{0.0});
  if (f.is_constant() || g.is_constant() || n == 0) return sum;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Jet rho_sq = cplx{1.0} - seeds.alpha[k] * seeds.alpha_bar[k];
    sum = sum + rho_sq * (f.d_alpha_bar(k) * g.d_alpha(k) - f.d_alpha(k) * g.d_alpha_bar(k));
  }
  return sum * kI;
}

cplx bracket_of_evals(const JetPoly& p, const JetPoly& q, cplx z, cplx w, const BracketContext& ctx) {
  return bracket(p.eval(z), q.eval(w), ctx);
}

double antisymmetry_residual(const Jet& f, const Jet& g, const BracketContext& ctx) {
  const auto fg = bracket_with_scale(f, g, ctx);
  const auto gf = bracket_with_scale(g, f, ctx);
  return std::abs(fg.value + gf.value) / std::max({fg.scale, gf.scale, 1.0});
}

double leibniz_residual(const Jet& f, const Jet& g, const Jet& h, const BracketContext& ctx) {
  const cplx lhs = bracket(f * g, h, ctx);
  const cplx t1 = f.value() * bracket(g, h, ctx);
  const cplx t2 = bracket(f, h, ctx) * g.value();
  const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), 1.0});
  return std::abs(lhs - t1 - t2) / scale;
}

double jacobi_residual(const Jet2& f, const Jet2& g, const Jet2& h, const JetSeeds<Jet>& seeds,
                       const BracketContext& ctx) {
  const cplx a = bracket(f.value(), bracket_jet(g, h, seeds), ctx);
  const cplx b = bracket(g.value(), bracket_jet(h, f, seeds), ctx);
  const cplx c = bracket(h.value(), bracket_jet(f, g, seeds), ctx);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1.0});
  return std::abs(a + b + c) / scale;
}

Member reverse_member(Member m) {
  switch (m) {
    case Member::Phi: return Member::PhiStar;
    case Member::PhiStar: return Member::Phi;
    case Member::Psi: return Member::PsiStar;
    case Member::PsiStar: return Member::Psi;
    case Member::A: return Member::AStar;
    case Member::AStar: return Member::A;
    case Member::B: return Member::BStar;
    case Member::BStar: return Member::B;
  }
  return m;
}

const char* member_name(Member m) {
  switch (m) {
    case Member::Phi: return "Phi";
    case Member::PhiStar: return "PhiStar";
    case Member::Psi: return "Psi";
    case Member::PsiStar: return "PsiStar";
    case Member::A: return "A";
    case Member::AStar: return "AStar";
    case Member::B: return "B";
    case Member::BStar: return "BStar";
  }
  return "?";
}

Jet evaluate_observable(const JetFamily& fam, const PolyObservable& obs) {
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

double conjugation_residual(const JetFamily& fam, const PolyObservable& f, const PolyObservable& g,
                            const BracketContext& ctx) {
  auto conj_obs = [&](const PolyObservable& o) {
    if (o.z == cplx{0.0}) throw OpucError("conjugation check needs a nonzero point");
    const PolyObservable r{reverse_member(o.member), o.n, 1.0 / std::conj(o.z)};
    return evaluate_observable(fam, r) * std::pow(std::conj(o.z), o.n);
  };
  const auto direct = bracket_with_scale(evaluate_observable(fam, f), evaluate_observable(fam, g), ctx);
  const auto conjugated = bracket_with_scale(conj_obs(f), conj_obs(g), ctx);
  return std::abs(conjugated.value - std::conj(direct.value)) / std::max({direct.scale, conjugated.scale, 1.0});
}

}  // namespace opuc
