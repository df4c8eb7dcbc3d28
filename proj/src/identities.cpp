#include "opuc/identities.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace opuc {

namespace {

constexpr double kTolFirst = 1e-10;
constexpr double kTolComb = 1e-9;
constexpr int kProp27MaxLevel = 5;
constexpr std::array<int, 6> kQValues{-2, -1, 0, 1, 2, 3};

int idx(Obs o) { return static_cast<int>(o); }

PointValues point_values(const JetFamily& fam, int n, cplx p, const Jet* norm_inv) {
  PointValues pv;
  pv.point = p;
  auto put = [&](Obs o, const JetPoly& poly) {
    pv.jet[idx(o)] = poly.eval(p);
    pv.deriv[idx(o)] = poly.derivative().eval(p).value();
  };
  const auto un = static_cast<std::size_t>(n);
  put(Obs::Phi, fam.phi.at(un));
  put(Obs::PhiStar, fam.phi_star.at(un));
  put(Obs::Psi, fam.psi.at(un));
  put(Obs::PsiStar, fam.psi_star.at(un));
  if (norm_inv != nullptr) {
    const std::array<std::pair<Obs, Obs>, 4> pairs{{{Obs::phi, Obs::Phi},
                                                    {Obs::phiStar, Obs::PhiStar},
                                                    {Obs::psi, Obs::Psi},
                                                    {Obs::psiStar, Obs::PsiStar}}};
    for (const auto& [norm, monic] : pairs) {
      pv.jet[idx(norm)] = *norm_inv * pv.jet[idx(monic)];
      pv.deriv[idx(norm)] = norm_inv->value() * pv.deriv[idx(monic)];
    }
  }
  if (fam.wall.size() > un) {
    const auto& w = fam.wall[un];
    put(Obs::A, w.a);
    put(Obs::AStar, w.a_star);
    put(Obs::B, w.b);
    put(Obs::BStar, w.b_star);
  }
  return pv;
}

// A family member optionally multiplied by its argument: x^zpow M(x).
struct Factor {
  Obs obs;
  int zpow = 0;
};

Tracked factor_value(const PointValues& pv, Factor f) {
  const cplx m = pv.value(f.obs);
  return Tracked::leaf(f.zpow == 0 ? m : pv.point * m);
}

Tracked factor_derivative(const PointValues& pv, Factor f) {
  const cplx m = pv.value(f.obs), dm = pv.derivative(f.obs);
  return Tracked::leaf(f.zpow == 0 ? dm : m + pv.point * dm);
}

class Expr {
 public:
  explicit Expr(const IdentityInput& in) : in_(in) {}

  Tracked z(Obs o) const { return Tracked::leaf(in_.at_z.value(o)); }
  Tracked w(Obs o) const { return Tracked::leaf(in_.at_w.value(o)); }

  /// c / (z - w) (F(z) G(w) - F(w) G(z)); on the diagonal its limit c (F' G - F G')(z).
  Tracked anti(cplx c, Factor f, Factor g) const {
    if (in_.diagonal) {
      const auto& p = in_.at_z;
      return c * (factor_derivative(p, f) * factor_value(p, g) - factor_value(p, f) * factor_derivative(p, g));
    }
    const cplx inv = 1.0 / (in_.z - in_.w);
    return (c * inv) * (factor_value(in_.at_z, f) * factor_value(in_.at_w, g) -
                        factor_value(in_.at_w, f) * factor_value(in_.at_z, g));
  }

  cplx zc() const { return in_.z; }
  cplx wc() const { return in_.w; }

 private:
  const IdentityInput& in_;
};

Evaluation bracket_vs(const IdentityInput& in, Obs x, Obs y, const Tracked& rhs) {
  const auto b = bracket_with_scale(in.at_z[x], in.at_w[y], *in.ctx);
  return {b.value, rhs.v, std::max({b.scale, rhs.mag, 1.0})};
}

const Tracked kZero{};

Tracked theorem_form(const std::string& id, const IdentityInput& in, bool printed) {
  const Expr e(in);
  const cplx i = kI, z = e.zc(), w = e.wc();
  using O = Obs;
  if (id == "thm.PhiPhi" || id == "thm.PsiPsi" || id == "rem.PhiStarPhiStar" || id == "rem.PsiStarPsiStar") {
    return kZero;
  }
  if (id == "thm.PhiPhiStar") return e.anti(i * w, {O::Phi}, {O::PhiStar});
  if (id == "thm.PsiPsiStar") return e.anti(i * w, {O::Psi}, {O::PsiStar});
  if (id == "thm.PhiPsi") {
    const Tracked tail = printed ? e.w(O::PhiStar) + e.w(O::PsiStar) : e.w(O::Phi) + e.w(O::Psi);
    return e.anti(-i * w, {O::Phi}, {O::Psi}) - (0.5 * i) * ((e.z(O::Phi) - e.z(O::Psi)) * tail);
  }
  if (id == "thm.PhiPsiStar") {
    return e.anti(-i * w, {O::Psi}, {O::PhiStar}) +
           (0.5 * i) * ((e.z(O::Phi) - e.z(O::Psi)) * (e.w(O::PhiStar) - e.w(O::PsiStar)));
  }
  if (id == "rem.PhiStarPsi") {
    return e.anti(-i * z, {O::PsiStar}, {O::Phi}) -
           (0.5 * i) * ((e.z(O::PhiStar) - e.z(O::PsiStar)) * (e.w(O::Phi) - e.w(O::Psi)));
  }
  if (id == "rem.PhiStarPsiStar") {
    return e.anti(-i * w, {O::PhiStar}, {O::PsiStar}) +
           (0.5 * i) * ((e.z(O::PhiStar) + e.z(O::PsiStar)) * (e.w(O::PhiStar) - e.w(O::PsiStar)));
  }
  throw OpucError("unknown theorem identity: " + id);
}

Tracked prop24_form(const std::string& id, const IdentityInput& in, bool printed) {
  const Expr e(in);
  const cplx i = kI, w = e.wc();
  using O = Obs;
  const cplx q = 0.25 * i;
  if (id == "prop24.phiphi") return q * (e.z(O::phi) * e.w(O::psi) - e.w(O::phi) * e.z(O::psi));
  if (id == "prop24.psipsi") return (-q) * (e.z(O::phi) * e.w(O::psi) - e.w(O::phi) * e.z(O::psi));
  if (id == "prop24.phiphiStar") {
    return q * (e.z(O::phi) * (e.w(O::phiStar) - e.w(O::psiStar)) + (e.z(O::phi) - e.z(O::psi)) * e.w(O::phiStar)) +
           e.anti(i * w, {O::phi}, {O::phiStar});
  }
  if (id == "prop24.psipsiStar") {
    return q * (e.z(O::psi) * (e.w(O::psiStar) - e.w(O::phiStar)) + (e.z(O::psi) - e.z(O::phi)) * e.w(O::psiStar)) +
           e.anti(i * w, {O::psi}, {O::psiStar});
  }
  if (id == "prop24.phipsi") {
    const Tracked tail = printed ? e.w(O::phiStar) + e.w(O::psiStar) : e.w(O::phi) + e.w(O::psi);
    return e.anti(-i * w, {O::phi}, {O::psi}) - (0.5 * i) * ((e.z(O::phi) - e.z(O::psi)) * tail) +
           q * (e.z(O::phi) * e.w(O::phi) - e.z(O::psi) * e.w(O::psi));
  }
  if (id == "prop24.phipsiStar") {
    const Tracked head =
        q * ((e.z(O::phi) - e.z(O::psi)) * e.w(O::phiStar) - e.z(O::psi) * (e.w(O::phiStar) - e.w(O::psiStar)));
    if (!printed) return head + e.anti(-i * w, {O::psi}, {O::phiStar});
    // uncorrected: psi taken at z in the second rational term
    const cplx c = -i * w / (e.zc() - w);
    return head + c * (e.z(O::psi) * e.w(O::phiStar) - e.z(O::psi) * e.z(O::phiStar));
  }
  throw OpucError("unknown prop24 identity: " + id);
}

IdentityDef bracket_identity(std::string id, std::string group, Obs x, Obs y,
                             std::function<Tracked(const std::string&, const IdentityInput&)> form) {
  IdentityDef d;
  d.group = std::move(group);
  d.tolerance = kTolFirst;
  const std::string key = id;
  d.evaluate = [key, x, y, form](const IdentityInput& in) { return bracket_vs(in, x, y, form(key, in)); };
  d.id = std::move(id);
  return d;
}

struct PairSpec {
  const char* id;
  Obs x, y;
};

constexpr std::array<PairSpec, 10> kTheoremPairs{{
    {"thm.PhiPhi", Obs::Phi, Obs::Phi},
    {"thm.PsiPsi", Obs::Psi, Obs::Psi},
    {"thm.PhiPhiStar", Obs::Phi, Obs::PhiStar},
    {"thm.PsiPsiStar", Obs::Psi, Obs::PsiStar},
    {"thm.PhiPsi", Obs::Phi, Obs::Psi},
    {"thm.PhiPsiStar", Obs::Phi, Obs::PsiStar},
    {"rem.PhiStarPhiStar", Obs::PhiStar, Obs::PhiStar},
    {"rem.PsiStarPsiStar", Obs::PsiStar, Obs::PsiStar},
    {"rem.PhiStarPsi", Obs::PhiStar, Obs::Psi},
    {"rem.PhiStarPsiStar", Obs::PhiStar, Obs::PsiStar},
}};

constexpr std::array<PairSpec, 6> kProp24Pairs{{
    {"prop24.phiphi", Obs::phi, Obs::phi},
    {"prop24.psipsi", Obs::psi, Obs::psi},
    {"prop24.phiphiStar", Obs::phi, Obs::phiStar},
    {"prop24.psipsiStar", Obs::psi, Obs::psiStar},
    {"prop24.phipsi", Obs::phi, Obs::psi},
    {"prop24.phipsiStar", Obs::phi, Obs::psiStar},
}};

constexpr std::array<PairSpec, 6> kProp26Pairs{{
    {"prop26.AA", Obs::A, Obs::A},
    {"prop26.BB", Obs::B, Obs::B},
    {"prop26.AAstar", Obs::A, Obs::AStar},
    {"prop26.BBstar", Obs::B, Obs::BStar},
    {"prop26.AB", Obs::A, Obs::B},
    {"prop26.ABstar", Obs::A, Obs::BStar},
}};

Evaluation lemma_eval(Obs which, const IdentityInput& in) {
  // Sign in front of {R_n, X}: -1 for Phi and Psi*, +1 for Psi and Phi*.
  const double sign = (which == Obs::Phi || which == Obs::PsiStar) ? -1.0 : 1.0;
  const auto b = bracket_with_scale(in.norm_inv, in.at_z[which], *in.ctx);
  const Tracked rhs = rhs_lemma_rn(which, in);
  return {sign * b.value, rhs.v, std::max({b.scale, rhs.mag, 1.0})};
}

Evaluation lemma_alpha_eval(const IdentityInput& in) {
  Evaluation worst{cplx{0.0}, cplx{0.0}, 1.0};
  double worst_res = -1.0;
  for (int j = 0; j < in.n; ++j) {
    const auto b = bracket_with_scale(in.norm_inv, in.seeds->alpha[j], *in.ctx);
    const cplx rhs = 0.5 * kI * in.norm_inv.value() * in.seeds->alpha[j].value();
    const double scale = std::max({b.scale, std::abs(rhs), 1.0});
    const double res = std::abs(b.value - rhs) / scale;
    if (res > worst_res) {
      worst_res = res;
      worst = {b.value, rhs, scale};
    }
  }
  return worst;
}

// Both orderings of a bracket between two Wall members: {X(z), Y(w)} and {X(w), Y(z)}.
struct CrossBrackets {
  BracketValue zw, wz;
};

CrossBrackets cross(const IdentityInput& in, Obs x, Obs y) {
  return {bracket_with_scale(in.at_z[x], in.at_w[y], *in.ctx), bracket_with_scale(in.at_w[x], in.at_z[y], *in.ctx)};
}

std::string q_suffix(int q) { return ".q" + std::to_string(q); }

std::vector<IdentityDef> build_catalogue() {
  std::vector<IdentityDef> out;
  const auto thm = [](const std::string& id, const IdentityInput& in) { return theorem_form(id, in, false); };
  for (const auto& p : kTheoremPairs) {
    const std::string id = p.id;
    out.push_back(bracket_identity(id, id.substr(0, 3), p.x, p.y, thm));
  }
  for (const auto& p : kTheoremPairs) {
    if (p.x == p.y) continue;
    const std::string base = p.id;
    auto d = bracket_identity("diag." + base.substr(4), "diag", p.x, p.y,
                              [base](const std::string&, const IdentityInput& in) { return theorem_form(base, in, false); });
    d.diagonal = true;
    out.push_back(std::move(d));
  }

  const std::array<std::pair<const char*, Obs>, 4> lemma{{{"lemma.RPhi", Obs::Phi},
                                                          {"lemma.RPsi", Obs::Psi},
                                                          {"lemma.RPhiStar", Obs::PhiStar},
                                                          {"lemma.RPsiStar", Obs::PsiStar}}};
  for (const auto& [id, which] : lemma) {
    IdentityDef d;
    d.id = id;
    d.group = "lemma";
    d.needs_normalized = true;
    const Obs w = which;
    d.evaluate = [w](const IdentityInput& in) { return lemma_eval(w, in); };
    out.push_back(std::move(d));
  }
  {
    IdentityDef d;
    d.id = "lemma.Ralpha";
    d.group = "lemma";
    d.needs_normalized = true;
    d.evaluate = lemma_alpha_eval;
    out.push_back(std::move(d));
  }

  const auto p24 = [](const std::string& id, const IdentityInput& in) { return prop24_form(id, in, false); };
  for (const auto& p : kProp24Pairs) {
    auto d = bracket_identity(p.id, "prop24", p.x, p.y, p24);
    d.needs_normalized = true;
    out.push_back(std::move(d));
  }

  for (const auto& p : kProp26Pairs) {
    auto d = bracket_identity(p.id, "prop26", p.x, p.y, rhs_prop26);
    d.needs_wall = true;
    out.push_back(std::move(d));
  }

  auto prop27 = [&](std::string id, std::function<Evaluation(const IdentityInput&)> f) {
    IdentityDef d;
    d.id = std::move(id);
    d.group = "prop27";
    d.tolerance = kTolComb;
    d.needs_wall = true;
    d.needs_nonzero_points = true;
    d.max_level = kProp27MaxLevel;
    d.evaluate = std::move(f);
    out.push_back(std::move(d));
  };
  prop27("prop27.alpha", [](const IdentityInput& in) { return bracket_vs(in, Obs::AStar, Obs::AStar, kZero); });
  prop27("prop27.beta", [](const IdentityInput& in) { return bracket_vs(in, Obs::B, Obs::B, kZero); });
  prop27("prop27.AstarB", [](const IdentityInput& in) {
    return bracket_vs(in, Obs::AStar, Obs::B, Expr(in).anti(kI * in.w, {Obs::AStar}, {Obs::B}));
  });
  for (const char* item : {"gamma", "r", "s", "x"}) {
    for (int q : kQValues) {
      const std::string name = item;
      prop27("prop27." + name + q_suffix(q), [name, q](const IdentityInput& in) {
        auto [lhs, rhs] = rhs_prop27(name, in, q);
        return Evaluation{lhs, rhs.v, rhs.mag};
      });
    }
  }
  return out;
}

}  // namespace

IdentityInput make_input(const JetFamily& fam, const JetSeeds<Jet>& seeds, const BracketContext& ctx, int n, cplx z,
                         cplx w) {
  IdentityInput in;
  in.ctx = &ctx;
  in.seeds = &seeds;
  in.n = n;
  in.z = z;
  in.w = w;
  in.diagonal = z == w;
  // A_n, B_n depend on alpha_n, which must be inside the bracket sum.
  in.has_wall = fam.wall.size() > static_cast<std::size_t>(n) && ctx.dim() >= static_cast<std::size_t>(n) + 2;
  in.normalized = true;
  for (int j = 0; j < n; ++j) in.normalized = in.normalized && ctx.data().rho_sq(j) > 0.0;
  const Jet* r = nullptr;
  if (in.normalized) {
    in.norm_inv = norm_inv_jet(seeds, n);
    r = &in.norm_inv;
  }
  in.at_z = point_values(fam, n, z, r);
  in.at_w = in.diagonal ? in.at_z : point_values(fam, n, w, r);
  return in;
}

cplx q_factor(int q, cplx z, cplx w) {
  if (z == cplx{0.0} || w == cplx{0.0}) throw OpucError("Q_q needs nonzero points");
  if (z == w) throw OpucError("Q_q needs z != w");
  return z * w * (std::pow(z, q - 1) - std::pow(w, q - 1)) / (z - w);
}

Tracked rhs_theorem(const std::string& id, const IdentityInput& in) { return theorem_form(id, in, false); }

Tracked rhs_prop24(const std::string& id, const IdentityInput& in) { return prop24_form(id, in, false); }

Tracked rhs_prop26(const std::string& id, const IdentityInput& in) {
  const Expr e(in);
  const cplx i = kI, z = e.zc(), w = e.wc();
  using O = Obs;
  if (id == "prop26.AA" || id == "prop26.BB") return kZero;
  if (id == "prop26.AAstar") return i * (e.z(O::A) * e.w(O::AStar)) + e.anti(-i, {O::BStar, 1}, {O::B});
  if (id == "prop26.BBstar") return e.anti(i * z, {O::A}, {O::AStar});
  if (id == "prop26.AB") return e.anti(-i * w, {O::A}, {O::B});
  if (id == "prop26.ABstar") return e.anti(i * z, {O::A}, {O::BStar});
  throw OpucError("unknown prop26 identity: " + id);
}

std::pair<cplx, Tracked> rhs_prop27(const std::string& item, const IdentityInput& in, int q) {
  const Expr e(in);
  const cplx z = in.z, w = in.w, i = kI;
  const cplx zq = std::pow(z, q), wq = std::pow(w, q);
  using O = Obs;
  Obs x{}, y{};
  cplx factor{};
  if (item == "gamma") {
    x = O::AStar, y = O::B, factor = -i;
  } else if (item == "r") {
    x = O::BStar, y = O::B, factor = i;
  } else if (item == "s") {
    x = O::A, y = O::AStar, factor = i;
  } else if (item == "x") {
    x = O::BStar, y = O::AStar, factor = i;
  } else {
    throw OpucError("unknown prop27 item: " + item);
  }
  const CrossBrackets b = cross(in, x, y);
  const cplx lhs = zq * factor * b.zw.value - wq * factor * b.wz.value;
  const double lhs_scale = std::max(std::abs(zq) * b.zw.scale, std::abs(wq) * b.wz.scale);

  Tracked rhs;
  if (item == "s") {
    rhs = cplx{-1.0} * (Tracked::leaf(zq) * e.z(O::A) * e.w(O::AStar) - Tracked::leaf(wq) * e.w(O::A) * e.z(O::AStar)) +
          Tracked::leaf((zq - wq) / (z - w)) *
              (Tracked::leaf(z) * e.z(O::BStar) * e.w(O::B) - Tracked::leaf(w) * e.w(O::BStar) * e.z(O::B));
  } else {
    const Tracked qf = Tracked::leaf(q_factor(q, z, w));
    if (item == "gamma") rhs = qf * (e.z(O::AStar) * e.w(O::B) - e.w(O::AStar) * e.z(O::B));
    if (item == "r") rhs = qf * (e.z(O::A) * e.w(O::AStar) - e.w(O::A) * e.z(O::AStar));
    if (item == "x") rhs = qf * (e.z(O::BStar) * e.w(O::AStar) - e.w(O::BStar) * e.z(O::AStar));
  }
  rhs.mag = std::max({rhs.mag, lhs_scale, 1.0});
  return {lhs, rhs};
}

Tracked rhs_lemma_rn(Obs which, const IdentityInput& in) {
  if (!in.normalized) throw OpucError("normalization undefined at this level");
  const Expr e(in);
  const cplx q = 0.25 * kI;
  switch (which) {
    case Obs::Phi:
    case Obs::Psi: return q * (e.z(Obs::phi) - e.z(Obs::psi));
    case Obs::PhiStar:
    case Obs::PsiStar: return q * (e.z(Obs::phiStar) - e.z(Obs::psiStar));
    default: throw OpucError("lemma form defined for Phi, Psi, PhiStar, PsiStar only");
  }
}

const std::vector<IdentityDef>& identity_catalogue() {
  static const std::vector<IdentityDef> cat = build_catalogue();
  return cat;
}

bool applies_to_terminal(const IdentityDef& def) {
  return def.group == "thm" || def.group == "rem" || def.group == "diag";
}

const IdentityDef* find_identity(const std::string& id) {
  for (const auto& d : identity_catalogue())
    if (d.id == id) return &d;
  return nullptr;
}

namespace {

IdentityDef variant(std::string label, std::string group, std::function<Evaluation(const IdentityInput&)> f,
                    bool needs_normalized) {
  IdentityDef d;
  d.id = std::move(label);
  d.group = std::move(group);
  d.needs_normalized = needs_normalized;
  d.evaluate = std::move(f);
  return d;
}

std::vector<AdjudicationDef> build_adjudications() {
  std::vector<AdjudicationDef> out;
  auto thm = [](bool printed) {
    return [printed](const IdentityInput& in) {
      return bracket_vs(in, Obs::Phi, Obs::Psi, theorem_form("thm.PhiPsi", in, printed));
    };
  };
  out.push_back({"thm.PhiPsi", {variant("printed", "thm", thm(true), false), variant("corrected", "thm", thm(false), false)}});

  auto p24 = [](const char* id, Obs x, Obs y, bool printed) {
    const std::string key = id;
    return [key, x, y, printed](const IdentityInput& in) { return bracket_vs(in, x, y, prop24_form(key, in, printed)); };
  };
  out.push_back({"prop24.phipsi",
                 {variant("printed", "prop24", p24("prop24.phipsi", Obs::phi, Obs::psi, true), true),
                  variant("corrected", "prop24", p24("prop24.phipsi", Obs::phi, Obs::psi, false), true)}});
  out.push_back({"prop24.phipsiStar",
                 {variant("printed", "prop24", p24("prop24.phipsiStar", Obs::phi, Obs::psiStar, true), true),
                  variant("corrected", "prop24", p24("prop24.phipsiStar", Obs::phi, Obs::psiStar, false), true)}});

  // -{R_n, Phi_n(z)} in monic form: printed i/(4 R_n) (Phi - Psi) against i R_n / 4 (Phi - Psi).
  auto monic = [](bool printed) {
    return [printed](const IdentityInput& in) {
      const auto b = bracket_with_scale(in.norm_inv, in.at_z[Obs::Phi], *in.ctx);
      const cplx r = in.norm_inv.value();
      const cplx coef = printed ? 0.25 * kI / r : 0.25 * kI * r;
      const Tracked rhs = coef * (Tracked::leaf(in.at_z.value(Obs::Phi)) - Tracked::leaf(in.at_z.value(Obs::Psi)));
      return Evaluation{-b.value, rhs.v, std::max({b.scale, rhs.mag, 1.0})};
    };
  };
  out.push_back({"lemma.monic_form",
                 {variant("printed", "lemma", monic(true), true), variant("corrected", "lemma", monic(false), true)}});
  return out;
}

}  // namespace

const std::vector<AdjudicationDef>& adjudication_catalogue() {
  static const std::vector<AdjudicationDef> cat = build_adjudications();
  return cat;
}

}  // namespace opuc
