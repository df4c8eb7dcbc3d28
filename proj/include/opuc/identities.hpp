#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opuc/families.hpp"
#include "opuc/poisson.hpp"

namespace opuc {

/// Every polynomial an identity can mention, evaluated at one point.
enum class Obs : int { Phi, PhiStar, Psi, PsiStar, phi, phiStar, psi, psiStar, A, AStar, B, BStar };
inline constexpr int kObsCount = 12;

/// Values, Wirtinger partials and z-derivatives of every family member at
/// a single evaluation point and level.
struct PointValues {
  cplx point;
  std::array<Jet, kObsCount> jet;
  std::array<cplx, kObsCount> deriv{};

  const Jet& operator[](Obs o) const { return jet[static_cast<int>(o)]; }
  cplx value(Obs o) const { return jet[static_cast<int>(o)].value(); }
  cplx derivative(Obs o) const { return deriv[static_cast<int>(o)]; }
};

/// Everything an identity needs at one (level, z, w) draw. When diagonal is
/// set, w == z and at_w aliases the values at z.
struct IdentityInput {
  const BracketContext* ctx = nullptr;
  const JetSeeds<Jet>* seeds = nullptr;
  int n = 0;
  cplx z, w;
  bool diagonal = false;
  bool normalized = false;
  bool has_wall = false;
  Jet norm_inv;
  PointValues at_z, at_w;
};

/// Builds the input at level n from a jet family (Wall entries only when the
/// family carries level n; normalized members only when R_n is finite).
IdentityInput make_input(const JetFamily& fam, const JetSeeds<Jet>& seeds, const BracketContext& ctx, int n,
                         cplx z, cplx w);

/// A complex value with the largest magnitude among the expanded summands
/// that produced it; products multiply magnitudes.
struct Tracked {
  cplx v{0.0};
  double mag = 0.0;

  static Tracked leaf(cplx x) { return {x, std::abs(x)}; }
  friend Tracked operator+(Tracked a, Tracked b) { return {a.v + b.v, std::max(a.mag, b.mag)}; }
  friend Tracked operator-(Tracked a, Tracked b) { return {a.v - b.v, std::max(a.mag, b.mag)}; }
  friend Tracked operator*(Tracked a, Tracked b) { return {a.v * b.v, a.mag * b.mag}; }
  friend Tracked operator*(cplx c, Tracked a) { return {c * a.v, std::abs(c) * a.mag}; }
};

struct Evaluation {
  cplx lhs;
  cplx rhs;
  double scale;
};

struct IdentityDef {
  std::string id;
  std::string group;
  double tolerance = 1e-10;
  bool diagonal = false;
  bool needs_normalized = false;
  bool needs_wall = false;
  bool needs_nonzero_points = false;
  /// Highest level this identity is exercised at (-1: the suite's n_max).
  int max_level = -1;
  std::function<Evaluation(const IdentityInput&)> evaluate;
};

/// z w (z^{q-1} - w^{q-1}) / (z - w).
cplx q_factor(int q, cplx z, cplx w);

/// The verified identity inventory in a fixed order.
const std::vector<IdentityDef>& identity_catalogue();

/// Ids valid for the terminal-unimodular sub-suite (thm, rem and diag groups).
bool applies_to_terminal(const IdentityDef& def);

const IdentityDef* find_identity(const std::string& id);

/// Competing closed forms for a printed formula whose transcription is in doubt.
struct AdjudicationDef {
  std::string topic;
  std::vector<IdentityDef> variants;  // id field holds the variant label
};

const std::vector<AdjudicationDef>& adjudication_catalogue();

/// Closed-form right-hand sides, exposed for direct tests and the CLI.
Tracked rhs_theorem(const std::string& id, const IdentityInput& in);
Tracked rhs_prop24(const std::string& id, const IdentityInput& in);
Tracked rhs_prop26(const std::string& id, const IdentityInput& in);
/// Returns (lhs combination from jet brackets, rhs) for a prop27 item.
std::pair<cplx, Tracked> rhs_prop27(const std::string& item, const IdentityInput& in, int q);
/// The normalized form of {R_n, X(z)} for X in {Phi, Psi, PhiStar, PsiStar}.
Tracked rhs_lemma_rn(Obs which, const IdentityInput& in);

}  // namespace opuc
