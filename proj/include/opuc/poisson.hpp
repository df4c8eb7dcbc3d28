#pragma once

#include <cstdint>
#include <vector>

#include "opuc/families.hpp"
#include "opuc/verblunsky.hpp"
#include "opuc/wirtinger.hpp"

namespace opuc {

/// The Ablowitz-Ladik bracket
///   {f, g} = i sum_{k=0}^{N-2} rho_k^2 (df/d conj(alpha_k) dg/d alpha_k - df/d alpha_k dg/d conj(alpha_k)).
/// The last coefficient is always left out of the sum, so it is a Casimir.
class BracketContext {
 public:
  explicit BracketContext(VerblunskyData v);

  const VerblunskyData& data() const { return v_; }
  std::size_t dim() const { return v_.size(); }
  /// Number of summed indices (N - 1, or 0 when N = 0).
  std::size_t sum_count() const { return rho_sq_.empty() ? 0 : rho_sq_.size() - 1; }
  double rho_sq(std::size_t k) const { return rho_sq_[k]; }

 private:
  VerblunskyData v_;
  std::vector<double> rho_sq_;
};

/// A bracket value together with the largest summand magnitude.
struct BracketValue {
  cplx value;
  double scale;
};

BracketValue bracket_with_scale(const Jet& f, const Jet& g, const BracketContext& ctx);

inline cplx bracket(const Jet& f, const Jet& g, const BracketContext& ctx) {
  return bracket_with_scale(f, g, ctx).value;
}

/// Bracket of two second-order jets, returned as a first-order jet. The
/// rho_k^2 weights are themselves differentiated (rho_k^2 = 1 - alpha_k conj alpha_k).
Jet bracket_jet(const Jet2& f, const Jet2& g, const JetSeeds<Jet>& seeds);

/// bracket(p(z), q(w)).
cplx bracket_of_evals(const JetPoly& p, const JetPoly& q, cplx z, cplx w, const BracketContext& ctx);

/// Structural axiom residuals. Each returns |residual| / max(scale, 1).
double antisymmetry_residual(const Jet& f, const Jet& g, const BracketContext& ctx);
double leibniz_residual(const Jet& f, const Jet& g, const Jet& h, const BracketContext& ctx);
double jacobi_residual(const Jet2& f, const Jet2& g, const Jet2& h, const JetSeeds<Jet>& seeds,
                       const BracketContext& ctx);

/// An observable p(z) where p is one of the polynomials of a family at
/// level n; its complex conjugate is conj(z)^n p*(1/conj z).
enum class Member { Phi, PhiStar, Psi, PsiStar, A, AStar, B, BStar };

Member reverse_member(Member m);
const char* member_name(Member m);

struct PolyObservable {
  Member member;
  int n;
  cplx z;
};

Jet evaluate_observable(const JetFamily& fam, const PolyObservable& obs);

/// |{conj f, conj g} - conj({f, g})| / scale, with conj f and conj g built
/// through reversed polynomials (no jet conjugation involved).
double conjugation_residual(const JetFamily& fam, const PolyObservable& f, const PolyObservable& g,
                            const BracketContext& ctx);

}  // namespace opuc
