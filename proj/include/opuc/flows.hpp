#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opuc/families.hpp"
#include "opuc/poisson.hpp"

namespace opuc {

/// Real observables that generate flows via d f / dt = {H, f}.
enum class HamiltonianKind {
  NormInvR,        // R_n = prod_{j<n} 1/rho_j
  DiscriminantRe,  // Re(B_n(z0) + z0 B_n*(z0))
  DiscriminantIm,  // Im(B_n(z0) + z0 B_n*(z0))
  ModulusSq,       // |alpha_k|^2
};

struct Hamiltonian {
  HamiltonianKind kind = HamiltonianKind::NormInvR;
  int n = 1;
  cplx z0{1.0};
  std::size_t k = 0;

  std::string name() const;
};

/// Parses "norm_inv_R", "disc_re", "disc_im", "modulus_sq".
HamiltonianKind parse_hamiltonian(const std::string& name);

Jet hamiltonian_jet(const Hamiltonian& h, const VerblunskyData& v);

/// d alpha_k / dt = {H, alpha_k} = i rho_k^2 dH/d conj(alpha_k) for k <= N-2;
/// the terminal coefficient does not move.
std::vector<cplx> bracket_vector_field(const Jet& h, const BracketContext& ctx);

struct FlowState {
  VerblunskyData v;
  double t = 0.0;
};

/// Thrown when a stage would bring some |alpha_k| to 1 - 1e-6 or beyond.
class DiscExit : public OpucError {
 public:
  DiscExit(int step, std::size_t index);
  int step() const { return step_; }
  std::size_t index() const { return index_; }

 private:
  int step_;
  std::size_t index_;
};

inline constexpr double kDiscGuard = 1.0 - 1e-6;

using FlowObserver = std::function<void(int step, const FlowState&)>;

/// Classical fourth-order Runge-Kutta on the bracket vector field of h.
/// The observer (if any) sees the initial state as step 0 and every step after.
FlowState rk4_flow(const FlowState& start, const Hamiltonian& h, double dt, int steps,
                   const FlowObserver& observer = {});

/// Rotation speed of alpha_j under the flow of R_n. Derived: R_n / 2 (from
/// {R_n, alpha_j} = (i/2) R_n alpha_j). Printed: 1 / (2 R_n).
enum class RotationRate { Derived, Printed };

double norm_inv_value(const VerblunskyData& v, int n);

/// alpha_j -> alpha_j exp(i theta t) for j < n, theta fixed by `rate`.
VerblunskyData rotation_flow_exact(const VerblunskyData& v, int n, double t,
                                   RotationRate rate = RotationRate::Derived);

struct RateAdjudication {
  cplx field;        // {R_1, alpha_0} from the jet bracket
  cplx derived_fd;   // central difference in t of the derived exact flow
  cplx printed_fd;   // same for the printed rate
  double derived_error;
  double printed_error;
  bool derived_selected;
};

/// Compares both candidate rates against the bracket at n = 1, alpha_0 = 0.5.
RateAdjudication adjudicate_rotation_rate();

/// B_n(z) + z B_n*(z).
cplx discriminant(const VerblunskyData& v, int n, cplx z);
Jet discriminant_jet(const JetFamily& fam, int n, cplx z);

struct InvolutivityResult {
  cplx bracket;
  double scale;
  double residual;
};

/// {D(z), D(w)} with D the discriminant at level n; should vanish.
InvolutivityResult involutivity_check(int n, cplx z, cplx w, const VerblunskyData& v);

/// Max |alpha_k(T) - exact| for the R_n flow integrated with step dt up to t_end.
double rotation_benchmark_error(const VerblunskyData& v, int n, double t_end, double dt);

}  // namespace opuc
