#include "opuc/flows.hpp"

#include <cmath>

namespace opuc {

std::string Hamiltonian::name() const {
  switch (kind) {
    case HamiltonianKind::NormInvR: return "norm_inv_R";
    case HamiltonianKind::DiscriminantRe: return "disc_re";
    case HamiltonianKind::DiscriminantIm: return "disc_im";
    case HamiltonianKind::ModulusSq: return "modulus_sq";
  }
  return "?";
}

HamiltonianKind parse_hamiltonian(const std::string& name) {
  if (name == "norm_inv_R") return HamiltonianKind::NormInvR;
  if (name == "disc_re") return HamiltonianKind::DiscriminantRe;
  if (name == "disc_im") return HamiltonianKind::DiscriminantIm;
  if (name == "modulus_sq") return HamiltonianKind::ModulusSq;
  throw OpucError("unknown hamiltonian '" + name + "' (norm_inv_R, disc_re, disc_im, modulus_sq)");
}

Jet discriminant_jet(const JetFamily& fam, int n, cplx z) {
  const auto& w = fam.wall.at(static_cast<std::size_t>(n));
  return w.b.eval(z) + w.b_star.eval(z) * z;
}

cplx discriminant(const VerblunskyData& v, int n, cplx z) {
  const auto wall = wall_family(v, n);
  const auto& w = wall.at(static_cast<std::size_t>(n));
  return w.b.eval(z) + z * w.b_star.eval(z);
}

Jet hamiltonian_jet(const Hamiltonian& h, const VerblunskyData& v) {
  switch (h.kind) {
    case HamiltonianKind::NormInvR: {
      if (h.n < 0 || static_cast<std::size_t>(h.n) > v.size()) throw OpucError("hamiltonian level out of range");
      return norm_inv_jet(seed_point<Jet>(v), h.n);
    }
    case HamiltonianKind::DiscriminantRe:
    case HamiltonianKind::DiscriminantIm: {
      if (h.n < 0 || static_cast<std::size_t>(h.n) >= v.size()) {
        throw OpucError("discriminant level needs n < number of coefficients");
      }
      const Jet d = discriminant_jet(jet_families(v, h.n), h.n, h.z0);
      const Jet dc = conjugate(d);
      if (h.kind == HamiltonianKind::DiscriminantRe) return (d + dc) * cplx{0.5};
      return (d - dc) * cplx{0.0, -0.5};
    }
    case HamiltonianKind::ModulusSq: {
      if (h.k >= v.size()) throw OpucError("modulus_sq index out of range");
      const auto s = seed_point<Jet>(v);
      return s.alpha[h.k] * s.alpha_bar[h.k];
    }
  }
  throw OpucError("unknown hamiltonian");
}

std::vector<cplx> bracket_vector_field(const Jet& h, const BracketContext& ctx) {
  std::vector<cplx> field(ctx.dim(), cplx{0.0});
  if (h.is_constant()) return field;
  if (h.dim() != ctx.dim()) throw OpucError("hamiltonian jet dimension does not match the coefficients");
  for (std::size_t k = 0; k < ctx.sum_count(); ++k) field[k] = kI * ctx.rho_sq(k) * h.d_alpha_bar(k);
  return field;
}

DiscExit::DiscExit(int step, std::size_t index)
    : OpucError("flow left the disc guard at step " + std::to_string(step) + " (alpha[" + std::to_string(index) + "])"),
      step_(step),
      index_(index) {}

namespace {

std::vector<cplx> field_at(const VerblunskyData& v, const Hamiltonian& h) {
  return bracket_vector_field(hamiltonian_jet(h, v), BracketContext(v));
}

VerblunskyData advance(const VerblunskyData& v, const std::vector<cplx>& dir, double dt, int step) {
  std::vector<cplx> c(v.coeffs().begin(), v.coeffs().end());
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (dir[k] == cplx{0.0}) continue;
    c[k] += dt * dir[k];
    if (!(std::abs(c[k]) < kDiscGuard)) throw DiscExit(step, k);
  }
  return VerblunskyData(std::move(c), v.terminal_unimodular());
}

}  // namespace

FlowState rk4_flow(const FlowState& start, const Hamiltonian& h, double dt, int steps, const FlowObserver& observer) {
  if (steps < 0 || !std::isfinite(dt)) throw OpucError("rk4_flow needs finite dt and steps >= 0");
  FlowState s = start;
  if (observer) observer(0, s);
  const std::size_t n = s.v.size();
  for (int step = 1; step <= steps; ++step) {
    const auto k1 = field_at(s.v, h);
    const auto k2 = field_at(advance(s.v, k1, dt / 2, step), h);
    const auto k3 = field_at(advance(s.v, k2, dt / 2, step), h);
    const auto k4 = field_at(advance(s.v, k3, dt, step), h);
    std::vector<cplx> dir(n);
    for (std::size_t k = 0; k < n; ++k) dir[k] = (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]) / 6.0;
    s.v = advance(s.v, dir, dt, step);
    s.t = start.t + step * dt;
    if (observer) observer(step, s);
  }
  return s;
}

double norm_inv_value(const VerblunskyData& v, int n) {
  double r = 1.0;
  for (int j = 0; j < n; ++j) r /= v.rho(j);
  return r;
}

VerblunskyData rotation_flow_exact(const VerblunskyData& v, int n, double t, RotationRate rate) {
  if (n < 0 || static_cast<std::size_t>(n) > v.size()) throw OpucError("rotation level out of range");
  const double r = norm_inv_value(v, n);
  const double omega = rate == RotationRate::Derived ? r / 2 : 1.0 / (2 * r);
  const cplx phase = std::polar(1.0, omega * t);
  std::vector<cplx> c(v.coeffs().begin(), v.coeffs().end());
  for (int j = 0; j < n; ++j) c[j] *= phase;
  return VerblunskyData(std::move(c), v.terminal_unimodular());
}

RateAdjudication adjudicate_rotation_rate() {
  const VerblunskyData v({cplx{0.5}, cplx{0.0}});
  const Hamiltonian h{HamiltonianKind::NormInvR, 1};
  RateAdjudication out{};
  out.field = field_at(v, h)[0];
  const double dt = 1e-5;
  auto fd = [&](RotationRate rate) {
    return (rotation_flow_exact(v, 1, dt, rate)[0] - rotation_flow_exact(v, 1, -dt, rate)[0]) / (2 * dt);
  };
  out.derived_fd = fd(RotationRate::Derived);
  out.printed_fd = fd(RotationRate::Printed);
  out.derived_error = std::abs(out.derived_fd - out.field);
  out.printed_error = std::abs(out.printed_fd - out.field);
  out.derived_selected = out.derived_error < 1e-6 && out.printed_error > 1e-6;
  return out;
}

InvolutivityResult involutivity_check(int n, cplx z, cplx w, const VerblunskyData& v) {
  if (z == cplx{0.0} || w == cplx{0.0}) throw OpucError("involutivity check needs nonzero points");
  const JetFamily fam = jet_families(v, n);
  const BracketContext ctx(v);
  const auto b = bracket_with_scale(discriminant_jet(fam, n, z), discriminant_jet(fam, n, w), ctx);
  const double scale = std::max(b.scale, 1.0);
  return {b.value, scale, std::abs(b.value) / scale};
}

double rotation_benchmark_error(const VerblunskyData& v, int n, double t_end, double dt) {
  const int steps = static_cast<int>(std::lround(t_end / dt));
  const FlowState end = rk4_flow({v, 0.0}, Hamiltonian{HamiltonianKind::NormInvR, n}, dt, steps);
  const VerblunskyData exact = rotation_flow_exact(v, n, steps * dt);
  double err = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) err = std::max(err, std::abs(end.v[k] - exact[k]));
  return err;
}

}  // namespace opuc
