#include "opuc/families.hpp"

#include <cmath>
#include <string>

namespace opuc {

int actual_degree(const CPoly& p) {
  for (int k = p.nominal_degree(); k > 0; --k)
    if (p[k] != cplx{0.0}) return k;
  return 0;
}

CPoly reverse_poly(const CPoly& p, int n) {
  if (n < 0) throw OpucError("reversal degree must be non-negative");
  const CPoly padded = p.with_degree(n);
  std::vector<cplx> q(n + 1);
  for (int k = 0; k <= n; ++k) q[k] = std::conj(padded[n - k]);
  return CPoly(std::move(q));
}

double coefficient_scale(const CPoly& p) {
  double s = 1.0;
  for (const auto& c : p.coeffs()) s = std::max(s, std::abs(c));
  return s;
}

double max_coefficient_deviation(const CPoly& p, const CPoly& q) {
  const int d = std::max(p.nominal_degree(), q.nominal_degree());
  double m = 0.0;
  for (int k = 0; k <= d; ++k) {
    const cplx a = k <= p.nominal_degree() ? p[k] : cplx{0.0};
    const cplx b = k <= q.nominal_degree() ? q[k] : cplx{0.0};
    m = std::max(m, std::abs(a - b));
  }
  return m;
}

cplx eval_power_sum(const CPoly& p, cplx z) {
  cplx sum{0.0};
  for (int k = 0; k <= p.nominal_degree(); ++k) sum += p[k] * std::pow(z, k);
  return sum;
}

std::vector<double> norm_products(const VerblunskyData& v, int n_max) {
  std::vector<double> norms{1.0};
  for (int j = 0; j < n_max; ++j) norms.push_back(norms.back() * v.rho(j));
  return norms;
}

namespace {

void check_n_max(const VerblunskyData& v, int n_max) {
  if (n_max < 0 || static_cast<std::size_t>(n_max) > v.size()) {
    throw OpucError("n_max = " + std::to_string(n_max) + " exceeds the number of coefficients (" +
                    std::to_string(v.size()) + ")");
  }
}

std::vector<cplx> conjugates(std::span<const cplx> a) {
  std::vector<cplx> out(a.begin(), a.end());
  for (auto& x : out) x = std::conj(x);
  return out;
}

}  // namespace

std::vector<WallTerm<cplx>> wall_family(const VerblunskyData& v, int n_max) {
  check_n_max(v, n_max);
  const auto bar = conjugates(v.coeffs());
  const int levels = std::min<int>(n_max + 1, static_cast<int>(v.size()));
  return build_wall<cplx>(v.coeffs(), bar, levels);
}

PolyFamily monic_families(const VerblunskyData& v, int n_max) {
  check_n_max(v, n_max);
  PolyFamily fam;
  fam.n_max = n_max;
  const VerblunskyData neg = v.negated();
  const auto bar = conjugates(v.coeffs());
  const auto neg_bar = conjugates(neg.coeffs());
  build_monic<cplx>(v.coeffs(), bar, n_max, fam.phi, fam.phi_star);
  build_monic<cplx>(neg.coeffs(), neg_bar, n_max, fam.psi, fam.psi_star);
  fam.wall = wall_family(v, n_max);
  fam.norms = norm_products(v, n_max);
  return fam;
}

PolyFamily rotated_family(const VerblunskyData& v, cplx lambda, int n_max) {
  require_unimodular(lambda, "lambda");
  return monic_families(v.rotated(lambda), n_max);
}

JetFamily jet_families(const VerblunskyData& v, int n_max) {
  check_n_max(v, n_max);
  JetFamily fam = jet_families_from(seed_point<Jet>(v), n_max);
  fam.norms = norm_products(v, n_max);
  return fam;
}

NormalizedFamily normalized_families(const PolyFamily& fam, const VerblunskyData& v) {
  NormalizedFamily out;
  out.n_max = fam.n_max;
  double r = 1.0;
  for (int n = 0; n <= fam.n_max; ++n) {
    if (n > 0) {
      const double rho = v.rho(n - 1);
      if (!(rho > 0.0)) {
        throw OpucError("normalization undefined: rho[" + std::to_string(n - 1) +
                        "] = 0 (unimodular coefficient inside the range)");
      }
      r /= rho;
    }
    out.norm_inv.push_back(r);
    out.phi.push_back(fam.phi[n] * cplx{r});
    out.phi_star.push_back(fam.phi_star[n] * cplx{r});
    out.psi.push_back(fam.psi[n] * cplx{r});
    out.psi_star.push_back(fam.psi_star[n] * cplx{r});
  }
  return out;
}

namespace {

double relative_dev(const CPoly& lhs, const CPoly& rhs) {
  return max_coefficient_deviation(lhs, rhs) / std::max(coefficient_scale(lhs), coefficient_scale(rhs));
}

}  // namespace

PinterNevaiResidual pinter_nevai(const VerblunskyData& v, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > v.size()) throw OpucError("pinter_nevai needs 1 <= n <= N");
  const PolyFamily fam = monic_families(v, n);
  const WallTerm<cplx>& w = fam.wall.at(n - 1);
  const CPoly zb = w.b_star.times_z();
  PinterNevaiResidual r;
  r.phi = relative_dev(fam.phi[n], zb - w.a_star);
  r.psi = relative_dev(fam.psi[n], zb + w.a_star);
  const CPoly a_rhs = ((fam.psi_star[n] - fam.phi_star[n]) * cplx{0.5}).divided_by_z();
  const CPoly b_rhs = (fam.psi_star[n] + fam.phi_star[n]) * cplx{0.5};
  r.wall_a = relative_dev(w.a, a_rhs);
  r.wall_b = relative_dev(w.b, b_rhs);
  return r;
}

double wall_determinant_residual(const VerblunskyData& v, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= v.size()) throw OpucError("wall level out of range");
  const auto wall = wall_family(v, n);
  const WallTerm<cplx>& w = wall.at(n);
  const CPoly lhs = w.b * w.b_star - w.a * w.a_star;
  double prod = 1.0;
  for (int k = 0; k <= n; ++k) prod *= v.rho_sq(k);
  const CPoly rhs = CPoly::monomial(n) * cplx{prod};
  return relative_dev(lhs, rhs);
}

double lambda_mixing_residual(const VerblunskyData& v, cplx lambda, int n) {
  const PolyFamily base = monic_families(v, n);
  const PolyFamily rot = rotated_family(v, lambda, n);
  const cplx lb = std::conj(lambda);
  const cplx plus = (1.0 + lb) * 0.5, minus = (1.0 - lb) * 0.5;
  const CPoly phi_mix = base.phi[n] * plus + base.psi[n] * minus;
  const CPoly psi_mix = base.phi[n] * minus + base.psi[n] * plus;
  return std::max(relative_dev(rot.phi[n], phi_mix), relative_dev(rot.psi[n], psi_mix));
}

}  // namespace opuc
