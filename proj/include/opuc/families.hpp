#pragma once

#include <span>
#include <utility>
#include <vector>

#include "opuc/cpoly.hpp"
#include "opuc/verblunsky.hpp"
#include "opuc/wirtinger.hpp"

namespace opuc {

/// Wall polynomials at level n (they depend on alpha_0..alpha_n).
template <class T>
struct WallTerm {
  Poly<T> a, b, a_star, b_star;
};

/// Monic orthogonal and second kind polynomials with their reverses for
/// n = 0..n_max, Wall polynomials for every level the coefficients allow,
/// and the norms prod_{j<n} rho_j.
template <class T>
struct PolyFamilyT {
  int n_max = 0;
  std::vector<Poly<T>> phi, phi_star, psi, psi_star;
  std::vector<WallTerm<T>> wall;
  std::vector<double> norms;
};

using PolyFamily = PolyFamilyT<cplx>;
using JetFamily = PolyFamilyT<Jet>;

/// phi_n = R_n Phi_n etc., R_n = prod_{j<n} 1/rho_j.
struct NormalizedFamily {
  int n_max = 0;
  std::vector<double> norm_inv;
  std::vector<CPoly> phi, phi_star, psi, psi_star;
};

/// One step of the Szego recurrence:
/// (z Phi - conj(alpha) Phi*, Phi* - alpha z Phi), declared degree n+1.
template <class T>
std::pair<Poly<T>, Poly<T>> szego_step(const Poly<T>& phi, const Poly<T>& phi_star, const T& alpha,
                                       const T& alpha_bar) {
  const int n = std::max(phi.nominal_degree(), phi_star.nominal_degree());
  const Poly<T> z_phi = phi.with_degree(n).times_z();
  const Poly<T> star = phi_star.with_degree(n + 1);
  return {z_phi - star * alpha_bar, star - z_phi * alpha};
}

inline std::pair<CPoly, CPoly> szego_step(const CPoly& phi, const CPoly& phi_star, cplx alpha) {
  return szego_step<cplx>(phi, phi_star, alpha, std::conj(alpha));
}

/// Iterate the Szego recurrence from Phi_0 = Phi_0* = 1 with the given
/// (alpha, conj alpha) values; returns n_max + 1 pairs.
template <class T>
void build_monic(std::span<const T> alpha, std::span<const T> alpha_bar, int n_max, std::vector<Poly<T>>& phi,
                 std::vector<Poly<T>>& phi_star) {
  phi.assign(1, Poly<T>::constant(lift<T>(cplx{1.0})));
  phi_star.assign(1, Poly<T>::constant(lift<T>(cplx{1.0})));
  for (int n = 0; n < n_max; ++n) {
    auto [next, next_star] = szego_step<T>(phi.back(), phi_star.back(), alpha[n], alpha_bar[n]);
    phi.push_back(std::move(next));
    phi_star.push_back(std::move(next_star));
  }
}

/// Accumulates the transfer product M_n ... M_0 with
/// M_k = [[z, -conj(alpha_k)], [-alpha_k z, 1]] and reads off
/// [[z B_n*, -A_n*], [-z A_n, B_n]] for each level n < count.
template <class T>
std::vector<WallTerm<T>> build_wall(std::span<const T> alpha, std::span<const T> alpha_bar, int levels) {
  std::vector<WallTerm<T>> out;
  if (levels <= 0) return out;
  out.reserve(levels);
  const T one = lift<T>(cplx{1.0});
  Poly<T> p11 = Poly<T>::constant(one), p12, p21, p22 = Poly<T>::constant(one);
  for (int n = 0; n < levels; ++n) {
    const int d = n + 1;
    const Poly<T> z11 = p11.times_z().with_degree(d), z12 = p12.times_z().with_degree(d);
    const Poly<T> q21 = p21.with_degree(d), q22 = p22.with_degree(d);
    p11 = z11 - q21 * alpha_bar[n];
    p12 = z12 - q22 * alpha_bar[n];
    p21 = q21 - z11 * alpha[n];
    p22 = q22 - z12 * alpha[n];
    WallTerm<T> w;
    w.b_star = p11.divided_by_z();
    w.a_star = (p12 * lift<T>(cplx{-1.0})).with_degree(n);
    w.a = (p21 * lift<T>(cplx{-1.0})).divided_by_z();
    w.b = p22.with_degree(n);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<double> norm_products(const VerblunskyData& v, int n_max);

/// Phi_n from v and Psi_n from -v for n <= n_max, with Wall polynomials and norms.
PolyFamily monic_families(const VerblunskyData& v, int n_max);

/// The family for the rotated coefficients {lambda alpha_k}.
PolyFamily rotated_family(const VerblunskyData& v, cplx lambda, int n_max);

/// Wall polynomials for levels n <= min(n_max, N - 1).
std::vector<WallTerm<cplx>> wall_family(const VerblunskyData& v, int n_max);

/// Every family rebuilt over jets seeded at v; ᾱ seeds drive the recurrence.
JetFamily jet_families(const VerblunskyData& v, int n_max);

/// Same, over a caller-supplied seed set (used with nested jets).
template <class T>
PolyFamilyT<T> jet_families_from(const JetSeeds<T>& seeds, int n_max) {
  if (n_max < 0 || static_cast<std::size_t>(n_max) > seeds.alpha.size()) {
    throw OpucError("n_max exceeds the number of coefficients");
  }
  PolyFamilyT<T> fam;
  fam.n_max = n_max;
  std::vector<T> neg, neg_bar;
  for (std::size_t k = 0; k < seeds.alpha.size(); ++k) {
    neg.push_back(seeds.alpha[k] * cplx{-1.0});
    neg_bar.push_back(seeds.alpha_bar[k] * cplx{-1.0});
  }
  build_monic<T>(seeds.alpha, seeds.alpha_bar, n_max, fam.phi, fam.phi_star);
  build_monic<T>(neg, neg_bar, n_max, fam.psi, fam.psi_star);
  const int levels = std::min<int>(n_max + 1, static_cast<int>(seeds.alpha.size()));
  fam.wall = build_wall<T>(seeds.alpha, seeds.alpha_bar, levels);
  return fam;
}

/// R_n = prod_{j<n} (1 - alpha_j conj(alpha)_j)^{-1/2} as a jet.
template <class T>
WirtingerJet<T> norm_inv_jet(const JetSeeds<WirtingerJet<T>>& seeds, int n) {
  WirtingerJet<T> r(lift<T>(cplx{1.0}));
  for (int j = 0; j < n; ++j) {
    const auto rho_sq = cplx{1.0} - seeds.alpha[j] * seeds.alpha_bar[j];
    r = r * reciprocal(sqrt(rho_sq));
  }
  return r;
}

/// Scales every polynomial of level n by R_n; rejects when some rho_j = 0.
NormalizedFamily normalized_families(const PolyFamily& fam, const VerblunskyData& v);

/// Coefficient-wise residuals of the Pinter-Nevai relations at level n >= 1:
/// Phi_n = z B*_{n-1} - A*_{n-1}, Psi_n = z B*_{n-1} + A*_{n-1},
/// A_{n-1} = (Psi*_n - Phi*_n) / 2z, B_{n-1} = (Psi*_n + Phi*_n) / 2.
struct PinterNevaiResidual {
  double phi = 0, psi = 0, wall_a = 0, wall_b = 0;
  double max() const { return std::max(std::max(phi, psi), std::max(wall_a, wall_b)); }
};
PinterNevaiResidual pinter_nevai(const VerblunskyData& v, int n);

/// Relative coefficient residual of B_n B_n* - A_n A_n* = z^n prod_{k<=n} rho_k^2.
double wall_determinant_residual(const VerblunskyData& v, int n);

/// Relative coefficient residual of
/// Phi^lambda_n = (1 + conj lambda)/2 Phi_n + (1 - conj lambda)/2 Psi_n and the
/// companion formula for Psi^lambda_n.
double lambda_mixing_residual(const VerblunskyData& v, cplx lambda, int n);

}  // namespace opuc
