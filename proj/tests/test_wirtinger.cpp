#include "doctest.h"
#include "helpers.hpp"

#include "opuc/families.hpp"
#include "opuc/poisson.hpp"

using namespace opuc;
using namespace testing;

TEST_CASE("seeds") {
  const auto s = seed_point(VerblunskyData({cplx{0.5}}));
  CHECK(s.alpha[0].value() == cplx{0.5});
  CHECK(s.alpha[0].d_alpha(0) == cplx{1.0});
  CHECK(s.alpha[0].d_alpha_bar(0) == cplx{0.0});
  CHECK(s.alpha_bar[0].value() == cplx{0.5});
  CHECK(s.alpha_bar[0].d_alpha_bar(0) == cplx{1.0});

  const auto s2 = seed_point(VerblunskyData({cplx{0.1, 0.2}, cplx{-0.3}}));
  CHECK(s2.alpha[0].d_alpha(1) == cplx{0.0});
  CHECK(s2.alpha[1].d_alpha(0) == cplx{0.0});
  CHECK(s2.alpha_bar[0].d_alpha_bar(1) == cplx{0.0});

  const Jet rho_sq = cplx{1.0} - s2.alpha[0] * s2.alpha_bar[0];
  CHECK(rho_sq.d_alpha(0) == -std::conj(cplx{0.1, 0.2}));
  CHECK(rho_sq.d_alpha_bar(0) == -cplx{0.1, 0.2});
}

TEST_CASE("jet arithmetic") {
  const cplx a{0.3, -0.7};
  const auto s = seed_point(VerblunskyData({a, cplx{0.2, 0.1}, cplx{-0.5, 0.4}}));
  const Jet m = s.alpha[0] * s.alpha_bar[0];
  CHECK(std::abs(m.value() - std::norm(a)) < 1e-15);
  CHECK(m.d_alpha(0) == std::conj(a));
  CHECK(m.d_alpha_bar(0) == a);

  const Jet x = s.alpha[0] * cplx{2.0, 1.0} + s.alpha_bar[2];
  const Jet zero(cplx{0.0});
  const Jet y = x + zero;
  CHECK(y.value() == x.value());
  for (std::size_t k = 0; k < 3; ++k) CHECK(y.d_alpha(k) == x.d_alpha(k));

  const Jet p = s.alpha[1] * s.alpha_bar[1] + s.alpha[2];
  const Jet q = s.alpha_bar[0] * s.alpha[2];
  const Jet lhs = (x + p) * q, rhs = x * q + p * q;
  CHECK(std::abs(lhs.value() - rhs.value()) < 1e-14);
  for (std::size_t i = 0; i < lhs.partials().size(); ++i) CHECK(std::abs(lhs.partials()[i] - rhs.partials()[i]) < 1e-14);

  const Jet c = conjugate(s.alpha[0]);
  CHECK(c.value() == std::conj(a));
  CHECK(c.d_alpha_bar(0) == cplx{1.0});
  CHECK(c.d_alpha(0) == cplx{0.0});

  const Jet small = s.alpha[0];
  const Jet other(cplx{1.0}, std::vector<cplx>(4, cplx{0.0}));
  CHECK_THROWS_AS(small * other, OpucError);
}

TEST_CASE("family partials") {
  const VerblunskyData v({cplx{0.5}, cplx{0.2, -0.1}});
  const JetFamily f = jet_families(v, 2);
  const Jet phi1 = f.phi[1].eval(cplx{0.7, 0.2});
  CHECK(phi1.d_alpha_bar(0) == cplx{-1.0});
  CHECK(phi1.d_alpha(0) == cplx{0.0});

  const VerblunskyData r = draw_data(1, 7);
  const JetFamily g = jet_families(r, 7);
  for (std::size_t n = 0; n <= 7; ++n) {
    const Jet val = g.phi[n].eval(cplx{1.1, -0.4});
    for (std::size_t j = n; j < 7; ++j) {
      CHECK(val.d_alpha(j) == cplx{0.0});
      CHECK(val.d_alpha_bar(j) == cplx{0.0});
    }
  }
}

TEST_CASE("finite-difference oracle") {
  const VerblunskyData v({cplx{0.3, 0.1}, cplx{-0.2, 0.4}});
  const auto id = fd_oracle([](const VerblunskyData& d) { return d[1]; }, v, 1);
  CHECK(std::abs(id.d_alpha - 1.0) < 1e-9);
  CHECK(std::abs(id.d_alpha_bar) < 1e-9);
  const auto mod = fd_oracle([](const VerblunskyData& d) { return cplx{std::norm(d[0])}; }, v, 0);
  CHECK(std::abs(mod.d_alpha - std::conj(v[0])) < 1e-9);
  CHECK(std::abs(mod.d_alpha_bar - v[0]) < 1e-9);
  CHECK_FALSE(mod.unstable);
  CHECK_THROWS_AS(fd_oracle([](const VerblunskyData& d) { return d[0]; }, v, 0, 1e-2), OpucError);

  // Phi_3(z0) and a few others: jets against central differences.
  for (std::uint64_t t = 0; t < 5; ++t) {
    const VerblunskyData r = draw_data(t, 6);
    TrialRng rng(3, 3, t);
    const cplx z0 = rng.point();
    const JetFamily f = jet_families(r, 4);
    const Jet phi3 = f.phi[3].eval(z0);
    const Jet psi4s = f.psi_star[4].eval(z0);
    const Jet a3 = f.wall[3].a.eval(z0);
    for (std::size_t k = 0; k < 6; ++k) {
      const auto fd = fd_oracle([&](const VerblunskyData& d) { return monic_families(d, 3).phi[3].eval(z0); }, r, k);
      CHECK(std::abs(fd.d_alpha - phi3.d_alpha(k)) < 1e-6);
      CHECK(std::abs(fd.d_alpha_bar - phi3.d_alpha_bar(k)) < 1e-6);
      const auto fs = fd_oracle([&](const VerblunskyData& d) { return monic_families(d, 4).psi_star[4].eval(z0); }, r, k);
      CHECK(std::abs(fs.d_alpha - psi4s.d_alpha(k)) < 1e-6);
      CHECK(std::abs(fs.d_alpha_bar - psi4s.d_alpha_bar(k)) < 1e-6);
      const auto fa = fd_oracle([&](const VerblunskyData& d) { return wall_family(d, 3)[3].a.eval(z0); }, r, k);
      CHECK(std::abs(fa.d_alpha - a3.d_alpha(k)) < 1e-6);
      CHECK(std::abs(fa.d_alpha_bar - a3.d_alpha_bar(k)) < 1e-6);
    }
  }
}

TEST_CASE("nested jets") {
  const VerblunskyData v = draw_data(2, 3);
  const auto s2 = seed_point<Jet2>(v);
  const Jet2 m = s2.alpha[1] * s2.alpha_bar[1];
  // d/d alpha_1 of |alpha_1|^2 is conj alpha_1, whose d/d conj alpha_1 is 1
  const Jet d = m.d_alpha(1);
  CHECK(d.value() == std::conj(v[1]));
  CHECK(d.d_alpha_bar(1) == cplx{1.0});
  CHECK(d.d_alpha(1) == cplx{0.0});
}
