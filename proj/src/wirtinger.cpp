#include "opuc/wirtinger.hpp"

#include <vector>

namespace opuc {

namespace {

FdResult central(const ScalarObservable& f, const VerblunskyData& v, std::size_t k, double h) {
  auto shifted = [&](cplx delta) {
    std::vector<cplx> c(v.coeffs().begin(), v.coeffs().end());
    c.at(k) += delta;
    return f(VerblunskyData(std::move(c), v.terminal_unimodular()));
  };
  const cplx du = (shifted({h, 0.0}) - shifted({-h, 0.0})) / (2.0 * h);
  const cplx dv = (shifted({0.0, h}) - shifted({0.0, -h})) / (2.0 * h);
  return {0.5 * (du - kI * dv), 0.5 * (du + kI * dv), false};
}

}  // namespace

FdResult fd_oracle(const ScalarObservable& f, const VerblunskyData& v, std::size_t k, double h, double flag_tol) {
  if (!(h >= 1e-7 && h <= 1e-4)) throw OpucError("fd step must lie in [1e-7, 1e-4]");
  if (k >= v.size()) throw OpucError("fd index out of range");
  FdResult r = central(f, v, k, h);
  const FdResult half = central(f, v, k, h / 2);
  r.unstable = std::abs(r.d_alpha - half.d_alpha) > flag_tol || std::abs(r.d_alpha_bar - half.d_alpha_bar) > flag_tol;
  return r;
}

}  // namespace opuc
