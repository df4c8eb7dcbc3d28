#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opuc/scalar.hpp"

namespace opuc {

/// A finite sequence of Verblunsky coefficients alpha_0..alpha_{N-1}.
///
/// All coefficients lie strictly inside the unit disc, except that the last
/// one may sit on the unit circle (finitely supported measure) when
/// terminal_unimodular is set. Construction validates these constraints.
class VerblunskyData {
 public:
  VerblunskyData() = default;
  explicit VerblunskyData(std::vector<cplx> coeffs, bool terminal_unimodular = false);

  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  bool terminal_unimodular() const { return terminal_unimodular_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](std::size_t k) const { return coeffs_[k]; }

  /// rho_k^2 = 1 - |alpha_k|^2; exactly 0 for a terminal unimodular coefficient.
  double rho_sq(std::size_t k) const;
  double rho(std::size_t k) const;

  /// Coefficients {lambda * alpha_k}; lambda must be unimodular.
  VerblunskyData rotated(cplx lambda) const;
  VerblunskyData negated() const { return rotated(cplx{-1.0}); }

  friend bool operator==(const VerblunskyData&, const VerblunskyData&) = default;

 private:
  std::vector<cplx> coeffs_;
  bool terminal_unimodular_ = false;
};

void require_unimodular(cplx lambda, const char* what);

}  // namespace opuc
