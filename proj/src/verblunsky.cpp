#include "opuc/verblunsky.hpp"

#include <cmath>
#include <string>

namespace opuc {

void require_unimodular(cplx lambda, const char* what) {
  if (!(std::abs(std::abs(lambda) - 1.0) <= kUnitTol)) {
    throw OpucError(std::string(what) + " must be unimodular (|.| = 1 within 1e-12)");
  }
}

VerblunskyData::VerblunskyData(std::vector<cplx> coeffs, bool terminal_unimodular)
    : coeffs_(std::move(coeffs)), terminal_unimodular_(terminal_unimodular) {
  if (terminal_unimodular_ && coeffs_.empty()) {
    throw OpucError("terminal_unimodular requires at least one coefficient");
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const cplx a = coeffs_[k];
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw OpucError("alpha[" + std::to_string(k) + "] is not finite");
    }
    const bool last = k + 1 == coeffs_.size();
    if (last && terminal_unimodular_) {
      if (std::abs(std::abs(a) - 1.0) > kUnitTol) {
        throw OpucError("alpha[" + std::to_string(k) + "] is flagged terminal but |alpha| != 1");
      }
    } else if (!(std::abs(a) < 1.0)) {
      throw OpucError("alpha[" + std::to_string(k) + "] lies outside the open unit disc");
    }
  }
}

double VerblunskyData::rho_sq(std::size_t k) const {
  if (terminal_unimodular_ && k + 1 == coeffs_.size()) return 0.0;
  return 1.0 - std::norm(coeffs_[k]);
}

double VerblunskyData::rho(std::size_t k) const { return std::sqrt(rho_sq(k)); }

VerblunskyData VerblunskyData::rotated(cplx lambda) const {
  require_unimodular(lambda, "rotation lambda");
  std::vector<cplx> c(coeffs_);
  for (auto& a : c) a *= lambda;
  return VerblunskyData(std::move(c), terminal_unimodular_);
}

}  // namespace opuc
