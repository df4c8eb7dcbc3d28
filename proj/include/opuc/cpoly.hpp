#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "opuc/scalar.hpp"

namespace opuc {

/// Dense univariate polynomial in z with coefficients of type T, indexed by
/// power. The declared (nominal) degree is coeffs().size() - 1 and may exceed
/// the actual degree; reversal is always taken at the declared degree.
template <class T>
class Poly {
 public:
  Poly() : coeffs_{lift<T>(cplx{0.0})} {}
  explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw OpucError("polynomial needs at least one coefficient");
  }

  static Poly constant(T c) { return Poly(std::vector<T>{std::move(c)}); }
  static Poly monomial(int degree) {
    std::vector<T> c(degree + 1, lift<T>(cplx{0.0}));
    c.back() = lift<T>(cplx{1.0});
    return Poly(std::move(c));
  }

  int nominal_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const T> coeffs() const { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }

  /// Horner evaluation.
  T eval(cplx z) const {
    T acc = coeffs_.back();
    for (int k = nominal_degree() - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
    return acc;
  }

  /// z * p, declared degree + 1.
  Poly times_z() const {
    std::vector<T> c;
    c.reserve(coeffs_.size() + 1);
    c.push_back(lift<T>(cplx{0.0}));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return Poly(std::move(c));
  }

  /// p / z, assuming the constant term vanishes up to tol * coefficient scale.
  Poly divided_by_z(double tol = kStructTol) const {
    double scale = 1.0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(value_of(c)));
    if (std::abs(value_of(coeffs_.front())) > tol * scale) {
      throw OpucError("internal consistency: constant term of a z-divisible polynomial is nonzero");
    }
    if (coeffs_.size() == 1) return Poly();
    return Poly(std::vector<T>(coeffs_.begin() + 1, coeffs_.end()));
  }

  /// Pad with zeros (or drop exact zeros) to the given declared degree.
  Poly with_degree(int degree) const {
    std::vector<T> c(coeffs_);
    if (degree + 1 < static_cast<int>(c.size())) {
      for (std::size_t k = degree + 1; k < c.size(); ++k) {
        if (value_of(c[k]) != cplx{0.0}) {
          throw OpucError("declared degree " + std::to_string(degree) +
                          " is smaller than the actual degree");
        }
      }
    }
    c.resize(degree + 1, lift<T>(cplx{0.0}));
    return Poly(std::move(c));
  }

  Poly derivative() const {
    if (coeffs_.size() == 1) return Poly();
    std::vector<T> c;
    c.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) c.push_back(coeffs_[k] * cplx(static_cast<double>(k)));
    return Poly(std::move(c));
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, 1.0); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, -1.0); }

  friend Poly operator*(const Poly& p, const T& s) {
    std::vector<T> c;
    c.reserve(p.coeffs_.size());
    for (const auto& x : p.coeffs_) c.push_back(x * s);
    return Poly(std::move(c));
  }
  friend Poly operator*(const T& s, const Poly& p) { return p * s; }

  friend Poly operator*(const Poly& p, cplx s) requires(!is_complex_scalar<T>::value) {
    std::vector<T> c;
    c.reserve(p.coeffs_.size());
    for (const auto& x : p.coeffs_) c.push_back(x * s);
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, lift<T>(cplx{0.0}));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(c));
  }

 private:
  static Poly combine(const Poly& a, const Poly& b, double sign) {
    const std::size_t m = std::max(a.coeffs_.size(), b.coeffs_.size());
    std::vector<T> c;
    c.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (k >= b.coeffs_.size()) {
        c.push_back(a.coeffs_[k]);
      } else if (k >= a.coeffs_.size()) {
        c.push_back(b.coeffs_[k] * cplx(sign));
      } else {
        c.push_back(sign > 0 ? a.coeffs_[k] + b.coeffs_[k] : a.coeffs_[k] - b.coeffs_[k]);
      }
    }
    return Poly(std::move(c));
  }

  std::vector<T> coeffs_;
};

using CPoly = Poly<cplx>;

/// Highest index with a nonzero coefficient (0 for the zero polynomial).
int actual_degree(const CPoly& p);

/// q_k = conj(p_{n-k}); q(z) = z^n conj(p(1/conj z)).
/// Throws if p has nonzero coefficients above degree n.
CPoly reverse_poly(const CPoly& p, int n);

/// Largest absolute coefficient, floored at 1.
double coefficient_scale(const CPoly& p);

/// max_k |p_k - q_k| over the padded coefficient lists.
double max_coefficient_deviation(const CPoly& p, const CPoly& q);

/// Naive power sum, used as an oracle for Horner.
cplx eval_power_sum(const CPoly& p, cplx z);

}  // namespace opuc
