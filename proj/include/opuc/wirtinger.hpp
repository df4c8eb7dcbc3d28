#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opuc/cpoly.hpp"
#include "opuc/scalar.hpp"
#include "opuc/verblunsky.hpp"

namespace opuc {

/// Value plus first-order Wirtinger partials with respect to the 2N
/// independent variables alpha_0..alpha_{N-1}, conj(alpha)_0..conj(alpha)_{N-1}.
///
/// Partials are stored densely: [d/d alpha_k ..., d/d conj(alpha)_k ...].
/// An empty partial vector denotes a constant (all partials zero), which
/// combines with jets of any dimension. T may itself be a jet, giving
/// second-order information.
template <class T>
class WirtingerJet {
 public:
  using value_type = T;

  WirtingerJet() : value_(lift<T>(cplx{0.0})) {}
  explicit WirtingerJet(T value) : value_(std::move(value)) {}
  WirtingerJet(T value, std::vector<T> partials) : value_(std::move(value)), d_(std::move(partials)) {
    if (d_.size() % 2 != 0) throw OpucError("jet partials must come in (alpha, conj alpha) pairs");
  }

  const T& value() const { return value_; }
  std::size_t dim() const { return d_.size() / 2; }
  bool is_constant() const { return d_.empty(); }
  const std::vector<T>& partials() const { return d_; }

  T d_alpha(std::size_t k) const { return d_.empty() ? lift<T>(cplx{0.0}) : d_.at(k); }
  T d_alpha_bar(std::size_t k) const { return d_.empty() ? lift<T>(cplx{0.0}) : d_.at(dim() + k); }

  friend WirtingerJet operator+(const WirtingerJet& a, const WirtingerJet& b) {
    return zip(a, b, a.value_ + b.value_, [](const T& x, const T& y) { return x + y; });
  }
  friend WirtingerJet operator-(const WirtingerJet& a, const WirtingerJet& b) {
    return zip(a, b, a.value_ - b.value_, [](const T& x, const T& y) { return x - y; });
  }
  friend WirtingerJet operator-(const WirtingerJet& a) { return a * cplx{-1.0}; }

  friend WirtingerJet operator*(const WirtingerJet& a, const WirtingerJet& b) {
    WirtingerJet out(a.value_ * b.value_);
    if (a.d_.empty() && b.d_.empty()) return out;
    if (!a.d_.empty() && !b.d_.empty() && a.d_.size() != b.d_.size()) {
      throw OpucError("jet dimension mismatch");
    }
    const std::size_t m = std::max(a.d_.size(), b.d_.size());
    out.d_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (a.d_.empty()) {
        out.d_.push_back(a.value_ * b.d_[k]);
      } else if (b.d_.empty()) {
        out.d_.push_back(a.d_[k] * b.value_);
      } else {
        out.d_.push_back(a.value_ * b.d_[k] + a.d_[k] * b.value_);
      }
    }
    return out;
  }

  friend WirtingerJet operator*(const WirtingerJet& a, cplx s) {
    WirtingerJet out(a.value_ * s);
    out.d_.reserve(a.d_.size());
    for (const auto& x : a.d_) out.d_.push_back(x * s);
    return out;
  }
  friend WirtingerJet operator*(cplx s, const WirtingerJet& a) { return a * s; }
  friend WirtingerJet operator+(const WirtingerJet& a, cplx s) {
    WirtingerJet out(a);
    out.value_ = out.value_ + lift<T>(s);
    return out;
  }
  friend WirtingerJet operator+(cplx s, const WirtingerJet& a) { return a + s; }
  friend WirtingerJet operator-(const WirtingerJet& a, cplx s) { return a + (-s); }
  friend WirtingerJet operator-(cplx s, const WirtingerJet& a) { return (-a) + s; }

  /// Multiply every partial by a per-component factor (chain rule helper).
  WirtingerJet chain(T new_value, const T& factor) const {
    WirtingerJet out(std::move(new_value));
    out.d_.reserve(d_.size());
    for (const auto& x : d_) out.d_.push_back(x * factor);
    return out;
  }

 private:
  template <class Op>
  static WirtingerJet zip(const WirtingerJet& a, const WirtingerJet& b, T value, Op op) {
    WirtingerJet out(std::move(value));
    if (a.d_.empty() && b.d_.empty()) return out;
    if (!a.d_.empty() && !b.d_.empty() && a.d_.size() != b.d_.size()) {
      throw OpucError("jet dimension mismatch");
    }
    const std::size_t m = std::max(a.d_.size(), b.d_.size());
    const T zero = lift<T>(cplx{0.0});
    out.d_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      out.d_.push_back(op(a.d_.empty() ? zero : a.d_[k], b.d_.empty() ? zero : b.d_[k]));
    }
    return out;
  }

  T value_;
  std::vector<T> d_;
};

template <class T>
WirtingerJet<T> reciprocal(const WirtingerJet<T>& a) {
  const T r = reciprocal(a.value());
  return a.chain(r, -(r * r));
}

template <class T>
WirtingerJet<T> sqrt(const WirtingerJet<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.value());
  return a.chain(s, reciprocal(s) * cplx{0.5});
}

/// Conjugate of the function represented by the jet, at a point where the
/// conj(alpha) seeds carry conj(alpha) values: d conj(f)/d alpha_k =
/// conj(d f / d conj(alpha)_k) and vice versa.
template <class T>
WirtingerJet<T> conjugate(const WirtingerJet<T>& a) {
  if (a.is_constant()) return WirtingerJet<T>(conjugate(a.value()));
  const std::size_t n = a.dim();
  std::vector<T> d(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = conjugate(a.d_alpha_bar(k));
    d[n + k] = conjugate(a.d_alpha(k));
  }
  return WirtingerJet<T>(conjugate(a.value()), std::move(d));
}

using Jet = WirtingerJet<cplx>;
using Jet2 = WirtingerJet<Jet>;
using JetPoly = Poly<Jet>;

/// Value of x seeded as variable `index` of `count` (nested jets seed every level).
template <class T>
T seed_variable(cplx x, std::size_t index, std::size_t count) {
  if constexpr (is_complex_scalar<T>::value) {
    (void)index;
    (void)count;
    return x;
  } else {
    using Inner = typename T::value_type;
    std::vector<Inner> d(count, lift<Inner>(cplx{0.0}));
    d[index] = lift<Inner>(cplx{1.0});
    return T(seed_variable<Inner>(x, index, count), std::move(d));
  }
}

template <class T>
struct JetSeeds {
  std::vector<T> alpha;
  std::vector<T> alpha_bar;
};

/// Seed jets for every alpha_k (value alpha_k) and conj(alpha)_k (value
/// conj(alpha_k)), treated as 2N independent variables.
template <class T = Jet>
JetSeeds<T> seed_point(const VerblunskyData& v) {
  const std::size_t n = v.size();
  JetSeeds<T> s;
  s.alpha.reserve(n);
  s.alpha_bar.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.alpha.push_back(seed_variable<T>(v[k], k, 2 * n));
    s.alpha_bar.push_back(seed_variable<T>(std::conj(v[k]), n + k, 2 * n));
  }
  return s;
}

/// Central-difference Wirtinger derivatives of f with respect to alpha_k.
struct FdResult {
  cplx d_alpha;
  cplx d_alpha_bar;
  /// Step-halving disagreement exceeded the flag threshold.
  bool unstable = false;
};

using ScalarObservable = std::function<cplx(const VerblunskyData&)>;

/// d/d alpha = (d/du - i d/dv)/2, d/d conj(alpha) = (d/du + i d/dv)/2 with
/// u = Re alpha_k, v = Im alpha_k and central differences of step h.
/// Repeats at h/2 and flags the result when the two disagree by more than
/// flag_tol.
FdResult fd_oracle(const ScalarObservable& f, const VerblunskyData& v, std::size_t k, double h = 1e-5,
                   double flag_tol = 1e-5);

}  // namespace opuc
