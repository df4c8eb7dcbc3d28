#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace opuc {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Tolerance for unimodularity checks (|lambda| = 1, terminal coefficient).
inline constexpr double kUnitTol = 1e-12;

/// Relative tolerance for structural divisibility by z.
inline constexpr double kStructTol = 1e-12;

class OpucError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct is_complex_scalar : std::is_same<T, cplx> {};

/// Embed a complex constant into a (possibly nested) jet scalar type.
template <class T>
T lift(cplx c) {
  if constexpr (is_complex_scalar<T>::value) {
    return c;
  } else {
    return T(lift<typename T::value_type>(c));
  }
}

/// The plain complex value carried at the bottom of a (possibly nested) jet.
template <class T>
cplx value_of(const T& x) {
  if constexpr (is_complex_scalar<T>::value) {
    return x;
  } else {
    return value_of(x.value());
  }
}

inline cplx reciprocal(cplx x) { return 1.0 / x; }
inline cplx conjugate(cplx x) { return std::conj(x); }

}  // namespace opuc
