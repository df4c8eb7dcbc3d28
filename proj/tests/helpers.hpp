#pragma once

#include <array>
#include <vector>

#include "opuc/suite.hpp"

namespace testing {

using opuc::cplx;
using RawPoly = std::vector<cplx>;  // ascending coefficients

inline RawPoly raw_add(const RawPoly& a, const RawPoly& b, cplx sb = 1.0) {
  RawPoly r(std::max(a.size(), b.size()), cplx{0.0});
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sb * b[i];
  return r;
}

inline RawPoly raw_mul(const RawPoly& a, const RawPoly& b) {
  RawPoly r(a.size() + b.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

using RawMat = std::array<RawPoly, 4>;  // row-major 2x2

inline RawMat raw_matmul(const RawMat& x, const RawMat& y) {
  return {raw_add(raw_mul(x[0], y[0]), raw_mul(x[1], y[2])), raw_add(raw_mul(x[0], y[1]), raw_mul(x[1], y[3])),
          raw_add(raw_mul(x[2], y[0]), raw_mul(x[3], y[2])), raw_add(raw_mul(x[2], y[1]), raw_mul(x[3], y[3]))};
}

// Brute-force product M_{n-1} ... M_0, M_k = [[z, -conj a_k], [-a_k z, 1]].
inline RawMat transfer_product(const std::vector<cplx>& a, std::size_t n) {
  RawMat m{RawPoly{1.0}, RawPoly{0.0}, RawPoly{0.0}, RawPoly{1.0}};
  for (std::size_t k = 0; k < n; ++k) {
    const RawMat f{RawPoly{0.0, 1.0}, RawPoly{-std::conj(a[k])}, RawPoly{0.0, -a[k]}, RawPoly{1.0}};
    m = raw_matmul(f, m);
  }
  return m;
}

inline double raw_dev(const RawPoly& a, std::span<const cplx> b) {
  double d = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const cplx x = i < a.size() ? a[i] : cplx{0.0};
    const cplx y = i < b.size() ? b[i] : cplx{0.0};
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

inline opuc::VerblunskyData draw_data(std::uint64_t trial, std::size_t n, std::uint64_t stream = 99) {
  opuc::TrialRng rng(12345, stream, trial);
  return rng.interior_data(n);
}

}  // namespace testing
