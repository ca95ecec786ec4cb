#pragma once

#include "order3/bits.hpp"

// Minimal F4 = F2[w]/(w^2+w+1) arithmetic, plus the block embedding of
// F4-linear maps into GL(2k, 2). A scalar a + w*b is the byte a | b<<1;
// the F2 coordinates of an F4 vector interleave as (a_0, b_0, a_1, b_1, ...).

namespace order3 {

struct F4 {
  uint8_t v = 0;  // bit 0: unit part, bit 1: omega part

  static constexpr F4 zero() { return {0}; }
  static constexpr F4 one() { return {1}; }
  static constexpr F4 omega() { return {2}; }
  static constexpr F4 omega2() { return {3}; }

  friend F4 operator+(F4 a, F4 b) { return {uint8_t(a.v ^ b.v)}; }
  friend F4 operator*(F4 a, F4 b) {
    uint8_t a0 = a.v & 1, a1 = a.v >> 1, b0 = b.v & 1, b1 = b.v >> 1;
    uint8_t c0 = (a0 & b0) ^ (a1 & b1);
    uint8_t c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
    return {uint8_t(c0 | (c1 << 1))};
  }
  F4 conj() const { return {uint8_t((v >> 1) ? v ^ 1 : v)}; }  // Frobenius x -> x^2
  bool is_zero() const { return v == 0; }
  friend bool operator==(F4 a, F4 b) { return a.v == b.v; }
  friend bool operator!=(F4 a, F4 b) { return a.v != b.v; }
};

// k x k matrix over F4 stored densely.
struct F4Matrix {
  uint32_t n = 0;
  std::vector<F4> a;

  F4Matrix() = default;
  explicit F4Matrix(uint32_t k) : n(k), a(size_t(k) * k) {}
  F4& at(uint32_t i, uint32_t j) { return a[size_t(i) * n + j]; }
  F4 at(uint32_t i, uint32_t j) const { return a[size_t(i) * n + j]; }

  static F4Matrix identity(uint32_t k) {
    F4Matrix m(k);
    for (uint32_t i = 0; i < k; ++i) m.at(i, i) = F4::one();
    return m;
  }
};

// Expand to the 2k x 2k F2 matrix acting on interleaved row coordinates.
// Scalar a + w*b becomes the block a*I + b*J with J = [[0,1],[1,1]].
inline BitMatrix f4_to_f2(const F4Matrix& m) {
  uint32_t k = m.n;
  BitMatrix out(2 * k, 2 * k);
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j) {
      F4 c = m.at(i, j);
      bool a = c.v & 1, b = c.v >> 1;
      if (a) {
        out.set(2 * i, 2 * j, !out.get(2 * i, 2 * j));
        out.set(2 * i + 1, 2 * j + 1, !out.get(2 * i + 1, 2 * j + 1));
      }
      if (b) {
        out.set(2 * i, 2 * j + 1, !out.get(2 * i, 2 * j + 1));
        out.set(2 * i + 1, 2 * j, !out.get(2 * i + 1, 2 * j));
        out.set(2 * i + 1, 2 * j + 1, !out.get(2 * i + 1, 2 * j + 1));
      }
    }
  return out;
}

// Scalar multiplication by omega on F2^(2k) in the interleaved convention.
inline BitMatrix f4_scalar_omega(uint32_t k) {
  F4Matrix m(k);
  for (uint32_t i = 0; i < k; ++i) m.at(i, i) = F4::omega();
  return f4_to_f2(m);
}

}  // namespace order3
