#pragma once

#include <cstdint>
#include <numeric>
#include <tuple>

#include "prodone/error.hpp"

namespace prodone {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("exponent overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("exponent overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("exponent overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

inline std::int64_t checked_abs(std::int64_t a) { return a < 0 ? checked_neg(a) : a; }

inline std::uint32_t checked_add_u32(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("multiplicity overflow");
  return r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(checked_abs(a), checked_abs(b));
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, checked_sub(old_r, checked_mul(q, r)));
    std::tie(old_s, s) = std::make_tuple(s, checked_sub(old_s, checked_mul(q, s)));
    std::tie(old_t, t) = std::make_tuple(t, checked_sub(old_t, checked_mul(q, t)));
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace prodone
