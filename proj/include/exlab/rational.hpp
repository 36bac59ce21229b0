#pragma once

// Exact integer/rational layer. GMP supplies the arithmetic; this header
// fixes the conventions used throughout the library:
//
//  * rationals are always kept canonical (coprime, positive denominator),
//  * len() measures the bit-size of an integer as 1 + ceil(log2(|n| + 1)),
//    and of a rational as the sum over numerator and denominator,
//  * pow2/pow10 provide exact scaling helpers.

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace exlab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

// 1 + ceil(log2(|n| + 1)); len(0) == 1.
inline long len(const Int& n) {
  Int x = abs(n) + 1;
  if (x == 1) return 1;
  std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  // bits == floor(log2 x) + 1; ceil(log2 x) == bits - 1 iff x is a power of two.
  bool pow2 = mpz_popcount(x.get_mpz_t()) == 1;
  return 1 + static_cast<long>(pow2 ? bits - 1 : bits);
}

inline long len(const Rat& q) { return len(q.get_num()) + len(q.get_den()); }

// 2^k as an exact rational, k may be negative.
inline Rat pow2(long k) {
  Rat r(1);
  if (k >= 0) {
    mpz_ui_pow_ui(r.get_num().get_mpz_t(), 2, static_cast<unsigned long>(k));
  } else {
    mpz_ui_pow_ui(r.get_den().get_mpz_t(), 2, static_cast<unsigned long>(-k));
  }
  return r;
}

inline Int pow2_int(long k) {
  if (k < 0) throw std::invalid_argument("pow2_int: negative exponent");
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return r;
}

inline Rat pow10(long k) {
  Rat r(1);
  if (k >= 0) {
    mpz_ui_pow_ui(r.get_num().get_mpz_t(), 10, static_cast<unsigned long>(k));
  } else {
    mpz_ui_pow_ui(r.get_den().get_mpz_t(), 10, static_cast<unsigned long>(-k));
  }
  return r;
}

inline Int pow10_int(long k) {
  if (k < 0) throw std::invalid_argument("pow10_int: negative exponent");
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

inline int sign(const Rat& q) { return sgn(q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }

// floor(n / d) with exact integer semantics.
inline Int floor_div(const Int& n, const Int& d) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline Int rat_ceil(const Rat& q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c;
}

// Smallest k with 2^k >= q (q > 0), i.e. ceil(log2 q).
inline long ceil_log2(const Rat& q) {
  if (q <= 0) throw std::invalid_argument("ceil_log2: non-positive argument");
  long lo = -2 * len(q) - 4, hi = 2 * len(q) + 4;
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (pow2(mid) >= q) hi = mid; else lo = mid + 1;
  }
  return lo;
}

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace exlab
