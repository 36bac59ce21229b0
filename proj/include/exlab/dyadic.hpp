#pragma once

// Dyadic numbers m / 2^k in canonical form: k >= 0, and m is odd whenever
// k > 0 (so every value has a unique representation; zero is 0 / 2^0).
//
// dyadic_round(x, n) returns the member of D_n = { j / 2^n : j integer }
// nearest to x, with ties broken toward zero.

#include <ostream>
#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace exlab {

class Dyadic {
 public:
  Dyadic() : m_(0), k_(0) {}
  explicit Dyadic(const Int& mantissa) : m_(mantissa), k_(0) {}
  explicit Dyadic(long mantissa) : m_(mantissa), k_(0) {}
  Dyadic(Int mantissa, long scale) : m_(std::move(mantissa)), k_(scale) { normalize(); }

  const Int& mantissa() const { return m_; }
  long scale() const { return k_; }

  bool is_zero() const { return m_ == 0; }
  int sign() const { return sgn(m_); }

  Dyadic operator-() const {
    Dyadic d;
    d.m_ = -m_;
    d.k_ = k_;
    return d;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    long k = a.k_ > b.k_ ? a.k_ : b.k_;
    Int ma = a.m_ << static_cast<unsigned long>(k - a.k_);
    Int mb = b.m_ << static_cast<unsigned long>(k - b.k_);
    return Dyadic(ma + mb, k);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.m_ * b.m_, a.k_ + b.k_);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.k_ == b.k_ && a.m_ == b.m_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    long k = a.k_ > b.k_ ? a.k_ : b.k_;
    Int ma = a.m_ << static_cast<unsigned long>(k - a.k_);
    Int mb = b.m_ << static_cast<unsigned long>(k - b.k_);
    return ma < mb;
  }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.m_ << "*2^-" << d.k_;
  }

 private:
  void normalize() {
    if (k_ < 0) {
      m_ <<= static_cast<unsigned long>(-k_);
      k_ = 0;
      return;
    }
    if (m_ == 0) {
      k_ = 0;
      return;
    }
    unsigned long tz = mpz_scan1(m_.get_mpz_t(), 0);
    unsigned long drop = tz < static_cast<unsigned long>(k_) ? tz : static_cast<unsigned long>(k_);
    if (drop > 0) {
      m_ >>= drop;
      k_ -= static_cast<long>(drop);
    }
  }

  Int m_;
  long k_;
};

inline Rat to_rat(const Dyadic& d) { return Rat(d.mantissa()) * pow2(-d.scale()); }

inline Dyadic dyadic_abs(const Dyadic& d) { return d.sign() < 0 ? -d : d; }

// Round x to the nearest point of D_n, ties toward zero.
inline Dyadic dyadic_round(const Rat& x, long n) {
  if (n < 0) throw std::invalid_argument("dyadic_round: negative precision");
  Rat scaled = x * pow2(n);
  Int t, r;
  // truncate toward zero, remainder carries the sign of the numerator
  mpz_tdiv_qr(t.get_mpz_t(), r.get_mpz_t(), scaled.get_num().get_mpz_t(),
              scaled.get_den().get_mpz_t());
  Int twice_r = 2 * abs(r);
  if (twice_r > scaled.get_den()) t += sgn(scaled.get_num());
  // twice_r == den is the tie: keep the truncated value (toward zero)
  return Dyadic(t, n);
}

inline Dyadic dyadic_round(const Dyadic& x, long n) { return dyadic_round(to_rat(x), n); }

// Exact conversion; throws if q is not dyadic.
inline Dyadic to_dyadic_exact(const Rat& q) {
  const Int& den = q.get_den();
  if (den == 1) return Dyadic(q.get_num(), 0);
  if (mpz_popcount(den.get_mpz_t()) != 1)
    throw std::invalid_argument("to_dyadic_exact: denominator not a power of two");
  long k = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
  return Dyadic(q.get_num(), k);
}

inline long len(const Dyadic& d) { return len(to_rat(d)); }

}  // namespace exlab
