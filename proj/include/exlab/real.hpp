#pragma once

// Exact real numbers of the form  sum_i  c_i * sqrt(v_i)  with rational
// coefficients c_i and positive integer radicands v_i.  Every irrational
// quantity appearing in the closed-form solution sets is of this shape
// (the radicands come from theta(alpha, beta, m) and from the sqrt(s)
// normalisations of the structured matrices), so ring operations, exact
// sign determination and exact comparisons are available.
//
// Radicands are kept pairwise "independent": on insertion we strip square
// factors and merge any two radicands whose product is a perfect square.
// Distinct surviving radicands have irrational square-root ratios, so a
// non-empty canonical sum is non-zero and interval refinement resolves its
// sign in finitely many steps.

#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "rational.hpp"

namespace exlab {

class Real {
 public:
  Real() = default;
  Real(const Rat& q) { add_term(q, Int(1)); }  // NOLINT: implicit by design
  Real(long v) : Real(Rat(v)) {}               // NOLINT
  Real(int v) : Real(Rat(v)) {}                // NOLINT

  // c * sqrt(q) for rational q >= 0.
  static Real sqrt_of(const Rat& q, const Rat& c = Rat(1)) {
    if (q < 0) throw std::domain_error("Real::sqrt_of: negative radicand");
    Real r;
    if (q == 0 || c == 0) return r;
    // sqrt(p/d) = sqrt(p*d)/d
    r.add_term(c / q.get_den(), q.get_num() * q.get_den());
    return r;
  }

  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }

  Rat to_rat() const {
    if (terms_.empty()) return Rat(0);
    if (!is_rational()) throw std::domain_error("Real::to_rat: irrational value");
    return terms_.begin()->second;
  }

  Real operator-() const {
    Real r;
    for (const auto& [v, c] : terms_) r.terms_.emplace(v, -c);
    return r;
  }

  Real& operator+=(const Real& o) {
    for (const auto& [v, c] : o.terms_) add_term(c, v);
    return *this;
  }
  Real& operator-=(const Real& o) { return *this += -o; }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }

  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    for (const auto& [va, ca] : a.terms_)
      for (const auto& [vb, cb] : b.terms_) {
        // sqrt(va)*sqrt(vb) = g * sqrt((va/g)(vb/g)) with g = gcd(va, vb)
        Int g = gcd(va, vb);
        r.add_term(ca * cb * g, (va / g) * (vb / g));
      }
    return r;
  }

  Real& operator*=(const Real& o) { return *this = *this * o; }

  friend Real operator*(const Rat& c, const Real& a) {
    Real r;
    if (c == 0) return r;
    for (const auto& [v, coeff] : a.terms_) r.terms_.emplace(v, c * coeff);
    return r;
  }
  friend Real operator*(const Real& a, const Rat& c) { return c * a; }

  Real& operator/=(const Rat& c) {
    if (c == 0) throw std::domain_error("Real: division by zero");
    return *this = (1 / c) * *this;
  }
  friend Real operator/(Real a, const Rat& c) { return a /= c; }

  bool is_zero() const { return terms_.empty(); }

  // Exact sign: -1, 0, +1.
  int sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return sgn(terms_.begin()->second);
    for (long prec = 32;; prec *= 2) {
      RatIv iv = interval(prec);
      if (iv.lo > 0) return 1;
      if (iv.hi < 0) return -1;
      if (prec > (1L << 20))
        throw std::runtime_error("Real::sign: failed to resolve (non-canonical radicands?)");
    }
  }

  friend bool operator==(const Real& a, const Real& b) { return (a - b).is_zero(); }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return (a - b).sign() > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return (a - b).sign() >= 0; }

  Real abs() const { return sign() < 0 ? -*this : *this; }

  // Enclosing interval of width <= 2^-n.
  RatIv interval(long n) const {
    if (terms_.empty()) return RatIv(Rat(0));
    RatIv acc(Rat(0));
    for (const auto& [v, c] : terms_) {
      long per = n + 2 + budget_shift(terms_.size()) + len(c);
      acc = acc + c * sqrt_interval(Rat(v), per);
    }
    return acc;
  }

  const std::map<Int, Rat>& terms() const { return terms_; }

  friend std::ostream& operator<<(std::ostream& os, const Real& r) {
    if (r.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [v, c] : r.terms_) {
      if (!first) os << " + ";
      first = false;
      os << c;
      if (v != 1) os << "*sqrt(" << v << ")";
    }
    return os;
  }

 private:
  static long budget_shift(std::size_t nterms) {
    long s = 0;
    while ((std::size_t{1} << s) < nterms) ++s;
    return s;
  }

  // Insert c * sqrt(v), canonicalising the radicand.
  void add_term(Rat c, Int v) {
    if (c == 0) return;
    if (v <= 0) {
      if (v == 0) return;
      throw std::domain_error("Real: negative radicand");
    }
    // strip square factors: small primes, then a perfect-square check
    static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                  47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    for (long p : primes) {
      Int p2 = Int(p) * p;
      while (mpz_divisible_p(v.get_mpz_t(), p2.get_mpz_t())) {
        v /= p2;
        c *= p;
      }
      if (v < p2) break;
    }
    if (v > 1 && mpz_perfect_square_p(v.get_mpz_t())) {
      Int root = sqrt(v);
      c *= root;
      v = 1;
    }
    // merge with an existing radicand if their product is a perfect square
    if (v != 1) {
      for (const auto& [w, cw] : terms_) {
        if (w == 1 || w == v) continue;
        Int prod = v * w;
        if (mpz_perfect_square_p(prod.get_mpz_t())) {
          // sqrt(v) = sqrt(v*w)/sqrt(w)... use sqrt(v) = t/w * sqrt(w), t = sqrt(v*w)
          Int t = sqrt(prod);
          c = c * t / w;
          v = w;
          break;
        }
      }
    }
    auto it = terms_.find(v);
    if (it == terms_.end()) {
      terms_.emplace(std::move(v), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Int, Rat> terms_;
};

inline RatIv to_interval(const Real& r, long n) { return r.interval(n); }

// Dyadic a in D_n with |a - x| <= 2^-n (the Delta^1 oracle answer format).
inline Dyadic approx_dyadic(const Real& x, long n) {
  if (x.is_rational()) return dyadic_round(x.to_rat(), n);
  RatIv iv = x.interval(n + 3);
  return dyadic_round(iv.mid(), n);
}

}  // namespace exlab
