#pragma once

// Oracle-facing building blocks shared by the digit algorithms: the two
// TV solution emitters (plateau + spike vectors computed from a handful of
// oracle digits), the Weak loop that localises the sign of alpha - beta,
// the strong/weak classifier, the Guess coin toss, and the seeded coin.
//
// All outputs are dyadic vectors; every precision below is chosen so the
// emitted vector lands within 10^-k_eps of the exact closed form in any
// p-norm, p in [1, inf].

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "families.hpp"
#include "oracle.hpp"

namespace exlab {

using DyadicVec = std::vector<Dyadic>;

struct IterCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unclassified : std::domain_error {
  using std::domain_error::domain_error;
};

inline long default_iter_cap(long K) { return 10 * K + 64; }

inline DyadicVec flip(const DyadicVec& v) { return DyadicVec(v.rbegin(), v.rend()); }

inline RatVec to_rat_vec(const DyadicVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_rat(v[i]);
  return r;
}

// Len of a natural number: 1 + ceil(log2(n + 1)).
inline long nat_len(std::size_t n) {
  long b = 0;
  while ((std::size_t{1} << b) < n + 1 && b < 63) ++b;
  return 1 + b;
}

// Smallest b with 2^-b <= 10^-k / 4: rounding at b bits leaves a p-norm
// error < 10^-k even when three coordinates are inexact.
inline long bits_for_digits(long k) {
  Rat bound = pow10(-k) / 4;
  long b = 0;
  while (pow2(-b) > bound) ++b;
  return b;
}

// y_j lives at flat index j, A_{r,c} at m + r*N + c (problem.hpp layout).
struct OracleView {
  OracleHandle oracle;
  std::size_t m, N;

  Rat y(std::size_t j, long n) const { return to_rat(oracle->query(j, n)); }
  Rat A(std::size_t r, std::size_t c, long n) const {
    return to_rat(oracle->query(m + r * N + c, n));
  }
};

// e1/e2-corner output common to the LP and l1 kinds: 4*10^-level on the
// chosen coordinate, CL adds the (tau - 4*10^-level) third coordinate.
inline DyadicVec corner_output(Kind kind, std::size_t N, long level, int side,
                               const RegParams& reg, long k_eps) {
  long b = bits_for_digits(k_eps);
  Rat v = 4 * pow10(-level);
  DyadicVec x(N);
  x[side == 1 ? 0 : 1] = dyadic_round(v, b);
  if (kind == Kind::CL) x[2] = dyadic_round(reg.tau - v, b);
  return x;
}

// Emit a dyadic vector within 10^-k_eps of eta(y1, alpha, beta) for a BPTV
// input at digit level <= k_K, from three oracle reads plus one certified
// square root.
inline DyadicVec output_eta(const OracleView& in, long k_K, long k_eps, const Rat& delta) {
  const std::size_t m = in.m, N = in.N;
  long lenN = nat_len(N);
  long n1 = std::max(4 * k_eps + lenN + 7, 4 * k_K + 1);
  Rat y1 = in.y(0, n1);
  Rat a = in.A(0, 0, n1), b = in.A(0, N - 1, n1);
  Rat m1(static_cast<long>(m - 1));
  Rat s = (m1 + (a + b) * (a + b)) / m1;
  Rat w = to_rat(approx_dyadic(Real::sqrt_of(1 / s), k_eps + lenN + 4));
  long n2 = k_eps + lenN + 2;
  Rat ab = rat_max(a, b);
  DyadicVec eta(N, dyadic_round(delta * (a + b) * w / m1, n2));
  eta[N - 1] = dyadic_round(to_rat(eta[0]) + y1 / ab - delta * w * s / ab, n2);
  return eta;
}

// Emit a dyadic vector within 10^-k_eps of psi(y1, alpha, beta) for a ULTV
// input at digit level <= k_K; fully rational.
inline DyadicVec output_psi(const OracleView& in, long k_K, long k_eps, const Rat& lambda) {
  const std::size_t m = in.m, N = in.N;
  long lenN = nat_len(N);
  long n1 = std::max(4 * k_eps + lenN + 9, 4 * k_K + 3);
  Rat y1 = in.y(0, n1);
  Rat a = in.A(0, 0, n1), b = in.A(0, N - 1, n1);
  Rat m1(static_cast<long>(m - 1));
  Rat ab = rat_max(a, b);
  long n2 = 4 * k_eps + lenN + 1;
  DyadicVec psi(N, dyadic_round(lambda * (a + b) / (2 * m1 * ab), n2));
  psi[N - 1] = dyadic_round(to_rat(psi[0]) +
                                (y1 - lambda * ((a + b) * (a + b) + m1) / (2 * m1 * ab)) / ab,
                            n2);
  return psi;
}

// Output for a resolved sign of alpha - beta (side 1: alpha > beta) at the
// given digit level: the corner vector for the l1 kinds, the (flipped)
// emitter output for the TV kinds.
inline DyadicVec side_output(const OracleView& in, Kind kind, long level, long k_eps,
                             const RegParams& reg, int side) {
  switch (kind) {
    case Kind::LP:
    case Kind::BPl1:
    case Kind::ULl1:
    case Kind::CL:
      return corner_output(kind, in.N, level, side, reg, k_eps);
    case Kind::BPTV: {
      DyadicVec eta = output_eta(in, level, k_eps, reg.delta);
      return side == 1 ? flip(eta) : eta;
    }
    case Kind::ULTV: {
      DyadicVec psi = output_psi(in, level, k_eps, reg.lambda);
      return side == 1 ? flip(psi) : psi;
    }
    default:
      throw std::invalid_argument("side_output: kind outside the six families");
  }
}

// Loop on the sign of the first-row entry gap until it clears 2^-n+1; the
// loop depth is about -log2|alpha - beta|.  Diverges on alpha = beta, which
// the cap converts into an error.
inline DyadicVec weak_subroutine(const OracleView& in, Kind kind, long K, long k_eps,
                                 const RegParams& reg, long iter_cap = -1) {
  if (iter_cap < 0) iter_cap = default_iter_cap(K);
  const std::size_t c2 = is_tv(kind) ? in.N - 1 : 1;
  for (long n = 1; n <= iter_cap; ++n) {
    Rat d = in.A(0, 0, n) - in.A(0, c2, n);
    Rat thr = 2 * pow2(-n);
    if (d > thr) return side_output(in, kind, K - 1, k_eps, reg, 1);
    if (d < -thr) return side_output(in, kind, K - 1, k_eps, reg, 2);
  }
  throw IterCapExceeded("weak subroutine: gap sign not resolved within the iteration cap");
}

enum class StrongWeak { InputStrong, InputWeak };

// Classify a family input by comparing y1 at 4K bits against the two
// per-kind thresholds t0 (largest strong y1) and t1 (smallest weak y1).
inline StrongWeak identify_strong_or_weak(const OracleView& in, Kind kind, long K,
                                          const RegParams& reg) {
  Rat y1 = in.y(0, 4 * K);
  Rat m1(static_cast<long>(in.m - 1));
  Rat t0, t1;
  switch (kind) {
    case Kind::LP:
      t0 = 2 * pow10(-K);
      t1 = 2 * pow10(-K + 1);
      break;
    case Kind::BPl1:
      t0 = 2 * pow10(-K) + reg.delta;
      t1 = 2 * pow10(-K + 1) + reg.delta;
      break;
    case Kind::ULl1:
      t0 = 2 * pow10(-K) + reg.lambda;
      t1 = 2 * pow10(-K + 1) + reg.lambda;
      break;
    case Kind::CL:
      t0 = pow10(-K + 1);
      t1 = pow10(-K + 2);
      break;
    case Kind::BPTV: {
      // w ~ ((m-1)/m)^(-1/2) at 4K bits over-approximates delta*theta/(m-1)
      Rat mm(static_cast<long>(in.m));
      Rat w = to_rat(approx_dyadic(Real::sqrt_of(mm / m1), 4 * K));
      t0 = reg.delta * w + (7 - 3 / mm) * pow10(-K) / 4;
      t1 = reg.delta * w + (7 - 3 / m1) * pow10(-K + 1) / 4;
      break;
    }
    case Kind::ULTV:
      t0 = 7 * pow10(-K) / 4 + reg.lambda * (1 + 1 / m1);
      t1 = 3 * pow10(-K + 1) / 2 + reg.lambda * (1 + 1 / m1);
      break;
    default:
      throw std::invalid_argument("identify_strong_or_weak: kind outside the six families");
  }
  Rat slack = 2 * pow2(-4 * K);
  if (y1 <= t0 + slack) return StrongWeak::InputStrong;
  if (y1 >= t1 - slack) return StrongWeak::InputWeak;
  throw Unclassified("identify_strong_or_weak: y1 between the strong and weak thresholds");
}

// Seeded coin with exact 1/n bias (conditional on generator uniformity):
// rejection sampling on uniform bit blocks, works for n past 64 bits.
class SeededCoin {
 public:
  explicit SeededCoin(std::uint64_t seed) : gen_(seed) {}

  // true with probability exactly 1/n
  bool flip_one_in(const Int& n) {
    if (n <= 0) throw std::invalid_argument("flip_one_in: n >= 1 required");
    if (n == 1) return true;
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    while (true) {
      Int r = random_bits(bits);
      if (r < n) return r == 0;
    }
  }

  bool fair() { return flip_one_in(2); }

  unsigned long long words_drawn() const { return words_; }

 private:
  Int random_bits(std::size_t bits) {
    Int r = 0;
    std::size_t filled = 0;
    while (filled < bits) {
      r <<= 64;
      r |= Int(static_cast<unsigned long>(gen_()));
      ++words_;
      filled += 64;
    }
    r >>= (filled - bits);
    return r;
  }

  std::mt19937_64 gen_;
  unsigned long long words_ = 0;
};

// Fair-coin guess between the two corner solutions; only invoked on inputs
// where both are optimal (alpha = beta) or as the randomised algorithm's
// bounded-failure bet.  Heads is the e1/unflipped branch.
inline DyadicVec guess(SeededCoin& coin, const OracleView& in, Kind kind, long K,
                       const RegParams& reg, bool* heads_out = nullptr) {
  bool heads = coin.fair();
  if (heads_out) *heads_out = heads;
  switch (kind) {
    case Kind::LP:
    case Kind::BPl1:
    case Kind::ULl1:
    case Kind::CL:
      return corner_output(kind, in.N, K, heads ? 1 : 2, reg, K);
    case Kind::BPTV: {
      DyadicVec eta = output_eta(in, K, K, reg.delta);
      return heads ? eta : flip(eta);
    }
    case Kind::ULTV: {
      DyadicVec psi = output_psi(in, K, K, reg.lambda);
      return heads ? psi : flip(psi);
    }
    default:
      throw std::invalid_argument("guess: kind outside the six families");
  }
}

}  // namespace exlab
