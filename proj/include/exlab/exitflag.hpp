#pragma once

// Exit-flag machinery and the feasibility decision algorithm.
//
// Exit flags: on the shifted-identity family (alpha on the first diagonal
// entry, y = 3*10^-K*alpha e1) the unique minimiser is either 0 or
// 3*10^-K e1, so one coordinate of any omega-accurate solution oracle
// pins it down and the flag reduces to a sup-norm test.  Conversely,
// given a trusted flag, ComputeTrueSolution recovers the solution itself
// by falling back to the Weak-style sign loop when the flag is 0.
//
// Decision problem: objective-threshold family with first row
// (alpha, -beta); beta = 1 marks the strong members, so one low-precision
// read of that entry separates them, after which the sign of alpha
// resolves the bit.

#include "kdigit.hpp"
#include "solutions.hpp"

namespace exlab {

// Omega-sharp member: y = 3*10^-K*alpha e1 against the shifted identity.
inline FamilyPoint exit_point(const Rat& alpha, std::size_t m, std::size_t N, long K) {
  if (alpha < 0 || alpha >= make_rat(1, 2))
    throw std::invalid_argument("exit_point: alpha in [0, 1/2) required");
  FamilyPoint p;
  p.kind = Kind::LPExit;
  p.m = m;
  p.N = N;
  p.alpha = alpha;
  p.beta = 0;
  p.K = K;
  p.y1 = Real(3 * pow10(-K) * alpha);
  return p;
}

// Exit flag from one solution-oracle coordinate: decide which of the two
// possible minimisers the input has, then compare the candidate output
// against it in sup norm.
inline int compute_exit_flag(const Rat& g1, const RatVec& inner_output, long K) {
  Rat tol = pow10(-K);
  Rat x1 = (abs(g1) <= tol) ? Rat(0) : 3 * tol;
  for (std::size_t i = 0; i < inner_output.size(); ++i) {
    Rat want = (i == 0) ? x1 : Rat(0);
    if (abs(inner_output[i] - want) > tol) return 0;
  }
  return 1;
}

// Given a trusted exit flag for the inner algorithm's output: accept it
// when the flag is 1, otherwise resolve the sign of alpha - beta and emit
// the corresponding level-K solution.
inline DyadicVec compute_true_solution(const OracleView& in, int exit_flag,
                                       const DyadicVec& inner_output, Kind kind, long K,
                                       const RegParams& reg, long iter_cap = -1) {
  if (exit_flag == 1) return inner_output;
  if (iter_cap < 0) iter_cap = default_iter_cap(K);
  const std::size_t c2 = is_tv(kind) ? in.N - 1 : 1;
  for (long n = 1; n <= iter_cap; ++n) {
    Rat d = in.A(0, 0, n) - in.A(0, c2, n);
    Rat thr = 2 * pow2(-n);
    if (d > thr) return side_output(in, kind, K, K, reg, 1);
    if (d < -thr) return side_output(in, kind, K, K, reg, 2);
  }
  throw IterCapExceeded("compute_true_solution: gap sign not resolved within the cap");
}

// ---------------------------------------------------------------------------
// objective-threshold decision family

// 10^-k (floor(10^k M) + 1), the level-k rounding of the threshold M.
inline Rat threshold_level(const Rat& M, long k) {
  return pow10(-k) * Rat(floor_div(pow10_int(k) * M.get_num(), M.get_den()) + 1);
}

namespace detail {
inline FamilyPoint decision_point(const Rat& alpha, const Rat& beta, const Rat& y1,
                                  std::size_t m, std::size_t N, long K, const Rat& M) {
  FamilyPoint p;
  p.kind = Kind::LPDecision;
  p.m = m;
  p.N = N;
  p.alpha = alpha;
  p.beta = beta;
  p.K = K;
  p.M_dec = M;
  p.y1 = Real(y1);
  return p;
}
}  // namespace detail

// Strong member: y1 = M_K * alpha, beta = 1.
inline FamilyPoint decision_strong(const Rat& alpha, std::size_t m, std::size_t N, long K,
                                   const Rat& M) {
  if (alpha < 0 || alpha > 1) throw std::invalid_argument("decision_strong: alpha in [0,1]");
  return detail::decision_point(alpha, 1, threshold_level(M, K) * alpha, m, N, K, M);
}

// Weak members: y1 = M_{K-1} * alpha with beta = 0, or y1 = 0 with the
// diagonal entry -alpha.
inline FamilyPoint decision_weak_pos(const Rat& alpha, std::size_t m, std::size_t N, long K,
                                     const Rat& M) {
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("decision_weak_pos: alpha in (0,1]");
  return detail::decision_point(alpha, 0, threshold_level(M, K - 1) * alpha, m, N, K, M);
}

inline FamilyPoint decision_weak_neg(const Rat& alpha, std::size_t m, std::size_t N, long K,
                                     const Rat& M) {
  if (alpha <= 0 || alpha > 1) throw std::invalid_argument("decision_weak_neg: alpha in (0,1]");
  return detail::decision_point(-alpha, 0, Rat(0), m, N, K, M);
}

// One-digit-cheaper decision bit: the stored first-row second entry is
// -beta, so strong members show up as a reading near -1 at precision 2;
// otherwise the sign of the diagonal entry decides.
inline int smale9_decision(const OracleView& in, long K, long iter_cap = -1) {
  if (iter_cap < 0) iter_cap = default_iter_cap(K);
  Rat a12 = in.A(0, 1, 2);
  if (a12 <= make_rat(-3, 4)) return 1;
  for (long n = 1; n <= iter_cap; ++n) {
    Rat a11 = in.A(0, 0, n);
    Rat thr = pow2(-n);
    if (a11 > thr) return 0;
    if (a11 < -thr) return 1;
  }
  throw IterCapExceeded("smale9_decision: diagonal sign not resolved within the cap");
}

}  // namespace exlab
