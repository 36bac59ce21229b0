#pragma once

// The three digit solvers layered on the subroutines: the randomised
// K-digit algorithm (success probability >= 2/3, genuinely non-halting
// with probability 1/3 on alpha = beta inputs, here capped), the
// deterministic K-1 digit algorithm, and the polynomial-cost K-2 digit
// algorithm whose oracle usage stays polylogarithmic in the dimensions.

#include <cstdint>

#include "subroutines.hpp"

namespace exlab {

struct AlgorithmRun {
  DyadicVec output;      // empty iff nonhalt
  bool nonhalt = false;
  DigitAccount digits;
  long loop_turns = 0;
  std::uint64_t seed = 0;
  bool weak_path = false;
  bool guess_used = false;
  bool guess_heads = false;
};

inline AlgorithmRun randomised_k_digit(const OracleView& in, Kind kind, long K,
                                       const RegParams& reg, std::uint64_t seed,
                                       long iter_cap = -1) {
  if (iter_cap < 0) iter_cap = default_iter_cap(K);
  AlgorithmRun run;
  run.seed = seed;
  if (identify_strong_or_weak(in, kind, K, reg) == StrongWeak::InputWeak) {
    run.weak_path = true;
    run.output = weak_subroutine(in, kind, K, K, reg, iter_cap);
    run.digits = in.oracle->account();
    return run;
  }
  SeededCoin coin(seed);
  const std::size_t c2 = is_tv(kind) ? in.N - 1 : 1;
  for (long n = 1; n <= iter_cap; ++n) {
    run.loop_turns = n;
    if (coin.flip_one_in((Int(1) << (n - 1)) + 2)) {
      run.guess_used = true;
      run.output = guess(coin, in, kind, K, reg, &run.guess_heads);
      run.digits = in.oracle->account();
      return run;
    }
    Rat d = in.A(0, 0, n) - in.A(0, c2, n);
    Rat thr = 2 * pow2(-n);
    if (d > thr || d < -thr) {
      run.output = side_output(in, kind, K, K, reg, d > thr ? 1 : 2);
      run.digits = in.oracle->account();
      return run;
    }
  }
  run.nonhalt = true;
  run.digits = in.oracle->account();
  return run;
}

inline DyadicVec midpoint(const DyadicVec& a, const DyadicVec& b) {
  DyadicVec x(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    x[i] = to_dyadic_exact((to_rat(a[i]) + to_rat(b[i])) / 2);
  return x;
}

// Midpoint of the two corner solutions at the given level: 2*10^-level on
// the first two coordinates, CL keeps its full e3 offset.
inline DyadicVec corner_midpoint(Kind kind, std::size_t N, long level, const RegParams& reg,
                                 long k_eps) {
  long b = bits_for_digits(k_eps);
  Rat v = 2 * pow10(-level);
  DyadicVec x(N);
  x[0] = x[1] = dyadic_round(v, b);
  if (kind == Kind::CL) x[2] = dyadic_round(reg.tau - 2 * v, b);
  return x;
}

// Level/tolerance choices shared by the K-1 and K-2 algorithms on their
// strong and weak branches.
inline DyadicVec strong_or_weak_midpoint(const OracleView& in, Kind kind, long level, long k_eps,
                                         const RegParams& reg) {
  switch (kind) {
    case Kind::LP:
    case Kind::BPl1:
    case Kind::ULl1:
    case Kind::CL:
      return corner_midpoint(kind, in.N, level, reg, k_eps);
    case Kind::BPTV: {
      DyadicVec eta = output_eta(in, level, k_eps, reg.delta);
      return midpoint(flip(eta), eta);
    }
    case Kind::ULTV: {
      DyadicVec psi = output_psi(in, level, k_eps, reg.lambda);
      return midpoint(flip(psi), psi);
    }
    default:
      throw std::invalid_argument("midpoint output: kind outside the six families");
  }
}

// Deterministic K-1 digit algorithm: Weak on weak inputs, the corner/spike
// midpoint on strong ones.  Always halts.
inline DyadicVec det_k_minus_1(const OracleView& in, Kind kind, long K, const RegParams& reg,
                               long iter_cap = -1) {
  if (K < 2) throw std::invalid_argument("det_k_minus_1: K >= 2 required");
  if (identify_strong_or_weak(in, kind, K, reg) == StrongWeak::InputWeak)
    return weak_subroutine(in, kind, K, K - 1, reg, iter_cap);
  return strong_or_weak_midpoint(in, kind, K, K, reg);
}

// Polynomial-cost K-2 digit algorithm: no loops at all, one classification
// plus a midpoint emission; digits consumed are O(K + log N).
inline AlgorithmRun poly_k_minus_2(const OracleView& in, Kind kind, long K,
                                   const RegParams& reg) {
  if (K < 2) throw std::invalid_argument("poly_k_minus_2: K >= 2 required");
  AlgorithmRun run;
  if (identify_strong_or_weak(in, kind, K, reg) == StrongWeak::InputWeak) {
    run.weak_path = true;
    run.output = strong_or_weak_midpoint(in, kind, K - 1, K - 1, reg);
  } else {
    run.output = strong_or_weak_midpoint(in, kind, K, K - 1, reg);
  }
  run.digits = in.oracle->account();
  return run;
}

}  // namespace exlab
