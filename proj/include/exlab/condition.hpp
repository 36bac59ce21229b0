#pragma once

// Condition numbers: matrix condition via certified spectral enclosures,
// feasibility-primal condition of family instances, sampled lower estimates
// for the condition of the solution map (against the a-priori per-family
// bounds), and diverging lower bounds along the several-minimiser witness
// sequence.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "families.hpp"
#include "interval.hpp"
#include "multimin.hpp"
#include "rip.hpp"
#include "solutions.hpp"

namespace exlab {

// The coordinates an input is allowed to vary in: two matrix entries and the
// first entry of y.  All other coordinates are pinned.
struct ActiveCoords {
  std::pair<std::size_t, std::size_t> a0, a1;  // (row, col), zero-based
  std::size_t yc = 0;
};

inline ActiveCoords active_coords(Kind kind, std::size_t N) {
  switch (kind) {
    case Kind::BPTV:
    case Kind::ULTV:
      return {{0, 0}, {0, N - 1}, 0};
    default:
      return {{0, 0}, {0, 1}, 0};
  }
}

inline RatIv cond_mat(const RatMat& m, long bits = 40) {
  RatIv top = sym_spectral_norm(m, bits);
  RatIv bot = sym_spectral_norm(inverse(m), bits);
  return {top.lo * bot.lo, top.hi * bot.hi};
}

// a-priori bound on the local Lipschitz constant of the solution map over
// the active coordinates, uniform over each family
inline long solution_map_condition_bound(Kind kind) {
  switch (kind) {
    case Kind::LP: return 10;
    case Kind::ULl1: return 22;
    case Kind::CL: return 2;
    case Kind::BPl1: return 17;
    case Kind::BPTV: return 35;
    case Kind::ULTV: return 179;
    default: throw std::invalid_argument("solution_map_condition_bound: unsupported kind");
  }
}

// Feasibility-primal condition (max-norm data, distance over the active
// coordinates).  Unconstrained problems are feasible everywhere: 0.  The
// constrained families stay feasible while one of the two active matrix
// entries is nonzero, so the distance to infeasibility is alpha v beta = 1/2
// and the condition is 2 (||y||_inf v ||A||_max) with ||A||_max = 1.
inline RatIv c_fp(const FamilyPoint& fp, long bits = 40) {
  if (fp.kind == Kind::ULl1 || fp.kind == Kind::ULTV) return RatIv(Rat(0));
  RealVec y = build_y(fp.kind, fp.y1, fp.m, fp.reg);
  Real top(Rat(1));
  for (const Real& v : y) {
    Real a = v.abs();
    if (a > top) top = a;
  }
  if (top.is_rational()) return RatIv(2 * top.to_rat());
  RatIv iv = top.interval(bits);
  return {2 * iv.lo, 2 * iv.hi};
}

// ---------------------------------------------------------------------------
// Sampled lower estimate of the solution-map condition: perturb the active
// coordinates along random directions on the sup-norm sphere, shrink the
// radius geometrically, and take the largest certified ratio
// dist(solutions', solutions) / radius.

struct SolutionMapEstimate {
  Rat lower;        // certified lower estimate of the condition
  long bound;       // a-priori upper bound for the family
  unsigned long samples_used = 0;
};

inline SolutionMapEstimate cond_solution_map_sampled(const FamilyPoint& fp, unsigned directions,
                                                     std::uint64_t seed, long lo_k = 8,
                                                     long hi_k = 20, long bits = 40) {
  SolutionSet base = solve_closed_form(fp);
  SolutionMapEstimate est;
  est.lower = 0;
  est.bound = solution_map_condition_bound(fp.kind);
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> num(-(1L << 12), 1L << 12);
  std::uniform_int_distribution<int> pick(0, 2);
  for (unsigned d = 0; d < directions; ++d) {
    Rat dir[3] = {Rat(num(gen), 1L << 12), Rat(num(gen), 1L << 12), Rat(num(gen), 1L << 12)};
    dir[pick(gen)] = num(gen) >= 0 ? 1 : -1;  // land on the sup-norm sphere
    for (long k = lo_k; k <= hi_k; ++k) {
      Rat r = pow2(-k);
      FamilyPoint pert = fp;
      pert.alpha = fp.alpha + r * dir[0];
      pert.beta = fp.beta + r * dir[1];
      pert.y1 = fp.y1 + Real(r * dir[2]);
      if (pert.alpha <= 0 || pert.beta <= 0) continue;
      try {
        SolutionSet moved = solve_closed_form(pert);
        ++est.samples_used;
        for (const SolutionPiece& piece : moved.pieces) {
          for (const RealVec* e : {&piece.a, &piece.b}) {
            Rat lo = set_distance(*e, base, -1, bits).lo / r;
            est.lower = rat_max(est.lower, lo);
            if (!piece.is_segment) break;
          }
        }
      } catch (const HypothesisViolated&) {
      } catch (const std::invalid_argument&) {
      }
    }
  }
  return est;
}

// ---------------------------------------------------------------------------
// Lower bounds on the condition number relative to inputs with several
// minimisers.  The witness pair at perturbation size eps sits at distance
// at most eps ||xi||_2 ||A||_2 from the input, so
//   (||y||_2 v ||A||_2) / (eps ||xi||_2 ||A||_2)
// is a certified lower bound, diverging as eps -> 0.  scale2 is the square
// of the scalar relating the stored sign skeleton to the actual matrix.

inline Rat c_rcc_lower(const RccInput& in, const Rat& scale2, const Rat& eps, long bits = 40) {
  if (eps <= 0 || scale2 <= 0) throw std::invalid_argument("c_rcc_lower: bad arguments");
  RatIv gram_top = sym_lambda_max(scale2 * (in.base.transpose() * in.base), bits);
  RatIv opnorm = sqrt_interval(RatIv{rat_max(gram_top.lo, Rat(0)), gram_top.hi}, bits);
  RatVec img = in.base * in.x;
  RatIv ynorm = sqrt_interval(scale2 * norm2_sq(img), bits);
  Rat num_lo = rat_max(ynorm.lo, opnorm.lo);
  Rat den_hi = eps * sqrt_interval(norm2_sq(in.xi), bits).hi * opnorm.hi;
  if (den_hi <= 0) throw std::domain_error("c_rcc_lower: degenerate witness");
  return num_lo / den_hi;
}

}  // namespace exlab
