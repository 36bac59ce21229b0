#pragma once

// The adversarial input families.  Five matrix templates:
//
//   A(a,b,m,N)      = (a  b  -1) (+) (I_{m-1} 0)        — LP
//   L(a,b,m,N)      = (a  b)     (+) (I_{m-1} 0)        — BP / UL / CL (l1)
//   T(a,b,m,N)      = a e1(x)e1 + b e1(x)eN + e_m(x)e_{N-1} + sum_r e_r(x)e_r
//   AE(a,m,N)       = (a)        (+) (I_{m-1} 0)        — exit-flag families
//   ALPD(a,b,m,N)   = (a  -b)    (+) (I_{m-1} 0)        — objective decision
//
// together with the y-vectors, the theta value, the eta/psi minimisers of
// the TV problems and the admissible parameter sets.

#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "problem.hpp"
#include "real.hpp"

namespace exlab {

struct BadDimensions : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// theta(alpha,beta,m)^2 = (m-1)^2 + (alpha+beta)^2 (m-1): rational.
inline Rat theta_sq(const Rat& alpha, const Rat& beta, std::size_t m) {
  Rat m1(static_cast<long>(m - 1));
  Rat s = alpha + beta;
  return m1 * m1 + s * s * m1;
}

inline Real theta(const Rat& alpha, const Rat& beta, std::size_t m) {
  return Real::sqrt_of(theta_sq(alpha, beta, m));
}

// Symbolic theta with on-demand dyadic evaluation.
struct ThetaValue {
  std::size_t m;
  Rat alpha, beta;
  Rat sq() const { return theta_sq(alpha, beta, m); }
  Real value() const { return theta(alpha, beta, m); }
  Dyadic eval(long n) const { return approx_dyadic(value(), n); }
};

inline void check_dims(Kind kind, std::size_t m, std::size_t N) {
  std::size_t min_m = (kind == Kind::LPExit || kind == Kind::LPDecision) ? 1 : 4;
  if (m < min_m || N <= m) throw BadDimensions("dimensions violate N > m >= min");
  if (kind == Kind::LP && N < m + 2) throw BadDimensions("LP family needs N >= m + 2");
}

inline RatMat build_matrix(Kind kind, const Rat& alpha, const Rat& beta, std::size_t m,
                           std::size_t N) {
  check_dims(kind, m, N);
  RatMat M(m, N);
  switch (kind) {
    case Kind::LP:
      M(0, 0) = alpha;
      M(0, 1) = beta;
      M(0, 2) = -1;
      for (std::size_t r = 1; r < m; ++r) M(r, r + 2) = 1;
      break;
    case Kind::BPl1:
    case Kind::ULl1:
    case Kind::CL:
      M(0, 0) = alpha;
      M(0, 1) = beta;
      for (std::size_t r = 1; r < m; ++r) M(r, r + 1) = 1;
      break;
    case Kind::BPTV:
    case Kind::ULTV:
      M(0, 0) = alpha;
      M(0, N - 1) = beta;
      M(m - 1, N - 2) = 1;
      for (std::size_t r = 1; r + 1 < m; ++r) M(r, r) = 1;
      break;
    case Kind::LPExit:
      M(0, 0) = alpha;
      for (std::size_t r = 1; r < m; ++r) M(r, r) = 1;
      break;
    case Kind::LPDecision:
      M(0, 0) = alpha;
      M(0, 1) = -beta;
      for (std::size_t r = 1; r < m; ++r) M(r, r + 1) = 1;
      break;
  }
  return M;
}

// y vectors: y1 e1 for all kinds except CL which adds tau e2.
inline RealVec build_y(Kind kind, const Real& y1, std::size_t m, const RegParams& reg) {
  RealVec y(m, Real(Rat(0)));
  y[0] = y1;
  if (kind == Kind::CL) y[1] = Real(reg.tau);
  return y;
}

// First coordinate of the strong-family y at digit level k (eq. (8.2)).
inline Real strong_y1(Kind kind, long k, std::size_t m, const RegParams& reg) {
  if (k < 1) throw std::invalid_argument("strong_y1: k >= 1 required");
  Rat tk = 2 * pow10(-k);
  switch (kind) {
    case Kind::LP:
      return Real(tk);
    case Kind::BPl1:
      return Real(tk + reg.delta);
    case Kind::ULl1:
      return Real(tk + reg.lambda);
    case Kind::CL:
      return Real(pow10(-k + 1));
    case Kind::BPTV: {
      // delta*m/theta0 + (7 - 3/theta0) * 10^-k / 4,  theta0 = theta(1/2,1/2,m)
      Rat th_sq = theta_sq(make_rat(1, 2), make_rat(1, 2), m);  // = m(m-1)
      Rat q = pow10(-k) / 4;
      // = 7q/4*... careful: (7 - 3/theta0)*q = 7q - 3q/theta0
      Real inv_th = Real::sqrt_of(1 / th_sq);
      return Real(7 * q) + (reg.delta * Rat(static_cast<long>(m)) - 3 * q) * inv_th;
    }
    case Kind::ULTV: {
      Rat m1(static_cast<long>(m - 1));
      return Real(7 * pow10(-k) / 4 + reg.lambda * (1 + 1 / m1) - 3 * pow10(-k) / (4 * m1));
    }
    default:
      throw std::invalid_argument("strong_y1: kind has no strong family");
  }
}

inline RealVec strong_y(Kind kind, long K, std::size_t m, const RegParams& reg) {
  return build_y(kind, strong_y1(kind, K, m, reg), m, reg);
}

// Lower endpoints r_n (BPTV) and s_n (ULTV) of the admissible alpha/beta
// range (eq. (8.1)); exact reals.
inline Real tv_lower_endpoint(const Rat& reg_param, long n) {
  Rat ratio = 3 * pow10(-n);
  if (reg_param > 0 && ratio <= 4 * reg_param) {
    Real half_sqrt = Real::sqrt_of(1 - ratio / (4 * reg_param), make_rat(1, 2));
    Real quarter(make_rat(1, 4));
    return half_sqrt >= quarter ? half_sqrt : quarter;
  }
  return Real(make_rat(1, 4));
}

inline Real r_n(const Rat& delta, long n) { return tv_lower_endpoint(delta, n); }
inline Real s_n(const Rat& lambda, long n) { return tv_lower_endpoint(lambda, n); }

// Lower endpoint of the admissible (alpha, beta) range for the given kind at
// level n: 1/4 for the l1/LP kinds, r_n/s_n for the TV kinds.
inline Real admissible_lower(Kind kind, const RegParams& reg, long n) {
  if (kind == Kind::BPTV) return r_n(reg.delta, n);
  if (kind == Kind::ULTV) return s_n(reg.lambda, n);
  return Real(make_rat(1, 4));
}

// Membership of (alpha, beta) in the L-shaped admissible set at level n:
// ([lo,1/2] x {1/2}) u ({1/2} x [lo,1/2]).
inline bool in_admissible_set(Kind kind, const RegParams& reg, long n, const Rat& alpha,
                              const Rat& beta) {
  Real lo = admissible_lower(kind, reg, n);
  Rat half = make_rat(1, 2);
  auto in_range = [&](const Rat& v) { return Real(v) >= lo && v <= half; };
  return (beta == half && in_range(alpha)) || (alpha == half && in_range(beta));
}

// A rational alpha in [lo, 1/2] suitable for sampling the admissible range;
// t in [0,1] interpolates between the endpoints (rounded inward).
inline Rat sample_admissible(Kind kind, const RegParams& reg, long n, const Rat& t) {
  Real lo = admissible_lower(kind, reg, n);
  Rat lo_up;  // rational upper bound on lo, well within the range
  if (lo.is_rational()) {
    lo_up = lo.to_rat();
  } else {
    RatIv iv = lo.interval(64);
    lo_up = iv.hi;
  }
  Rat half = make_rat(1, 2);
  Rat v = lo_up + t * (half - lo_up);
  return v > half ? half : v;
}

// The eta minimiser of TV basis pursuit (eq. (7.7)); valid when
// y1 > delta*theta/(m-1).
inline RealVec eta_vector(const Real& y1, const Rat& alpha, const Rat& beta, std::size_t m,
                          std::size_t N, const Rat& delta) {
  Rat th_sq = theta_sq(alpha, beta, m);
  Rat m1(static_cast<long>(m - 1));
  Rat ab = rat_max(alpha, beta);
  Real plateau = delta * (alpha + beta) * Real::sqrt_of(1 / th_sq);
  RealVec eta(N, plateau);
  // eta_N = plateau + (y1 - delta*theta/(m-1)) / (alpha v beta)
  eta[N - 1] = plateau + (y1 - delta * Real::sqrt_of(th_sq) / m1) / ab;
  return eta;
}

// The psi minimiser of TV unconstrained lasso (eq. (7.9)); valid when
// y1 > lambda*theta^2 / (2 (m-1)^2 (alpha v beta)).
inline RealVec psi_vector(const Real& y1, const Rat& alpha, const Rat& beta, std::size_t m,
                          std::size_t N, const Rat& lambda) {
  Rat th_sq = theta_sq(alpha, beta, m);
  Rat m1(static_cast<long>(m - 1));
  Rat ab = rat_max(alpha, beta);
  Real plateau{lambda * (alpha + beta) / (2 * m1 * ab)};
  RealVec psi(N, plateau);
  psi[N - 1] = plateau + (y1 - Real(lambda * th_sq / (2 * m1 * m1 * ab))) / ab;
  return psi;
}

inline RealVec flip(const RealVec& v) { return RealVec(v.rbegin(), v.rend()); }
inline RatVec flip(const RatVec& v) { return RatVec(v.rbegin(), v.rend()); }

// One concrete family member: everything needed to materialise an instance
// and its closed-form solution set.
struct FamilyPoint {
  Kind kind = Kind::LP;
  std::size_t m = 4, N = 5;
  Rat alpha, beta;
  Real y1;
  RegParams reg;
  long K = 1;
  Rat M_dec{0};  // threshold constant M for the objective decision problem

  ProblemInstance instance(long p_norm = -1) const {
    RatMat M = build_matrix(kind, alpha, beta, m, N);
    auto data = std::make_shared<InstanceData>();
    data->m = m;
    data->N = N;
    data->y = build_y(kind, y1, m, reg);
    data->A.assign(m, RealVec(N, Real(Rat(0))));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < N; ++j) data->A[i][j] = Real(M(i, j));
    ProblemInstance inst;
    inst.kind = kind;
    inst.m = m;
    inst.N = N;
    inst.reg = reg;
    inst.p_norm = p_norm;
    inst.data = std::move(data);
    return inst;
  }
};

// Strong-family point at digit level k.
inline FamilyPoint strong_point(Kind kind, long k, std::size_t m, std::size_t N, const Rat& alpha,
                                const Rat& beta, const RegParams& reg) {
  reg.validate(kind);
  FamilyPoint p;
  p.kind = kind;
  p.m = m;
  p.N = N;
  p.alpha = alpha;
  p.beta = beta;
  p.reg = reg;
  p.K = k;
  p.y1 = strong_y1(kind, k, m, reg);
  return p;
}

// Weak-family point at level K uses the level-(K-1) y and excludes the
// corner (1/2, 1/2); empty for K = 1.
inline FamilyPoint weak_point(Kind kind, long K, std::size_t m, std::size_t N, const Rat& alpha,
                              const Rat& beta, const RegParams& reg) {
  if (K < 2) throw std::invalid_argument("weak_point: weak families are empty at K = 1");
  if (alpha == make_rat(1, 2) && beta == make_rat(1, 2))
    throw std::invalid_argument("weak_point: corner (1/2,1/2) excluded");
  FamilyPoint p = strong_point(kind, K - 1, m, N, alpha, beta, reg);
  p.K = K;
  return p;
}

}  // namespace exlab
