#pragma once

// K-digit basis pursuit on oracle inputs from the robust-nullspace class:
// read the data at class-determined precisions, reformulate
//
//   min ||x||_1  s.t.  ||Ax - y||_2 <= delta
//
// as a nonnegative linear program over z in R^{2N} with x = z_head - z_tail,
// and run the ellipsoid weak-optimisation solver against the exact
// separation subroutine.  The class constants (rho, tau) of the nullspace
// property plus the norm bounds b1 >= ||y||_2, b2 sqrt(N/m) >= ||A||_2 fix
// every precision below.

#include <cstddef>
#include <stdexcept>

#include "ellipsoid.hpp"
#include "subroutines.hpp"

namespace exlab {

struct ContractViolation : std::runtime_error {
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// rho/tau: robust nullspace constants; b1/b2: rational upper bounds for the
// class norm bounds.  All four enter only through the derived constants.
struct BpClassParams {
  Rat rho;
  Rat tau;
  Rat b1;
  Rat b2;
};

struct SolverConstants {
  long L1, L2;
  Rat L3;
  long n1;  // input vector precision
  long n2;  // matrix precision
  long n3;  // solution precision of the reformulated problem
  long n4;  // output precision
  Rat delta_prime;
  Rat R;
};

inline SolverConstants solver_constants(std::size_t m, std::size_t N, long K,
                                        const BpClassParams& par) {
  if (par.rho <= 0 || par.rho >= 1 || par.tau <= 0 || par.b1 <= 0 || par.b2 <= 0)
    throw std::invalid_argument("solver_constants: class parameters out of range");
  if (K < 1) throw std::invalid_argument("solver_constants: K must be >= 1");
  SolverConstants c;
  c.L1 = detail::ceil_log2_rat(16 * par.tau / (1 - par.rho));
  c.L2 = detail::ceil_log2_rat(par.b2);
  c.L3 = 4 * par.tau * par.b1;
  long lm = nat_len(m), lN = nat_len(N);
  c.n1 = (lm + 1) / 2 + 4 * K + 5 + c.L1;
  c.n2 = (lN + lm + 1) / 2 + 1 + c.L1;
  c.n3 = lN + 4 * K + 6 + c.L1 + c.L2;
  c.n4 = (lN + 1) / 2 + K + 3;
  c.delta_prime = pow10(-K) * (1 - par.rho) / (32 * par.tau) + pow2(-4 * K - 3 - c.L1) +
                  4 * par.b2 * Rat(static_cast<long>(N)) * pow2(-c.n3);
  c.R = Rat(static_cast<long>(N)) * c.L3;
  return c;
}

// Largest K the class admits at noise level delta:
// 10^K <= (1 - rho) / (16 tau delta).
inline bool k_within_accuracy_bound(long K, const BpClassParams& par, const Rat& delta) {
  if (delta <= 0) return true;
  return pow10(K) * 16 * par.tau * delta <= 1 - par.rho;
}

struct BpSolveResult {
  DyadicVec x;  // N entries, each in D_{n4}
  SolverConstants consts;
  WeakOptResult inner;
};

inline BpSolveResult bp_solve(const OracleView& in, long K, const BpClassParams& par,
                              const Rat& delta) {
  if (!k_within_accuracy_bound(K, par, delta))
    throw std::invalid_argument("bp_solve: K exceeds the accuracy bound for this delta");
  BpSolveResult out;
  out.consts = solver_constants(in.m, in.N, K, par);
  const SolverConstants& c = out.consts;

  CircumscribedBody body;
  body.n = 2 * in.N;
  body.R = c.R;
  body.nonneg = true;
  body.delta = c.delta_prime;
  body.yprime.resize(in.m);
  for (std::size_t i = 0; i < in.m; ++i)
    body.yprime[i] = to_dyadic_exact(in.y(i, c.n1));
  body.Ahat.assign(in.m, DyadicVec(2 * in.N));
  for (std::size_t i = 0; i < in.m; ++i)
    for (std::size_t j = 0; j < in.N; ++j) {
      Dyadic a = to_dyadic_exact(in.A(i, j, c.n2));
      body.Ahat[i][j] = a;
      body.Ahat[i][j + in.N] = -a;
    }

  DyadicVec ones(2 * in.N, Dyadic(1L));
  out.inner = weak_optimize(body, ones, pow2(-c.n3));
  if (!out.inner.feasible)
    throw ContractViolation("bp_solve: feasible region reported empty; input off-class");

  out.x.resize(in.N);
  for (std::size_t j = 0; j < in.N; ++j)
    out.x[j] = dyadic_round(out.inner.point[j] - out.inner.point[j + in.N], c.n4);
  return out;
}

// The feasibility witness for an in-class input: split x into positive and
// negative parts and push every coordinate 2^-n3 into the interior.
inline RatVec bp_feasible_witness(const RatVec& x, long n3) {
  RatVec w(2 * x.size(), pow2(-n3));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 0) w[j] += x[j];
    if (x[j] < 0) w[j + x.size()] -= x[j];
  }
  return w;
}

// Sufficient check for w in S(K, -xi): each constraint holds with a margin
// that survives any perturbation of 2-norm xi (Frobenius bounds the operator
// norm for the residual constraint).
inline bool deep_membership(const CircumscribedBody& body, const RatVec& w, const Rat& xi) {
  if (w.size() != body.n || xi <= 0) return false;
  if (body.nonneg)
    for (const Rat& v : w)
      if (v < xi) return false;
  if (body.m() > 0) {
    Rat frob2(0);
    RatVec r(body.m(), Rat(0));
    for (std::size_t i = 0; i < body.m(); ++i) {
      for (std::size_t j = 0; j < body.n; ++j) {
        Rat a = to_rat(body.Ahat[i][j]);
        frob2 += a * a;
        if (w[j] != 0) r[i] += a * w[j];
      }
      r[i] -= to_rat(body.yprime[i]);
    }
    Rat slack = body.delta - xi * sqrt_interval(frob2, 64).hi;
    if (slack <= 0 || norm2_sq(r) > slack * slack) return false;
  }
  if (body.R <= xi) return false;
  Rat rs = body.R - xi;
  return norm2_sq(w) <= rs * rs;
}

}  // namespace exlab
