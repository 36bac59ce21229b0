#pragma once

// A basis-pursuit-denoising instance whose minimiser set is a whole segment:
// an m x N = (5s-1) x 5s matrix built from Hadamard blocks, with
//
//   AA* = I_{2s-1} + (S kron I_s),    ker A = span(1_{4s} + 0_s),
//
// plus the diagonal perturbations that collapse the segment to either
// endpoint, and inputs whose distance to the several-minimiser set is zero
// along an explicit witness sequence (built from a maximal-support kernel
// vector of a subsampled Hadamard or Hadamard-to-Haar matrix).

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hadamard.hpp"
#include "linalg.hpp"
#include "real.hpp"
#include "rip.hpp"

namespace exlab {

struct MultiMinimiserInstance {
  std::size_t s = 0, m = 0, N = 0;
  Rat alpha, gamma, delta;
  RatMat skeleton;  // m x N rational rows; A = skeleton / (2 sqrt(s))
  RatVec y;         // exact (rational) right-hand side
  Real c1, c2;      // segment constants

  RealMat to_real() const {
    Real sc = Real::sqrt_of(Rat(1) / Rat(static_cast<long>(s)), Rat(1, 2));
    RealMat a(m, RealVec(N));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < N; ++j) a[i][j] = skeleton(i, j) * sc;
    return a;
  }

  RatMat aastar() const { return (Rat(1) / Rat(4 * static_cast<long>(s))) * (skeleton * skeleton.transpose()); }

  // the 3x3 block S with AA* = I_{2s-1} + (S kron I_s), and its inverse
  RatMat s_block() const {
    RatMat s3(3, 3);
    s3(0, 0) = 1 + alpha * alpha * gamma * gamma / 4;
    s3(0, 2) = s3(2, 0) = alpha * gamma * gamma / 4;
    s3(1, 1) = 1;
    s3(2, 2) = gamma * gamma / 4;
    return s3;
  }

  // the s-sparse generator x with y = Ax
  RealVec sparse_x() const {
    RealVec x(N, Real(Rat(0)));
    Real v = Real::sqrt_of(Rat(1) / Rat(static_cast<long>(s)), 2 * delta / gamma);
    for (std::size_t j = 4 * s; j < N; ++j) x[j] = v;
    return x;
  }

  RealVec endpoint(int which) const {
    RealVec x(N, Real(Rat(0)));
    for (std::size_t j = 0; j < 2 * s; ++j) x[which == 1 ? j : 2 * s + j] = which == 1 ? c1 : -c1;
    for (std::size_t j = 4 * s; j < N; ++j) x[j] = c2;
    return x;
  }

  RealVec segment_point(const Rat& t) const {
    RealVec a = endpoint(1), b = endpoint(2);
    RealVec x(N);
    for (std::size_t j = 0; j < N; ++j) x[j] = t * a[j] + (1 - t) * b[j];
    return x;
  }

  // dual certificate p with <Ax* - y, p> = delta ||p||_2, -A*p in the
  // subdifferential of the l1 norm at any segment point
  RealVec dual_p() const {
    RealVec p(m, Real(Rat(0)));
    p[2 * s - 1] = Real::sqrt_of(Rat(static_cast<long>(s)), Rat(-2));
    p[4 * s - 1] = Real::sqrt_of(Rat(static_cast<long>(s)), 2 * (alpha - 1 / gamma));
    return p;
  }

  // rho = 1/3 from the kernel argument; tau = sqrt(4/3) ||A|| ||(AA*)^-1||
  RnpCertificate certificate(long bits = 40) const {
    RatIv top = sym_spectral_norm(s_block(), bits);
    top.lo = rat_max(top.lo, Rat(1));
    top.hi = rat_max(top.hi, Rat(1));
    RatIv inv = sym_spectral_norm(inverse(s_block()), bits);
    inv.lo = rat_max(inv.lo, Rat(1));
    inv.hi = rat_max(inv.hi, Rat(1));
    RatIv tau2{Rat(4, 3) * top.lo * inv.lo * inv.lo, Rat(4, 3) * top.hi * inv.hi * inv.hi};
    RnpCertificate c;
    c.s = s;
    c.rho = Rat(1, 3);
    c.tau = sqrt_interval(tau2, bits);
    c.provenance = RnpProvenance::BruteForce;
    return c;
  }
};

inline MultiMinimiserInstance build_multi_minimiser(std::size_t s, const Rat& alpha,
                                                    const Rat& gamma, const Rat& delta) {
  if (s == 0 || (s & (s - 1)) != 0)
    throw std::invalid_argument("build_multi_minimiser: s must be a power of two");
  if (delta < 0 || gamma <= 0 || alpha <= gamma * (alpha * alpha + 1))
    throw std::invalid_argument("build_multi_minimiser: need alpha > gamma(alpha^2+1)");
  long n = 0;
  while ((std::size_t{1} << n) < 2 * s) ++n;  // 2^n = 2s
  MultiMinimiserInstance inst;
  inst.s = s;
  inst.m = 5 * s - 1;
  inst.N = 5 * s;
  inst.alpha = alpha;
  inst.gamma = gamma;
  inst.delta = delta;

  SignMatrix h2s = hadamard(n), hs = hadamard(n - 1);
  // full 5s x 5s block matrix; the projection P then drops the first row
  RatMat full(5 * s, 5 * s);
  for (std::size_t i = 0; i < 4 * s; ++i)  // H_1 kron H_n
    for (std::size_t j = 0; j < 4 * s; ++j) {
      int sgn = (i >= 2 * s && j >= 2 * s) ? -1 : 1;
      full(i, j) = sgn * h2s.rows[i % (2 * s)][j % (2 * s)];
    }
  for (std::size_t i = 0; i < s; ++i)  // eta kron H_{n-1}, eta = (0,0,alpha gamma,0)
    for (std::size_t j = 0; j < s; ++j) {
      full(2 * s + i, 4 * s + j) = alpha * gamma * hs.rows[i][j];
      full(4 * s + i, 4 * s + j) = gamma * hs.rows[i][j];
    }
  inst.skeleton = RatMat(inst.m, inst.N);
  for (std::size_t i = 0; i < inst.m; ++i)
    for (std::size_t j = 0; j < inst.N; ++j) inst.skeleton(i, j) = full(i + 1, j);

  inst.y = RatVec(inst.m, Rat(0));
  inst.y[2 * s - 1] = alpha * delta;
  inst.y[4 * s - 1] = delta;

  Rat c_sq = gamma * gamma + (1 - alpha * gamma) * (1 - alpha * gamma);
  Rat s_rat(static_cast<long>(s));
  inst.c1 = Real::sqrt_of(1 / (s_rat * c_sq), delta * (alpha - gamma - gamma * alpha * alpha));
  inst.c2 = Real::sqrt_of(1 / (s_rat * c_sq), alpha * gamma - 1) + Real::sqrt_of(1 / s_rat);
  inst.c2 = (2 * delta / gamma) * inst.c2;
  return inst;
}

// Lemma-style diagonal perturbation: scale the columns outside supp(x^which)
// by (1 - eps); the perturbed problem has the single minimiser x^which.
inline RealMat uniqueness_perturbation(const MultiMinimiserInstance& inst, int which,
                                       const Rat& eps) {
  if (which != 1 && which != 2) throw std::invalid_argument("uniqueness_perturbation: which");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("uniqueness_perturbation: eps");
  RealMat a = inst.to_real();
  // supp(x^1) = [0,2s) and [4s,5s); supp(x^2) = [2s,4s) and [4s,5s)
  std::size_t lo = which == 1 ? 2 * inst.s : 0, hi = lo + 2 * inst.s;
  for (std::size_t i = 0; i < inst.m; ++i)
    for (std::size_t j = lo; j < hi; ++j) a[i][j] = (1 - eps) * a[i][j];
  return a;
}

// ---------------------------------------------------------------------------
// Inputs with distance zero to the several-minimiser set: from a kernel
// vector of maximal support and a row-span vector v with |v_i| = 1, build x
// supported on T plus the pair of equal-l1 minimisers at each perturbation
// size.  All data lives on the rational skeleton (kernel and row span are
// scale invariant).

struct RccInput {
  RatMat base;
  RatVec v;
  RatVec xi;  // kernel vector of maximal support
  RatVec x;   // supp(x) = T
  std::vector<std::size_t> j_plus, j_minus;

  // the two minimisers of (A(x + eps xi_{J+}), A): x + eps xi_{J+} and
  // x - eps xi_{J-}
  std::pair<RatVec, RatVec> minimiser_pair(const Rat& eps) const {
    RatVec a = x, b = x;
    for (std::size_t j : j_plus) a[j] += eps * xi[j];
    for (std::size_t j : j_minus) b[j] -= eps * xi[j];
    return {a, b};
  }
};

namespace detail {

inline std::vector<std::size_t> support_of(const RatVec& v) {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) s.push_back(j);
  return s;
}

// Combine kernel basis vectors into one vector whose support is the union of
// theirs; each merge has at most |overlap| bad coefficients, so scanning
// kappa = 1, 2, ... terminates.
inline RatVec max_support_kernel_vector(const RatMat& a) {
  std::vector<RatVec> basis = kernel_basis(a);
  if (basis.empty()) throw std::domain_error("max_support_kernel_vector: trivial kernel");
  RatVec xi = basis[0];
  for (std::size_t k = 1; k < basis.size(); ++k) {
    const RatVec& b = basis[k];
    std::size_t want = 0;
    for (std::size_t j = 0; j < xi.size(); ++j)
      if (xi[j] != 0 || b[j] != 0) ++want;
    for (long kappa = 1;; ++kappa) {
      RatVec cand(xi.size());
      std::size_t got = 0;
      for (std::size_t j = 0; j < xi.size(); ++j) {
        cand[j] = xi[j] + kappa * b[j];
        if (cand[j] != 0) ++got;
      }
      if (got == want) {
        xi = std::move(cand);
        break;
      }
    }
  }
  return xi;
}

}  // namespace detail

// opnorm_hi: a certified upper bound on ||A||_2 of the true scaled matrix,
// used only to size x so that ||Ax||_2 <= 1.
inline RccInput infinite_rcc_input(const RatMat& base, const RatVec& v,
                                   const std::vector<std::size_t>& T, const Rat& opnorm_hi) {
  if (base.rows() >= base.cols())
    throw std::domain_error("infinite_rcc_input: need m < N");
  if (v.size() != base.cols() || opnorm_hi <= 0)
    throw std::invalid_argument("infinite_rcc_input: bad arguments");
  RccInput in;
  in.base = base;
  in.v = v;
  in.xi = detail::max_support_kernel_vector(base);
  for (std::size_t j : detail::support_of(in.xi)) {
    if (v[j] * v[j] != 1)
      throw std::domain_error("infinite_rcc_input: |v| != 1 on the kernel support");
    if (v[j] * in.xi[j] > 0)
      in.j_plus.push_back(j);
    else
      in.j_minus.push_back(j);
  }
  Rat root_n_hi = sqrt_interval(Rat(static_cast<long>(base.cols())), 20).hi;
  Rat c = 1 / (root_n_hi * opnorm_hi * rat_max(Rat(1), norm_inf(in.xi)));
  in.x = RatVec(base.cols(), Rat(0));
  for (std::size_t j : T) {
    if (j >= base.cols()) throw std::out_of_range("infinite_rcc_input: support index");
    in.x[j] = in.xi[j] != 0 ? c * v[j] * rat_abs(in.xi[j]) : c;
  }
  return in;
}

}  // namespace exlab
