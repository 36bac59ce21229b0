#pragma once

// Restricted isometry constants by brute force over supports, certified
// spectral norms of small symmetric rational matrices by bisection with
// exact positive-definiteness pivoting, the RIP-to-nullspace-property
// conversion, and nullspace-property certificates (structural certify,
// randomized falsify).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "interval.hpp"
#include "linalg.hpp"

namespace exlab {

struct TooLarge : std::invalid_argument {
  explicit TooLarge(const std::string& what) : std::invalid_argument(what) {}
};

// lambda_max of a symmetric rational matrix, enclosed to width 2^-bits.
// PD(tI - M) holds exactly when t > lambda_max, so bisection is certified.
inline RatIv sym_lambda_max(const RatMat& m, long bits) {
  std::size_t n = m.rows();
  if (n == 0) return RatIv(Rat(0));
  Rat hi(0);
  for (std::size_t i = 0; i < n; ++i) {
    Rat row(0);
    for (std::size_t j = 0; j < n; ++j) row += rat_abs(m(i, j));
    hi = rat_max(hi, row);
  }
  hi += 1;  // Gershgorin bound, strictly above lambda_max
  Rat lo = -hi;
  RatMat shifted(n, n);
  while (hi - lo > pow2(-bits)) {
    Rat t = (lo + hi) / 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) shifted(i, j) = (i == j ? Rat(t - m(i, j)) : Rat(-m(i, j)));
    if (is_positive_definite(shifted))
      hi = t;
    else
      lo = t;
  }
  return {lo, hi};
}

inline RatIv sym_spectral_norm(const RatMat& m, long bits) {
  RatIv top = sym_lambda_max(m, bits);
  RatMat neg(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) neg(i, j) = -m(i, j);
  RatIv bot = sym_lambda_max(neg, bits);
  return {rat_max(rat_max(top.lo, bot.lo), Rat(0)), rat_max(top.hi, bot.hi)};
}

inline RatIv sym_lambda_min(const RatMat& m, long bits) {
  RatMat neg(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) neg(i, j) = -m(i, j);
  RatIv t = sym_lambda_max(neg, bits);
  return {-t.hi, -t.lo};
}

namespace detail {

inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Visit all supports of exactly size s (the supremum over |T| <= s is
// attained at |T| = s: principal compressions of a symmetric matrix never
// increase the spectral norm).
template <typename F>
void for_each_support(std::size_t n, std::size_t s, F&& f) {
  std::vector<std::size_t> t(s);
  for (std::size_t i = 0; i < s; ++i) t[i] = i;
  while (true) {
    f(t);
    std::size_t i = s;
    while (i > 0 && t[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (std::size_t j = i; j < s; ++j) t[j] = t[j - 1] + 1;
  }
}

}  // namespace detail

// delta_s of a matrix given its exact Gram A^T A: the largest spectral
// deviation of a principal s x s block from the identity.
inline RatIv rip_constant(const RatMat& gram, std::size_t s, long bits = 40) {
  std::size_t n = gram.cols();
  if (gram.rows() != n) throw std::invalid_argument("rip_constant: gram must be square");
  if (s == 0 || s > n) throw std::invalid_argument("rip_constant: bad order");
  if (n > 20 || detail::binomial(n, s) > 200000)
    throw TooLarge("rip_constant: support enumeration too large");
  RatIv best(Rat(0));
  detail::for_each_support(n, s, [&](const std::vector<std::size_t>& t) {
    RatMat block(s, s);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        block(a, b) = gram(t[a], t[b]) - (a == b ? Rat(1) : Rat(0));
    RatIv norm = sym_spectral_norm(block, bits);
    best.lo = rat_max(best.lo, norm.lo);
    best.hi = rat_max(best.hi, norm.hi);
  });
  return best;
}

// rho = d / (sqrt(1-d^2) - d/4), tau = sqrt(1+d) / (sqrt(1-d^2) - d/4),
// valid for d < 4/sqrt(41).
struct RnpParams {
  RatIv rho;
  RatIv tau;
};

inline RnpParams rip_to_rnp(const Rat& delta, long bits = 40) {
  if (delta < 0) throw std::domain_error("rip_to_rnp: negative constant");
  if (41 * delta * delta >= 16)
    throw std::domain_error("rip_to_rnp: constant not below 4/sqrt(41)");
  RatIv root = sqrt_interval(1 - delta * delta, bits);
  RatIv den{root.lo - delta / 4, root.hi - delta / 4};
  if (den.lo <= 0) throw std::domain_error("rip_to_rnp: denominator not certified positive");
  RatIv top = sqrt_interval(1 + delta, bits);
  RnpParams p;
  p.rho = {delta / den.hi, delta / den.lo};
  p.tau = {top.lo / den.hi, top.hi / den.lo};
  return p;
}

// ---------------------------------------------------------------------------
// Nullspace-property certificates.

enum class RnpProvenance { BruteForce, RipConversion, BlockComposition, StabilityLemma };

struct RnpCertificate {
  std::size_t s = 1;
  Rat rho;     // in (0,1)
  RatIv tau;   // certified upper enclosure
  RnpProvenance provenance = RnpProvenance::BruteForce;
};

inline RnpCertificate certificate_from_rip(const Rat& delta, std::size_t s, long bits = 40) {
  RnpParams p = rip_to_rnp(delta, bits);
  RnpCertificate c;
  c.s = s;
  c.rho = p.rho.hi;
  c.tau = p.tau;
  c.provenance = RnpProvenance::RipConversion;
  if (c.rho >= 1) throw std::domain_error("certificate_from_rip: rho not below 1");
  return c;
}

// Trivial-kernel matrices: ||v||_2 <= tau ||Av||_2 with tau = 1/sigma_min,
// so the property holds for every order and any rho.
inline RnpCertificate certify_trivial_kernel(const RatMat& a, std::size_t s,
                                             const Rat& rho = Rat(1, 3), long bits = 40) {
  if (!kernel_basis(a).empty())
    throw std::domain_error("certify_trivial_kernel: kernel is nontrivial");
  RatMat g = a.transpose() * a;
  RatIv lmin = sym_lambda_min(g, bits);
  if (lmin.lo <= 0) throw std::domain_error("certify_trivial_kernel: sigma_min not certified");
  RatIv root = sqrt_interval(lmin, bits);
  RnpCertificate c;
  c.s = s;
  c.rho = rho;
  c.tau = {1 / root.hi, 1 / root.lo};
  c.provenance = RnpProvenance::BruteForce;
  return c;
}

// A + F acting on split coordinates keeps the property with
// rho = rho_A v rho_F and tau = sqrt(tau_A^2 + tau_F^2).
inline RnpCertificate compose_block(const RnpCertificate& a, const RnpCertificate& f,
                                    long bits = 40) {
  if (a.s != f.s) throw std::invalid_argument("compose_block: mismatched orders");
  RnpCertificate c;
  c.s = a.s;
  c.rho = rat_max(a.rho, f.rho);
  c.tau = sqrt_interval(RatIv{a.tau.lo * a.tau.lo + f.tau.lo * f.tau.lo,
                              a.tau.hi * a.tau.hi + f.tau.hi * f.tau.hi},
                        bits);
  c.provenance = RnpProvenance::BlockComposition;
  return c;
}

// Perturbation stability: ||A' - A||_2 <= eps <= (1-rho)/(tau(sqrt(s)+1))
// gives rho' = (rho + tau eps sqrt(s))/(1 - tau eps), tau' = tau/(1 - tau eps).
inline RnpCertificate stability_certificate(const RnpCertificate& base, const Rat& eps,
                                            long bits = 40) {
  if (eps < 0) throw std::invalid_argument("stability_certificate: negative eps");
  RatIv rs = sqrt_interval(Rat(static_cast<long>(base.s)), bits);
  if (base.tau.hi * eps * (rs.hi + 1) > 1 - base.rho)
    throw std::domain_error("stability_certificate: eps beyond the stability radius");
  Rat den = 1 - base.tau.hi * eps;
  RnpCertificate c;
  c.s = base.s;
  c.rho = (base.rho + base.tau.hi * eps * rs.hi) / den;
  c.tau = {base.tau.lo, base.tau.hi / den};
  c.provenance = RnpProvenance::StabilityLemma;
  return c;
}

// ---------------------------------------------------------------------------
// Falsification: search for (v, S) violating
//   ||v_S||_2 <= (rho/sqrt(s)) ||v_{S^c}||_1 + tau ||Av||_2.
// A counterexample is only reported when the violation is certified through
// outward-rounded square roots.

struct RnpCounterexample {
  RatVec v;
  std::vector<std::size_t> support;
};

inline std::optional<RnpCounterexample> rnp_falsify(const RatMat& a, std::size_t s,
                                                    const Rat& rho, const Rat& tau,
                                                    unsigned long trials, std::uint64_t seed) {
  std::size_t n = a.cols();
  if (s == 0 || s > n) throw std::invalid_argument("rnp_falsify: bad order");
  if (detail::binomial(n, s) > 200000) throw TooLarge("rnp_falsify: too many supports");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> num(-8, 8);
  RatIv inv_rs = sqrt_interval(Rat(1) / Rat(static_cast<long>(s)), 40);
  std::optional<RnpCounterexample> hit;
  for (unsigned long t = 0; t < trials && !hit; ++t) {
    RatVec v(n);
    bool nonzero = false;
    for (Rat& x : v) {
      x = num(gen);
      if (x != 0) nonzero = true;
    }
    if (!nonzero) continue;
    Rat av2(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Rat r(0);
      for (std::size_t j = 0; j < n; ++j)
        if (a(i, j) != 0 && v[j] != 0) r += a(i, j) * v[j];
      av2 += r * r;
    }
    Rat av_hi = sqrt_interval(av2, 40).hi;
    Rat l1 = norm1(v);
    detail::for_each_support(n, s, [&](const std::vector<std::size_t>& sup) {
      if (hit) return;
      Rat lhs2(0), l1_in(0);
      for (std::size_t j : sup) {
        lhs2 += v[j] * v[j];
        l1_in += rat_abs(v[j]);
      }
      Rat rhs_hi = rho * inv_rs.hi * (l1 - l1_in) + tau * av_hi;
      if (rhs_hi < 0 || lhs2 > rhs_hi * rhs_hi) hit = RnpCounterexample{v, sup};
    });
  }
  return hit;
}

}  // namespace exlab
