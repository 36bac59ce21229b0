#pragma once

// Closed-form solution sets (Point / Segment / Union of pieces) and exact
// distances to them.
//
// Distances are exact for p in {1, infinity} and exact-squared for p = 2,
// on points and on segments: point-to-segment minima of the piecewise
// linear (p = 1, inf) or quadratic (p = 2) objective are attained at
// breakpoints / chord intersections / the projection, all of which are
// ratios of sum-of-radical reals, so comparisons reduce to exact sign
// tests.  Other p-norms get a certified interval of width <= 2^-60.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "families.hpp"
#include "real.hpp"

namespace exlab {

struct HypothesisViolated : std::domain_error {
  explicit HypothesisViolated(const std::string& lemma_condition)
      : std::domain_error("closed-form hypothesis violated: " + lemma_condition) {}
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact non-negative quotient of radical expressions (den > 0).
struct RealRatio {
  Real num{Rat(0)};
  Real den{Rat(1)};

  RealRatio() = default;
  RealRatio(Real n, Real d) : num(std::move(n)), den(std::move(d)) {
    int s = den.sign();
    if (s == 0) throw std::domain_error("RealRatio: zero denominator");
    if (s < 0) {
      num = -num;
      den = -den;
    }
  }
  explicit RealRatio(const Real& r) : num(r), den(Rat(1)) {}

  int cmp(const RealRatio& o) const { return (num * o.den - o.num * den).sign(); }
  int cmp(const Real& r) const { return (num - r * den).sign(); }
  bool operator<(const RealRatio& o) const { return cmp(o) < 0; }
  bool operator<=(const RealRatio& o) const { return cmp(o) <= 0; }

  RatIv interval(long n) const {
    long work = n + 8;
    for (;; work *= 2) {
      RatIv ni = num.interval(work);
      RatIv di = den.interval(work);
      if (di.lo <= 0) continue;
      RatIv out = ni * iv_recip(di);
      if (out.width() <= pow2(-n)) return out;
    }
  }
};

struct SolutionPiece {
  RealVec a, b;
  bool is_segment = false;

  static SolutionPiece point(RealVec v) {
    SolutionPiece p;
    p.a = std::move(v);
    p.b = p.a;
    return p;
  }
  static SolutionPiece segment(RealVec x, RealVec y) {
    SolutionPiece p;
    p.a = std::move(x);
    p.b = std::move(y);
    p.is_segment = true;
    return p;
  }
};

struct SolutionSet {
  std::vector<SolutionPiece> pieces;

  bool empty() const { return pieces.empty(); }
  static SolutionSet point(RealVec v) { return {{SolutionPiece::point(std::move(v))}}; }
  static SolutionSet segment(RealVec a, RealVec b) {
    return {{SolutionPiece::segment(std::move(a), std::move(b))}};
  }
};

// ---------------------------------------------------------------------------
// closed forms

inline RealVec unit_point(std::size_t N, std::size_t i, const Real& v) {
  RealVec x(N, Real(Rat(0)));
  x[i] = v;
  return x;
}

// Decision bit of the objective-threshold problem: 1 iff the LP optimum
// y1/alpha is < 10^-k (floor(10^k M) + 1); 1 whenever y1 = 0.
inline int decision_bit(const Real& y1, const Rat& alpha, long k, const Rat& M) {
  if (y1.sign() == 0) return 1;
  if (alpha <= 0) throw HypothesisViolated("decision family requires alpha > 0 when y1 > 0");
  Rat threshold = pow10(-k) * Rat(floor_div(pow10_int(k) * M.get_num(), M.get_den()) + 1);
  return (y1 < Real(Rat(alpha * threshold))) ? 1 : 0;
}

inline SolutionSet solve_closed_form(const FamilyPoint& fp) {
  const Rat &al = fp.alpha, &be = fp.beta;
  const Real& y1 = fp.y1;
  Rat ab = rat_max(al, be);
  std::size_t N = fp.N;
  switch (fp.kind) {
    case Kind::LP: {
      if (y1.sign() <= 0 || al <= 0 || be <= 0)
        throw HypothesisViolated("LP family requires alpha, beta, y1 > 0");
      Real v = y1 / ab;
      if (al > be) return SolutionSet::point(unit_point(N, 0, v));
      if (be > al) return SolutionSet::point(unit_point(N, 1, v));
      return SolutionSet::segment(unit_point(N, 0, v), unit_point(N, 1, v));
    }
    case Kind::ULl1: {
      if (!(Real(2 * ab) * y1 >= Real(fp.reg.lambda)))
        throw HypothesisViolated("UL requires alpha v beta >= lambda / (2 y1)");
      Real va = (Real(2 * al) * y1 - Real(fp.reg.lambda)) / (2 * al * al);
      Real vb = (Real(2 * be) * y1 - Real(fp.reg.lambda)) / (2 * be * be);
      if (al > be) return SolutionSet::point(unit_point(N, 0, va));
      if (be > al) return SolutionSet::point(unit_point(N, 1, vb));
      return SolutionSet::segment(unit_point(N, 0, va), unit_point(N, 1, vb));
    }
    case Kind::BPl1: {
      if (!(y1 >= Real(fp.reg.delta))) throw HypothesisViolated("BP requires y1 >= delta");
      Real va = (y1 - Real(fp.reg.delta)) / al;
      Real vb = (y1 - Real(fp.reg.delta)) / be;
      if (al > be) return SolutionSet::point(unit_point(N, 0, va));
      if (be > al) return SolutionSet::point(unit_point(N, 1, vb));
      return SolutionSet::segment(unit_point(N, 0, va), unit_point(N, 1, vb));
    }
    case Kind::CL: {
      Real r = (ab * y1) / (1 + ab * ab);
      if (!(r <= Real(fp.reg.tau))) throw HypothesisViolated("CL requires r <= tau");
      auto with_e3 = [&](std::size_t i) {
        RealVec x(N, Real(Rat(0)));
        x[i] = r;
        x[2] = Real(fp.reg.tau) - r;
        return x;
      };
      if (al > be) return SolutionSet::point(with_e3(0));
      if (be > al) return SolutionSet::point(with_e3(1));
      return SolutionSet::segment(with_e3(0), with_e3(1));
    }
    case Kind::BPTV: {
      Rat m1(static_cast<long>(fp.m - 1));
      if (!(y1 * m1 > fp.reg.delta * Real::sqrt_of(theta_sq(al, be, fp.m))))
        throw HypothesisViolated("BPTV requires y1 > delta theta / (m-1)");
      RealVec eta = eta_vector(y1, al, be, fp.m, N, fp.reg.delta);
      if (al < be) return SolutionSet::point(eta);
      if (al > be) return SolutionSet::point(flip(eta));
      return SolutionSet::segment(eta, flip(eta));
    }
    case Kind::ULTV: {
      Rat m1(static_cast<long>(fp.m - 1));
      if (!(y1 * (2 * m1 * m1 * ab) > Real(fp.reg.lambda * theta_sq(al, be, fp.m))))
        throw HypothesisViolated("ULTV requires y1 > lambda theta^2 / (2 (m-1)^2 (alpha v beta))");
      RealVec psi = psi_vector(y1, al, be, fp.m, N, fp.reg.lambda);
      if (al < be) return SolutionSet::point(psi);
      if (al > be) return SolutionSet::point(flip(psi));
      return SolutionSet::segment(psi, flip(psi));
    }
    case Kind::LPExit: {
      if (al > 0) return SolutionSet::point(unit_point(N, 0, y1 / al));
      if (al == 0 && y1.sign() == 0)
        return SolutionSet::point(RealVec(N, Real(Rat(0))));
      throw HypothesisViolated("exit-flag family requires alpha > 0 or alpha = y1 = 0");
    }
    case Kind::LPDecision: {
      int bit = decision_bit(y1, al, fp.K, fp.M_dec);
      return SolutionSet::point(RealVec(1, Real(Rat(bit))));
    }
  }
  throw std::logic_error("solve_closed_form: unreachable");
}

// ---------------------------------------------------------------------------
// distances

// Exact distance from x to y: value() is the distance for p in {1, inf}
// and the *squared* distance for p = 2.
inline Real dist_point_exact(const RealVec& x, const RealVec& y, long p) {
  if (x.size() != y.size()) throw DimensionMismatch("dist_point_exact");
  Real acc{Rat(0)};
  for (std::size_t i = 0; i < x.size(); ++i) {
    Real d = (x[i] - y[i]).abs();
    if (p == -1) {
      if (d > acc) acc = d;
    } else if (p == 1) {
      acc += d;
    } else if (p == 2) {
      acc += d * d;
    } else {
      throw std::invalid_argument("dist_point_exact: p must be 1, 2 or inf");
    }
  }
  return acc;
}

namespace detail {

// Evaluate the p-distance (p in {1,inf}; p=2 squared) from x to a + t(b-a)
// at rational t = tn/td (td > 0), as an exact ratio.
inline RealRatio seg_value_at(const RealVec& u, const RealVec& w, long p, const Real& tn,
                              const Real& td) {
  // distance coordinates: u_i - t w_i = (u_i td - tn w_i) / td
  if (p == 2) {
    Real acc{Rat(0)};
    for (std::size_t i = 0; i < u.size(); ++i) {
      Real c = u[i] * td - tn * w[i];
      acc += c * c;
    }
    return RealRatio(acc, td * td);
  }
  if (p == 1) {
    Real acc{Rat(0)};
    for (std::size_t i = 0; i < u.size(); ++i) acc += (u[i] * td - tn * w[i]).abs();
    return RealRatio(acc, td);
  }
  Real acc{Rat(0)};
  for (std::size_t i = 0; i < u.size(); ++i) {
    Real c = (u[i] * td - tn * w[i]).abs();
    if (c > acc) acc = c;
  }
  return RealRatio(acc, td);
}

}  // namespace detail

// Exact distance from x to the segment [a,b] (p in {1, inf}: distance;
// p = 2: squared distance), as a ratio of radical expressions.
inline RealRatio dist_segment_exact(const RealVec& x, const RealVec& a, const RealVec& b, long p) {
  if (x.size() != a.size() || a.size() != b.size()) throw DimensionMismatch("dist_segment_exact");
  std::size_t n = x.size();
  RealVec u(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = x[i] - a[i];
    w[i] = b[i] - a[i];
  }
  if (p == 2) {
    Real A{Rat(0)}, B{Rat(0)}, C{Rat(0)};  // f(t) = A t^2 - 2 B t + C
    for (std::size_t i = 0; i < n; ++i) {
      A += w[i] * w[i];
      B += u[i] * w[i];
      C += u[i] * u[i];
    }
    if (A.sign() == 0) return RealRatio(C);  // degenerate segment
    if (B.sign() <= 0) return RealRatio(C);                       // t* <= 0
    if ((B - A).sign() >= 0)                                      // t* >= 1
      return RealRatio(A - Real(Rat(2)) * B + C);
    return RealRatio(C * A - B * B, A);  // f(t*) = (CA - B^2)/A
  }
  if (p != 1 && p != -1) throw std::invalid_argument("dist_segment_exact: p must be 1, 2 or inf");
  // candidate t values as exact ratios (tn, td), td > 0, clamped to [0,1]
  std::vector<std::pair<Real, Real>> cands;
  cands.emplace_back(Real(Rat(0)), Real(Rat(1)));
  cands.emplace_back(Real(Rat(1)), Real(Rat(1)));
  auto push = [&](Real tn, Real td) {
    int s = td.sign();
    if (s == 0) return;
    if (s < 0) {
      tn = -tn;
      td = -td;
    }
    if (tn.sign() < 0 || (tn - td).sign() > 0) return;  // outside [0,1]
    cands.emplace_back(std::move(tn), std::move(td));
  };
  if (p == 1) {
    // breakpoints t = u_i / w_i
    for (std::size_t i = 0; i < n; ++i)
      if (w[i].sign() != 0) push(u[i], w[i]);
  } else {
    // intersections of lines +-(u_i - t w_i) with +-(u_j - t w_j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        push(u[i] - u[j], w[i] - w[j]);
        push(u[i] + u[j], w[i] + w[j]);
      }
  }
  std::optional<RealRatio> best;
  for (auto& [tn, td] : cands) {
    RealRatio v = detail::seg_value_at(u, w, p, tn, td);
    if (!best || v < *best) best = std::move(v);
  }
  return *best;
}

inline RealRatio dist_piece_exact(const RealVec& x, const SolutionPiece& piece, long p) {
  if (!piece.is_segment) return RealRatio(dist_point_exact(x, piece.a, p));
  return dist_segment_exact(x, piece.a, piece.b, p);
}

// Exact distance from x to the set (p in {1, inf}; p = 2: squared).
inline RealRatio set_distance_exact(const RealVec& x, const SolutionSet& s, long p) {
  if (s.empty()) throw std::invalid_argument("set_distance_exact: empty set");
  std::optional<RealRatio> best;
  for (const auto& piece : s.pieces) {
    RealRatio v = dist_piece_exact(x, piece, p);
    if (!best || v < *best) best = std::move(v);
  }
  return *best;
}

namespace detail {

// Certified interval for the p-norm (finite integer p >= 1) of a Real vector.
inline RatIv pnorm_interval(const RealVec& d, long p, long n) {
  // sum of |d_i|^p exactly, then a p-th root by bisection
  Real acc{Rat(0)};
  for (const Real& c : d) {
    Real a = c.abs();
    Real pw{Rat(1)};
    for (long i = 0; i < p; ++i) pw *= a;
    acc += pw;
  }
  if (acc.sign() == 0) return RatIv(Rat(0));
  // bracket the root
  Rat lo(0), hi(1);
  while (true) {
    Real pw{Rat(1)};
    for (long i = 0; i < p; ++i) pw *= Real(hi);
    if (pw >= acc) break;
    hi *= 2;
  }
  for (int it = 0; it < 64 + 4 * static_cast<int>(n); ++it) {
    if (hi - lo <= pow2(-n)) break;
    Rat mid = (lo + hi) / 2;
    Real pw{Rat(1)};
    for (long i = 0; i < p; ++i) pw *= Real(mid);
    if (pw <= acc) lo = mid; else hi = mid;
  }
  return {lo, hi};
}

}  // namespace detail

// Certified interval of width <= 2^-n for the distance from x to the set in
// the p-norm (p = -1 encodes infinity).  Exact paths are used when available.
inline RatIv set_distance(const RealVec& x, const SolutionSet& s, long p, long n = 60) {
  if (s.empty()) throw std::invalid_argument("set_distance: empty set");
  if (p == 1 || p == -1) return set_distance_exact(x, s, p).interval(n);
  if (p == 2) {
    RealRatio sq = set_distance_exact(x, s, 2);
    RatIv sqiv = sq.interval(2 * n + 4);
    return sqrt_interval(RatIv{rat_max(sqiv.lo, Rat(0)), rat_max(sqiv.hi, Rat(0))}, n);
  }
  if (p < 1) throw std::invalid_argument("set_distance: invalid norm index");
  // generic finite p: points exactly via the p-th-root interval; segments by
  // certified unimodal refinement
  std::optional<RatIv> best;
  auto consider = [&](const RatIv& v) {
    if (!best) {
      best = v;
    } else {
      best = RatIv{rat_min(best->lo, v.lo), rat_min(best->hi, v.hi)};
    }
  };
  for (const auto& piece : s.pieces) {
    if (!piece.is_segment) {
      RealVec d(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - piece.a[i];
      consider(detail::pnorm_interval(d, p, n + 2));
      continue;
    }
    // g(t) = ||u - t w||_p convex on [0,1]; shrink a bracket by thirds and
    // certify with the Lipschitz bound ||w||_p.
    std::size_t nn = x.size();
    RealVec u(nn), w(nn);
    for (std::size_t i = 0; i < nn; ++i) {
      u[i] = x[i] - piece.a[i];
      w[i] = piece.b[i] - piece.a[i];
    }
    auto eval = [&](const Rat& t, long prec) {
      RealVec d(nn);
      for (std::size_t i = 0; i < nn; ++i) d[i] = u[i] - Real(t) * w[i];
      return detail::pnorm_interval(d, p, prec);
    };
    RatIv wnorm = detail::pnorm_interval(w, p, 16);
    Rat lip = wnorm.hi + 1;
    Rat a(0), b(1);
    long prec = n + 16;
    Rat target = pow2(-(n + 3)) / lip;
    while (b - a > target) {
      Rat m1 = a + (b - a) / 3, m2 = a + 2 * (b - a) / 3;
      RatIv g1 = eval(m1, prec), g2 = eval(m2, prec);
      if (g1.hi <= g2.lo) {
        b = m2;
      } else if (g2.hi <= g1.lo) {
        a = m1;
      } else {
        // values indistinguishable at this precision: keep the middle
        a = m1;
        b = m2;
      }
    }
    RatIv ga = eval(a, prec);
    consider(RatIv{rat_max(ga.lo - lip * (b - a) - pow2(-(n + 3)), Rat(0)), ga.hi});
  }
  return *best;
}

// Exact comparison of the set distance against a rational threshold
// (p in {1, 2, inf}); returns sign(dist - thr).
inline int set_distance_cmp(const RealVec& x, const SolutionSet& s, long p, const Rat& thr) {
  if (thr < 0) return 1;
  RealRatio d = set_distance_exact(x, s, p == 2 ? 2 : p);
  if (p == 2) return d.cmp(Real(thr * thr));
  return d.cmp(Real(thr));
}

// Certified interval for inf_{x in S1, y in S2} ||x - y||_p, p in {1,2,inf}.
// Piece-to-piece minima are computed by refining one segment parameter and
// using the exact point/segment distance at rational parameters.
inline RatIv inf_set_distance(const SolutionSet& s1, const SolutionSet& s2, long p, long n = 60) {
  if (p != 1 && p != 2 && p != -1)
    throw std::invalid_argument("inf_set_distance: p must be 1, 2 or inf");
  std::optional<RatIv> best;
  for (const auto& pc1 : s1.pieces) {
    for (const auto& pc2 : s2.pieces) {
      RatIv v{Rat(0), Rat(0)};
      if (!pc1.is_segment) {
        RealRatio d = dist_piece_exact(pc1.a, pc2, p);
        RatIv di = d.interval(p == 2 ? 2 * n + 4 : n);
        v = p == 2 ? sqrt_interval(RatIv{rat_max(di.lo, Rat(0)), rat_max(di.hi, Rat(0))}, n) : di;
      } else {
        // refine t on pc1; h(t) = dist(pc1(t), pc2) is convex
        std::size_t nn = pc1.a.size();
        auto point_at = [&](const Rat& t) {
          RealVec x(nn);
          for (std::size_t i = 0; i < nn; ++i)
            x[i] = pc1.a[i] + Real(t) * (pc1.b[i] - pc1.a[i]);
          return x;
        };
        auto eval = [&](const Rat& t) {
          RealRatio d = dist_piece_exact(point_at(t), pc2, p);
          RatIv di = d.interval(2 * n + 6);
          if (p == 2)
            return sqrt_interval(RatIv{rat_max(di.lo, Rat(0)), rat_max(di.hi, di.lo)}, n + 3);
          return di;
        };
        // Lipschitz constant <= ||pc1.b - pc1.a||_p
        RealVec w(nn);
        for (std::size_t i = 0; i < nn; ++i) w[i] = pc1.b[i] - pc1.a[i];
        Real wn = p == -1 || p == 1 ? dist_point_exact(w, RealVec(nn, Real(Rat(0))), p)
                                    : dist_point_exact(w, RealVec(nn, Real(Rat(0))), 2);
        RatIv wni = wn.interval(8);
        Rat lip = (p == 2 ? sqrt_interval(RatIv{rat_max(wni.lo, Rat(0)), wni.hi}, 8).hi : wni.hi) + 1;
        Rat a(0), b(1);
        Rat target = pow2(-(n + 3)) / lip;
        while (b - a > target) {
          Rat m1 = a + (b - a) / 3, m2 = a + 2 * (b - a) / 3;
          RatIv g1 = eval(m1), g2 = eval(m2);
          if (g1.hi <= g2.lo) b = m2;
          else if (g2.hi <= g1.lo) a = m1;
          else { a = m1; b = m2; }
        }
        RatIv ga = eval(a);
        v = RatIv{rat_max(ga.lo - lip * (b - a) - pow2(-(n + 3)), Rat(0)), ga.hi};
      }
      if (!best) best = v;
      else best = RatIv{rat_min(best->lo, v.lo), rat_min(best->hi, v.hi)};
    }
  }
  if (!best) throw std::invalid_argument("inf_set_distance: empty set");
  return *best;
}

// Certified interval for the Hausdorff distance between two sets,
// p in {1,2,inf}.  For convex pieces the supremum over a segment of the
// distance to a set is attained at an endpoint.
inline RatIv hausdorff_distance(const SolutionSet& s1, const SolutionSet& s2, long p, long n = 60) {
  auto one_sided = [&](const SolutionSet& from, const SolutionSet& to) {
    RatIv worst{Rat(0), Rat(0)};
    for (const auto& pc : from.pieces) {
      for (const RealVec* endpoint : {&pc.a, &pc.b}) {
        RatIv d = set_distance(*endpoint, to, p, n + 2);
        worst = iv_max(worst, d);
        if (!pc.is_segment) break;
      }
    }
    return worst;
  };
  return iv_max(one_sided(s1, s2), one_sided(s2, s1));
}

}  // namespace exlab
