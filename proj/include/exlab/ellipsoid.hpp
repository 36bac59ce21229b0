#pragma once

// Central-cut ellipsoid method over a circumscribed convex body
//
//   K = { z in R^n : z >= 0 (optional), ||Ahat z - y'||_2 <= delta', ||z||_2 <= R }
//
// together with the weak separation subroutine used as its oracle.  Because
// the body data is exact (dyadic matrix/vector, rational radii), membership
// tests are exact and the subroutine is in fact a strong separation oracle:
// on a violated constraint it emits d with <d, z - w> < 0 for every z in K.
//
// The iteration itself runs on dyadics of bounded bit size.  After each
// update the shape matrix is re-rounded to p significant bits and inflated
// by (1 + 2^-32), which strictly dominates the rounding perturbation, so the
// ellipsoid keeps containing the region of interest (Grotschel-Lovasz-
// Schrijver device).  p = 64 + 4n + 2*ceil(log2(R/zeta)).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dyadic.hpp"
#include "interval.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace exlab {

using DyadicVec = std::vector<Dyadic>;

struct IterationBudgetExceeded : std::logic_error {
  explicit IterationBudgetExceeded(const std::string& what) : std::logic_error(what) {}
};

// ---------------------------------------------------------------------------
// Exact-rational ellipsoid state (used by the verification suite; the solver
// below keeps its own bounded-precision dyadic copy of the same data).

struct Ellipsoid {
  RatVec center;
  RatMat shape;

  bool well_formed() const {
    return shape.rows() == shape.cols() && center.size() == shape.rows() &&
           is_positive_definite(shape);
  }
};

// One exact central-cut update of the shape matrix for cut direction d:
//   P+ = n^2/(n^2-1) * (P - 2/(n+1) * (Pd)(Pd)^T / <d,Pd>).
// det(P+) = (n^2/(n^2-1))^n * (n-1)/(n+1) * det(P), a fixed contraction.
inline RatMat central_cut_shape(const RatMat& P, const RatVec& d) {
  const std::size_t n = P.rows();
  if (n < 2 || P.cols() != n || d.size() != n)
    throw std::invalid_argument("central_cut_shape: bad dimensions");
  RatVec v = P * d;
  Rat q = dot(d, v);
  if (q <= 0) throw std::domain_error("central_cut_shape: <d,Pd> not positive");
  Rat dl = Rat(static_cast<long>(n * n)) / Rat(static_cast<long>(n * n - 1));
  Rat sg = Rat(2) / (Rat(static_cast<long>(n)) + 1);
  RatMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = dl * (P(i, j) - sg * v[i] * v[j] / q);
  return out;
}

// ---------------------------------------------------------------------------
// The body and its separation subroutine.

struct CircumscribedBody {
  std::size_t n = 0;               // ambient dimension
  Rat R;                           // ||z||_2 <= R (always present)
  bool nonneg = false;             // z >= 0 coordinate-wise
  std::vector<DyadicVec> Ahat;     // rows; empty means no quadratic constraint
  DyadicVec yprime;
  Rat delta;                       // ||Ahat z - y'||_2 <= delta

  std::size_t m() const { return Ahat.size(); }
};

// cut_case: 0 inside, 1 sign constraint, 2 residual constraint, 3 norm ball.
struct SeparationAnswer {
  bool inside = false;
  RatVec d;
  int cut_case = 0;
  std::size_t index = 0;
};

// Weak separation subroutine.  All three membership tests are exact, so
// Inside means w in K (hence in S(K, xi) for any xi > 0), and a returned
// hyperplane d has ||d||_inf = 1 and <d, z - w> < 0 for every z in K.
inline SeparationAnswer wss(const CircumscribedBody& body, const RatVec& w, const Rat& xi) {
  if (xi <= 0) throw std::invalid_argument("wss: xi must be positive");
  if (w.size() != body.n) throw std::invalid_argument("wss: dimension mismatch");
  SeparationAnswer ans;
  if (body.nonneg) {
    for (std::size_t j = 0; j < body.n; ++j) {
      if (w[j] < 0) {
        ans.d = RatVec(body.n, Rat(0));
        ans.d[j] = -1;
        ans.cut_case = 1;
        ans.index = j;
        return ans;
      }
    }
  }
  if (body.m() > 0) {
    RatVec r(body.m(), Rat(0));
    for (std::size_t i = 0; i < body.m(); ++i) {
      for (std::size_t j = 0; j < body.n; ++j)
        if (w[j] != 0) r[i] += to_rat(body.Ahat[i][j]) * w[j];
      r[i] -= to_rat(body.yprime[i]);
    }
    if (norm2_sq(r) > body.delta * body.delta) {
      RatVec g(body.n, Rat(0));
      for (std::size_t j = 0; j < body.n; ++j)
        for (std::size_t i = 0; i < body.m(); ++i)
          if (r[i] != 0) g[j] += 2 * to_rat(body.Ahat[i][j]) * r[i];
      Rat s = norm_inf(g);
      if (s == 0) throw std::domain_error("wss: zero gradient on violated residual");
      ans.d = (1 / s) * g;
      ans.cut_case = 2;
      return ans;
    }
  }
  if (norm2_sq(w) > body.R * body.R) {
    Rat s = norm_inf(w);
    ans.d = (1 / s) * w;
    ans.cut_case = 3;
    return ans;
  }
  ans.inside = true;
  return ans;
}

namespace detail {

// Fast path of wss for the solver loop: dyadic arithmetic throughout, cut
// direction left unnormalised (the ellipsoid update is scale invariant).
struct RawCut {
  bool inside = false;
  DyadicVec d;
  int cut_case = 0;
};

inline RawCut separate_dyadic(const CircumscribedBody& body, const DyadicVec& w) {
  const Dyadic zero;
  RawCut cut;
  if (body.nonneg) {
    for (std::size_t j = 0; j < body.n; ++j) {
      if (w[j].sign() < 0) {
        cut.d = DyadicVec(body.n);
        cut.d[j] = -Dyadic(1L);
        cut.cut_case = 1;
        return cut;
      }
    }
  }
  if (body.m() > 0) {
    DyadicVec r(body.m());
    Dyadic rr;
    for (std::size_t i = 0; i < body.m(); ++i) {
      Dyadic s = -body.yprime[i];
      for (std::size_t j = 0; j < body.n; ++j)
        if (!w[j].is_zero() && !body.Ahat[i][j].is_zero()) s = s + body.Ahat[i][j] * w[j];
      r[i] = s;
      rr = rr + s * s;
    }
    if (to_rat(rr) > body.delta * body.delta) {
      cut.d = DyadicVec(body.n);
      for (std::size_t j = 0; j < body.n; ++j) {
        Dyadic g;
        for (std::size_t i = 0; i < body.m(); ++i)
          if (!r[i].is_zero() && !body.Ahat[i][j].is_zero()) g = g + body.Ahat[i][j] * r[i];
        cut.d[j] = g;
      }
      cut.cut_case = 2;
      return cut;
    }
  }
  Dyadic ww;
  for (const Dyadic& v : w) ww = ww + v * v;
  if (to_rat(ww) > body.R * body.R) {
    cut.d = w;
    cut.cut_case = 3;
    return cut;
  }
  cut.inside = true;
  return cut;
}

// Smallest integer L with 2^L >= q.
inline long ceil_log2_rat(const Rat& q) {
  if (q <= 0) throw std::domain_error("ceil_log2_rat: nonpositive argument");
  long L = 0;
  Rat t(1);
  if (q > 1) {
    while (t < q) {
      t *= 2;
      ++L;
    }
  } else {
    while (t / 2 >= q) {
      t /= 2;
      --L;
    }
  }
  return L;
}

// Nearest dyadic with about p significant bits.
inline Dyadic round_sig(const Rat& x, long p) {
  if (x == 0) return Dyadic();
  long e = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
  long shift = p - e;
  Rat y = x * pow2(shift);
  return Dyadic(dyadic_round(y, 0).mantissa(), shift);
}

inline Dyadic round_sig(const Dyadic& x, long p) {
  if (x.is_zero()) return x;
  long bits = static_cast<long>(mpz_sizeinbase(x.mantissa().get_mpz_t(), 2));
  long drop = bits - p;
  if (drop <= 0) return x;
  Int a = abs(x.mantissa());
  Int half = Int(1) << static_cast<unsigned long>(drop - 1);
  Int t = (a + half) >> static_cast<unsigned long>(drop);
  if (x.sign() < 0) t = -t;
  return Dyadic(t, x.scale() - drop);
}

// Truncation toward zero to about p significant bits (used for the rank-one
// coefficient so that the subtracted term never exceeds its exact value).
inline Dyadic trunc_sig(const Rat& x, long p) {
  if (x == 0) return Dyadic();
  long e = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
  long shift = p - e;
  Rat y = x * pow2(shift);
  Int t;
  mpz_tdiv_q(t.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
  return Dyadic(t, shift);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Weak optimisation: minimise <c, z> over the body up to slack zeta.

struct WeakOptResult {
  bool feasible = false;       // false certifies S(K, -zeta) empty (budget ran out
                               // without a single membership assertion)
  DyadicVec point;             // best center asserted inside K
  Rat objective;               // <c, point>
  long iterations = 0;
  long budget = 0;
  bool gap_certified = false;  // stopped on an explicit optimality-gap bound
  Rat gap = Rat(-1);           // that bound, when gap_certified
};

// Minimise <c,z>: returns a point of S(K, zeta) whose objective is within
// zeta of every point of S(K, -zeta), or reports the latter set empty.  The
// iteration count never exceeds the a-priori volumetric budget.
inline WeakOptResult weak_optimize(const CircumscribedBody& body, const DyadicVec& c,
                                   const Rat& zeta) {
  const std::size_t n = body.n;
  if (n < 2) throw std::invalid_argument("weak_optimize: dimension must be >= 2");
  if (c.size() != n) throw std::invalid_argument("weak_optimize: objective dimension");
  if (zeta <= 0 || body.R <= 0) throw std::invalid_argument("weak_optimize: bad radii");

  const long p = 64 + 4 * static_cast<long>(n) +
                 2 * std::max(0L, detail::ceil_log2_rat(body.R / zeta));
  const double Rd = std::max(body.R.get_d(), 1.0);
  const double zd = std::min(zeta.get_d(), 1.0);
  WeakOptResult res;
  res.budget = static_cast<long>(std::ceil(
                   2.0 * double(n) * double(n + 1) * std::log(4.0 * double(n) * Rd / zd))) +
               16;

  // E_0: ball of radius R (shape rounded up so containment is exact).
  DyadicVec x(n);
  std::vector<DyadicVec> P(n, DyadicVec(n));
  {
    Rat r2 = body.R * body.R * pow2(p);
    Int t;
    mpz_cdiv_q(t.get_mpz_t(), r2.get_num().get_mpz_t(), r2.get_den().get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) P[i][i] = Dyadic(t, p);
  }
  // Inflated dilation factor, rounded up: >= n^2/(n^2-1) * (1 + 2^-32).
  Dyadic dfac;
  {
    Rat df = Rat(static_cast<long>(n * n)) * (Rat(1) + pow2(-32)) /
             Rat(static_cast<long>(n * n - 1));
    Rat sc = df * pow2(64);
    Int t;
    mpz_cdiv_q(t.get_mpz_t(), sc.get_num().get_mpz_t(), sc.get_den().get_mpz_t());
    dfac = Dyadic(t, 64);
  }

  const long gap_bits = std::max(4L, detail::ceil_log2_rat(Rat(8) / zeta));
  DyadicVec best;
  Rat best_obj;
  bool found = false;

  long it = 0;
  for (; it < res.budget; ++it) {
    detail::RawCut cut = detail::separate_dyadic(body, x);
    DyadicVec d;
    bool objective_cut = false;
    Rat cx;
    if (cut.inside) {
      Dyadic o;
      for (std::size_t i = 0; i < n; ++i) o = o + c[i] * x[i];
      cx = to_rat(o);
      if (!found || cx < best_obj) {
        found = true;
        best = x;
        best_obj = cx;
      }
      d = c;
      objective_cut = true;
    } else {
      d = std::move(cut.d);
    }

    DyadicVec v(n);
    Dyadic qd;
    for (std::size_t i = 0; i < n; ++i) {
      Dyadic s;
      for (std::size_t j = 0; j < n; ++j)
        if (!d[j].is_zero() && !P[i][j].is_zero()) s = s + P[i][j] * d[j];
      v[i] = s;
      if (!d[i].is_zero()) qd = qd + d[i] * s;
    }
    Rat q = to_rat(qd);
    if (q <= 0) break;  // shape collapsed below working precision

    if (objective_cut && found) {
      // every z in K stays inside E, so min <c,.> over K >= cx - sqrt(cPc)
      RatIv sq = sqrt_interval(q, gap_bits);
      Rat gap = best_obj - cx + sq.hi;
      if (gap <= zeta) {
        res.gap_certified = true;
        res.gap = gap;
        ++it;
        break;
      }
    }

    RatIv sq = sqrt_interval(q, 2 * p + 64);
    Rat smid = (sq.lo + sq.hi) / 2;
    Dyadic step = detail::round_sig(Rat(1) / (Rat(static_cast<long>(n) + 1) * smid), p);
    for (std::size_t i = 0; i < n; ++i) x[i] = dyadic_round(x[i] - v[i] * step, p);

    Dyadic qc = detail::trunc_sig(Rat(2) / ((Rat(static_cast<long>(n)) + 1) * q), p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Dyadic e = detail::round_sig(dfac * (P[i][j] - qc * (v[i] * v[j])), p);
        P[i][j] = e;
        if (j != i) P[j][i] = e;
      }
  }
  if (it > res.budget)
    throw IterationBudgetExceeded("weak_optimize: exceeded volumetric budget");

  res.iterations = it;
  res.feasible = found;
  if (found) {
    res.point = std::move(best);
    res.objective = best_obj;
  }
  return res;
}

}  // namespace exlab
