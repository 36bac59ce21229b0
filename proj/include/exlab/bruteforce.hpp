#pragma once

// Independent reference optimisers used to validate the closed forms:
//
//  * an exact simplex-free LP solver that enumerates basic feasible
//    solutions (fine at m <= 5, N <= 12), used for LP and for equality
//    basis pursuit via the standard x = u - v split;
//  * a certified grid-refinement minimiser for the remaining convex
//    problems, evaluating objectives in interval arithmetic over exact
//    rational grid points.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "families.hpp"
#include "interval.hpp"
#include "linalg.hpp"
#include "problem.hpp"

namespace exlab {

struct LpResult {
  Rat value;
  RatVec x;
};

// min <1, x> s.t. Ax = y, x >= 0, by enumerating basic feasible solutions.
// Returns nullopt if infeasible.  The objective is bounded below by 0, so a
// feasible problem attains its optimum at a BFS.
inline std::optional<LpResult> lp_vertex_optimum(const RatMat& A, const RatVec& y) {
  std::size_t m = A.rows(), N = A.cols();
  // reduce to independent rows, checking consistency
  RatMat aug(m, N + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < N; ++j) aug(i, j) = A(i, j);
    aug(i, N) = y[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  for (std::size_t p : pivots)
    if (p == N) return std::nullopt;  // inconsistent
  std::size_t r = pivots.size();
  RatMat Ar(r, N);
  RatVec yr(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < N; ++j) Ar(i, j) = aug(i, j);
    yr[i] = aug(i, N);
  }
  std::optional<LpResult> best;
  std::vector<std::size_t> idx(r);
  // enumerate size-r column subsets
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t chosen) {
    if (chosen == r) {
      RatMat B(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) B(i, j) = Ar(i, idx[j]);
      RatVec xb;
      try {
        RatMat Binv = inverse(B);
        xb = Binv * yr;
      } catch (const std::domain_error&) {
        return;
      }
      for (const Rat& v : xb)
        if (v < 0) return;
      RatVec x(N, Rat(0));
      Rat obj(0);
      for (std::size_t j = 0; j < r; ++j) {
        x[idx[j]] = xb[j];
        obj += xb[j];
      }
      if (!best || obj < best->value) best = LpResult{obj, std::move(x)};
      return;
    }
    if (N - start < r - chosen) return;
    for (std::size_t c = start; c < N; ++c) {
      idx[chosen] = c;
      rec(c + 1, chosen + 1);
    }
  };
  if (r == 0) {
    // A has rank 0; feasible iff y == 0 after reduction, optimum x = 0
    return LpResult{Rat(0), RatVec(N, Rat(0))};
  }
  rec(0, 0);
  return best;
}

// min ||x||_1 s.t. Ax = y via x = u - v, u,v >= 0.
inline std::optional<LpResult> l1_equality_optimum(const RatMat& A, const RatVec& y) {
  std::size_t m = A.rows(), N = A.cols();
  RatMat S(m, 2 * N);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      S(i, j) = A(i, j);
      S(i, N + j) = -A(i, j);
    }
  auto res = lp_vertex_optimum(S, y);
  if (!res) return std::nullopt;
  RatVec x(N);
  for (std::size_t j = 0; j < N; ++j) x[j] = res->x[j] - res->x[N + j];
  return LpResult{res->value, std::move(x)};
}

// ---------------------------------------------------------------------------
// grid refinement

struct GridProblem {
  std::size_t dim;
  // certified objective enclosure at an exact rational point
  std::function<RatIv(const RatVec&)> objective;
  // feasibility with a tolerance: returns +1 feasible, -1 infeasible,
  // 0 undecided-at-tolerance (treated as feasible for lower bounds)
  std::function<int(const RatVec&)> feasible;
  // extra stencil directions (infinity-norm 1); the axis/diagonal lattice
  // cannot slide along an active residual constraint, so the kernel of A
  // (which keeps the residual fixed) is supplied here
  std::vector<RatVec> extra_dirs;
  // optional feasibility repair applied to every candidate (e.g. radial
  // pull-back onto the residual ball, so stencil moves can slide along the
  // curved boundary at cost O(step^2))
  std::function<RatVec(RatVec)> repair;
};

struct GridResult {
  RatIv value;
  RatVec x;
};

// Pattern search on the 3^dim stencil: recenter while the stencil improves
// the incumbent, halve the step only on a stall.  For the convex problems
// handled here the incumbent converges to the optimum at the rate of the
// final step size.
inline std::optional<GridResult> grid_minimize(const GridProblem& prob, const RatVec& center0,
                                               const Rat& radius0, long min_scale,
                                               int round_cap = 4000) {
  RatVec center = center0;
  Rat radius = radius0;
  Rat stop = pow2(-min_scale);
  std::size_t points = 1;
  for (std::size_t i = 0; i < prob.dim; ++i) points *= 3;
  std::optional<GridResult> best;
  for (int round = 0; round < round_cap && radius > stop; ++round) {
    std::optional<GridResult> round_best;
    auto consider = [&](RatVec x) {
      if (prob.repair) x = prob.repair(std::move(x));
      if (prob.feasible(x) < 0) return;
      RatIv v = prob.objective(x);
      if (!round_best || v.hi < round_best->value.hi) round_best = GridResult{v, std::move(x)};
    };
    for (std::size_t code = 0; code < points; ++code) {
      RatVec x(prob.dim);
      std::size_t c = code;
      for (std::size_t i = 0; i < prob.dim; ++i) {
        long off = static_cast<long>(c % 3) - 1;
        c /= 3;
        x[i] = center[i] + off * radius;
      }
      consider(std::move(x));
    }
    for (const RatVec& d : prob.extra_dirs)
      for (int s : {-1, 1}) {
        RatVec x(prob.dim);
        for (std::size_t i = 0; i < prob.dim; ++i) x[i] = center[i] + s * radius * d[i];
        consider(std::move(x));
      }
    if (round_best && (!best || round_best->value.hi < best->value.hi)) {
      best = round_best;
      center = round_best->x;  // improving move: keep the step size
    } else {
      radius /= 2;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// per-kind objectives

// finite-difference operator (Dx)_i = x_{i+1} - x_i, i = 1..N-1
inline RatMat difference_matrix(std::size_t N) {
  RatMat D(N - 1, N);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    D(i, i) = -1;
    D(i, i + 1) = 1;
  }
  return D;
}

// Build a grid problem for one family point (non-LP kinds).  Residual norms
// are computed against a high-precision enclosure of y, so objective
// enclosures have width below 2^-100 — negligible at the 10^-9 scale.
inline GridProblem make_grid_problem(const FamilyPoint& fp) {
  RatMat A = build_matrix(fp.kind, fp.alpha, fp.beta, fp.m, fp.N);
  RealVec y = build_y(fp.kind, fp.y1, fp.m, fp.reg);
  const long prec = 128;
  std::vector<RatIv> yiv(fp.m);
  for (std::size_t i = 0; i < fp.m; ++i) yiv[i] = y[i].interval(prec);
  Kind kind = fp.kind;
  RegParams reg = fp.reg;
  std::size_t m = fp.m, N = fp.N;
  RatMat D = is_tv(kind) ? difference_matrix(N) : RatMat();

  auto residual_sq = [A, yiv, m, N](const RatVec& x) {
    RatVec Ax = A * x;
    RatIv acc(Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      RatIv d = RatIv(Ax[i]) - yiv[i];
      acc = acc + d * d;
    }
    return acc;
  };
  auto reg_norm = [kind, D, N](const RatVec& x) {
    if (is_tv(kind)) return norm1(D * x);
    return norm1(x);
  };

  GridProblem prob;
  prob.dim = N;
  for (RatVec d : kernel_basis(A)) {
    Rat nrm = norm_inf(d);
    if (nrm == 0) continue;
    prob.extra_dirs.push_back((1 / nrm) * d);
  }
  switch (kind) {
    case Kind::BPl1:
    case Kind::BPTV: {
      Rat dsq = reg.delta * reg.delta;
      prob.objective = [reg_norm](const RatVec& x) { return RatIv(Rat(reg_norm(x))); };
      prob.feasible = [residual_sq, dsq](const RatVec& x) {
        RatIv r = residual_sq(x);
        if (r.lo > dsq) return -1;
        if (r.hi <= dsq) return 1;
        return 0;
      };
      // radial pull-back onto the residual ball: lets tangent stencil moves
      // slide along the curved boundary (the pull-back costs O(step^2), so
      // the O(step) descent along the sphere survives)
      {
        RatMat At = A.transpose();
        RatMat pinv = At * inverse(A * At);  // A * pinv = I
        RatVec ymid(m);
        for (std::size_t i = 0; i < m; ++i) ymid[i] = yiv[i].mid();
        Rat delta = reg.delta;
        prob.repair = [A, pinv, ymid, m, delta](RatVec x) {
          RatVec rho = A * x;
          Rat nsq(0);
          for (std::size_t i = 0; i < m; ++i) {
            rho[i] -= ymid[i];
            nsq += rho[i] * rho[i];
          }
          Rat target = delta * (1 - pow2(-40));
          if (nsq <= target * target) return x;
          // scale the residual to norm <= target: rho' = f * rho
          RatVec corr = pinv * rho;
          if (delta == 0) {  // exact affine projection, no rounding needed
            for (std::size_t i = 0; i < x.size(); ++i) x[i] -= corr[i];
            return x;
          }
          Rat f = target / sqrt_interval(nsq, 80).hi;
          // round to 2^-200 so denominators stay bounded across rounds; the
          // perturbation is far inside the 2^-40 pull-back margin
          for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = to_rat(dyadic_round(x[i] - (1 - f) * corr[i], 200));
          return x;
        };
      }
      break;
    }
    case Kind::ULl1:
    case Kind::ULTV: {
      Rat lambda = reg.lambda;
      prob.objective = [residual_sq, reg_norm, lambda](const RatVec& x) {
        return residual_sq(x) + RatIv(Rat(lambda * reg_norm(x)));
      };
      prob.feasible = [](const RatVec&) { return 1; };
      break;
    }
    case Kind::CL: {
      Rat tau = reg.tau;
      prob.objective = residual_sq;  // squared residual: same minimisers
      prob.feasible = [tau](const RatVec& x) { return norm1(x) <= tau ? 1 : -1; };
      break;
    }
    default:
      throw std::invalid_argument("make_grid_problem: use lp_vertex_optimum for LP kinds");
  }
  return prob;
}

// ---------------------------------------------------------------------------
// sign-pattern reference optimiser
//
// A second reference, independent of both the closed forms and the grid:
// enumerate the sign pattern of the regulariser argument (x for l1 kinds,
// the finite differences Dx for TV kinds).  Restricted to one pattern the
// objective is linear (or smooth quadratic), so the stationary point is a
// rational linear system with radical right-hand sides — solvable exactly —
// plus a single certified square root when the residual ball is active.
// The union of the sign cones covers all of R^N and every cone's minimum is
// either one of these stationary points or lies on a face handled by a
// coarser pattern, so the global optimum is the minimum over patterns of
// the candidates that satisfy their own cone.

namespace detail {

inline RealVec rat_apply(const RatMat& a, const RealVec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("rat_apply: dimension mismatch");
  RealVec out(a.rows(), Real(Rat(0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) out[i] += a(i, j) * v[j];
  return out;
}

inline Real real_dot(const RatVec& a, const RealVec& b) {
  Real s{Rat(0)};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * b[i];
  return s;
}

inline Real real_norm_sq(const RealVec& v) {
  Real s{Rat(0)};
  for (const Real& x : v) s += x * x;
  return s;
}

inline RatMat columns_to_mat(std::size_t n, const std::vector<RatVec>& cols) {
  RatMat m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace detail

inline RatIv kkt_reference(const FamilyPoint& fp, long prec = 240) {
  Kind kind = fp.kind;
  if (kind != Kind::BPl1 && kind != Kind::BPTV && kind != Kind::ULl1 && kind != Kind::ULTV &&
      kind != Kind::CL)
    throw std::invalid_argument("kkt_reference: use lp_vertex_optimum for LP kinds");
  const std::size_t m = fp.m, N = fp.N;
  RatMat A = build_matrix(kind, fp.alpha, fp.beta, m, N);
  RealVec y = build_y(kind, fp.y1, m, fp.reg);
  RatMat J = is_tv(kind) ? difference_matrix(N) : RatMat::identity(N);
  const std::size_t q = J.rows();
  Rat dsq = fp.reg.delta * fp.reg.delta;
  Rat lambda = fp.reg.lambda, tau = fp.reg.tau;
  Real ysq = detail::real_norm_sq(y);

  std::optional<Rat> best_lo, best_hi;
  auto offer = [&](const RatIv& v) {
    if (!best_lo || v.lo < *best_lo) best_lo = v.lo;
    if (!best_hi || v.hi < *best_hi) best_hi = v.hi;
  };

  if (kind == Kind::CL) {
    // value 0 is attained iff the minimum-l1 solution of Ax = y fits in the
    // tau-ball; the pattern loop's subspace representatives may miss it
    bool rational_y = true;
    RatVec yr(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!y[i].is_rational()) {
        rational_y = false;
        break;
      }
      yr[i] = y[i].to_rat();
    }
    if (rational_y) {
      if (auto r = l1_equality_optimum(A, yr); r && r->value <= tau) offer(RatIv(Rat(0)));
    }
  }

  std::size_t patterns = 1;
  for (std::size_t i = 0; i < q; ++i) patterns *= 3;
  for (std::size_t code = 0; code < patterns; ++code) {
    std::vector<int> sigma(q);
    std::vector<std::size_t> zero_rows;
    {
      std::size_t c = code;
      for (std::size_t i = 0; i < q; ++i) {
        sigma[i] = static_cast<int>(c % 3) - 1;
        c /= 3;
        if (sigma[i] == 0) zero_rows.push_back(i);
      }
    }
    // basis of { x : (Jx)_i = 0 for sigma_i = 0 }
    RatMat B;
    if (zero_rows.empty()) {
      B = RatMat::identity(N);
    } else {
      RatMat JE(zero_rows.size(), N);
      for (std::size_t r = 0; r < zero_rows.size(); ++r)
        for (std::size_t j = 0; j < N; ++j) JE(r, j) = J(zero_rows[r], j);
      B = detail::columns_to_mat(N, kernel_basis(JE));
    }
    if (B.cols() == 0) {
      // x = 0 is the only point of this pattern
      switch (kind) {
        case Kind::BPl1:
        case Kind::BPTV:
          if ((ysq - Real(dsq)).sign() <= 0) offer(RatIv(Rat(0)));
          break;
        case Kind::ULl1:
        case Kind::ULTV:
          offer(ysq.interval(prec));
          break;
        default:  // CL: tau >= 0 always
          offer(ysq.interval(prec));
      }
      continue;
    }

    RatMat M = A * B;
    RatMat G = M.transpose() * M;
    RatVec c = B.transpose() * (J.transpose() * [&] {
      RatVec s(q);
      for (std::size_t i = 0; i < q; ++i) s[i] = sigma[i];
      return s;
    }());
    // drop the kernel of G (directions along which the residual is constant);
    // if the linear part moves along that kernel the cone minimum sits on a
    // face covered by a coarser pattern
    if (rank(G) < G.cols()) {
      bool skip = false;
      for (const RatVec& k : kernel_basis(G))
        if (dot(c, k) != 0) {
          skip = true;
          break;
        }
      if (skip && (kind == Kind::BPl1 || kind == Kind::BPTV || kind == Kind::ULl1 ||
                   kind == Kind::ULTV))
        continue;
      RatMat Gc = G;
      std::size_t r = rref(Gc).size();
      if (r == 0) continue;  // M = 0: x maps to residual -y, covered by x = 0 pattern
      std::vector<RatVec> rows;
      for (std::size_t i = 0; i < r; ++i) {
        RatVec v(G.cols());
        for (std::size_t j = 0; j < G.cols(); ++j) v[j] = Gc(i, j);
        rows.push_back(std::move(v));
      }
      RatMat R = detail::columns_to_mat(G.cols(), rows);
      B = B * R;
      M = A * B;
      G = M.transpose() * M;
      c = R.transpose() * c;
    }
    RatMat Ginv = inverse(G);
    RealVec Mty = detail::rat_apply(M.transpose(), y);
    RealVec t = detail::rat_apply(Ginv, Mty);  // least-squares point of the subspace
    RatMat JB = J * B;

    switch (kind) {
      case Kind::BPl1:
      case Kind::BPTV: {
        RealVec Py = y;  // residual at the least-squares point
        {
          RealVec Mt = detail::rat_apply(M, t);
          for (std::size_t i = 0; i < m; ++i) Py[i] -= Mt[i];
        }
        Real s = Real(dsq) - detail::real_norm_sq(Py);
        if (s.sign() < 0) continue;  // subspace misses the ball entirely
        bool czero = true;
        for (const Rat& ci : c)
          if (ci != 0) czero = false;
        if (czero) {
          if (zero_rows.size() == q) offer(RatIv(Rat(0)));
          continue;
        }
        RatVec h = Ginv * c;
        Rat usq = dot(c, h);
        RatIv s_iv = s.interval(prec);
        if (s_iv.lo < 0) s_iv.lo = 0;
        RatIv nu = sqrt_interval(s_iv, prec) * iv_recip(sqrt_interval(usq, prec));
        // cone feasibility of z* = t - nu h, checked through J
        RealVec JBt = detail::rat_apply(JB, t);
        RatVec JBh = JB * h;
        bool ok = true;
        for (std::size_t i = 0; i < q && ok; ++i) {
          if (sigma[i] == 0) continue;
          RatIv gi = Rat(sigma[i]) * (JBt[i].interval(prec) - nu * RatIv(JBh[i]));
          if (gi.hi < 0) ok = false;
        }
        if (!ok) continue;
        offer(detail::real_dot(c, t).interval(prec) - nu * RatIv(usq));
        break;
      }
      case Kind::ULl1:
      case Kind::ULTV: {
        RatVec h = Ginv * c;
        RealVec z = t;
        for (std::size_t i = 0; i < z.size(); ++i) z[i] -= Real(Rat(lambda * h[i] / 2));
        RealVec JBz = detail::rat_apply(JB, z);
        bool ok = true;
        for (std::size_t i = 0; i < q && ok; ++i)
          if (sigma[i] != 0 && (Rat(sigma[i]) * JBz[i]).sign() < 0) ok = false;
        if (!ok) continue;
        RealVec resid = detail::rat_apply(M, z);
        for (std::size_t i = 0; i < m; ++i) resid[i] -= y[i];
        Real val = detail::real_norm_sq(resid) + lambda * detail::real_dot(c, z);
        offer(val.interval(prec));
        break;
      }
      default: {  // CL
        auto try_point = [&](const RealVec& z, const Real* mu) {
          if (mu && mu->sign() < 0) return;
          // primal feasibility only: every feasible candidate upper-bounds
          // the optimum, and the optimum's own pattern produces it exactly
          RealVec xz = detail::rat_apply(JB, z);  // JB = B here (J = I)
          Real l1{Rat(0)};
          for (std::size_t i = 0; i < q; ++i) l1 += xz[i].abs();
          if ((Real(tau) - l1).sign() < 0) return;
          RealVec resid = detail::rat_apply(M, z);
          for (std::size_t i = 0; i < m; ++i) resid[i] -= y[i];
          offer(detail::real_norm_sq(resid).interval(prec));
        };
        try_point(t, nullptr);  // l1 constraint inactive
        // facet <c, z> = tau active: bordered KKT system
        std::size_t d = G.cols();
        RatMat K(d + 1, d + 1);
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) K(i, j) = 2 * G(i, j);
          K(i, d) = c[i];
          K(d, i) = c[i];
        }
        if (rank(K) == d + 1) {
          RatMat Kinv = inverse(K);
          RealVec rhs(d + 1, Real(Rat(0)));
          for (std::size_t i = 0; i < d; ++i) rhs[i] = Rat(2) * Mty[i];
          rhs[d] = Real(tau);
          RealVec zm = detail::rat_apply(Kinv, rhs);
          RealVec z(zm.begin(), zm.begin() + d);
          Real mu = zm[d];
          try_point(z, &mu);
        }
        break;
      }
    }
  }
  if (!best_lo) throw std::runtime_error("kkt_reference: no feasible candidate found");
  return {*best_lo, *best_hi};
}

}  // namespace exlab
