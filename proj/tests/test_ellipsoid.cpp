#include <catch2/catch_amalgamated.hpp>

#include "exlab/bpsolve.hpp"
#include "exlab/ellipsoid.hpp"

using namespace exlab;

TEST_CASE("central cut contracts the determinant exactly") {
  for (std::size_t n : {2ul, 3ul, 5ul, 8ul}) {
    RatMat P = RatMat::identity(n);
    P(0, 0) = 4;
    if (n > 1) P(1, 1) = 9;
    RatVec d(n, Rat(0));
    d[0] = 1;
    d[n - 1] = -1;
    if (n > 2) d[1] = 2;
    RatMat Q = central_cut_shape(P, d);
    Rat nn(static_cast<long>(n));
    Rat factor = nn * nn / (nn * nn - 1);
    Rat expect(1);
    for (std::size_t i = 0; i < n; ++i) expect *= factor;
    expect *= (nn - 1) / (nn + 1);
    CHECK(determinant(Q) / determinant(P) == expect);
    CHECK(is_positive_definite(Q));
  }
}

TEST_CASE("separation oracle: inside, sign cut, ball cut") {
  CircumscribedBody ball;
  ball.n = 2;
  ball.R = 1;
  auto in = wss(ball, RatVec{Rat(1, 4), Rat(1, 4)}, Rat(1, 100));
  CHECK(in.inside);
  auto out = wss(ball, RatVec{Rat(2), Rat(0)}, Rat(1, 100));
  CHECK(!out.inside);
  CHECK(out.cut_case == 3);
  CHECK(norm_inf(out.d) == 1);

  CircumscribedBody simplex;
  simplex.n = 3;
  simplex.R = 1;
  simplex.nonneg = true;
  auto sgn = wss(simplex, RatVec{Rat(1, 2), Rat(-1, 8), Rat(0)}, Rat(1, 100));
  CHECK(!sgn.inside);
  CHECK(sgn.cut_case == 1);
  CHECK(sgn.index == 1);
  CHECK(sgn.d[1] == -1);
}

TEST_CASE("weak optimisation over the ball and the simplex") {
  CircumscribedBody ball;
  ball.n = 2;
  ball.R = 1;
  DyadicVec c{Dyadic(1L), Dyadic(0L)};
  auto r = weak_optimize(ball, c, Rat(1, 1000));
  REQUIRE(r.feasible);
  CHECK(r.objective <= Rat(-1) + Rat(2, 1000));
  CHECK(r.objective >= Rat(-1) - Rat(1, 1000));
  CHECK(r.iterations <= r.budget);

  CircumscribedBody s;
  s.n = 3;
  s.R = 1;
  s.nonneg = true;
  auto q = weak_optimize(s, DyadicVec(3, Dyadic(1L)), Rat(1, 1000));
  REQUIRE(q.feasible);
  CHECK(rat_abs(q.objective) <= Rat(1, 1000));
}

TEST_CASE("an infeasible body is certified empty") {
  CircumscribedBody slab;
  slab.n = 2;
  slab.R = 1;
  slab.Ahat = {DyadicVec{Dyadic(1L), Dyadic(0L)}};
  slab.yprime = {Dyadic(Int(3), 1)};  // requires z1 within 1/4 of 3/2 > R
  slab.delta = Rat(1, 4);
  auto r = weak_optimize(slab, DyadicVec(2, Dyadic(1L)), Rat(1, 100));
  CHECK(!r.feasible);
}

TEST_CASE("basis-pursuit solver recovers a unit spike", "[slow]") {
  auto data = std::make_shared<InstanceData>();
  data->m = 3;
  data->N = 3;
  data->y = {Real(Rat(1)), Real(Rat(0)), Real(Rat(0))};
  data->A = {{Real(Rat(1)), Real(Rat(0)), Real(Rat(0))},
             {Real(Rat(0)), Real(Rat(1)), Real(Rat(0))},
             {Real(Rat(0)), Real(Rat(0)), Real(Rat(1))}};
  auto oracle = std::make_shared<RoundingOracle>(data);
  OracleView in{oracle, 3, 3};
  BpClassParams par{Rat(1, 3), Rat(1), Rat(1), Rat(1)};
  const long K = 2;
  auto res = bp_solve(in, K, par, Rat(0));
  Rat err = rat_abs(to_rat(res.x[0]) - 1);
  for (int j = 1; j < 3; ++j) err = rat_max(err, rat_abs(to_rat(res.x[j])));
  CHECK(err <= pow10(-K));
  CHECK(res.inner.iterations <= res.inner.budget);

  // the interior witness of the true solution is deep inside the body
  CircumscribedBody body;
  body.n = 6;
  body.R = res.consts.R;
  body.nonneg = true;
  body.delta = res.consts.delta_prime;
  body.yprime.resize(3);
  for (std::size_t i = 0; i < 3; ++i) body.yprime[i] = to_dyadic_exact(in.y(i, res.consts.n1));
  body.Ahat.assign(3, DyadicVec(6));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Dyadic a = to_dyadic_exact(in.A(i, j, res.consts.n2));
      body.Ahat[i][j] = a;
      body.Ahat[i][j + 3] = -a;
    }
  RatVec wit = bp_feasible_witness(RatVec{Rat(1), Rat(0), Rat(0)}, res.consts.n3);
  CHECK(deep_membership(body, wit, pow2(-res.consts.n3)));
}

TEST_CASE("accuracy requests beyond the noise bound are rejected") {
  auto data = std::make_shared<InstanceData>();
  data->m = 1;
  data->N = 1;
  data->y = {Real(Rat(1))};
  data->A = {{Real(Rat(1))}};
  OracleView in{std::make_shared<RoundingOracle>(data), 1, 1};
  BpClassParams par{Rat(1, 3), Rat(1), Rat(1), Rat(1)};
  Rat delta = make_rat(1, 10);
  CHECK(!k_within_accuracy_bound(2, par, delta));
  CHECK_THROWS_AS(bp_solve(in, 2, par, delta), std::invalid_argument);
}
