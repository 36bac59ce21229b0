#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "exlab/dyadic.hpp"
#include "exlab/interval.hpp"
#include "exlab/linalg.hpp"
#include "exlab/real.hpp"
#include "exlab/solutions.hpp"

using namespace exlab;

TEST_CASE("bit length of naturals and rationals") {
  CHECK(len(Int(0)) == 1);
  CHECK(len(Int(1)) == 2);
  CHECK(len(Int(3)) == 3);
  CHECK(len(Int(4)) == 4);
  CHECK(len(make_rat(1, 2)) == 5);
}

TEST_CASE("dyadic rounding ties toward zero") {
  CHECK(to_rat(dyadic_round(make_rat(3, 4), 1)) == make_rat(1, 2));
  CHECK(to_rat(dyadic_round(make_rat(-3, 4), 1)) == make_rat(-1, 2));
  CHECK(to_rat(dyadic_round(make_rat(7, 8), 1)) == Rat(1));
}

TEST_CASE("dyadic round-trip and accuracy", "[property]") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<long> num(-4000, 4000), den(1, 4000);
  for (int t = 0; t < 500; ++t) {
    Rat q = make_rat(num(gen), den(gen));
    long n = 1 + static_cast<long>(t % 50);
    Dyadic d = dyadic_round(q, n);
    CHECK(rat_abs(to_rat(d) - q) <= pow2(-n));
    CHECK(d.scale() <= n);
    // dyadics at their own scale round-trip exactly
    CHECK(to_rat(dyadic_round(d, n)) == to_rat(d));
  }
}

TEST_CASE("inverse square root approximation") {
  for (long n : {4L, 16L, 53L, 120L}) {
    Rat q = make_rat(7, 3);
    Dyadic r = inv_sqrt(q, n);
    RatIv s = sqrt_interval(1 / q, n + 10);
    CHECK(rat_abs(to_rat(r) - s.mid()) <= pow2(-n) + s.width());
    CHECK(r.scale() <= n + 1);
  }
}

TEST_CASE("radical field arithmetic is exact") {
  Real a = Real::sqrt_of(Rat(2)) + Real::sqrt_of(Rat(8));
  Real b = Real::sqrt_of(Rat(18));
  CHECK(a == b);
  Real c = Real::sqrt_of(make_rat(1, 2)) * Real::sqrt_of(Rat(2));
  CHECK(c.is_rational());
  CHECK(c.to_rat() == 1);
  Real z = Real::sqrt_of(Rat(2)) + Real::sqrt_of(Rat(3)) - Real::sqrt_of(Rat(5));
  CHECK(z.sign() == 1);
  Dyadic ap = approx_dyadic(Real::sqrt_of(Rat(2)), 30);
  RatIv s2 = sqrt_interval(Rat(2), 60);
  CHECK(rat_abs(to_rat(ap) - s2.mid()) <= pow2(-30) + s2.width());
}

TEST_CASE("rational linear algebra: inverse and kernel") {
  RatMat m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 3;
  m(1, 1) = 4;
  RatMat id = m * inverse(m);
  CHECK(id(0, 0) == 1);
  CHECK(id(1, 1) == 1);
  CHECK(id(0, 1) == 0);
  RatMat k(1, 3);
  k(0, 0) = k(0, 1) = k(0, 2) = 1;
  auto kb = kernel_basis(k);
  REQUIRE(kb.size() == 2);
  for (auto& v : kb) CHECK(dot(v, {Rat(1), Rat(1), Rat(1)}) == 0);
}

TEST_CASE("distance to points and segments, several norms") {
  RealVec e1(3, Real(Rat(0))), e2(3, Real(Rat(0))), zero(3, Real(Rat(0)));
  e1[0] = Real(Rat(1));
  e2[1] = Real(Rat(1));
  SolutionSet seg = SolutionSet::segment(e1, e2);
  CHECK(set_distance_exact(zero, seg, -1).cmp(Real(make_rat(1, 2))) == 0);
  CHECK(set_distance_exact(zero, seg, 1).cmp(Real(Rat(1))) == 0);
  CHECK(set_distance_exact(zero, seg, 2).cmp(Real(make_rat(1, 2))) == 0);  // squared

  RealVec x2(2, Real(Rat(1))), y2(2, Real(Rat(0)));
  RatIv dp = set_distance(x2, SolutionSet::point(y2), 3, 40);
  CHECK(dp.width() <= pow2(-40));
  CHECK(dp.lo <= make_rat(12599211, 10000000));
  CHECK(dp.hi >= make_rat(12599210, 10000000));

  RatIv dsp = set_distance(zero, seg, 3, 20);
  CHECK(dsp.width() <= make_rat(1, 100000));
  CHECK(dsp.lo <= make_rat(63, 100));
  CHECK(dsp.hi >= make_rat(62, 100));

  RatIv infd = inf_set_distance(SolutionSet::point(e1), SolutionSet::point(e2), 1, 40);
  CHECK(infd.contains(Rat(2)));
}
