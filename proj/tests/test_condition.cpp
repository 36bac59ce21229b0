#include <catch2/catch_amalgamated.hpp>

#include "exlab/condition.hpp"
#include "exlab/hadamard.hpp"

using namespace exlab;

TEST_CASE("matrix condition number of a diagonal example") {
  RatMat d(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  RatIv c = cond_mat(d);
  CHECK(c.lo < 2);
  CHECK(c.hi > 2);
  CHECK(c.hi - c.lo < Rat(1, 1000));
}

TEST_CASE("feasibility-primal condition is exact on the families") {
  RegParams reg;
  for (Kind k : {Kind::LP, Kind::BPl1, Kind::CL, Kind::BPTV}) {
    FamilyPoint fp = strong_point(k, 3, 4, 5, make_rat(1, 2), make_rat(1, 2), reg);
    RatIv v = c_fp(fp);
    CHECK(v.lo == 2);
    CHECK(v.hi == 2);
  }
  for (Kind k : {Kind::ULl1, Kind::ULTV}) {
    FamilyPoint fp = strong_point(k, 3, 4, 5, make_rat(1, 2), make_rat(1, 2), reg);
    RatIv v = c_fp(fp);
    CHECK(v.lo == 0);
    CHECK(v.hi == 0);
  }
}

TEST_CASE("sampled solution-map condition stays within the a-priori bound", "[random]") {
  RegParams reg;
  for (Kind k : {Kind::LP, Kind::ULl1, Kind::CL, Kind::BPl1, Kind::BPTV, Kind::ULTV}) {
    FamilyPoint fp = strong_point(k, 3, 4, 5, make_rat(2, 5), make_rat(1, 2), reg);
    SolutionMapEstimate e = cond_solution_map_sampled(fp, 8, 17);
    INFO(kind_name(k));
    CHECK(e.samples_used > 0);
    CHECK(e.lower > 0);
    CHECK(e.lower <= e.bound);
  }
}

TEST_CASE("witness-based lower bounds diverge as the scale shrinks") {
  SubsampledHadamard sh = subsample_hadamard(3, {0, 1, 2, 3}, Rat(1, 8));
  RatVec v(8);
  for (std::size_t j = 0; j < 8; ++j) v[j] = sh.rows[0][j];
  RccInput in = infinite_rcc_input(sh.base(), v, {0, 1, 2, 3, 4, 5, 6, 7}, Rat(2));
  Rat prev(0);
  for (long k = 4; k <= 40; k += 4) {
    Rat lo = c_rcc_lower(in, Rat(1, 8), pow2(-k));
    CHECK(lo > prev);
    prev = lo;
  }
  CHECK(prev > 1000000);
}
