#include <catch2/catch_amalgamated.hpp>

#include "exlab/families.hpp"
#include "exlab/oracle.hpp"
#include "exlab/subroutines.hpp"

using namespace exlab;

namespace {
std::shared_ptr<const InstanceData> sample_data() {
  FamilyPoint fp = strong_point(Kind::CL, 2, 4, 6, make_rat(2, 5), make_rat(1, 2), RegParams{});
  return fp.instance().data;
}
}  // namespace

TEST_CASE("rounding oracle answers within the requested precision", "[property]") {
  auto data = sample_data();
  auto oracle = std::make_shared<RoundingOracle>(data);
  for (std::size_t j = 0; j < data->coord_count(); ++j)
    for (long n : {1L, 3L, 10L, 40L}) {
      Dyadic a = oracle->query(j, n);
      CHECK(((data->coord(j) - Real(to_rat(a))).abs() <= Real(pow2(-n))));
      CHECK(a.scale() <= n);
    }
}

TEST_CASE("digit accounting tracks depth and volume") {
  auto oracle = std::make_shared<RoundingOracle>(sample_data());
  oracle->query(0, 3);
  oracle->query(1, 7);
  oracle->query(0, 5);
  DigitAccount acc = oracle->account();
  CHECK(acc.max_precision == 7);
  CHECK(acc.queries == 3);
  CHECK(acc.total_digits == 15);
  oracle->reset_account();
  CHECK(oracle->account().queries == 0);
}

TEST_CASE("transcripts record exactly the served answers") {
  auto oracle = std::make_shared<RoundingOracle>(sample_data());
  oracle->set_recording(true);
  Dyadic a = oracle->query(2, 9);
  Dyadic b = oracle->query(5, 4);
  Transcript t = oracle->transcript();
  REQUIRE(t.size() == 2);
  CHECK(t[0].j == 2);
  CHECK(t[0].n == 9);
  CHECK(to_rat(t[0].answer) == to_rat(a));
  CHECK(t[1].j == 5);
  CHECK(to_rat(t[1].answer) == to_rat(b));
  CHECK(!serialize(t).empty());
}

TEST_CASE("fork oracle serves the limit up to the commitment depth") {
  RegParams reg;
  auto limit = strong_point(Kind::LP, 2, 4, 6, make_rat(1, 2), make_rat(1, 2), reg);
  auto target = strong_point(Kind::LP, 2, 4, 6, make_rat(1, 2), make_rat(1, 2) - pow2(-20), reg);
  auto fork = std::make_shared<ForkOracle>(limit.instance().data, target.instance().data, 12);
  auto plain = std::make_shared<RoundingOracle>(limit.instance().data);
  // shallow queries match the limit instance verbatim
  for (long n = 1; n <= 12; ++n)
    CHECK(to_rat(fork->query(4 + 1, n)) == to_rat(plain->query(4 + 1, n)));
  // deep queries reveal the target
  Dyadic deep = fork->query(4 + 1, 30);
  CHECK(rat_abs(to_rat(deep) - (make_rat(1, 2) - pow2(-20))) <= pow2(-30));
}

TEST_CASE("oracle view layout separates y from the matrix") {
  auto data = sample_data();
  OracleView in{std::make_shared<RoundingOracle>(data), data->m, data->N};
  for (std::size_t j = 0; j < data->m; ++j)
    CHECK(((data->y[j] - Real(in.y(j, 25))).abs() <= Real(pow2(-25))));
  for (std::size_t r = 0; r < data->m; ++r)
    for (std::size_t c = 0; c < data->N; ++c)
      CHECK(((data->A[r][c] - Real(in.A(r, c, 25))).abs() <= Real(pow2(-25))));
}
