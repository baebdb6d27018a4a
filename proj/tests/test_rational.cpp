#include "doctest.h"
#include "masure/rational.hpp"

using namespace masure;

TEST_CASE("rational parsing round trip") {
  auto r = rat_parse("3/4");
  REQUIRE(r.has_value());
  CHECK(*r == Rat(3, 4));
  CHECK(rat_str(*r) == "3/4");
  CHECK(*rat_parse("-6/4") == Rat(-3, 2));
  CHECK(rat_str(*rat_parse("-6/4")) == "-3/2");
  CHECK(*rat_parse("7") == 7);
  CHECK(!rat_parse("1/0").has_value());
  CHECK(!rat_parse("").has_value());
  CHECK(!rat_parse("x/2").has_value());
  CHECK(!rat_parse("1/").has_value());
}

TEST_CASE("step lattice rounding") {
  CHECK(step_ceil(Rat(-3, 10), Rat(1)) == 0);
  CHECK(step_ceil(Rat(17, 10), Rat(1)) == 2);
  CHECK(step_ceil(Rat(2), Rat(1)) == 2);
  CHECK(step_ceil(Rat(2), Rat(1), true) == 3);
  CHECK(step_ceil(Rat(-5, 2), Rat(1, 2)) == Rat(-5, 2));
  CHECK(step_ceil(Rat(-5, 2), Rat(1, 2), true) == Rat(-2));
  CHECK(in_step_lattice(Rat(3), Rat(1)));
  CHECK(in_step_lattice(Rat(3, 2), Rat(1, 2)));
  CHECK(!in_step_lattice(Rat(1, 3), Rat(1, 2)));
}

TEST_CASE("linear algebra basics") {
  RatMat m(2, 2);
  m.at(0, 0) = 2; m.at(0, 1) = -1;
  m.at(1, 0) = -1; m.at(1, 1) = 2;
  CHECK(mat_det(m) == 3);
  CHECK(mat_rank(m) == 2);

  RatMat sing(2, 2);
  sing.at(0, 0) = 2; sing.at(0, 1) = -2;
  sing.at(1, 0) = -2; sing.at(1, 1) = 2;
  CHECK(mat_det(sing) == 0);
  auto ker = kernel_basis(sing);
  REQUIRE(ker.size() == 1);
  CHECK(mat_apply(sing, ker[0]) == RatVec{Rat(0), Rat(0)});

  auto sol = solve(m, RatVec{Rat(1), Rat(1)});
  REQUIRE(sol.has_value());
  CHECK(mat_apply(m, *sol) == RatVec{Rat(1), Rat(1)});

  RatMat incon(2, 1);
  incon.at(0, 0) = 1;
  incon.at(1, 0) = 1;
  CHECK(!solve(incon, RatVec{Rat(0), Rat(1)}).has_value());
}
