#include <random>

#include "doctest.h"
#include "masure/coxeter.hpp"
#include "test_fixtures.hpp"

using namespace masure;

TEST_CASE("datum construction and validation") {
  CoxeterDatum d = fixtures::a2();
  CHECK(d.rank() == 2);
  CHECK(d.m(0, 1) == 3);
  CHECK(d.kind() == DatumKind::finite);

  CHECK(fixtures::b2().m(0, 1) == 4);
  CHECK(fixtures::g2().m(0, 1) == 6);
  CHECK(fixtures::aff_a1().m(0, 1) == kInfiniteOrder);
  CHECK(fixtures::aff_a1().kind() == DatumKind::affine);
  CHECK(fixtures::aff_a2().kind() == DatumKind::affine);
  CHECK(fixtures::hyperbolic23().kind() == DatumKind::indefinite);
  CHECK(fixtures::a1xa1().kind() == DatumKind::finite);

  CHECK_THROWS_AS(CoxeterDatum::from_gcm({{2, 1}, {1, 2}}), InputError);
  CHECK_THROWS_AS(CoxeterDatum::from_gcm({{2, -1}, {0, 2}}), InputError);
  CHECK_THROWS_AS(CoxeterDatum::from_gcm({{1, 0}, {0, 2}}), InputError);
  /* Bond order 5 admits no integral realization. */
  CHECK_THROWS_AS(CoxeterDatum::from_coxeter_matrix({{1, 5}, {5, 1}}), InputError);
  CHECK_THROWS_AS(CoxeterDatum::from_parts({{1, 4}, {4, 1}}, {{2, -1}, {-1, 2}}), InputError);

  CoxeterDatum synth = CoxeterDatum::from_coxeter_matrix({{1, 4}, {4, 1}});
  CHECK(synth.a(0, 1) * synth.a(1, 0) == 2);
}

TEST_CASE("null root of affine data") {
  CHECK(fixtures::aff_a1().delta() == std::vector<long long>{1, 1});
  CHECK(fixtures::aff_a2().delta() == std::vector<long long>{1, 1, 1});
  CHECK(fixtures::a2().delta().empty());
}

TEST_CASE("orbit classes of generators") {
  CHECK(fixtures::a2().orbit_class_count() == 1);
  CHECK(fixtures::b2().orbit_class_count() == 2);
  CHECK(fixtures::aff_a1().orbit_class_count() == 2);
  CHECK(fixtures::aff_a2().orbit_class_count() == 1);
  CHECK(fixtures::a1xa1().orbit_class_count() == 2);
}

TEST_CASE("standard realization dimensions and pairings") {
  for (const CoxeterDatum& d : {fixtures::a2(), fixtures::b2(), fixtures::aff_a1(),
                                fixtures::aff_a2(), fixtures::hyperbolic23()}) {
    Realization r = Realization::standard(d);
    RatMat rows(d.rank(), r.dim());
    for (int i = 0; i < d.rank(); ++i)
      for (int c = 0; c < r.dim(); ++c) rows.at(i, c) = r.alpha(i)[c];
    CHECK(mat_rank(rows) == d.rank());
    for (int i = 0; i < d.rank(); ++i)
      for (int j = 0; j < d.rank(); ++j)
        CHECK(dot(r.alpha(j), r.alphavee(i)) == Rat(static_cast<long>(d.a(i, j))));
  }
  CHECK(Realization::standard(fixtures::a2()).dim() == 2);
  CHECK(Realization::standard(fixtures::aff_a1()).dim() == 3);
  CHECK(Realization::standard(fixtures::aff_a2()).dim() == 4);
}

TEST_CASE("simple reflections on coroots") {
  /* Rank 2 single bond: reflecting the other coroot adds -a(j,i) copies. */
  WeylGroup a2(fixtures::a2());
  RatVec img = mat_apply(a2.realization().reflection(0), a2.realization().alphavee(1));
  CHECK(img == vec_add(a2.realization().alphavee(1), a2.realization().alphavee(0)));

  WeylGroup aff(fixtures::aff_a1());
  RatVec img2 = mat_apply(aff.realization().reflection(0), aff.realization().alphavee(1));
  RatVec expect = vec_add(aff.realization().alphavee(1),
                          vec_scale(Rat(2), aff.realization().alphavee(0)));
  CHECK(img2 == expect);
}

TEST_CASE("reduced word lengths match breadth-first search") {
  for (const CoxeterDatum& d :
       {fixtures::a2(), fixtures::a3(), fixtures::b2(), fixtures::g2(), fixtures::aff_a1()}) {
    WeylGroup w(d);
    int radius = (d.kind() == DatumKind::affine) ? 8 : 6;
    auto oracle = fixtures::bfs_lengths(w, radius);
    auto ballv = w.ball(radius);
    CHECK(ballv.size() == oracle.size());
    for (const GroupElement& g : ballv) {
      auto it = oracle.find(g.mat);
      REQUIRE(it != oracle.end());
      CHECK(g.length() == it->second);
    }
  }
}

TEST_CASE("group orders of finite types") {
  CHECK(WeylGroup(fixtures::a2()).enumerate(100)->size() == 6);
  CHECK(WeylGroup(fixtures::a3()).enumerate(100)->size() == 24);
  CHECK(WeylGroup(fixtures::b2()).enumerate(100)->size() == 8);
  CHECK(WeylGroup(fixtures::g2()).enumerate(100)->size() == 12);
  CHECK(WeylGroup(fixtures::a1xa1()).enumerate(100)->size() == 4);
  CHECK(!WeylGroup(fixtures::aff_a1()).enumerate(40).has_value());
}

TEST_CASE("reduce agrees with plain matrix products") {
  std::mt19937_64 rng(20240817);
  for (const CoxeterDatum& d : {fixtures::a3(), fixtures::b2(), fixtures::aff_a2()}) {
    WeylGroup w(d);
    std::uniform_int_distribution<int> pick(0, d.rank() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<int> word(12);
      for (int& l : word) l = pick(rng);
      GroupElement g = w.reduce(word);
      RatMat plain = RatMat::identity(w.realization().dim());
      for (int l : word) plain = mat_mul(plain, w.realization().reflection(l));
      CHECK(g.mat == plain);
      CHECK(mat_mul(g.mat, g.inv) == RatMat::identity(w.realization().dim()));
      CHECK(w.reduce(g.word).mat == plain);
      CHECK(g.length() <= static_cast<int>(word.size()));
    }
  }
}

TEST_CASE("bond orders from matrix powers") {
  for (const CoxeterDatum& d :
       {fixtures::a2(), fixtures::a3(), fixtures::b2(), fixtures::g2(), fixtures::a1xa1(),
        fixtures::aff_a1(), fixtures::aff_a2(), fixtures::hyperbolic23()}) {
    WeylGroup w(d);
    for (int i = 0; i < d.rank(); ++i)
      for (int j = 0; j < d.rank(); ++j) {
        int expect = (i == j) ? 1 : d.m(i, j);
        CHECK(w.product_order(i, j) == expect);
      }
  }
}

TEST_CASE("bruhat order matches the subword oracle") {
  for (const CoxeterDatum& d : {fixtures::a2(), fixtures::b2(), fixtures::aff_a1()}) {
    WeylGroup w(d);
    int radius = (d.kind() == DatumKind::affine) ? 7 : 6;
    auto elems = w.ball(radius);
    for (const GroupElement& big : elems) {
      auto oracle = fixtures::subword_elements(w, big.word);
      for (const GroupElement& small : elems) {
        bool expect = oracle.count(small.mat) > 0;
        CHECK(w.bruhat_leq(small, big) == expect);
      }
    }
  }
}

TEST_CASE("bruhat order basics") {
  WeylGroup w(fixtures::a2());
  GroupElement e = w.identity();
  GroupElement s0 = w.simple(0);
  GroupElement w0 = w.reduce(std::vector<int>{0, 1, 0});
  CHECK(w.bruhat_leq(e, s0));
  CHECK(w.bruhat_leq(s0, w0));
  CHECK(!w.bruhat_leq(w0, s0));
  CHECK(w.bruhat_leq(w.reduce(std::vector<int>{0, 1}), w0));
  CHECK(!w.bruhat_leq(w.simple(1), s0));
}

TEST_CASE("positive roots up to a height bound") {
  auto affine = roots_up_to_height(fixtures::aff_a1(), 3);
  REQUIRE(affine.size() == 4);
  CHECK(affine[0].coords == std::vector<long long>{0, 1});
  CHECK(affine[1].coords == std::vector<long long>{1, 0});
  CHECK(affine[2].coords == std::vector<long long>{1, 2});
  CHECK(affine[3].coords == std::vector<long long>{2, 1});

  CHECK(roots_up_to_height(fixtures::a2(), 8).size() == 3);
  CHECK(roots_up_to_height(fixtures::a3(), 8).size() == 6);
  CHECK(roots_up_to_height(fixtures::b2(), 8).size() == 4);
  CHECK(roots_up_to_height(fixtures::g2(), 8).size() == 6);

  /* Stability: every reflection of a listed root of bounded height is
     either listed or negative or beyond the bound. */
  const CoxeterDatum d = fixtures::aff_a2();
  auto roots = roots_up_to_height(d, 8);
  std::set<std::vector<long long>> present;
  for (const auto& r : roots) present.insert(r.coords);
  for (const auto& r : roots)
    for (int l = 0; l < d.rank(); ++l) {
      long long pairing = 0;
      for (int j = 0; j < d.rank(); ++j) pairing += r.coords[j] * d.a(l, j);
      auto img = r.coords;
      img[l] -= pairing;
      long long h = 0;
      bool nonneg = true;
      for (long long x : img) { h += x; nonneg = nonneg && x >= 0; }
      if (nonneg && h <= 8) CHECK(present.count(img) == 1);
    }
}

TEST_CASE("orbit classes propagate to roots") {
  auto b2_roots = roots_up_to_height(fixtures::b2(), 8);
  REQUIRE(b2_roots.size() == 4);
  std::set<int> classes;
  for (const auto& r : b2_roots) classes.insert(r.orbit_class);
  CHECK(classes.size() == 2);
  for (const auto& r : roots_up_to_height(fixtures::a2(), 8)) CHECK(r.orbit_class == 0);
}

TEST_CASE("sphericity classifier") {
  CHECK(is_spherical(fixtures::a3(), {0, 1, 2}) == Tern::yes);
  CHECK(is_spherical(fixtures::g2(), {0, 1}) == Tern::yes);
  CHECK(is_spherical(fixtures::aff_a1(), {0, 1}) == Tern::no);
  CHECK(is_spherical(fixtures::aff_a2(), {0, 1, 2}) == Tern::no);
  CHECK(is_spherical(fixtures::aff_a2(), {0, 2}) == Tern::yes);
  CHECK(is_spherical(fixtures::hyperbolic23(), {0, 1}) == Tern::no);
  CHECK(is_spherical(fixtures::hyperbolic23(), {0}) == Tern::yes);
  CHECK(is_spherical(fixtures::a2(), {}) == Tern::yes);
}

TEST_CASE("sphericity classifier agrees with subgroup enumeration") {
  for (const CoxeterDatum& d :
       {fixtures::a3(), fixtures::b2(), fixtures::aff_a1(), fixtures::aff_a2(),
        fixtures::hyperbolic23()}) {
    for (unsigned mask = 0; mask < (1u << d.rank()); ++mask) {
      std::vector<int> J;
      for (int i = 0; i < d.rank(); ++i)
        if (mask & (1u << i)) J.push_back(i);
      Tern fast = is_spherical(d, J);
      Tern slow = is_spherical(d, J, true, 500);
      if (fast == Tern::yes) CHECK(slow == Tern::yes);
      if (fast == Tern::no) CHECK(slow == Tern::undecided);
    }
  }
}
