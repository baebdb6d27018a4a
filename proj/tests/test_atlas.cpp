#include <random>
#include <set>

#include "doctest.h"
#include "masure/atlas.hpp"
#include "masure/tits_cone.hpp"
#include "test_fixtures.hpp"

using namespace masure;

namespace {

/* Regular tree vertex count by levels, independent of the atlas builder. */
long long tree_vertices(int q, int depth) {
  long long total = 1, level = q + 1;
  for (int d = 1; d <= depth; ++d) {
    total += level;
    level *= q;
  }
  return total;
}

FacetAddress chamber_toward(const ApartmentModel& m, const RatVec& v) {
  auto loc = locate(m.weyl(), v);
  REQUIRE(loc.status == LocateStatus::located);
  return loc.address;
}

Chimney sector_center(const ApartmentModel& m, const RatVec& base, const RatVec& toward) {
  FacetAddress pt;
  pt.sign = +1;
  pt.w = m.weyl().identity();
  for (int i = 0; i < m.weyl().rank(); ++i) pt.J.push_back(i);
  return make_chimney(m, base, pt, chamber_toward(m, toward));
}

}  // namespace

TEST_CASE("tree atlas counts") {
  TreeAtlas t21(2, 1);
  CHECK(t21.vertex_count() == 4);
  CHECK(t21.leaves().size() == 3);
  CHECK(t21.chart_count() == 3);
  CHECK(t21.window_length(0) == 2);

  TreeAtlas t13(1, 3);
  CHECK(t13.vertex_count() == tree_vertices(1, 3));
  CHECK(t13.leaves().size() == 2);
  CHECK(t13.chart_count() == 1);
  CHECK(t13.window_length(0) == 6);

  TreeAtlas t22(2, 2);
  CHECK(t22.vertex_count() == 10);
  CHECK(t22.leaves().size() == 6);
  CHECK(t22.chart_count() == 15);

  TreeAtlas t26(2, 6);
  CHECK(t26.vertex_count() == 190);
  CHECK(t26.vertex_count() == tree_vertices(2, 6));
  CHECK(t26.leaves().size() == 96);
  CHECK(t26.chart_count() == 4560);
  CHECK(t26.window_length(t26.chart_of_leaves(t26.leaves()[0], t26.leaves()[95])) == 12);

  CHECK_THROWS_AS(TreeAtlas(2, 6, 1000), InputError);
  CHECK_THROWS_AS(TreeAtlas(0, 3), InputError);
  CHECK_THROWS_AS(TreeAtlas(2, 0), InputError);
}

TEST_CASE("tree structure") {
  TreeAtlas t(2, 2);
  CHECK(t.parent(0) == -1);
  CHECK(t.children(0) == std::vector<int>{1, 2, 3});
  CHECK(t.children(1) == std::vector<int>{4, 5});
  CHECK(t.children(2) == std::vector<int>{6, 7});
  CHECK(t.children(3) == std::vector<int>{8, 9});
  CHECK(t.dist(4, 9) == 4);
  CHECK(t.dist(4, 5) == 2);
  CHECK(t.dist(0, 7) == 2);
  CHECK(t.path_between(4, 6) == std::vector<int>{4, 1, 0, 2, 6});
  CHECK(t.path_between(4, 4) == std::vector<int>{4});

  int c = t.chart_of_leaves(4, 6);
  CHECK(t.leaves_of(c) == std::pair(4, 6));
  CHECK(t.path(c) == std::vector<int>{4, 1, 0, 2, 6});
  CHECK(t.position_in(c, 0) == 2);
  CHECK(t.position_in(c, 9) == -1);
  for (int u : t.leaves())
    for (int v : t.leaves())
      if (u < v) {
        int cc = t.chart_of_leaves(u, v);
        CHECK(t.window_length(cc) == t.dist(u, v));
      }
  CHECK_THROWS_AS(t.chart_of_leaves(0, 4), InputError);
}

TEST_CASE("tree windows") {
  TreeAtlas t(2, 2);
  const ApartmentModel& m = t.model();
  int c = t.chart_of_leaves(4, 6);
  EnclosureRep w = t.window(c);
  CHECK(contains(m, w, {Rat(0)}));
  CHECK(contains(m, w, {Rat(4)}));
  CHECK(contains(m, w, {Rat(17, 8)}));
  CHECK(!contains(m, w, {-Rat(1, 4)}));
  CHECK(!contains(m, w, {Rat(17, 4)}));
  CHECK(!t.in_window(c, {Rat(5)}));
  CHECK_THROWS_AS(t.window(99), InputError);
}

TEST_CASE("tree point conversions") {
  TreeAtlas t(2, 2);
  int c = t.chart_of_leaves(4, 6);
  auto vx = t.to_tree(c, Rat(2));
  CHECK(vx.is_vertex());
  CHECK(vx.a == 0);
  auto e = t.to_tree(c, Rat(3, 2));
  CHECK(!e.is_vertex());
  CHECK(e.a == 0);  // canonical: parent to child
  CHECK(e.b == 1);
  CHECK(e.t == Rat(1, 2));
  for (int cc = 0; cc < t.chart_count(); ++cc)
    for (Rat x : {Rat(0), Rat(1, 3), Rat(1), Rat(3, 2), Rat(2)}) {
      if (x > Rat(t.window_length(cc))) continue;
      auto back = t.to_chart(cc, t.to_tree(cc, x));
      REQUIRE(back.has_value());
      CHECK(*back == x);
    }
  CHECK(!t.to_chart(t.chart_of_leaves(8, 9), {0, 1, Rat(1, 2)}).has_value());
  CHECK_THROWS_AS(t.to_tree(c, Rat(9, 2)), InputError);
}

TEST_CASE("tree gluings match vertex identifications") {
  TreeAtlas t(2, 2);
  int a = t.chart_of_leaves(4, 6);
  SUBCASE("translation") {
    int b = t.chart_of_leaves(5, 6);
    auto gs = t.gluings(a, b);
    REQUIRE(gs.size() == 1);
    CHECK(gs[0].w.word.empty());
    CHECK(gs[0].shift == RatVec{Rat(0)});
    CHECK(contains(t.model(), gs[0].domain, {Rat(1)}));
    CHECK(contains(t.model(), gs[0].domain, {Rat(4)}));
    CHECK(!contains(t.model(), gs[0].domain, {Rat(1, 2)}));
  }
  SUBCASE("reflection") {
    int a2 = t.chart_of_leaves(4, 5);  // path 4-1-5
    int b2 = t.chart_of_leaves(5, 6);  // path 5-1-0-2-6
    auto gs = t.gluings(a2, b2);
    REQUIRE(gs.size() == 1);
    CHECK(gs[0].w.word == std::vector<int>{0});
    CHECK(gs[0].shift == RatVec{Rat(2)});  // x -> 2 - x
    auto f = t.gluing_map(gs[0]);
    CHECK(apply_map(f, {Rat(2)}) == RatVec{Rat(0)});
    CHECK(apply_map(f, {Rat(1)}) == RatVec{Rat(1)});
  }
  SUBCASE("disjoint") {
    CHECK(t.gluings(t.chart_of_leaves(4, 5), t.chart_of_leaves(6, 7)).empty());
  }
  SUBCASE("every common vertex transported") {
    for (int x = 0; x < t.chart_count(); ++x)
      for (int y = 0; y < t.chart_count(); ++y) {
        if (x == y) continue;
        for (const auto& g : t.gluings(x, y)) {
          auto f = t.gluing_map(g);
          for (int v = 0; v < t.vertex_count(); ++v) {
            if (t.position_in(x, v) < 0 || t.position_in(y, v) < 0) continue;
            RatVec px{Rat(t.position_in(x, v))};
            if (!contains(t.model(), g.domain, px)) continue;
            CHECK(apply_map(f, px) == RatVec{Rat(t.position_in(y, v))});
          }
        }
      }
  }
  SUBCASE("neighbors symmetric") {
    for (int x = 0; x < t.chart_count(); ++x)
      for (int y : t.neighbors(x)) {
        auto back = t.neighbors(y);
        CHECK(std::find(back.begin(), back.end(), x) != back.end());
        CHECK(!t.gluings(x, y).empty());
      }
  }
}

TEST_CASE("single vertex overlaps carry both orientations") {
  TreeAtlas t(3, 2);  // degree 4 tree: geodesics can cross at one vertex
  int a = t.chart_of_leaves(5, 6);  // 5-1-6
  int b = t.chart_of_leaves(7, 8);  // 7-1-0-2-8
  auto gs = t.gluings(a, b);
  REQUIRE(gs.size() == 2);
  CHECK(gs[0].w.word.empty());
  CHECK(gs[1].w.word == std::vector<int>{0});
  for (const auto& g : gs)
    CHECK(apply_map(t.gluing_map(g), {Rat(1)}) == RatVec{Rat(1)});
  CHECK(t.same_point({a, {Rat(1)}}, {b, {Rat(1)}}));
}

TEST_CASE("normal form agrees with the gluing graph search") {
  TreeAtlas t(2, 2);
  for (int c = 0; c < t.chart_count(); ++c)
    for (int k = 0; k <= t.window_length(c); ++k) {
      MasurePoint p{c, {Rat(k)}};
      MasurePoint nf = t.normal_form(p);
      MasurePoint ref = normal_form_bfs(t, p);
      CHECK(nf.chart == ref.chart);
      CHECK(nf.coords == ref.coords);
      CHECK(t.same_point(p, nf));
    }
  MasurePoint edge{t.chart_of_leaves(4, 6), {Rat(5, 2)}};
  MasurePoint nf = t.normal_form(edge);
  MasurePoint ref = normal_form_bfs(t, edge);
  CHECK(nf.chart == ref.chart);
  CHECK(nf.coords == ref.coords);
}

TEST_CASE("same point across charts") {
  TreeAtlas t(2, 2);
  int a = t.chart_of_leaves(4, 6), b = t.chart_of_leaves(4, 5), c = t.chart_of_leaves(5, 6);
  CHECK(t.same_point({a, {Rat(0)}}, {b, {Rat(0)}}));              // vertex 4
  CHECK(t.same_point({a, {Rat(4)}}, {c, {Rat(4)}}));              // vertex 6
  CHECK(t.same_point({a, {Rat(1)}}, {b, {Rat(1)}}));              // vertex 1
  CHECK(t.same_point({b, {Rat(2)}}, {c, {Rat(0)}}));              // vertex 5
  CHECK(!t.same_point({a, {Rat(0)}}, {a, {Rat(4)}}));
  CHECK(!t.same_point({a, {Rat(1)}}, {c, {Rat(0)}}));             // vertex 1 vs vertex 5
}

TEST_CASE("common chart covers any two points") {
  TreeAtlas t(2, 2);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    int ca = static_cast<int>(rng() % t.chart_count());
    int cb = static_cast<int>(rng() % t.chart_count());
    Rat xa(static_cast<long>(rng() % (2 * t.window_length(ca) + 1)), 2);
    Rat xb(static_cast<long>(rng() % (2 * t.window_length(cb) + 1)), 2);
    xa.canonicalize();
    xb.canonicalize();
    MasurePoint p{ca, {xa}}, q{cb, {xb}};
    auto cc = t.common_chart(p, q);
    REQUIRE(cc.has_value());
    auto& [s, xs, ys] = *cc;
    CHECK(t.in_window(s, xs));
    CHECK(t.in_window(s, ys));
    CHECK(t.same_point(p, {s, xs}));
    CHECK(t.same_point(q, {s, ys}));
    auto ref = common_chart_bfs(t, p, q);
    REQUIRE(ref.has_value());
    CHECK(t.same_point({std::get<0>(*ref), std::get<1>(*ref)}, p));
  }
}

TEST_CASE("explicit atlas accepts wall-compatible gluings only") {
  ApartmentModel m = TreeAtlas::line_model();
  AtlasSpec spec;
  spec.windows = {enclose(m, {{Rat(0)}, {Rat(3)}}), enclose(m, {{Rat(0)}, {Rat(3)}})};
  AtlasSpec::GluingSpec g;
  g.a = 0;
  g.b = 1;
  g.shift = {Rat(-2)};
  g.domain = enclose(m, {{Rat(2)}, {Rat(3)}});
  spec.gluings = {g};
  ExplicitAtlas atlas(m, spec);
  CHECK(atlas.chart_count() == 2);
  CHECK(atlas.neighbors(0) == std::vector<int>{1});
  CHECK(atlas.same_point({0, {Rat(5, 2)}}, {1, {Rat(1, 2)}}));
  CHECK(!atlas.same_point({0, {Rat(1)}}, {1, {Rat(1)}}));
  MasurePoint nf = atlas.normal_form({1, {Rat(1, 2)}});
  CHECK(nf.chart == 0);
  CHECK(nf.coords == RatVec{Rat(5, 2)});

  AtlasSpec bad = spec;
  bad.gluings[0].shift = {Rat(1, 2)};
  CHECK_THROWS_AS(ExplicitAtlas(m, bad), InputError);

  AtlasSpec mism = spec;
  mism.gluings[0].shift = {Rat(-2), Rat(0)};
  CHECK_THROWS_AS(ExplicitAtlas(m, mism), InputError);
}

TEST_CASE("explicit atlas cocycles") {
  ApartmentModel m = TreeAtlas::line_model();
  AtlasSpec spec;
  for (int i = 0; i < 3; ++i) spec.windows.push_back(enclose(m, {{Rat(0)}, {Rat(2)}}));
  for (auto [a, b] : {std::pair(0, 1), std::pair(1, 2), std::pair(2, 0)}) {
    AtlasSpec::GluingSpec g;
    g.a = a;
    g.b = b;
    g.shift = {Rat(0)};
    g.domain = enclose(m, {{Rat(0)}, {Rat(2)}});
    spec.gluings.push_back(g);
  }
  ExplicitAtlas atlas(m, spec);
  CheckReport r = check_cocycles(atlas, 100);
  CHECK(r.ok());
  CHECK(r.verified > 0);
}

TEST_CASE("retraction folds the tree onto one chart") {
  TreeAtlas t(2, 2);
  const ApartmentModel& m = t.model();
  int c = t.chart_of_leaves(4, 6);  // 4-1-0-2-6
  Chimney right = sector_center(m, {Rat(2)}, {Rat(1)});
  Chimney left = sector_center(m, {Rat(2)}, {-Rat(1)});

  int c89 = t.chart_of_leaves(8, 9);
  MasurePoint v3{c89, {Rat(t.position_in(c89, 3))}};
  CHECK(t.retract_point(c, right, v3) == RatVec{Rat(1)});
  CHECK(t.retract_point(c, left, v3) == RatVec{Rat(3)});

  MasurePoint on_chart{c, {Rat(7, 2)}};
  CHECK(t.retract_point(c, right, on_chart) == RatVec{Rat(7, 2)});
  CHECK(t.retract_point(c, left, on_chart) == RatVec{Rat(7, 2)});

  SUBCASE("isometric on a chart sharing the center end") {
    int c56 = t.chart_of_leaves(5, 6);
    Chimney toward6 = sector_center(m, {Rat(2)}, {Rat(1)});
    for (int k = 0; k <= 4; ++k) {
      MasurePoint p{c56, {Rat(k)}};
      RatVec img = t.retract_point(c, toward6, p);
      CHECK(img == RatVec{Rat(k)});
    }
  }
  SUBCASE("independent of the representing chart") {
    int c48 = t.chart_of_leaves(4, 8);  // 4-1-0-3-8, vertex 3 at position 3
    MasurePoint v3b{c48, {Rat(3)}};
    CHECK(t.retract_point(c, right, v3b) == RatVec{Rat(1)});
    CHECK(t.retract_point(c, left, v3b) == RatVec{Rat(3)});
  }
  SUBCASE("idempotent") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
      int cc = static_cast<int>(rng() % t.chart_count());
      Rat x(static_cast<long>(rng() % (4 * t.window_length(cc) + 1)), 4);
      x.canonicalize();
      RatVec img = t.retract_point(c, left, {cc, {x}});
      CHECK(t.retract_point(c, left, {c, img}) == img);
    }
  }
  SUBCASE("agrees with the generic search") {
    for (const Chimney* ch : {&right, &left})
      for (int v = 0; v < t.vertex_count(); ++v) {
        int vc = t.charts_through_vertex(v)[0];
        MasurePoint p{vc, {Rat(t.position_in(vc, v))}};
        CHECK(retract_point_bfs(t, c, *ch, p) == t.retract_point(c, *ch, p));
      }
  }
  SUBCASE("center must be a full sector germ") {
    Chimney at_wall = sector_center(m, {Rat(2)}, {Rat(1)});
    FacetAddress pt;
    pt.sign = +1;
    pt.w = m.weyl().identity();
    pt.J = {0};
    Chimney point_dir = make_chimney(m, {Rat(2)}, pt, pt);
    CHECK_THROWS_AS(t.retract_point(c, point_dir, v3), InputError);
    (void)at_wall;
  }
}

TEST_CASE("folded segments") {
  TreeAtlas t(2, 2);
  const ApartmentModel& m = t.model();
  int c = t.chart_of_leaves(4, 6);
  Chimney neg = sector_center(m, {Rat(2)}, {-Rat(1)});
  Chimney pos = sector_center(m, {Rat(2)}, {Rat(1)});
  int c68 = t.chart_of_leaves(6, 8);

  SUBCASE("two pieces, positively folded toward the negative center") {
    MasurePoint x{c68, {Rat(0)}};  // vertex 6
    MasurePoint y{c68, {Rat(4)}};  // vertex 8
    FoldedSegment f = retract_segment(t, c, neg, x, y);
    REQUIRE(f.breakpoints.size() == 3);
    CHECK(f.breakpoints[0] == RatVec{Rat(4)});
    CHECK(f.breakpoints[1] == RatVec{Rat(2)});
    CHECK(f.breakpoints[2] == RatVec{Rat(4)});
    REQUIRE(f.folds.size() == 1);
    CHECK(f.folds[0].w_plus.word.empty());
    CHECK(f.folds[0].w_minus.word == std::vector<int>{0});
    CHECK(f.folds[0].bruhat_ok);
    CHECK(f.positively_folded());
  }
  SUBCASE("the positive center folds the same segment the wrong way") {
    int c48 = t.chart_of_leaves(4, 8);
    MasurePoint x{c48, {Rat(0)}};  // vertex 4
    MasurePoint y{c48, {Rat(4)}};  // vertex 8
    FoldedSegment f = retract_segment(t, c, pos, x, y);
    REQUIRE(f.folds.size() == 1);
    CHECK(!f.folds[0].bruhat_ok);
    CHECK(!f.positively_folded());
  }
  SUBCASE("straight on the center chart") {
    FoldedSegment f = retract_segment(t, c, neg, {c, {Rat(1, 2)}}, {c, {Rat(3)}});
    CHECK(f.breakpoints.size() == 2);
    CHECK(f.folds.empty());
    CHECK(f.positively_folded());
  }
  SUBCASE("degenerate segment") {
    FoldedSegment f = retract_segment(t, c, neg, {c68, {Rat(1)}}, {c68, {Rat(1)}});
    CHECK(f.breakpoints.size() == 1);
    CHECK(f.folds.empty());
  }
  SUBCASE("every vertex pair folds positively toward the negative center") {
    for (int u = 0; u < t.vertex_count(); ++u)
      for (int v = 0; v < t.vertex_count(); ++v) {
        if (u == v) continue;
        int cu = t.charts_through_vertex(u)[0];
        int cv = t.charts_through_vertex(v)[0];
        MasurePoint x{cu, {Rat(t.position_in(cu, u))}};
        MasurePoint y{cv, {Rat(t.position_in(cv, v))}};
        FoldedSegment f = retract_segment(t, c, neg, x, y);
        CHECK(f.positively_folded());
        CHECK(f.breakpoints.size() == f.folds.size() + 2);
      }
  }
}

TEST_CASE("product atlas") {
  ProductTreeAtlas g(2, 2, 2);
  const ApartmentModel& m = g.model();
  CHECK(g.chart_count() == 225);
  CHECK(g.factors_of(g.chart_id(3, 7)) == std::pair(3, 7));

  const TreeAtlas& t = g.factor(0);
  int f46 = t.chart_of_leaves(4, 6), f68 = t.chart_of_leaves(6, 8);
  int center = g.chart_id(f46, f46);

  SUBCASE("windows are boxes") {
    EnclosureRep w = g.window(center);
    CHECK(contains(m, w, {Rat(0), Rat(4)}));
    CHECK(contains(m, w, {Rat(2), Rat(1, 2)}));
    CHECK(!contains(m, w, {Rat(5), Rat(2)}));
    CHECK(!contains(m, w, {Rat(2), -Rat(1)}));
  }
  SUBCASE("normal form splits into factors") {
    MasurePoint p{g.chart_id(f68, f46), {Rat(1), Rat(2)}};
    MasurePoint nf = g.normal_form(p);
    auto [n1, n2] = g.factors_of(nf.chart);
    MasurePoint r1 = t.normal_form({f68, {Rat(1)}});
    CHECK(n1 == r1.chart);
    CHECK(nf.coords[0] == r1.coords[0]);
    CHECK(n2 == t.normal_form({f46, {Rat(2)}}).chart);
    CHECK(g.same_point(p, nf));
  }
  SUBCASE("fold in one factor") {
    Chimney neg = sector_center(m, {Rat(2), Rat(2)}, {-Rat(1), -Rat(1)});
    MasurePoint x{g.chart_id(f68, f46), {Rat(0), Rat(2)}};
    MasurePoint y{g.chart_id(f68, f46), {Rat(4), Rat(2)}};
    FoldedSegment f = retract_segment(g, center, neg, x, y);
    REQUIRE(f.folds.size() == 1);
    CHECK(f.folds[0].w_minus == m.weyl().simple(0));
    CHECK(f.folds[0].w_plus.word.empty());
    CHECK(f.positively_folded());
  }
  SUBCASE("fold in both factors") {
    Chimney neg = sector_center(m, {Rat(2), Rat(2)}, {-Rat(1), -Rat(1)});
    int cc = g.chart_id(f68, f68);
    FoldedSegment f = retract_segment(g, center, neg, {cc, {Rat(0), Rat(0)}},
                                      {cc, {Rat(4), Rat(4)}});
    REQUIRE(f.folds.size() == 1);
    CHECK(f.folds[0].w_minus == m.weyl().reduce(std::vector<int>{0, 1}));
    CHECK(f.positively_folded());
  }
  SUBCASE("global preorder is decided on the grid") {
    MasurePoint x{center, {Rat(0), Rat(0)}};
    MasurePoint y{g.chart_id(f68, f46), {Rat(4), Rat(1)}};
    CHECK(global_leq(g, x, y));
    CHECK(global_leq(g, y, x));  // finite type: the cone order is total
  }
  SUBCASE("retraction matches the generic search") {
    Chimney neg = sector_center(m, {Rat(2), Rat(2)}, {-Rat(1), -Rat(1)});
    MasurePoint p{g.chart_id(f68, f68), {Rat(4), Rat(3)}};
    CHECK(g.retract_point(center, neg, p) == retract_point_bfs(g, center, neg, p));
  }
}

TEST_CASE("incomplete atlases say so") {
  ApartmentModel m = TreeAtlas::line_model();
  AtlasSpec spec;
  spec.windows = {enclose(m, {{Rat(0)}, {Rat(2)}}), enclose(m, {{Rat(0)}, {Rat(2)}})};
  ExplicitAtlas atlas(m, spec);  // two charts, no gluings
  CHECK_THROWS_AS(global_leq(atlas, {0, {Rat(0)}}, {1, {Rat(1)}}), IncompleteAtlas);
  Chimney neg = sector_center(m, {Rat(1)}, {-Rat(1)});
  CHECK_THROWS_AS(retract_point_bfs(atlas, 0, neg, {1, {Rat(1)}}, 4), IncompleteAtlas);
  CHECK_THROWS_AS(retract_segment(atlas, 0, neg, {0, {Rat(0)}}, {1, {Rat(1)}}),
                  IncompleteAtlas);
}

TEST_CASE("axiom checkers pass on the tree") {
  TreeAtlas t(2, 2);
  AxiomCheckOptions opts;

  CheckReport ma2 = check_MA2(t, opts);
  CHECK(ma2.ok());
  CHECK(ma2.enumerated > 0);
  CHECK(ma2.inconclusive == 0);

  CheckReport ma4 = check_MA4(t, opts);
  CHECK(ma4.ok());
  CHECK(ma4.enumerated == 6 * (10 + 18));  // ends times point and germ facets

  CheckReport mao = check_MAO(t, opts);
  CHECK(mao.ok());
  long long expect = 0;
  for (int c = 0; c < t.chart_count(); ++c) {
    long long n = t.window_length(c) + 1;
    expect += n * (n - 1) / 2;
  }
  CHECK(mao.enumerated == expect);

  CheckReport th = check_thickness(t);
  CHECK(th.ok());
  CHECK(th.enumerated == 4);
  CHECK(th.verified == 4);

  CheckReport half = check_half_apartment_unions(t);
  CHECK(half.ok());
  CHECK(half.enumerated == 60);

  CheckReport co = check_cocycles(t, 200);
  CHECK(co.ok());
  CHECK(co.verified > 0);
}

TEST_CASE("axiom checkers on the thin tree") {
  TreeAtlas t(1, 3);  // a single chart
  CheckReport ma2 = check_MA2(t);
  CHECK(ma2.ok());
  CHECK(ma2.enumerated == 0);
  CheckReport mao = check_MAO(t);
  CHECK(mao.ok());
  CHECK(mao.enumerated == 21);
  CheckReport th = check_thickness(t);
  CHECK(th.ok());
  CHECK(!th.notes.empty());
}

TEST_CASE("axiom checkers on the product and explicit atlases") {
  ProductTreeAtlas g(2, 2, 1);
  AxiomCheckOptions opts;
  opts.sample_cap = 60;
  CheckReport ma2 = check_MA2(g, opts);
  CHECK(ma2.ok());
  CHECK(ma2.verified > 0);
  CheckReport ma4 = check_MA4(g, opts);
  CHECK(ma4.ok());
  CheckReport mao = check_MAO(g, opts);
  CHECK(mao.ok());
  CheckReport co = check_cocycles(g, 100);
  CHECK(co.ok());

  ApartmentModel m = TreeAtlas::line_model();
  AtlasSpec spec;
  spec.windows = {enclose(m, {{Rat(0)}, {Rat(3)}}), enclose(m, {{Rat(0)}, {Rat(3)}})};
  AtlasSpec::GluingSpec gs;
  gs.a = 0;
  gs.b = 1;
  gs.shift = {Rat(-2)};
  gs.domain = enclose(m, {{Rat(2)}, {Rat(3)}});
  spec.gluings = {gs};
  ExplicitAtlas ex(m, spec);
  CheckReport ema2 = check_MA2(ex, opts);
  CHECK(ema2.ok());
  CHECK(ema2.verified > 0);
}

TEST_CASE("deep tree smoke") {
  TreeAtlas t(2, 6);
  int c = t.chart_of_leaves(t.leaves()[0], t.leaves()[50]);
  CHECK(t.in_window(c, {Rat(t.window_length(c))}));
  MasurePoint p{c, {Rat(3)}};
  MasurePoint nf = t.normal_form(p);
  CHECK(t.same_point(p, nf));
  Chimney neg = sector_center(t.model(), {Rat(1)}, {-Rat(1)});
  int c2 = t.chart_of_leaves(t.leaves()[4], t.leaves()[90]);
  RatVec img = t.retract_point(c, neg, {c2, {Rat(5)}});
  CHECK(t.in_window(c, img) == contains(t.model(), t.window(c), img));
}

TEST_CASE("direction vectors canonicalize facet addresses") {
  ApartmentModel m = TreeAtlas::line_model();
  FacetAddress plus{+1, m.weyl().identity(), {}};
  FacetAddress minus_w{+1, m.weyl().simple(0), {}};
  FacetAddress minus_s{-1, m.weyl().identity(), {}};
  CHECK(direction_vector(m, plus) == RatVec{Rat(1)});
  CHECK(direction_vector(m, minus_w) == RatVec{-Rat(1)});
  CHECK(direction_vector(m, minus_s) == RatVec{-Rat(1)});
}
