#include "masure/atlas.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "detail.hpp"
#include "masure/tits_cone.hpp"

namespace masure {

namespace {

void require_center(const ApartmentModel& m, const Chimney& center) {
  require(center.direction.J.empty(), "retraction center must have chamber direction");
  bool full = true;
  for (int idx = 0; idx < m.root_count(); ++idx) {
    int op = m.opposite(idx);
    if (op <= idx) continue;
    const auto& a = center.rep.levels[idx];
    const auto& b = center.rep.levels[op];
    if (a && b && !a->strict && !b->strict && a->k + b->k == 0) full = false;
  }
  require(full, "retraction center germ is not full");
}

int center_end_of(const ApartmentModel& m, const Chimney& center) {
  RatVec dv = direction_vector(m, center.direction);
  require(dv.size() == 1 && dv[0] != 0, "center direction is degenerate");
  return dv[0] < 0 ? -1 : +1;
}

}  // namespace

RatVec direction_vector(const ApartmentModel& m, const FacetAddress& dir) {
  int rank = m.weyl().rank(), n = m.dim();
  RatMat a(rank, n);
  RatVec b(rank, Rat(0));
  for (int i = 0; i < rank; ++i) {
    const RatVec& f = m.realization().alpha(i);
    for (int d = 0; d < n; ++d) a.at(i, d) = f[d];
    b[i] = std::find(dir.J.begin(), dir.J.end(), i) == dir.J.end() ? Rat(1) : Rat(0);
  }
  auto u = solve(a, b);
  require(u.has_value(), "facet direction has no realization vector");
  RatVec v = mat_apply(dir.w.mat, *u);
  if (dir.sign < 0)
    for (auto& c : v) c = -c;
  return v;
}

bool Atlas::in_window(int chart, const RatVec& x) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  return contains(model_, window(chart), x);
}

AffineMap Atlas::gluing_map(const Gluing& g) const {
  return affine_from(model_, g.w, g.shift);
}

MasurePoint Atlas::normal_form(const MasurePoint& p, int path_cap) const {
  return normal_form_bfs(*this, p, path_cap);
}

bool Atlas::same_point(const MasurePoint& p, const MasurePoint& q, int path_cap) const {
  MasurePoint a = normal_form(p, path_cap), b = normal_form(q, path_cap);
  return a.chart == b.chart && a.coords == b.coords;
}

std::optional<std::tuple<int, RatVec, RatVec>> Atlas::common_chart(const MasurePoint& p,
                                                                  const MasurePoint& q,
                                                                  int path_cap) const {
  return common_chart_bfs(*this, p, q, path_cap);
}

RatVec Atlas::retract_point(int center_chart, const Chimney& center, const MasurePoint& p,
                            int path_cap) const {
  return retract_point_bfs(*this, center_chart, center, p, path_cap);
}


MasurePoint normal_form_bfs(const Atlas& atlas, const MasurePoint& p, int path_cap) {
  auto seen = reach_map(atlas, p, path_cap);
  auto it = seen.begin();
  return {it->first, it->second};
}

std::optional<std::tuple<int, RatVec, RatVec>> common_chart_bfs(const Atlas& atlas,
                                                               const MasurePoint& p,
                                                               const MasurePoint& q,
                                                               int path_cap) {
  auto rp = reach_map(atlas, p, path_cap), rq = reach_map(atlas, q, path_cap);
  for (const auto& [c, xp] : rp) {
    auto it = rq.find(c);
    if (it != rq.end()) return std::make_tuple(c, xp, it->second);
  }
  return std::nullopt;
}

RatVec retract_point_bfs(const Atlas& atlas, int center_chart, const Chimney& center,
                         const MasurePoint& p, int path_cap) {
  const ApartmentModel& m = atlas.model();
  require(center_chart >= 0 && center_chart < atlas.chart_count(), "chart id out of range");
  require_center(m, center);
  require(atlas.in_window(center_chart, center.base), "center base outside its chart");

  RatVec dv = direction_vector(m, center.direction);
  EnclosureRep win = atlas.window(center_chart);
  std::optional<Rat> tmax;
  for (int idx = 0; idx < m.root_count(); ++idx) {
    if (!win.levels[idx]) continue;
    Rat c = dot(m.root(idx).form, dv);
    if (c >= 0) continue;
    Rat bound = (win.levels[idx]->k + dot(m.root(idx).form, center.base)) / -c;
    if (!tmax || bound < *tmax) tmax = bound;
  }
  require(tmax.has_value() && *tmax >= 0, "center ray leaves the window immediately");
  RatVec probe1 = vec_add(center.base, vec_scale(*tmax, dv));
  RatVec probe2 = vec_add(center.base, vec_scale(*tmax - Rat(1, 4), dv));

  struct St {
    int chart;
    GroupElement w;  // map chart -> center chart
    RatVec shift;
    EnclosureRep dom;  // identified region, center-chart coordinates
  };
  std::vector<St> accepted;
  std::vector<std::pair<int, std::pair<RatMat, RatVec>>> visited;
  auto mark = [&](int c, const GroupElement& w, const RatVec& t) {
    for (const auto& v : visited)
      if (v.first == c && v.second.first == w.mat && v.second.second == t) return false;
    visited.push_back({c, {w.mat, t}});
    return true;
  };

  St start{center_chart, m.weyl().identity(), RatVec(m.dim(), Rat(0)), win};
  mark(start.chart, start.w, start.shift);
  std::vector<St> cur{start};
  for (int depth = 0; depth <= path_cap && !cur.empty(); ++depth) {
    for (const auto& s : cur)
      if (contains(m, s.dom, probe1) && contains(m, s.dom, probe2)) accepted.push_back(s);
    if (depth == path_cap || visited.size() > 4096) break;
    std::vector<St> next;
    for (const auto& s : cur)
      for (int b : atlas.neighbors(s.chart))
        for (const auto& g : atlas.gluings(b, s.chart)) {
          GroupElement w2 = m.weyl().mul(s.w, g.w);
          RatVec t2 = vec_add(mat_apply(s.w.mat, g.shift), s.shift);
          if (!mark(b, w2, t2)) continue;
          EnclosureRep dom2 = intersect_reps(s.dom, transform(m, g.domain, w2, t2));
          next.push_back({b, w2, t2, dom2});
        }
    cur = std::move(next);
  }

  auto rp = reach_map(atlas, p, path_cap);
  std::optional<RatVec> image;
  for (const auto& s : accepted) {
    auto it = rp.find(s.chart);
    if (it == rp.end()) continue;
    RatVec img = vec_add(mat_apply(s.w.mat, it->second), s.shift);
    if (!image) image = img;
    else if (*image != img)
      throw std::logic_error("retraction image depends on the chart");
  }
  if (!image) throw IncompleteAtlas("no chart contains both the point and a center shortening");
  return *image;
}

/* ---------------- tree atlas ---------------- */

ApartmentModel TreeAtlas::line_model() {
  CoxeterDatum d = CoxeterDatum::from_gcm({{2}});
  Realization r = Realization::custom(d, 1, {RatVec{Rat(1)}}, {RatVec{Rat(2)}});
  return ApartmentModel(d, r, {Rat(1)});
}

TreeAtlas::TreeAtlas(int q, int depth, long long max_charts)
    : Atlas(line_model()), q_(q), depth_(depth) {
  require(q >= 1 && depth >= 1, "tree atlas needs q >= 1 and depth >= 1");
  parent_ = {-1};
  depth_of_ = {0};
  children_ = {{}};
  for (int d = 1; d <= depth; ++d) {
    int sz = static_cast<int>(parent_.size());
    for (int v = 0; v < sz; ++v) {
      if (depth_of_[v] != d - 1) continue;
      int n = (v == 0) ? q + 1 : q;
      for (int k = 0; k < n; ++k) {
        int id = static_cast<int>(parent_.size());
        parent_.push_back(v);
        depth_of_.push_back(d);
        children_.push_back({});
        children_[v].push_back(id);
      }
    }
  }
  leaf_rank_.assign(parent_.size(), -1);
  for (int v = 0; v < static_cast<int>(parent_.size()); ++v)
    if (depth_of_[v] == depth_) {
      leaf_rank_[v] = static_cast<int>(leaves_.size());
      leaves_.push_back(v);
    }
  int nl = static_cast<int>(leaves_.size());
  long long n_charts = static_cast<long long>(nl) * (nl - 1) / 2;
  {
    std::ostringstream os;
    os << "tree atlas would have " << n_charts << " charts, over the limit " << max_charts;
    require(n_charts <= max_charts, os.str());
  }
  for (int i = 0; i < nl; ++i)
    for (int j = i + 1; j < nl; ++j) chart_leaves_.push_back({leaves_[i], leaves_[j]});

  int nc = static_cast<int>(chart_leaves_.size());
  paths_.resize(nc);
  pos_.assign(nc, std::vector<short>(parent_.size(), -1));
  windows_.resize(nc);
  least_chart_vertex_.assign(parent_.size(), -1);
  least_chart_edge_.assign(parent_.size(), -1);
  for (int c = 0; c < nc; ++c) {
    paths_[c] = path_between(chart_leaves_[c].first, chart_leaves_[c].second);
    const auto& p = paths_[c];
    for (int k = 0; k < static_cast<int>(p.size()); ++k) {
      pos_[c][p[k]] = static_cast<short>(k);
      if (least_chart_vertex_[p[k]] < 0) least_chart_vertex_[p[k]] = c;
      if (k > 0) {
        int child = parent_[p[k]] == p[k - 1] ? p[k] : p[k - 1];
        if (least_chart_edge_[child] < 0) least_chart_edge_[child] = c;
      }
    }
    int len = static_cast<int>(p.size()) - 1;
    windows_[c] = enclose(model_, {RatVec{Rat(0)}, RatVec{Rat(len)}});
  }
}

int TreeAtlas::chart_of_leaves(int u, int v) const {
  require(u >= 0 && u < vertex_count() && v >= 0 && v < vertex_count() && u != v &&
              leaf_rank_[u] >= 0 && leaf_rank_[v] >= 0,
          "not a window leaf pair");
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(chart_leaves_.begin(), chart_leaves_.end(), std::pair(u, v));
  require(it != chart_leaves_.end() && *it == std::pair(u, v), "not a window leaf pair");
  return static_cast<int>(it - chart_leaves_.begin());
}

int TreeAtlas::dist(int u, int v) const {
  int d = 0;
  while (depth_of_[u] > depth_of_[v]) u = parent_[u], ++d;
  while (depth_of_[v] > depth_of_[u]) v = parent_[v], ++d;
  while (u != v) u = parent_[u], v = parent_[v], d += 2;
  return d;
}

std::vector<int> TreeAtlas::path_between(int u, int v) const {
  std::vector<int> left, right;
  int a = u, b = v;
  while (depth_of_[a] > depth_of_[b]) left.push_back(a), a = parent_[a];
  while (depth_of_[b] > depth_of_[a]) right.push_back(b), b = parent_[b];
  while (a != b) {
    left.push_back(a), right.push_back(b);
    a = parent_[a], b = parent_[b];
  }
  left.push_back(a);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

EnclosureRep TreeAtlas::window(int chart) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  return windows_[chart];
}

std::vector<Gluing> TreeAtlas::gluings(int a, int b) const {
  require(a >= 0 && a < chart_count() && b >= 0 && b < chart_count(), "chart id out of range");
  if (a == b) return {};
  std::vector<std::pair<int, int>> common;  // (pos in a, pos in b)
  for (int v : paths_[b])
    if (pos_[a][v] >= 0) common.push_back({pos_[a][v], pos_[b][v]});
  if (common.empty()) return {};
  std::sort(common.begin(), common.end());

  std::vector<Gluing> out;
  Rat lo(common.front().first), hi(common.back().first);
  EnclosureRep dom = enclose(model_, {RatVec{lo}, RatVec{hi}});
  if (common.size() >= 2) {
    int sigma = common[1].second > common[0].second ? 1 : -1;
    long t = common[0].second - sigma * common[0].first;
    out.push_back({a, b, sigma > 0 ? model_.weyl().identity() : model_.weyl().simple(0),
                   RatVec{Rat(t)}, dom});
  } else {
    for (int sigma : {1, -1}) {
      long t = common[0].second - sigma * common[0].first;
      out.push_back({a, b, sigma > 0 ? model_.weyl().identity() : model_.weyl().simple(0),
                     RatVec{Rat(t)}, dom});
    }
  }
  return out;
}

std::vector<int> TreeAtlas::neighbors(int chart) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  std::vector<int> out;
  for (int b = 0; b < chart_count(); ++b) {
    if (b == chart) continue;
    for (int v : paths_[b])
      if (pos_[chart][v] >= 0) {
        out.push_back(b);
        break;
      }
  }
  return out;
}

TreeAtlas::TreePoint TreeAtlas::to_tree(int chart, const Rat& x) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  long long k = rat_floor(x);
  const auto& p = paths_[chart];
  require(x >= 0 && x <= Rat(static_cast<long>(p.size() - 1)), "coordinate outside window");
  if (x == Rat(static_cast<long>(k))) return {p[k], -1, Rat(0)};
  int a = p[k], b = p[k + 1];
  Rat t = x - Rat(static_cast<long>(k));
  if (parent_[b] == a) return {a, b, t};
  return {b, a, Rat(1) - t};
}

std::optional<Rat> TreeAtlas::to_chart(int chart, const TreePoint& p) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  if (p.is_vertex()) {
    int k = pos_[chart][p.a];
    if (k < 0) return std::nullopt;
    return Rat(k);
  }
  int pa = pos_[chart][p.a], pb = pos_[chart][p.b];
  if (pa < 0 || pb < 0 || std::abs(pa - pb) != 1) return std::nullopt;
  return Rat(pa) + p.t * Rat(pb - pa);
}

TreeAtlas::TreePoint TreeAtlas::locate_point(const MasurePoint& p) const {
  require(p.chart >= 0 && p.chart < chart_count(), "chart id out of range");
  require(p.coords.size() == 1, "tree points have one coordinate");
  return to_tree(p.chart, p.coords[0]);
}

Rat TreeAtlas::tree_dist(const TreePoint& x, const TreePoint& y) const {
  if (!x.is_vertex() && !y.is_vertex() && x.a == y.a && x.b == y.b) return abs(x.t - y.t);
  auto anchors = [](const TreePoint& p) {
    std::vector<std::pair<int, Rat>> a;
    if (p.is_vertex()) a.push_back({p.a, Rat(0)});
    else {
      a.push_back({p.a, p.t});
      a.push_back({p.b, Rat(1) - p.t});
    }
    return a;
  };
  std::optional<Rat> best;
  for (const auto& [va, oa] : anchors(x))
    for (const auto& [vb, ob] : anchors(y)) {
      Rat d = Rat(dist(va, vb)) + oa + ob;
      if (!best || d < *best) best = d;
    }
  return *best;
}

int TreeAtlas::junction(int chart, const TreePoint& p) const {
  std::optional<Rat> best;
  int arg = -1;
  for (int v : paths_[chart]) {
    Rat d = tree_dist(p, {v, -1, Rat(0)});
    if (!best || d < *best) best = d, arg = v;
  }
  return arg;
}

Rat TreeAtlas::tree_retract(int center_chart, int center_end, const TreePoint& p) const {
  auto direct = to_chart(center_chart, p);
  if (direct) return *direct;
  int j = junction(center_chart, p);
  Rat d = tree_dist(p, {j, -1, Rat(0)});
  return Rat(pos_[center_chart][j]) + Rat(-center_end) * d;
}

int TreeAtlas::chart_through(const TreePoint& x, const TreePoint& y) const {
  auto far_anchor = [&](const TreePoint& p, int ref) {
    if (p.is_vertex()) return p.a;
    return dist(p.a, ref) > dist(p.b, ref) ? p.a : p.b;
  };
  int fx = far_anchor(x, y.a);
  int fy = far_anchor(y, fx);
  fx = far_anchor(x, fy);
  std::vector<int> p0 = path_between(fx, fy);
  if (p0.size() == 1 && is_leaf(p0[0])) p0.push_back(parent_[p0[0]]);
  auto extend = [&](std::vector<int>& path, bool front) {
    int guard = 4 * depth_ + 8;
    while (guard-- > 0) {
      int end = front ? path.front() : path.back();
      if (is_leaf(end)) return;
      int prev = -1;
      if (path.size() >= 2) prev = front ? path[1] : path[path.size() - 2];
      int next = -1;
      for (int c : children_[end])
        if (c != prev) {
          next = c;
          break;
        }
      if (next < 0) next = parent_[end];
      require(next >= 0 && next != prev, "geodesic extension failed");
      if (front) path.insert(path.begin(), next);
      else path.push_back(next);
    }
    require(false, "geodesic extension failed");
  };
  extend(p0, true);
  extend(p0, false);
  return chart_of_leaves(p0.front(), p0.back());
}

std::vector<int> TreeAtlas::charts_through_vertex(int v) const {
  std::vector<int> out;
  for (int c = 0; c < chart_count(); ++c)
    if (pos_[c][v] >= 0) out.push_back(c);
  return out;
}

MasurePoint TreeAtlas::normal_form(const MasurePoint& p, int) const {
  TreePoint tp = locate_point(p);
  int c = tp.is_vertex() ? least_chart_vertex_[tp.a] : least_chart_edge_[tp.b];
  auto x = to_chart(c, tp);
  return {c, {*x}};
}

std::optional<std::tuple<int, RatVec, RatVec>> TreeAtlas::common_chart(const MasurePoint& p,
                                                                      const MasurePoint& q,
                                                                      int) const {
  TreePoint tx = locate_point(p), ty = locate_point(q);
  int c = chart_through(tx, ty);
  auto xp = to_chart(c, tx), xq = to_chart(c, ty);
  require(xp && xq, "geodesic chart misses its endpoints");
  return std::make_tuple(c, RatVec{*xp}, RatVec{*xq});
}

RatVec TreeAtlas::retract_point(int center_chart, const Chimney& center, const MasurePoint& p,
                                int) const {
  require(center_chart >= 0 && center_chart < chart_count(), "chart id out of range");
  require_center(model_, center);
  require(in_window(center_chart, center.base), "center base outside its chart");
  int end = center_end_of(model_, center);
  return {tree_retract(center_chart, end, locate_point(p))};
}

/* ---------------- product atlas ---------------- */

ApartmentModel ProductTreeAtlas::grid_model() {
  CoxeterDatum d = CoxeterDatum::from_gcm({{2, 0}, {0, 2}});
  Realization r = Realization::custom(d, 2, {RatVec{Rat(1), Rat(0)}, RatVec{Rat(0), Rat(1)}},
                                      {RatVec{Rat(2), Rat(0)}, RatVec{Rat(0), Rat(2)}});
  return ApartmentModel(d, r, {Rat(1), Rat(1)});
}

ProductTreeAtlas::ProductTreeAtlas(int q1, int q2, int depth, long long max_charts)
    : Atlas(grid_model()), t1_(q1, depth, max_charts), t2_(q2, depth, max_charts) {
  long long n = static_cast<long long>(t1_.chart_count()) * t2_.chart_count();
  std::ostringstream os;
  os << "product atlas would have " << n << " charts, over the limit " << max_charts;
  require(n <= max_charts, os.str());
}

int ProductTreeAtlas::chart_count() const { return t1_.chart_count() * t2_.chart_count(); }

std::pair<int, int> ProductTreeAtlas::factors_of(int chart) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  return {chart / t2_.chart_count(), chart % t2_.chart_count()};
}

namespace {

/* Move levels of a line rep onto the grid rep slots of one factor. */
void splice_rep(const ApartmentModel& grid, const ApartmentModel& line, int factor,
                const EnclosureRep& src, EnclosureRep& dst) {
  int plus_line = line.root_index({1}), minus_line = line.root_index({-1});
  std::vector<long long> cp(2, 0), cm(2, 0);
  cp[factor] = 1;
  cm[factor] = -1;
  dst.levels[grid.root_index(cp)] = src.levels[plus_line];
  dst.levels[grid.root_index(cm)] = src.levels[minus_line];
}

}  // namespace

EnclosureRep ProductTreeAtlas::window(int chart) const {
  auto [c1, c2] = factors_of(chart);
  EnclosureRep out;
  out.levels.assign(model_.root_count(), std::nullopt);
  out.truncation = model_.truncation();
  splice_rep(model_, t1_.model(), 0, t1_.window(c1), out);
  splice_rep(model_, t2_.model(), 1, t2_.window(c2), out);
  return out;
}

std::vector<Gluing> ProductTreeAtlas::gluings(int a, int b) const {
  auto [a1, a2] = factors_of(a);
  auto [b1, b2] = factors_of(b);
  if (a == b) return {};
  struct Part {
    std::vector<int> word;
    Rat shift;
    EnclosureRep domain;
  };
  auto parts = [&](const TreeAtlas& t, int fa, int fb, int letter) {
    std::vector<Part> out;
    if (fa == fb) {
      out.push_back({{}, Rat(0), t.window(fa)});
      return out;
    }
    for (const auto& g : t.gluings(fa, fb))
      out.push_back({g.w.word.empty() ? std::vector<int>{} : std::vector<int>{letter},
                     g.shift[0], g.domain});
    return out;
  };
  std::vector<Gluing> out;
  for (const auto& p1 : parts(t1_, a1, b1, 0))
    for (const auto& p2 : parts(t2_, a2, b2, 1)) {
      std::vector<int> word = p1.word;
      word.insert(word.end(), p2.word.begin(), p2.word.end());
      Gluing g;
      g.a = a;
      g.b = b;
      g.w = model_.weyl().reduce(word);
      g.shift = {p1.shift, p2.shift};
      g.domain.levels.assign(model_.root_count(), std::nullopt);
      g.domain.truncation = model_.truncation();
      splice_rep(model_, t1_.model(), 0, p1.domain, g.domain);
      splice_rep(model_, t2_.model(), 1, p2.domain, g.domain);
      out.push_back(std::move(g));
    }
  return out;
}

std::vector<int> ProductTreeAtlas::neighbors(int chart) const {
  auto [c1, c2] = factors_of(chart);
  std::vector<int> n1 = t1_.neighbors(c1), n2 = t2_.neighbors(c2);
  n1.push_back(c1);
  n2.push_back(c2);
  std::vector<int> out;
  for (int a : n1)
    for (int b : n2) {
      int id = chart_id(a, b);
      if (id != chart) out.push_back(id);
    }
  std::sort(out.begin(), out.end());
  return out;
}

MasurePoint ProductTreeAtlas::normal_form(const MasurePoint& p, int cap) const {
  require(p.coords.size() == 2, "grid points have two coordinates");
  auto [c1, c2] = factors_of(p.chart);
  MasurePoint n1 = t1_.normal_form({c1, {p.coords[0]}}, cap);
  MasurePoint n2 = t2_.normal_form({c2, {p.coords[1]}}, cap);
  return {chart_id(n1.chart, n2.chart), {n1.coords[0], n2.coords[0]}};
}

std::optional<std::tuple<int, RatVec, RatVec>> ProductTreeAtlas::common_chart(
    const MasurePoint& p, const MasurePoint& q, int cap) const {
  require(p.coords.size() == 2 && q.coords.size() == 2, "grid points have two coordinates");
  auto [p1, p2] = factors_of(p.chart);
  auto [q1, q2] = factors_of(q.chart);
  auto f1 = t1_.common_chart({p1, {p.coords[0]}}, {q1, {q.coords[0]}}, cap);
  auto f2 = t2_.common_chart({p2, {p.coords[1]}}, {q2, {q.coords[1]}}, cap);
  if (!f1 || !f2) return std::nullopt;
  auto& [c1, xp1, xq1] = *f1;
  auto& [c2, xp2, xq2] = *f2;
  return std::make_tuple(chart_id(c1, c2), RatVec{xp1[0], xp2[0]}, RatVec{xq1[0], xq2[0]});
}

RatVec ProductTreeAtlas::retract_point(int center_chart, const Chimney& center,
                                       const MasurePoint& p, int) const {
  require_center(model_, center);
  require(in_window(center_chart, center.base), "center base outside its chart");
  RatVec dv = direction_vector(model_, center.direction);
  require(dv.size() == 2 && dv[0] != 0 && dv[1] != 0, "center direction is degenerate");
  auto [c1, c2] = factors_of(center_chart);
  auto [p1, p2] = factors_of(p.chart);
  Rat x1 = t1_.tree_retract(c1, dv[0] < 0 ? -1 : +1, t1_.to_tree(p1, p.coords[0]));
  Rat x2 = t2_.tree_retract(c2, dv[1] < 0 ? -1 : +1, t2_.to_tree(p2, p.coords[1]));
  return {x1, x2};
}

/* ---------------- explicit atlas ---------------- */

ExplicitAtlas::ExplicitAtlas(ApartmentModel m, AtlasSpec spec) : Atlas(std::move(m)) {
  require(!spec.windows.empty(), "atlas needs at least one chart");
  for (const auto& w : spec.windows) {
    require(static_cast<int>(w.levels.size()) == model_.root_count(),
            "window levels do not match the model root table");
    require(w.truncation == model_.truncation(), "window truncation does not match the model");
  }
  windows_ = std::move(spec.windows);
  by_chart_.resize(windows_.size());
  int n = static_cast<int>(windows_.size());
  for (const auto& gs : spec.gluings) {
    require(gs.a >= 0 && gs.a < n && gs.b >= 0 && gs.b < n && gs.a != gs.b,
            "gluing chart ids out of range");
    require(gs.domain.truncation == model_.truncation(),
            "gluing domain truncation does not match the model");
    GroupElement w = model_.weyl().reduce(gs.word);
    require(gs.shift.size() == static_cast<size_t>(model_.dim()),
            "gluing translation has wrong dimension");
    for (int idx = 0; idx < model_.root_count(); ++idx) {
      if (model_.root(idx).imaginary) continue;
      Rat v = dot(model_.root(idx).form, gs.shift);
      Rat ratio = v / *model_.gamma(idx);
      if (ratio.get_den() != 1) {
        std::ostringstream os;
        os << "gluing " << gs.a << "->" << gs.b << " moves walls off the wall system: root "
           << idx << " shifts by " << rat_str(v);
        throw InputError(os.str());
      }
    }
    Gluing fwd{gs.a, gs.b, w, gs.shift, gs.domain};
    GroupElement wi = model_.weyl().inverse(w);
    RatVec si = vec_scale(Rat(-1), mat_apply(wi.mat, gs.shift));
    Gluing bwd{gs.b, gs.a, wi, si, transform(model_, gs.domain, w, gs.shift)};
    by_chart_[gs.a].push_back(std::move(fwd));
    by_chart_[gs.b].push_back(std::move(bwd));
  }
}

EnclosureRep ExplicitAtlas::window(int chart) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  return windows_[chart];
}

std::vector<Gluing> ExplicitAtlas::gluings(int a, int b) const {
  require(a >= 0 && a < chart_count() && b >= 0 && b < chart_count(), "chart id out of range");
  std::vector<Gluing> out;
  for (const auto& g : by_chart_[a])
    if (g.b == b) out.push_back(g);
  return out;
}

std::vector<int> ExplicitAtlas::neighbors(int chart) const {
  require(chart >= 0 && chart < chart_count(), "chart id out of range");
  std::set<int> s;
  for (const auto& g : by_chart_[chart]) s.insert(g.b);
  return {s.begin(), s.end()};
}

/* ---------------- retraction, folding, order ---------------- */

RatVec retract(const Atlas& atlas, int center_chart, const Chimney& center,
               const MasurePoint& p) {
  return atlas.retract_point(center_chart, center, p);
}

FoldedSegment retract_segment(const Atlas& atlas, int center_chart, const Chimney& center,
                              const MasurePoint& x, const MasurePoint& y) {
  const ApartmentModel& m = atlas.model();
  auto cc = atlas.common_chart(x, y);
  if (!cc) throw IncompleteAtlas("no chart contains both segment endpoints");
  auto& [chart, xs, ys] = *cc;
  RatVec d = vec_sub(ys, xs);

  FoldedSegment out;
  if (vec_is_zero(d)) {
    out.breakpoints.push_back(atlas.retract_point(center_chart, center, {chart, xs}));
    return out;
  }

  std::set<Rat> ts{Rat(0), Rat(1)};
  for (int idx = 0; idx < m.root_count(); ++idx) {
    if (m.root(idx).imaginary || m.root(idx).height() <= 0) continue;
    Rat a0 = dot(m.root(idx).form, xs), a1 = dot(m.root(idx).form, ys);
    if (a0 == a1) continue;
    Rat lo = std::min(a0, a1), hi = std::max(a0, a1), step = *m.gamma(idx);
    Rat v = Rat(static_cast<long>(rat_floor(lo / step) + 1)) * step;
    for (; v < hi; v += step)
      if (v > lo) ts.insert((v - a0) / (a1 - a0));
  }

  std::vector<Rat> params(ts.begin(), ts.end());
  auto at = [&](const Rat& t) { return vec_add(xs, vec_scale(t, d)); };
  std::vector<RatVec> img;
  for (const Rat& t : params)
    img.push_back(atlas.retract_point(center_chart, center, {chart, at(t)}));
  for (size_t i = 0; i + 1 < params.size(); ++i) {
    Rat mid = (params[i] + params[i + 1]) / 2;
    RatVec im = atlas.retract_point(center_chart, center, {chart, at(mid)});
    RatVec expect = vec_scale(Rat(1, 2), vec_add(img[i], img[i + 1]));
    if (im != expect) throw std::logic_error("retraction is not affine between wall crossings");
  }

  std::vector<RatVec> vels;
  for (size_t i = 0; i + 1 < params.size(); ++i)
    vels.push_back(vec_scale(Rat(1) / (params[i + 1] - params[i]), vec_sub(img[i + 1], img[i])));

  out.breakpoints.push_back(img.front());
  for (size_t i = 1; i + 1 < img.size(); ++i)
    if (vels[i] != vels[i - 1]) {
      out.breakpoints.push_back(img[i]);
      Fold f;
      auto out_loc = locate(m.weyl(), vels[i]);
      auto in_loc = locate(m.weyl(), vels[i - 1]);
      require(out_loc.status == LocateStatus::located && in_loc.status == LocateStatus::located,
              "fold germ direction could not be located");
      f.w_plus = out_loc.address.w;
      f.w_minus = in_loc.address.w;
      f.bruhat_ok = m.weyl().bruhat_leq(f.w_plus, f.w_minus);
      out.folds.push_back(std::move(f));
    }
  out.breakpoints.push_back(img.back());
  return out;
}

bool global_leq(const Atlas& atlas, const MasurePoint& x, const MasurePoint& y) {
  auto cc = atlas.common_chart(x, y);
  if (!cc) throw IncompleteAtlas("no chart contains both points");
  auto& [chart, xs, ys] = *cc;
  (void)chart;
  Tern r = vec_leq(atlas.model().weyl(), xs, ys);
  require(r != Tern::undecided, "vector preorder undecided at truncation");
  return r == Tern::yes;
}

/* ---------------- axiom checkers ---------------- */

namespace {

struct Overlap {
  int lo_a = 0, hi_a = 0;  // positions in a
  int sigma = 1;
  long long t = 0;
};

std::optional<Overlap> tree_overlap(const TreeAtlas& t, int a, int b) {
  std::vector<std::pair<int, int>> common;
  for (int v : t.path(b))
    if (t.position_in(a, v) >= 0) common.push_back({t.position_in(a, v), t.position_in(b, v)});
  if (common.empty()) return std::nullopt;
  std::sort(common.begin(), common.end());
  Overlap o;
  o.lo_a = common.front().first;
  o.hi_a = common.back().first;
  o.sigma = common.size() >= 2 && common[1].second < common[0].second ? -1 : 1;
  o.t = common[0].second - static_cast<long long>(o.sigma) * common[0].first;
  return o;
}

/* Search a gluing composition a -> b whose identified region contains cl. */
bool iso_search(const Atlas& atlas, int a, int b, const EnclosureRep& cl,
                const std::vector<RatVec>& probes, int path_cap) {
  const ApartmentModel& m = atlas.model();
  EnclosureRep win = atlas.window(a);
  struct St {
    int chart;
    GroupElement w;  // map a -> chart
    RatVec shift;
    EnclosureRep dom;  // identified region, a-coordinates
  };
  std::vector<std::tuple<int, RatMat, RatVec>> visited{
      {a, RatMat::identity(m.dim()), RatVec(m.dim(), Rat(0))}};
  std::vector<St> cur{{a, m.weyl().identity(), RatVec(m.dim(), Rat(0)), win}};
  for (int depth = 0; depth < path_cap && !cur.empty(); ++depth) {
    std::vector<St> next;
    for (const auto& s : cur)
      for (int c : atlas.neighbors(s.chart))
        for (const auto& g : atlas.gluings(s.chart, c)) {
          GroupElement w2 = m.weyl().mul(g.w, s.w);
          RatVec t2 = vec_add(mat_apply(g.w.mat, s.shift), g.shift);
          bool seen = false;
          for (const auto& v : visited)
            if (std::get<0>(v) == c && std::get<1>(v) == w2.mat && std::get<2>(v) == t2)
              seen = true;
          if (seen) continue;
          visited.push_back({c, w2.mat, t2});
          /* pull the new gluing's domain back through the map so far */
          GroupElement si = m.weyl().inverse(s.w);
          RatVec ti = vec_scale(Rat(-1), mat_apply(si.mat, s.shift));
          EnclosureRep dom2 = intersect_reps(s.dom, transform(m, g.domain, si, ti));
          if (c == b && rep_within(cl, dom2, win)) {
            bool fixed = true;
            for (const auto& p : probes) {
              RatVec imgp = vec_add(mat_apply(w2.mat, p), t2);
              if (!atlas.same_point({a, p}, {b, imgp})) fixed = false;
            }
            if (fixed) return true;
          }
          next.push_back({c, w2, t2, dom2});
          if (visited.size() > 512) return false;
        }
    cur = std::move(next);
  }
  return false;
}

void check_MA2_tree(const TreeAtlas& t, const AxiomCheckOptions&, CheckReport& r) {
  int n = t.chart_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto o = tree_overlap(t, a, b);
      if (!o) continue;
      int la = t.window_length(a);
      /* shared objects: overlap endpoints, an inward segment germ, and the
         window-end sector germs when the overlap reaches them */
      struct Obj {
        int at;
        int germ_dir;  // 0 point, +1 / -1 germ toward that side
        int need;      // overlap room the enclosure needs on that side
      };
      std::vector<Obj> objs{{o->lo_a, 0, 0}};
      if (o->hi_a > o->lo_a) {
        objs.push_back({o->hi_a, 0, 0});
        objs.push_back({o->lo_a, +1, 1});
        objs.push_back({o->hi_a, -1, 1});
      }
      if (o->lo_a == 0) objs.push_back({o->lo_a, -1, 0});
      if (o->hi_a == la) objs.push_back({o->hi_a, +1, 0});
      for (const auto& obj : objs) {
        ++r.enumerated;
        int reach = obj.at + obj.germ_dir * obj.need;
        bool contained = reach >= o->lo_a && reach <= o->hi_a;
        if (obj.germ_dir != 0 && obj.need == 0)
          contained = contained &&
                      ((obj.germ_dir < 0 && obj.at == 0) || (obj.germ_dir > 0 && obj.at == la));
        bool glued = contained;
        if (contained)
          for (int at : {obj.at, reach}) {
            int va = t.path(a)[at];
            int pb = static_cast<int>(o->sigma * at + o->t);
            glued = glued && pb >= 0 && pb <= t.window_length(b) && t.path(b)[pb] == va;
          }
        if (contained && glued) ++r.verified;
        else {
          ++r.violations;
          std::ostringstream os;
          os << "charts " << a << "," << b << " object at " << obj.at
             << (contained ? " misglued" : " enclosure leaves the overlap");
          r.note(os.str());
        }
      }
    }
}

void generic_MA2_objects(const ApartmentModel& m, const Box& bx, const EnclosureRep& win,
                         std::vector<std::pair<EnclosureRep, std::vector<RatVec>>>& out) {
  int n = m.dim();
  RatVec lo = bx.lo, hi = bx.hi;
  out.push_back({enclose(m, {lo}), {lo}});
  if (lo != hi) {
    out.push_back({enclose(m, {hi}), {hi}});
    RatVec mid(n);
    for (int d = 0; d < n; ++d) mid[d] = (lo[d] + hi[d]) / 2;
    out.push_back({enclose(m, {mid}), {mid}});
    long long f = 4;
    for (int d = 0; d < n; ++d) f = std::max(f, 4 * (rat_floor(hi[d] - lo[d]) + 1));
    RatVec tip(n);
    for (int d = 0; d < n; ++d) tip[d] = lo[d] + (hi[d] - lo[d]) / Rat(static_cast<long>(f));
    out.push_back({enclose(m, {lo, tip}), {lo}});
    /* corner sector germs where the overlap reaches the window boundary */
    auto wbx = box_of(m, win);
    if (wbx) {
      for (int corner = 0; corner < (1 << n); ++corner) {
        bool touch = true;
        RatVec dir(n);
        for (int d = 0; d < n; ++d) {
          bool high = corner & (1 << d);
          dir[d] = high ? Rat(1) : Rat(-1);
          if (high ? bx.hi[d] != wbx->hi[d] : bx.lo[d] != wbx->lo[d]) touch = false;
        }
        if (!touch) continue;
        auto loc = locate(m.weyl(), dir);
        if (loc.status != LocateStatus::located) continue;
        Chimney c = make_chimney(m, mid, point_facet(m), loc.address);
        out.push_back({c.rep, {mid}});
      }
    }
  }
}

void check_MA2_generic(const Atlas& atlas, const AxiomCheckOptions& opts, CheckReport& r) {
  const ApartmentModel& m = atlas.model();
  int n = atlas.chart_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto gl = atlas.gluings(a, b);
      if (gl.empty()) continue;
      EnclosureRep win = atlas.window(a);
      std::vector<EnclosureRep> doms;
      for (const auto& g : gl)
        if (std::find(doms.begin(), doms.end(), g.domain) == doms.end())
          doms.push_back(g.domain);
      for (const auto& dom : doms) {
        auto bx = box_of(m, dom);
        if (!bx) {
          ++r.inconclusive;
          r.note("overlap is not an axis box; objects not enumerated");
          continue;
        }
        if (bx->empty) continue;
        std::vector<std::pair<EnclosureRep, std::vector<RatVec>>> objs;
        generic_MA2_objects(m, *bx, win, objs);
        for (const auto& [cl, probes] : objs) {
          ++r.enumerated;
          if (!rep_within(cl, dom, win)) {
            ++r.violations;
            std::ostringstream os;
            os << "charts " << a << "," << b << ": enclosure leaves the overlap";
            r.note(os.str());
            continue;
          }
          if (iso_search(atlas, a, b, cl, probes, opts.path_cap)) ++r.verified;
          else {
            ++r.inconclusive;
            std::ostringstream os;
            os << "charts " << a << "," << b
               << ": no gluing composition fixes the object within path cap";
            r.note(os.str());
          }
        }
      }
    }
}

}  // namespace

CheckReport check_MA2(const Atlas& atlas, const AxiomCheckOptions& opts) {
  CheckReport r;
  r.name = "MA2";
  r.truncation = atlas.model().truncation();
  r.path_cap = opts.path_cap;
  r.word_cap = opts.word_cap;
  r.sample_cap = opts.sample_cap;
  if (const auto* t = dynamic_cast<const TreeAtlas*>(&atlas)) check_MA2_tree(*t, opts, r);
  else check_MA2_generic(atlas, opts, r);
  return r;
}

namespace {

/* A chart whose geodesic carries the germ [at, toward) and ends at the leaf. */
int tree_chart_with_germ(const TreeAtlas& t, int leaf, int at, int toward) {
  std::vector<int> p = t.path_between(leaf, at);
  if (!(p.size() >= 2 && p[p.size() - 2] == toward)) p.push_back(toward);
  while (!t.is_leaf(p.back())) {
    int prev = p[p.size() - 2];
    int next = -1;
    for (int c : t.children(p.back()))
      if (c != prev) {
        next = c;
        break;
      }
    if (next < 0) next = t.parent(p.back());
    p.push_back(next);
  }
  if (p.front() == p.back()) return -1;
  return t.chart_of_leaves(p.front(), p.back());
}

void check_MA4_tree(const TreeAtlas& t, CheckReport& r) {
  struct Facet {
    int at;
    int toward;  // -1: the point facet; else a germ / edge through that neighbor
  };
  std::vector<Facet> facets;
  for (int v = 0; v < t.vertex_count(); ++v) {
    facets.push_back({v, -1});
    if (t.parent(v) >= 0) facets.push_back({v, t.parent(v)});
    for (int c : t.children(v)) facets.push_back({v, c});
  }
  for (int leaf : t.leaves())
    for (const auto& f : facets) {
      ++r.enumerated;
      int chart = -1;
      if (f.toward < 0) {
        if (f.at == leaf) {
          auto through = t.charts_through_vertex(leaf);
          chart = through.empty() ? -1 : through[0];
        } else {
          int any = t.parent(f.at) >= 0 ? t.parent(f.at) : t.children(f.at)[0];
          chart = tree_chart_with_germ(t, leaf, f.at, any);
        }
      } else {
        chart = tree_chart_with_germ(t, leaf, f.at, f.toward);
      }
      bool ok = chart >= 0 && t.position_in(chart, f.at) >= 0;
      if (ok && f.toward >= 0) ok = t.position_in(chart, f.toward) >= 0;
      if (ok) {
        auto [u, v] = t.leaves_of(chart);
        ok = u == leaf || v == leaf;
      }
      if (ok) ++r.verified;
      else {
        ++r.violations;
        std::ostringstream os;
        os << "no chart with end " << leaf << " through facet at " << f.at;
        r.note(os.str());
      }
    }
}

void check_MA4_product(const ProductTreeAtlas& a, const AxiomCheckOptions& opts,
                       CheckReport& r) {
  std::mt19937_64 rng(opts.seed);
  const TreeAtlas& t1 = a.factor(0);
  const TreeAtlas& t2 = a.factor(1);
  auto rand_vertex = [&](const TreeAtlas& t) {
    return static_cast<int>(rng() % t.vertex_count());
  };
  auto rand_leaf = [&](const TreeAtlas& t) {
    return t.leaves()[rng() % t.leaves().size()];
  };
  auto rand_neighbor = [&](const TreeAtlas& t, int v) {
    std::vector<int> nb = t.children(v);
    if (t.parent(v) >= 0) nb.push_back(t.parent(v));
    return nb[rng() % nb.size()];
  };
  for (long long i = 0; i < opts.sample_cap; ++i) {
    ++r.enumerated;
    int v1 = rand_vertex(t1), v2 = rand_vertex(t2);
    int g1 = rand_neighbor(t1, v1), g2 = rand_neighbor(t2, v2);
    int e1 = rand_leaf(t1), e2 = rand_leaf(t2);
    int c1 = tree_chart_with_germ(t1, e1, v1, g1);
    int c2;
    if (rng() % 2 == 0) {
      c2 = tree_chart_with_germ(t2, e2, v2, g2);  // sector germ in both factors
    } else {
      c2 = tree_chart_with_germ(t2, rand_leaf(t2), v2, g2);  // panel chimney: any far end
    }
    bool ok = c1 >= 0 && c2 >= 0 && t1.position_in(c1, v1) >= 0 && t1.position_in(c1, g1) >= 0 &&
              t2.position_in(c2, v2) >= 0 && t2.position_in(c2, g2) >= 0;
    if (ok) ++r.verified;
    else {
      ++r.violations;
      r.note("no product chart contains the sampled facet and chimney germ");
    }
  }
}

void check_MA4_generic(const Atlas& atlas, const AxiomCheckOptions& opts, CheckReport& r) {
  const ApartmentModel& m = atlas.model();
  long long budget = opts.sample_cap;
  for (int a = 0; a < atlas.chart_count() && budget > 0; ++a) {
    auto abx = box_of(m, atlas.window(a));
    if (!abx) continue;
    for (int b = 0; b < atlas.chart_count() && budget > 0; ++b) {
      auto bbx = box_of(m, atlas.window(b));
      if (!bbx) continue;
      --budget;
      ++r.enumerated;
      auto cc = atlas.common_chart({a, abx->lo}, {b, bbx->hi}, opts.path_cap);
      if (cc) ++r.verified;
      else {
        ++r.inconclusive;
        r.note("no common chart found for sampled anchors within path cap");
      }
    }
  }
}

}  // namespace

CheckReport check_MA4(const Atlas& atlas, const AxiomCheckOptions& opts) {
  CheckReport r;
  r.name = "MA4";
  r.truncation = atlas.model().truncation();
  r.path_cap = opts.path_cap;
  r.word_cap = opts.word_cap;
  r.sample_cap = opts.sample_cap;
  if (const auto* t = dynamic_cast<const TreeAtlas*>(&atlas)) check_MA4_tree(*t, r);
  else if (const auto* p = dynamic_cast<const ProductTreeAtlas*>(&atlas))
    check_MA4_product(*p, opts, r);
  else check_MA4_generic(atlas, opts, r);
  return r;
}

namespace {

void check_MAO_tree(const TreeAtlas& t, const AxiomCheckOptions& opts, CheckReport& r) {
  long long cross_budget = 2000;
  for (int c = 0; c < t.chart_count(); ++c) {
    const auto& p = t.path(c);
    int len = static_cast<int>(p.size()) - 1;
    for (int i = 0; i < len; ++i)
      for (int j = i + 1; j <= len; ++j) {
        ++r.enumerated;
        std::vector<int> gp = t.path_between(p[i], p[j]);
        bool ok = true;
        for (int k = 0; k <= opts.segment_samples && ok; ++k) {
          Rat tk(k, opts.segment_samples);
          tk.canonicalize();
          Rat x = Rat(i) + Rat(j - i) * tk;
          TreeAtlas::TreePoint got = t.to_tree(c, x);
          Rat s = x - Rat(i);
          long long kk = rat_floor(s);
          Rat frac = s - Rat(static_cast<long>(kk));
          TreeAtlas::TreePoint want;
          if (frac == 0) want = {gp[kk], -1, Rat(0)};
          else {
            int va = gp[kk], vb = gp[kk + 1];
            want = t.parent(vb) == va ? TreeAtlas::TreePoint{va, vb, frac}
                                      : TreeAtlas::TreePoint{vb, va, Rat(1) - frac};
          }
          ok = got == want;
        }
        if (ok && cross_budget > 0) {
          /* the same pair through another chart */
          --cross_budget;
          int c2 = t.chart_through({p[i], -1, Rat(0)}, {p[j], -1, Rat(0)});
          auto xi = t.to_chart(c2, {p[i], -1, Rat(0)});
          auto xj = t.to_chart(c2, {p[j], -1, Rat(0)});
          for (int k = 0; k <= opts.segment_samples && ok; ++k) {
            Rat tk(k, opts.segment_samples);
            tk.canonicalize();
            Rat x2 = *xi + (*xj - *xi) * tk;
            Rat x1 = Rat(i) + Rat(j - i) * tk;
            ok = t.to_tree(c2, x2) == t.to_tree(c, x1);
          }
        }
        if (ok) ++r.verified;
        else {
          ++r.violations;
          std::ostringstream os;
          os << "chart " << c << " segment " << i << ".." << j
             << " disagrees with the geodesic";
          r.note(os.str());
        }
      }
  }
}

void check_MAO_sampled(const Atlas& atlas, const AxiomCheckOptions& opts, CheckReport& r) {
  const ApartmentModel& m = atlas.model();
  std::mt19937_64 rng(opts.seed);
  int n = atlas.chart_count();
  for (long long it = 0; it < opts.sample_cap; ++it) {
    int c = static_cast<int>(rng() % n);
    auto bx = box_of(m, atlas.window(c));
    if (!bx || bx->empty) continue;
    RatVec xs(m.dim()), ys(m.dim());
    for (int d = 0; d < m.dim(); ++d) {
      long long span = rat_floor(bx->hi[d] - bx->lo[d]);
      long long u = span > 0 ? static_cast<long long>(rng() % (span + 1)) : 0;
      long long v = span > 0 ? static_cast<long long>(rng() % (span + 1)) : 0;
      xs[d] = bx->lo[d] + Rat(static_cast<long>(std::min(u, v)));
      ys[d] = bx->lo[d] + Rat(static_cast<long>(std::max(u, v)));
    }
    ++r.enumerated;
    bool ok = true;
    int others = 0;
    auto rx = reach_map(atlas, {c, xs}, opts.path_cap);
    auto ry = reach_map(atlas, {c, ys}, opts.path_cap);
    for (int c2 = 0; c2 < n && others < 4 && ok; ++c2) {
      if (c2 == c) continue;
      auto ix = rx.find(c2);
      auto iy = ry.find(c2);
      if (ix == rx.end() || iy == ry.end()) continue;
      ++others;
      for (int k = 0; k <= opts.segment_samples && ok; ++k) {
        Rat tk(k, opts.segment_samples);
        tk.canonicalize();
        RatVec p1 = vec_add(xs, vec_scale(tk, vec_sub(ys, xs)));
        RatVec p2 = vec_add(ix->second, vec_scale(tk, vec_sub(iy->second, ix->second)));
        ok = atlas.same_point({c, p1}, {c2, p2}, opts.path_cap);
      }
    }
    if (ok) ++r.verified;
    else {
      ++r.violations;
      r.note("chart-wise segments disagree between charts");
    }
  }
}

}  // namespace

CheckReport check_MAO(const Atlas& atlas, const AxiomCheckOptions& opts) {
  CheckReport r;
  r.name = "MAO";
  r.truncation = atlas.model().truncation();
  r.path_cap = opts.path_cap;
  r.sample_cap = opts.sample_cap;
  if (const auto* t = dynamic_cast<const TreeAtlas*>(&atlas)) check_MAO_tree(*t, opts, r);
  else check_MAO_sampled(atlas, opts, r);
  return r;
}

CheckReport check_thickness(const TreeAtlas& atlas) {
  CheckReport r;
  r.name = "thickness";
  r.truncation = atlas.model().truncation();
  for (int v = 0; v < atlas.vertex_count(); ++v) {
    if (atlas.is_leaf(v)) continue;
    ++r.enumerated;
    int deg = static_cast<int>(atlas.children(v).size()) + (atlas.parent(v) >= 0 ? 1 : 0);
    if (deg == atlas.q() + 1) ++r.verified;
    else {
      ++r.violations;
      std::ostringstream os;
      os << "vertex " << v << " carries " << deg << " chambers";
      r.note(os.str());
    }
  }
  if (atlas.q() + 1 < 3) r.note("thin tree: panels carry fewer than three chambers");
  return r;
}

CheckReport check_half_apartment_unions(const TreeAtlas& atlas, long long cap) {
  CheckReport r;
  r.name = "half-apartment unions";
  r.truncation = atlas.model().truncation();
  for (int u : atlas.leaves()) {
    std::vector<int> partners;
    for (int v : atlas.leaves())
      if (v != u) partners.push_back(v);
    for (size_t i = 0; i < partners.size(); ++i)
      for (size_t j = i + 1; j < partners.size(); ++j) {
        if (cap >= 0 && r.enumerated >= cap) return r;
        ++r.enumerated;
        int v = partners[i], vp = partners[j];
        int ca = atlas.chart_of_leaves(u, v), cb = atlas.chart_of_leaves(u, vp);
        /* walk the common prefix from u to the divergence vertex */
        std::vector<int> pa = atlas.path(ca), pb = atlas.path(cb);
        if (pa.front() != u) std::reverse(pa.begin(), pa.end());
        if (pb.front() != u) std::reverse(pb.begin(), pb.end());
        size_t k = 0;
        while (k + 1 < pa.size() && k + 1 < pb.size() && pa[k + 1] == pb[k + 1]) ++k;
        int d = pa[k];
        int cu = atlas.chart_of_leaves(v, vp);
        bool ok = atlas.position_in(cu, d) >= 0 &&
                  atlas.dist(v, d) + atlas.dist(d, vp) == atlas.window_length(cu);
        if (ok) {
          MasurePoint da{ca, {Rat(atlas.position_in(ca, d))}};
          MasurePoint du{cu, {Rat(atlas.position_in(cu, d))}};
          ok = atlas.same_point(da, du);
          int w1 = pa[k + 1];  // one step past the divergence toward v
          if (ok)
            ok = atlas.same_point({ca, {Rat(atlas.position_in(ca, w1))}},
                                  {cu, {Rat(atlas.position_in(cu, w1))}});
        }
        if (ok) ++r.verified;
        else {
          ++r.violations;
          std::ostringstream os;
          os << "charts " << ca << "," << cb << " do not union to chart " << cu;
          r.note(os.str());
        }
      }
  }
  return r;
}

CheckReport check_cocycles(const Atlas& atlas, long long samples) {
  CheckReport r;
  r.name = "cocycles";
  r.truncation = atlas.model().truncation();
  r.sample_cap = samples;
  const ApartmentModel& m = atlas.model();
  std::mt19937_64 rng(20240817ULL);
  int n = atlas.chart_count();
  if (n < 3) return r;
  for (long long it = 0; it < samples; ++it) {
    int a = static_cast<int>(rng() % n);
    auto na = atlas.neighbors(a);
    if (na.empty()) continue;
    int b = na[rng() % na.size()];
    auto nb = atlas.neighbors(b);
    if (nb.empty()) continue;
    int c = nb[rng() % nb.size()];
    if (c == a || atlas.gluings(c, a).empty()) continue;
    auto g1 = atlas.gluings(a, b), g2 = atlas.gluings(b, c), g3 = atlas.gluings(c, a);
    EnclosureRep tri = intersect_reps(
        g1.front().domain,
        transform(m, g2.front().domain,
                  m.weyl().inverse(g1.front().w),
                  vec_scale(Rat(-1), mat_apply(m.weyl().inverse(g1.front().w).mat,
                                               g1.front().shift))));
    auto bx = box_of(m, tri);
    if (!bx || bx->empty) continue;
    RatVec p(m.dim());
    for (int d = 0; d < m.dim(); ++d) p[d] = (bx->lo[d] + bx->hi[d]) / 2;
    if (!contains(m, g1.front().domain, p)) continue;
    RatVec z = apply_map(atlas.gluing_map(g1.front()), p);
    if (!contains(m, g2.front().domain, z)) continue;
    z = apply_map(atlas.gluing_map(g2.front()), z);
    if (!contains(m, g3.front().domain, z)) continue;
    z = apply_map(atlas.gluing_map(g3.front()), z);
    ++r.enumerated;
    if (z == p) ++r.verified;
    else {
      ++r.violations;
      r.note("gluing cycle is not the identity at a sampled point");
    }
  }
  return r;
}

}  // namespace masure
