#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "masure/atlas.hpp"

/* Helpers shared by the compilation units of the core; not installed. */

namespace masure {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

inline long long rat_floor(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q.get_si();
}

/* halfspace(alpha, a) subset of halfspace(alpha, b) for levels alpha + k >= 0
   (or > 0 when strict). */
inline bool level_subset(const Level& a, const Level& b) {
  if (a.k < b.k) return true;
  return a.k == b.k && (a.strict || !b.strict);
}

inline EnclosureRep intersect_reps(const EnclosureRep& a, const EnclosureRep& b) {
  EnclosureRep out = a;
  for (size_t i = 0; i < out.levels.size(); ++i) {
    const auto& lb = b.levels[i];
    if (!lb) continue;
    auto& la = out.levels[i];
    if (!la) la = lb;
    else if (lb->k < la->k) la = lb;
    else if (lb->k == la->k) la->strict = la->strict || lb->strict;
  }
  return out;
}

/* Containment of the set cut out by `inner` inside the one cut out by
   `outer`, both intersected with `window`. */
inline bool rep_within(const EnclosureRep& inner, const EnclosureRep& outer,
                       const EnclosureRep& window) {
  for (size_t i = 0; i < outer.levels.size(); ++i) {
    if (!outer.levels[i]) continue;
    std::optional<Level> eff = inner.levels[i];
    if (!eff) eff = window.levels[i];
    if (!eff) return false;
    if (!level_subset(*eff, *outer.levels[i])) return false;
  }
  return true;
}

struct Box {
  std::vector<Rat> lo, hi;
  bool empty = false;
};

/* Axis-aligned reading of a rep; nullopt when some active root is not an
   axis form or some side is unbounded. */
inline std::optional<Box> box_of(const ApartmentModel& m, const EnclosureRep& rep) {
  int n = m.dim();
  std::vector<std::optional<Rat>> lo(n), hi(n);
  for (int idx = 0; idx < m.root_count(); ++idx) {
    const auto& lv = rep.levels[idx];
    if (!lv) continue;
    const RatVec& f = m.root(idx).form;
    int axis = -1;
    for (int d = 0; d < n; ++d)
      if (f[d] != 0) {
        if (axis >= 0) return std::nullopt;
        axis = d;
      }
    if (axis < 0) continue;
    if (f[axis] > 0) {
      Rat bound = -lv->k / f[axis];
      if (!lo[axis] || bound > *lo[axis]) lo[axis] = bound;
    } else {
      Rat bound = lv->k / -f[axis];
      if (!hi[axis] || bound < *hi[axis]) hi[axis] = bound;
    }
  }
  Box b;
  b.lo.resize(n);
  b.hi.resize(n);
  for (int d = 0; d < n; ++d) {
    if (!lo[d] || !hi[d]) return std::nullopt;
    b.lo[d] = *lo[d];
    b.hi[d] = *hi[d];
    if (*lo[d] > *hi[d]) b.empty = true;
  }
  return b;
}

inline FacetAddress point_facet(const ApartmentModel& m) {
  FacetAddress f;
  f.sign = +1;
  f.w = m.weyl().identity();
  f.J.resize(m.weyl().rank());
  for (int i = 0; i < m.weyl().rank(); ++i) f.J[i] = i;
  return f;
}

/* All charts reachable from p through gluings, with transported coordinates. */
inline std::map<int, RatVec> reach_map(const Atlas& atlas, const MasurePoint& p,
                                       int path_cap) {
  require(p.chart >= 0 && p.chart < atlas.chart_count(), "chart id out of range");
  require(atlas.in_window(p.chart, p.coords), "point outside its chart window");
  std::map<int, RatVec> seen{{p.chart, p.coords}};
  std::vector<MasurePoint> cur{p};
  for (int d = 0; d < path_cap && !cur.empty(); ++d) {
    std::vector<MasurePoint> next;
    for (const auto& s : cur)
      for (int b : atlas.neighbors(s.chart)) {
        if (seen.count(b)) continue;
        for (const auto& g : atlas.gluings(s.chart, b)) {
          if (!contains(atlas.model(), g.domain, s.coords)) continue;
          RatVec img = apply_map(atlas.gluing_map(g), s.coords);
          seen.emplace(b, img);
          next.push_back({b, img});
          break;
        }
      }
    cur = std::move(next);
  }
  return seen;
}

}  // namespace masure
