#include "masure/residue.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "detail.hpp"
#include "masure/tits_cone.hpp"

namespace masure {

namespace {

/* Wall reflection as a group element: reflect an interior chamber point and
   read off the chamber it lands in. */
GroupElement reflection_element(const ApartmentModel& m, int root_idx) {
  FacetAddress fundamental;
  fundamental.w = m.weyl().identity();
  RatVec p = direction_vector(m, fundamental);
  const ApartmentRoot& r = m.root(root_idx);
  Rat c = dot(r.form, p);
  for (int d = 0; d < m.dim(); ++d) p[d] -= c * r.coroot[d];
  LocateResult lr = locate(m.weyl(), p);
  require(lr.status == LocateStatus::located && lr.address.J.empty(),
          "wall reflection leaves the located cone");
  return lr.address.w;
}

std::vector<int> wall_roots_at(const ApartmentModel& m, const RatVec& x) {
  std::vector<int> out;
  for (const auto& [idx, k] : walls_through(m, x)) out.push_back(idx);
  return out;
}

/* Closure of the generators under multiplication; empty when the cap is hit. */
std::vector<GroupElement> closure(const WeylGroup& w, const std::vector<GroupElement>& gens,
                                  size_t cap) {
  std::vector<GroupElement> out{w.identity()};
  std::set<RatMat> seen{out[0].mat};
  for (size_t at = 0; at < out.size(); ++at)
    for (const auto& g : gens) {
      GroupElement next = w.mul(out[at], g);
      if (!seen.insert(next.mat).second) continue;
      if (out.size() >= cap) return {};
      out.push_back(std::move(next));
    }
  return out;
}

/* The element of the wall group moving v into the chamber positive on every
   wall root; wall groups are small, scanning beats bookkeeping. */
GroupElement restricted_locate(const ApartmentModel& m, const std::vector<int>& walls,
                               const RatVec& v) {
  std::vector<GroupElement> gens;
  for (int idx : walls) gens.push_back(reflection_element(m, idx));
  std::vector<GroupElement> grp = closure(m.weyl(), gens, 4096);
  require(!grp.empty(), "restricted location needs a finite wall group");
  for (const auto& g : grp) {
    RatVec u = mat_apply(g.inv, v);
    bool inside = true;
    for (int idx : walls)
      if (!(dot(m.root(idx).form, u) > 0)) {
        inside = false;
        break;
      }
    if (inside) return g;
  }
  throw std::logic_error("direction misses every restricted chamber");
}

GroupElement located_chamber(const WeylGroup& w, const RatVec& v) {
  LocateResult lr = locate(w, v);
  require(lr.status == LocateStatus::located && lr.address.sign > 0 && lr.address.J.empty(),
          "germ is not preordered for this sign");
  return lr.address.w;
}

const ResidueChamber& chamber_at(const Residue& res, int c) {
  require(res.atlas != nullptr, "residue is not attached to an atlas");
  require(c >= 0 && c < static_cast<int>(res.chambers.size()), "chamber id out of range");
  return res.chambers[c];
}

const RatVec* rep_in(const ResidueChamber& c, int chart) {
  for (const auto& [ch, dir] : c.reps)
    if (ch == chart) return &dir;
  return nullptr;
}

GroupElement locate_dir(const Residue& res, int chart, const RatVec& v, int eps,
                        ResidueMode mode) {
  const ApartmentModel& m = res.atlas->model();
  RatVec u = v;
  if (eps < 0)
    for (auto& c : u) c = -c;
  if (mode == ResidueMode::nonrestricted) return located_chamber(m.weyl(), u);
  return restricted_locate(m, wall_roots_at(m, res.positions.at(chart)), u);
}

GroupElement pair_distance(const Residue& res, int c1, int c2, ResidueMode mode, int e1,
                           int e2, const char* what) {
  const ResidueChamber& a = chamber_at(res, c1);
  const ResidueChamber& b = chamber_at(res, c2);
  require(e1 > 0 ? a.plus_ok : a.minus_ok, "germ is not preordered for this sign");
  require(e2 > 0 ? b.plus_ok : b.minus_ok, "germ is not preordered for this sign");
  const WeylGroup& w = res.atlas->model().weyl();
  std::optional<GroupElement> out;
  for (const auto& [chart, va] : a.reps) {
    const RatVec* vb = rep_in(b, chart);
    if (!vb) continue;
    GroupElement w1 = locate_dir(res, chart, va, e1, mode);
    GroupElement w2 = locate_dir(res, chart, *vb, e2, mode);
    GroupElement d = w.mul(w.inverse(w1), w2);
    if (!out) out = d;
    else if (!(*out == d)) throw std::logic_error(what);
  }
  if (!out) throw IncompleteAtlas("no chart carries both germs");
  return *out;
}

}  // namespace

Residue residue_at(const Atlas& atlas, const MasurePoint& x, int path_cap) {
  const ApartmentModel& m = atlas.model();
  Residue res;
  res.atlas = &atlas;
  res.path_cap = path_cap;
  res.x = atlas.normal_form(x, path_cap);
  res.positions = reach_map(atlas, res.x, path_cap);

  auto all = m.weyl().enumerate(4096);
  require(all.has_value(), "chamber enumeration needs a finite vectorial group");

  /* Candidate germs per chart and vectorial chamber; the probe parameter is
     shared so equal germs get equal probe points. */
  struct Cand {
    int chart;
    RatVec dir;
  };
  std::vector<Cand> cands;
  Rat tstar(1, 4);
  for (const auto& [chart, pos] : res.positions) {
    EnclosureRep win = atlas.window(chart);
    for (const auto& g : *all) {
      FacetAddress addr;
      addr.w = g;
      RatVec v = direction_vector(m, addr);
      std::optional<Rat> room;
      bool ok = true;
      for (size_t i = 0; i < win.levels.size() && ok; ++i) {
        if (!win.levels[i]) continue;
        Rat val = dot(m.root(static_cast<int>(i)).form, pos) + win.levels[i]->k;
        Rat c = dot(m.root(static_cast<int>(i)).form, v);
        if (!(c < 0)) continue;
        if (val == 0) ok = false;
        else {
          Rat bound = val / (-c);
          if (!room || bound < *room) room = bound;
        }
      }
      if (!ok) continue;
      /* Stay short of the first wall ahead: the masure may branch there. */
      for (int i = 0; i < m.root_count(); ++i) {
        const ApartmentRoot& r = m.root(i);
        if (r.imaginary || !(r.height() > 0)) continue;
        Rat c = dot(r.form, v);
        if (c == 0) continue;
        Rat step = m.gamma_step(r.orbit_class);
        Rat val = dot(r.form, pos);
        Rat frac = val - Rat(static_cast<long>(rat_floor(val / step))) * step;
        Rat bound;
        if (c > 0) bound = (step - frac) / c;
        else bound = (frac == 0 ? step : frac) / (-c);
        if (!room || bound < *room) room = bound;
      }
      if (room) {
        Rat quarter = *room / 4;
        if (quarter < tstar) tstar = quarter;
      }
      cands.push_back({chart, std::move(v)});
    }
  }

  std::map<std::pair<int, RatVec>, int> by_probe;
  for (const auto& cand : cands) {
    RatVec pp = res.positions.at(cand.chart);
    for (int d = 0; d < m.dim(); ++d) pp[d] += tstar * cand.dir[d];
    MasurePoint probe = atlas.normal_form({cand.chart, pp}, path_cap);
    auto key = std::make_pair(probe.chart, probe.coords);
    auto it = by_probe.find(key);
    if (it != by_probe.end()) {
      res.chambers[it->second].reps.push_back({cand.chart, cand.dir});
      continue;
    }
    LocateResult fwd = locate(m.weyl(), cand.dir);
    RatVec neg = cand.dir;
    for (auto& c : neg) c = -c;
    LocateResult bwd = locate(m.weyl(), neg);
    ResidueChamber ch;
    ch.plus_ok = fwd.status == LocateStatus::located && fwd.address.sign > 0 &&
                 fwd.address.J.empty();
    ch.minus_ok = bwd.status == LocateStatus::located && bwd.address.sign > 0 &&
                  bwd.address.J.empty();
    if (!ch.plus_ok && !ch.minus_ok) continue;
    ch.dir = cand.dir;
    ch.w = ch.plus_ok ? fwd.address.w : bwd.address.w;
    ch.probe = probe;
    ch.reps.push_back({cand.chart, cand.dir});
    by_probe.emplace(key, static_cast<int>(res.chambers.size()));
    res.chambers.push_back(std::move(ch));
  }

  /* Restricted classes: germs shown by some chart on the same side of every
     wall through x. */
  std::vector<int> uf(res.chambers.size());
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  for (const auto& [chart, pos] : res.positions) {
    std::vector<int> walls = wall_roots_at(m, pos);
    std::map<std::vector<int>, int> by_pattern;
    for (size_t i = 0; i < res.chambers.size(); ++i) {
      const RatVec* v = rep_in(res.chambers[i], chart);
      if (!v) continue;
      std::vector<int> pattern;
      for (int idx : walls) {
        Rat c = dot(m.root(idx).form, *v);
        require(c != 0, "chamber direction lies on a wall through the point");
        pattern.push_back(c > 0 ? 1 : -1);
      }
      auto [it, fresh] = by_pattern.emplace(std::move(pattern), static_cast<int>(i));
      if (!fresh) uf[find(static_cast<int>(i))] = find(it->second);
    }
  }
  std::map<int, int> class_of;
  for (size_t i = 0; i < res.chambers.size(); ++i) {
    int root = find(static_cast<int>(i));
    auto [it, fresh] = class_of.emplace(root, res.restricted_count);
    if (fresh) ++res.restricted_count;
    res.chambers[i].restricted_class = it->second;
  }

  res.wall_roots = wall_roots_at(m, res.positions.at(res.x.chart));
  for (int idx : res.wall_roots) res.gens.push_back(reflection_element(m, idx));
  res.group = closure(m.weyl(), res.gens, 4096);
  return res;
}

GroupElement d_residue(const Residue& res, int c1, int c2, ResidueMode mode, int sign) {
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  return pair_distance(res, c1, c2, mode, sign, sign, "residue distance depends on the chart");
}

GroupElement d_star_residue(const Residue& res, int c1, int c2, ResidueMode mode, int sign1) {
  require(sign1 == 1 || sign1 == -1, "sign must be +1 or -1");
  return pair_distance(res, c1, c2, mode, sign1, -sign1,
                       "residue codistance depends on the chart");
}

namespace {

/* One germ per restricted class usable on both sides. */
std::vector<int> class_reps(const Residue& res, CheckReport& rep) {
  std::vector<int> first(res.restricted_count, -1);
  for (size_t i = 0; i < res.chambers.size(); ++i) {
    const auto& c = res.chambers[i];
    if (c.plus_ok && c.minus_ok && first[c.restricted_class] < 0)
      first[c.restricted_class] = static_cast<int>(i);
  }
  std::vector<int> out;
  for (int r : first)
    if (r >= 0) out.push_back(r);
  if (out.size() != first.size()) rep.note("some restricted classes have one-sided germs only");
  return out;
}

std::optional<GroupElement> try_d_star(const Residue& res, int a, int b, int sign1) {
  try {
    return d_star_residue(res, a, b, ResidueMode::restricted, sign1);
  } catch (const IncompleteAtlas&) {
    return std::nullopt;
  }
}

std::optional<GroupElement> try_d(const Residue& res, int a, int b, int sign) {
  try {
    return d_residue(res, a, b, ResidueMode::restricted, sign);
  } catch (const IncompleteAtlas&) {
    return std::nullopt;
  }
}

/* Breadth-first words over S_x; value -> (length, generator indices). */
std::map<RatMat, std::vector<int>> gen_words(const WeylGroup& w,
                                             const std::vector<GroupElement>& gens) {
  std::map<RatMat, std::vector<int>> out;
  std::vector<std::pair<GroupElement, std::vector<int>>> frontier{{w.identity(), {}}};
  out[frontier[0].first.mat] = {};
  while (!frontier.empty()) {
    std::vector<std::pair<GroupElement, std::vector<int>>> next;
    for (const auto& [g, word] : frontier)
      for (size_t si = 0; si < gens.size(); ++si) {
        GroupElement gs = w.mul(g, gens[si]);
        if (out.count(gs.mat)) continue;
        std::vector<int> ws = word;
        ws.push_back(static_cast<int>(si));
        out.emplace(gs.mat, ws);
        next.push_back({std::move(gs), std::move(ws)});
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

CheckReport check_residue_twinning(const Residue& res) {
  CheckReport rep;
  rep.name = "residue twinning";
  rep.path_cap = res.path_cap;
  require(res.atlas != nullptr, "residue is not attached to an atlas");
  const WeylGroup& w = res.atlas->model().weyl();
  rep.truncation = res.atlas->model().truncation();
  if (res.group.empty()) {
    rep.note("restricted checks need a finite wall group");
    return rep;
  }
  std::vector<int> C = class_reps(res, rep);
  auto words = gen_words(w, res.gens);
  auto ell = [&](const GroupElement& g) -> std::optional<int> {
    auto it = words.find(g.mat);
    if (it == words.end()) return std::nullopt;
    return static_cast<int>(it->second.size());
  };
  size_t n = C.size();

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      ++rep.enumerated;
      auto d1 = try_d_star(res, C[i], C[j], -1);
      auto d2 = try_d_star(res, C[j], C[i], +1);
      if (!d1 || !d2) {
        ++rep.inconclusive;
        rep.note("Tw1: no common chart for classes " + std::to_string(i) + "," +
                 std::to_string(j));
        continue;
      }
      if (*d1 == w.inverse(*d2)) ++rep.verified;
      else {
        ++rep.violations;
        rep.note("Tw1 fails at classes " + std::to_string(i) + "," + std::to_string(j));
      }
    }

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        auto s = try_d(res, C[j], C[k], +1);
        if (!s) continue;
        auto ls = ell(*s);
        if (!ls || *ls != 1) continue;
        auto dw = try_d_star(res, C[i], C[j], -1);
        if (!dw) continue;
        GroupElement ws = w.mul(*dw, *s);
        auto lw = ell(*dw), lws = ell(ws);
        if (!lw || !lws) {
          ++rep.enumerated;
          ++rep.inconclusive;
          rep.note("Tw2: value outside the base wall group");
          continue;
        }
        if (*lws != *lw - 1) continue;
        ++rep.enumerated;
        auto dk = try_d_star(res, C[i], C[k], -1);
        if (!dk) {
          ++rep.inconclusive;
          rep.note("Tw2: no common chart for the target pair");
        } else if (*dk == ws) ++rep.verified;
        else {
          ++rep.violations;
          rep.note("Tw2 fails at classes " + std::to_string(i) + "," + std::to_string(j) +
                   "," + std::to_string(k));
        }
      }

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t si = 0; si < res.gens.size(); ++si) {
        ++rep.enumerated;
        auto dw = try_d_star(res, C[i], C[j], -1);
        if (!dw) {
          ++rep.inconclusive;
          rep.note("Tw3: no common chart for classes " + std::to_string(i) + "," +
                   std::to_string(j));
          continue;
        }
        GroupElement target = w.mul(*dw, res.gens[si]);
        bool found = false;
        for (size_t k = 0; k < n && !found; ++k) {
          auto adj = try_d(res, C[j], C[k], +1);
          if (!adj || !(*adj == res.gens[si])) continue;
          auto dk = try_d_star(res, C[i], C[k], -1);
          found = dk && *dk == target;
        }
        if (found) ++rep.verified;
        else {
          ++rep.inconclusive;
          rep.note("Tw3: no witness for classes " + std::to_string(i) + "," +
                   std::to_string(j) + " and generator " + std::to_string(si));
        }
      }
  return rep;
}

CheckReport check_residue_folding(const Residue& res) {
  CheckReport rep;
  rep.name = "residue folding";
  rep.path_cap = res.path_cap;
  require(res.atlas != nullptr, "residue is not attached to an atlas");
  const WeylGroup& w = res.atlas->model().weyl();
  rep.truncation = res.atlas->model().truncation();
  if (res.group.empty()) {
    rep.note("restricted checks need a finite wall group");
    return rep;
  }
  std::vector<int> C = class_reps(res, rep);
  auto words = gen_words(w, res.gens);
  GroupElement e = w.identity();

  /* Bruhat order of (W_x, S_x) by the subword test on a reduced word. */
  auto leq = [&](const GroupElement& u, const GroupElement& v) -> std::optional<bool> {
    auto itv = words.find(v.mat);
    if (!words.count(u.mat) || itv == words.end()) return std::nullopt;
    const std::vector<int>& wv = itv->second;
    if (wv.size() > 20) return std::nullopt;
    for (size_t mask = 0; mask < (size_t{1} << wv.size()); ++mask) {
      GroupElement g = e;
      for (size_t t = 0; t < wv.size(); ++t)
        if (mask & (size_t{1} << t)) g = w.mul(g, res.gens[wv[t]]);
      if (g.mat == u.mat) return true;
    }
    return false;
  };

  for (int center : C)
    for (int cm : C)
      for (int cp : C) {
        auto opp = try_d_star(res, cm, cp, -1);
        if (!opp || !(*opp == e)) continue;
        ++rep.enumerated;
        auto wminus = try_d(res, center, cm, -1);
        auto wplus = try_d_star(res, center, cp, -1);
        if (!wminus || !wplus) {
          ++rep.inconclusive;
          rep.note("no common chart with the center");
          continue;
        }
        auto ok = leq(*wplus, *wminus);
        if (!ok) {
          ++rep.inconclusive;
          rep.note("value outside the base wall group");
        } else if (*ok) ++rep.verified;
        else {
          ++rep.violations;
          rep.note("folding fails at center " + std::to_string(center) + " with pair " +
                   std::to_string(cm) + "," + std::to_string(cp));
        }
      }
  return rep;
}

}  // namespace masure
