#include "masure/apartment.hpp"

#include <algorithm>
#include <queue>

namespace masure {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

RatMat reflection_matrix(const RatVec& form, const RatVec& coroot) {
  int n = static_cast<int>(form.size());
  RatMat r = RatMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) -= coroot[i] * form[j];
  return r;
}

}  // namespace

ApartmentModel::ApartmentModel(CoxeterDatum d, Realization r, std::vector<Rat> gamma_step,
                               ImaginaryPolicy policy, int truncation)
    : weyl_(std::move(d), std::move(r)),
      gamma_step_(std::move(gamma_step)),
      policy_(policy),
      truncation_(truncation) {
  const CoxeterDatum& dat = weyl_.datum();
  require(truncation_ >= 1, "truncation height must be >= 1");
  require(static_cast<int>(gamma_step_.size()) == dat.orbit_class_count(),
          "need one value group step per root orbit class");
  for (const Rat& g : gamma_step_)
    require(g > 0, "value group steps must be positive rationals (dense groups rejected)");

  /* Positive real roots with coroots, by reflection closure. */
  struct Entry {
    std::vector<long long> coords;
    RatVec coroot;
    int cls;
  };
  std::map<std::vector<long long>, Entry> pos;
  std::queue<std::vector<long long>> work;
  const Realization& re = weyl_.realization();
  for (int i = 0; i < dat.rank(); ++i) {
    std::vector<long long> e(dat.rank(), 0);
    e[i] = 1;
    pos.emplace(e, Entry{e, re.alphavee(i), dat.orbit_class(i)});
    work.push(e);
  }
  while (!work.empty()) {
    std::vector<long long> c = work.front();
    work.pop();
    const Entry cur = pos.at(c);
    for (int l = 0; l < dat.rank(); ++l) {
      long long pairing = 0;
      for (int j = 0; j < dat.rank(); ++j) pairing += c[j] * dat.a(l, j);
      std::vector<long long> img = c;
      img[l] -= pairing;
      long long h = 0;
      bool nonneg = true;
      for (long long x : img) {
        h += x;
        if (x < 0) nonneg = false;
      }
      if (!nonneg || h > truncation_) continue;
      if (pos.count(img)) continue;
      pos.emplace(img, Entry{img, mat_apply(re.reflection(l), cur.coroot), cur.cls});
      work.push(img);
    }
  }

  std::vector<Entry> sorted;
  for (auto& [c, e] : pos) sorted.push_back(e);
  std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
    long long ha = 0, hb = 0;
    for (long long x : a.coords) ha += x;
    for (long long x : b.coords) hb += x;
    if (ha != hb) return ha < hb;
    return a.coords < b.coords;
  });

  int p = static_cast<int>(sorted.size());
  for (const Entry& e : sorted)
    roots_.push_back({e.coords, re.root_form(e.coords), e.coroot, e.cls, false});
  for (const Entry& e : sorted) {
    std::vector<long long> nc(e.coords);
    for (long long& x : nc) x = -x;
    roots_.push_back({nc, vec_scale(Rat(-1), re.root_form(e.coords)),
                      vec_scale(Rat(-1), e.coroot), e.cls, false});
  }
  opposite_.resize(2 * p);
  for (int i = 0; i < p; ++i) {
    opposite_[i] = p + i;
    opposite_[p + i] = i;
  }

  if (policy_ == ImaginaryPolicy::tame) {
    std::vector<std::vector<long long>> im = imaginary_roots_up_to_height(dat, truncation_);
    int base = static_cast<int>(roots_.size());
    int q = static_cast<int>(im.size());
    for (const auto& c : im) roots_.push_back({c, re.root_form(c), {}, -1, true});
    for (const auto& c : im) {
      std::vector<long long> nc(c);
      for (long long& x : nc) x = -x;
      roots_.push_back({nc, vec_scale(Rat(-1), re.root_form(c)), {}, -1, true});
    }
    opposite_.resize(roots_.size());
    for (int i = 0; i < q; ++i) {
      opposite_[base + i] = base + q + i;
      opposite_[base + q + i] = base + i;
    }
  }

  for (int i = 0; i < static_cast<int>(roots_.size()); ++i) index_[roots_[i].coords] = i;
}

ApartmentModel ApartmentModel::standard(const CoxeterDatum& d, ImaginaryPolicy policy,
                                        int truncation) {
  Realization r = Realization::standard(d);
  std::vector<Rat> g(d.orbit_class_count(), Rat(1));
  return ApartmentModel(d, std::move(r), std::move(g), policy, truncation);
}

int ApartmentModel::root_index(const std::vector<long long>& coords) const {
  auto it = index_.find(coords);
  return it == index_.end() ? -1 : it->second;
}

std::optional<Rat> ApartmentModel::gamma(int idx) const {
  if (roots_[idx].imaginary) return std::nullopt;
  return gamma_step_[roots_[idx].orbit_class];
}

ApartmentModel::ConeSign ApartmentModel::cone_sign(int idx, const FacetAddress& dir) const {
  RatVec c(roots_[idx].coords.size());
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = Rat(static_cast<long>(dir.sign * roots_[idx].coords[i]));
  std::vector<int> winv(dir.w.word.rbegin(), dir.w.word.rend());
  RatVec pulled = weyl_.act_on_root(winv, c);
  bool all_zero = true, all_nonneg = true;
  for (int i = 0; i < weyl_.rank(); ++i) {
    if (std::find(dir.J.begin(), dir.J.end(), i) != dir.J.end()) continue;
    if (pulled[i] != 0) all_zero = false;
    if (pulled[i] < 0) all_nonneg = false;
  }
  if (all_zero) return ConeSign::vanishes;
  if (all_nonneg) return ConeSign::nonnegative;
  return ConeSign::mixed;
}

RatVec ApartmentModel::lattice_generator(int i) const {
  return vec_scale(gamma_step_[weyl_.datum().orbit_class(i)],
                   weyl_.realization().alphavee(i));
}

EnclosureRep enclose(const ApartmentModel& m, const std::vector<RatVec>& points, EncMode mode) {
  require(!points.empty(), "enclose needs at least one point");
  for (const RatVec& p : points)
    require(static_cast<int>(p.size()) == m.dim(), "point dimension mismatch");
  EnclosureRep out;
  out.truncation = m.truncation();
  out.mode = mode;
  out.levels.resize(m.root_count());
  for (int idx = 0; idx < m.root_count(); ++idx) {
    const ApartmentRoot& r = m.root(idx);
    Rat worst = -dot(r.form, points[0]);
    for (size_t t = 1; t < points.size(); ++t) {
      Rat v = -dot(r.form, points[t]);
      if (v > worst) worst = v;
    }
    Rat k = worst;
    if (mode == EncMode::lattice && !r.imaginary) k = step_ceil(worst, *m.gamma(idx));
    out.levels[idx] = Level{k, false};
  }
  return out;
}

bool contains(const ApartmentModel& m, const EnclosureRep& e, const RatVec& point) {
  require(static_cast<int>(point.size()) == m.dim(), "point dimension mismatch");
  for (int idx = 0; idx < static_cast<int>(e.levels.size()); ++idx) {
    if (!e.levels[idx]) continue;
    Rat v = dot(m.root(idx).form, point) + e.levels[idx]->k;
    if (e.levels[idx]->strict ? !(v > 0) : !(v >= 0)) return false;
  }
  return true;
}

std::vector<std::pair<int, Rat>> walls_through(const ApartmentModel& m, const RatVec& x) {
  std::vector<std::pair<int, Rat>> out;
  for (int idx = 0; idx < m.root_count(); ++idx) {
    const ApartmentRoot& r = m.root(idx);
    if (r.imaginary || !(r.height() > 0)) continue;
    Rat k = -dot(r.form, x);
    if (in_step_lattice(k, *m.gamma(idx))) out.push_back({idx, k});
  }
  return out;
}

SpecialCheck is_special(const ApartmentModel& m, const RatVec& x) {
  int real_pos = 0;
  for (int idx = 0; idx < m.root_count(); ++idx) {
    const ApartmentRoot& r = m.root(idx);
    if (!r.imaginary && r.height() > 0) ++real_pos;
  }
  return {static_cast<int>(walls_through(m, x).size()) == real_pos, m.truncation()};
}

EnclosureRep sector_face_rep(const ApartmentModel& m, const SectorFace& f, EncMode mode) {
  EnclosureRep out;
  out.truncation = m.truncation();
  out.mode = mode;
  out.levels.resize(m.root_count());
  for (int idx = 0; idx < m.root_count(); ++idx) {
    if (m.cone_sign(idx, f.direction) == ApartmentModel::ConeSign::mixed) continue;
    const ApartmentRoot& r = m.root(idx);
    Rat worst = -dot(r.form, f.base);
    Rat k = worst;
    if (mode == EncMode::lattice && !r.imaginary) k = step_ceil(worst, *m.gamma(idx));
    out.levels[idx] = Level{k, false};
  }
  return out;
}

Chimney make_chimney(const ApartmentModel& m, const RatVec& base,
                     const FacetAddress& base_facet, const FacetAddress& direction,
                     EncMode mode) {
  require(static_cast<int>(base.size()) == m.dim(), "point dimension mismatch");
  Chimney out{base, base_facet, direction, {}};
  out.rep.truncation = m.truncation();
  out.rep.mode = mode;
  out.rep.levels.resize(m.root_count());
  for (int idx = 0; idx < m.root_count(); ++idx) {
    if (m.cone_sign(idx, direction) == ApartmentModel::ConeSign::mixed) continue;
    const ApartmentRoot& r = m.root(idx);
    bool bump = m.cone_sign(idx, base_facet) == ApartmentModel::ConeSign::mixed;
    Rat worst = -dot(r.form, base);
    if (mode == EncMode::lattice && !r.imaginary)
      out.rep.levels[idx] = Level{step_ceil(worst, *m.gamma(idx), bump), false};
    else
      out.rep.levels[idx] = Level{worst, bump};
  }
  return out;
}

ChimneyClass classify_chimney(const ApartmentModel& m, const Chimney& c) {
  ChimneyClass out;
  out.splayed = is_spherical(m.datum(), c.direction.J);

  /* Pinched pairs confine the chimney to a wall; the support direction is
     the common kernel of their forms. */
  std::vector<int> pinched;
  for (int idx = 0; idx < m.root_count(); ++idx) {
    int op = m.opposite(idx);
    if (op < idx) continue;
    if (!c.rep.levels[idx] || !c.rep.levels[op]) continue;
    if (c.rep.levels[idx]->k + c.rep.levels[op]->k == 0 && !c.rep.levels[idx]->strict &&
        !c.rep.levels[op]->strict)
      pinched.push_back(idx);
  }
  out.full = pinched.empty();

  std::vector<RatVec> dir_basis;
  if (pinched.empty()) {
    for (int i = 0; i < m.dim(); ++i) {
      RatVec e(m.dim(), Rat(0));
      e[i] = 1;
      dir_basis.push_back(e);
    }
  } else {
    RatMat rows(static_cast<int>(pinched.size()), m.dim());
    for (size_t r = 0; r < pinched.size(); ++r)
      for (int j = 0; j < m.dim(); ++j) rows.at(static_cast<int>(r), j) = m.root(pinched[r]).form[j];
    dir_basis = kernel_basis(rows);
  }

  /* Roots vanishing on the support direction generate the fixator up to
     translation; enumerate their reflection group with a cap. */
  std::vector<RatMat> gens;
  for (int idx = 0; idx < m.root_count(); ++idx) {
    const ApartmentRoot& r = m.root(idx);
    if (r.imaginary || !(r.height() > 0)) continue;
    bool vanishes = true;
    for (const RatVec& b : dir_basis)
      if (dot(r.form, b) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) gens.push_back(reflection_matrix(r.form, r.coroot));
  }
  if (gens.empty()) {
    out.solid = Tern::yes;
    return out;
  }
  std::set<RatMat> seen = {RatMat::identity(m.dim())};
  std::vector<RatMat> frontier = {RatMat::identity(m.dim())};
  const size_t cap = 4000;
  while (!frontier.empty()) {
    std::vector<RatMat> next;
    for (const RatMat& g : frontier)
      for (const RatMat& s : gens) {
        RatMat gs = mat_mul(g, s);
        if (seen.insert(gs).second) {
          next.push_back(std::move(gs));
          if (seen.size() > cap) {
            out.solid = Tern::undecided;
            return out;
          }
        }
      }
    frontier = std::move(next);
  }
  out.solid = Tern::yes;
  return out;
}

bool in_closed_direction(const ApartmentModel& m, const FacetAddress& dir, const RatVec& xi) {
  RatVec v = mat_apply(dir.w.inv, vec_scale(Rat(dir.sign), xi));
  for (int i = 0; i < m.weyl().rank(); ++i) {
    Rat val = m.realization().eval_alpha(i, v);
    bool in_J = std::find(dir.J.begin(), dir.J.end(), i) != dir.J.end();
    if (in_J ? val != 0 : val < 0) return false;
  }
  return true;
}

SectorFace shorten(const ApartmentModel& m, const SectorFace& f, const RatVec& xi) {
  require(in_closed_direction(m, f.direction, xi), "shift lies outside the closed direction");
  return {vec_add(f.base, xi), f.direction};
}

Chimney shorten(const ApartmentModel& m, const Chimney& c, const RatVec& xi) {
  require(in_closed_direction(m, c.direction, xi), "shift lies outside the closed direction");
  return make_chimney(m, vec_add(c.base, xi), c.base_facet, c.direction, c.rep.mode);
}

bool germ_equal(const ApartmentModel& m, const Chimney& a, const Chimney& b) {
  if (!a.direction.same_as(b.direction)) return false;
  if (a.rep.mode != b.rep.mode || a.rep.truncation != b.rep.truncation) return false;
  for (int idx = 0; idx < m.root_count(); ++idx) {
    if (m.cone_sign(idx, a.direction) != ApartmentModel::ConeSign::vanishes) continue;
    if (a.rep.levels[idx] != b.rep.levels[idx]) return false;
  }
  return true;
}

RatVec apply_map(const AffineMap& f, const RatVec& v) {
  return vec_add(mat_apply(f.lin, v), f.offset);
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  return {mat_mul(f.lin, g.lin), vec_add(mat_apply(f.lin, g.offset), f.offset)};
}

AffineMap inverse_map(const AffineMap& f) {
  auto inv = mat_inverse(f.lin);
  require(inv.has_value(), "affine map is singular");
  return {*inv, vec_scale(Rat(-1), mat_apply(*inv, f.offset))};
}

AffineMap affine_from(const ApartmentModel& m, const GroupElement& w, const RatVec& translate) {
  require(static_cast<int>(translate.size()) == m.dim(), "translation dimension mismatch");
  return {w.mat, translate};
}

EnclosureRep transform(const ApartmentModel& m, const EnclosureRep& e, const GroupElement& w,
                       const RatVec& translate, bool strict_roots) {
  EnclosureRep out;
  out.truncation = e.truncation;
  out.mode = e.mode;
  out.levels.resize(m.root_count());
  for (int idx = 0; idx < static_cast<int>(e.levels.size()); ++idx) {
    if (!e.levels[idx]) continue;
    std::vector<long long> img = m.weyl().act_on_root(w.word, m.root(idx).coords);
    int to = m.root_index(img);
    if (to < 0) {
      require(!strict_roots, "transformed root leaves the truncated root set");
      continue;
    }
    Rat k = e.levels[idx]->k - dot(m.root(to).form, translate);
    out.levels[to] = Level{k, e.levels[idx]->strict};
  }
  return out;
}

}  // namespace masure
